//! Command-line front end: argument handling, text and JSON reports, and
//! the `.mono` file format.
//!
//! Exit codes: 0 success, 1 negative or infeasible result, 2 usage or
//! input error.

pub mod mono;

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use lefschetz::catalog::{self, audit_entry, load_catalog, CatalogEntry};
use lefschetz::feasibility::{
    enumerate_feasible, min_fiber_bounds, summarize, ConstraintProfile, FeasibilityRow, Verdict,
};
use lefschetz::fpgroup::{
    abelianization, quotient_by_cycles, surface_group, todd_coxeter, GroupPresentation, Outcome, DEFAULT_MAX_COSETS,
};
use lefschetz::invariants::{
    chi_and_betti, endo_nagami_total, euler_characteristic, format_ratio, hyperelliptic_signature,
    signature_bound_check, twist_count_congruence, Betti, FiberCounts, SignatureLedger,
};
use lefschetz::mcg::{audit_factorization, MatrixCheck};
use serde::Serialize;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lefschetz", version, about = "Monodromy factorizations of Lefschetz fibrations")]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a .mono factorization in the symplectic representation.
    Verify {
        file: String,
        /// Also check the hyperelliptic twist-count congruence.
        #[arg(long)]
        hyperelliptic: bool,
    },
    /// Euler characteristic, signature and Betti numbers from fiber counts.
    Invariants(InvariantsArgs),
    /// List fiber counts that pass the constraint system.
    Enumerate {
        #[arg(long)]
        genus: u32,
        /// Strict bound: only counts with n + s < B are considered.
        #[arg(long = "max-fibers", value_name = "B")]
        max_fibers: u64,
        #[arg(long)]
        hyperelliptic: bool,
        #[arg(long = "show-rejected")]
        show_rejected: bool,
    },
    /// Fundamental group of a catalog entry or a .mono file.
    Pi1 {
        source: String,
        #[arg(long = "max-cosets", default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: u64,
    },
    /// Shipped factorizations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Bounds on the minimal number of singular fibers.
    Bounds {
        #[arg(long)]
        genus: u32,
    },
}

#[derive(Debug, Args)]
struct InvariantsArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long)]
    n: u64,
    /// Separating counts as `h:count`; written `--s<h> <count>` on the
    /// command line.
    #[arg(long = "sep", value_name = "H:COUNT", hide = true)]
    sep: Vec<String>,
    #[arg(long)]
    hyperelliptic: bool,
    /// Signature ledger, e.g. `mats*1,block:-6*1,sep*-3`.
    #[arg(long)]
    ledger: Option<String>,
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
    Export { name: String },
}

/// Exit code plus what goes to standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure(String);

type Res = Result<(i32, String), Failure>;

/// Rewrites `--s<h> v` and `--s<h>=v` into the internal `--sep h:v`.
fn expand_separating_flags(args: Vec<String>) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut it = args.into_iter().peekable();
    while let Some(a) = it.next() {
        let rest = a.strip_prefix("--s").filter(|r| r.starts_with(|c: char| c.is_ascii_digit()));
        match rest {
            Some(r) => {
                let (h, v) = match r.split_once('=') {
                    Some((h, v)) => (h.to_string(), Some(v.to_string())),
                    None => (r.to_string(), it.next()),
                };
                if h.chars().all(|c| c.is_ascii_digit()) {
                    out.push("--sep".to_string());
                    out.push(format!("{h}:{}", v.unwrap_or_default()));
                } else {
                    out.push(a);
                }
            }
            None => out.push(a),
        }
    }
    out
}

/// Runs the command line `args` (program name first).
pub fn run<I, S>(args: I) -> RunOutput
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args = expand_separating_flags(args.into_iter().map(Into::into).collect());
    let json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                RunOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                error_output(json, text.trim_end())
            };
        }
    };
    let result = match cli.command {
        Command::Verify { file, hyperelliptic } => verify(&file, hyperelliptic, cli.json),
        Command::Invariants(a) => invariants(a, cli.json),
        Command::Enumerate {
            genus,
            max_fibers,
            hyperelliptic,
            show_rejected,
        } => enumerate(genus, max_fibers, hyperelliptic, show_rejected, cli.json),
        Command::Pi1 { source, max_cosets } => pi1(&source, max_cosets, cli.json),
        Command::Catalog { action } => catalog_cmd(action, cli.json),
        Command::Bounds { genus } => bounds(genus, cli.json),
    };
    match result {
        Ok((code, stdout)) => RunOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure(msg)) => error_output(cli.json, &msg),
    }
}

fn error_output(json: bool, msg: &str) -> RunOutput {
    RunOutput {
        code: EXIT_USAGE,
        stdout: if json { to_json(&json!({ "error": msg })) } else { String::new() },
        stderr: format!("error: {msg}\n"),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn load_file(path: &str) -> Result<lefschetz::mcg::Factorization, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}")))?;
    mono::parse_mono(&text).map_err(|e| Failure(format!("{path}: {e}")))
}

fn verify(path: &str, hyperelliptic: bool, json: bool) -> Res {
    let f = load_file(path)?;
    let report = audit_factorization(&f, hyperelliptic);
    let code = if report.nothing_refuted() { EXIT_OK } else { EXIT_NEGATIVE };
    if json {
        return Ok((code, to_json(&json!({ "command": "verify", "file": path, "report": report }))));
    }
    let mut out = String::new();
    let spec = f.spec();
    let _ = writeln!(
        out,
        "genus {}, {} boundary, {} letters",
        spec.genus,
        spec.boundary_count,
        f.len()
    );
    match &report.counts {
        Some(c) => {
            let _ = writeln!(out, "counts {c}");
        }
        None => out.push_str("counts n/a (word is not positive)\n"),
    }
    match &report.matrix {
        MatrixCheck::Identity => out.push_str("matrix: identity\n"),
        MatrixCheck::NotIdentity => out.push_str("matrix: NOT identity\n"),
        MatrixCheck::Unavailable { missing } => {
            let _ = writeln!(out, "matrix: unavailable, no class for {}", missing.join(", "));
        }
    }
    if let Some(ok) = report.congruence_ok {
        let _ = writeln!(out, "congruence: {}", if ok { "holds" } else { "FAILS" });
    }
    let _ = writeln!(out, "note: {}", report.note);
    let _ = writeln!(out, "{}", if code == EXIT_OK { "not refuted" } else { "refuted" });
    Ok((code, out))
}

fn parse_separating(genus: u32, sep: &[String]) -> Result<Vec<u64>, Failure> {
    let mut s = vec![0u64; (genus / 2) as usize];
    for item in sep {
        let (h, v) = item
            .split_once(':')
            .ok_or_else(|| Failure(format!("bad separating count `{item}`")))?;
        let h: usize = h.parse().map_err(|_| Failure(format!("bad separating type `{h}`")))?;
        let v: u64 = v.parse().map_err(|_| Failure(format!("--s{h} needs a non-negative integer, got `{v}`")))?;
        if h == 0 || h > s.len() {
            return Err(Failure(format!(
                "--s{h} is outside --s1..--s{} for genus {genus}",
                s.len()
            )));
        }
        s[h - 1] = v;
    }
    Ok(s)
}

#[derive(Serialize)]
struct InvariantsJson<'a> {
    command: &'static str,
    counts: &'a FiberCounts,
    e: i64,
    sigma_source: &'static str,
    sigma: String,
    sigma_integral: bool,
    chi_h: Option<String>,
    betti: Option<Betti>,
    candidate: Option<String>,
    congruence_ok: Option<bool>,
    signature_bound_ok: Option<bool>,
    feasible: bool,
}

fn invariants(a: InvariantsArgs, json: bool) -> Res {
    let s = parse_separating(a.genus, &a.sep)?;
    let counts = FiberCounts::new(a.genus, a.n, s).map_err(|e| Failure(e.to_string()))?;
    let e = euler_characteristic(&counts);
    let (source, sigma, integral) = match (&a.ledger, a.hyperelliptic) {
        (Some(spec), _) => {
            let l = SignatureLedger::parse(spec).map_err(|e| Failure(e.to_string()))?;
            let v = endo_nagami_total(&l);
            ("ledger", v.to_string(), Some(v))
        }
        (None, true) => {
            let hs = hyperelliptic_signature(&counts);
            ("hyperelliptic", format_ratio(&hs.value), hs.as_integer())
        }
        (None, false) => {
            return Err(Failure(
                "signature needs --hyperelliptic or --ledger".to_string(),
            ))
        }
    };
    let report = integral.map(|sigma| chi_and_betti(e, sigma));
    let congruence_ok = a.hyperelliptic.then(|| twist_count_congruence(&counts));
    let bound_ok = integral.map(|s| signature_bound_check(&counts, s, 0));
    let feasible = matches!(report.as_ref().map(|r| r.betti), Some(Betti::Feasible { .. }));
    let code = if feasible { EXIT_OK } else { EXIT_NEGATIVE };
    if json {
        let doc = InvariantsJson {
            command: "invariants",
            counts: &counts,
            e,
            sigma_source: source,
            sigma,
            sigma_integral: integral.is_some(),
            chi_h: report.as_ref().map(|r| format_ratio(&r.chi_h)),
            betti: report.as_ref().map(|r| r.betti),
            candidate: report.as_ref().and_then(|r| r.candidate).map(|c| c.to_string()),
            congruence_ok,
            signature_bound_ok: bound_ok,
            feasible,
        };
        return Ok((code, to_json(&doc)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "genus {}, counts {counts}", a.genus);
    let _ = writeln!(out, "e = {e}");
    let _ = writeln!(out, "sigma = {sigma} ({source})");
    match &report {
        Some(r) => {
            let _ = writeln!(out, "chi_h = {}", format_ratio(&r.chi_h));
            match r.betti {
                Betti::Feasible { b2plus, b2minus } => {
                    let _ = writeln!(out, "(b2+, b2-) = ({b2plus},{b2minus})");
                }
                Betti::Infeasible => out.push_str("(b2+, b2-) infeasible\n"),
            }
            if let Some(c) = r.candidate {
                let _ = writeln!(out, "homeomorphic candidate {c}");
            }
        }
        None => out.push_str("sigma is not an integer: infeasible\n"),
    }
    if let Some(ok) = congruence_ok {
        let _ = writeln!(out, "congruence: {}", if ok { "holds" } else { "fails" });
    }
    if let Some(ok) = bound_ok {
        let _ = writeln!(out, "signature bound: {}", if ok { "holds" } else { "fails" });
    }
    Ok((code, out))
}

fn row_line(r: &FeasibilityRow) -> String {
    let chi = r.chi_h.map_or("?".to_string(), |c| format_ratio(&c));
    let verdict = match r.verdict {
        Verdict::Admitted => "admitted".to_string(),
        Verdict::RejectedBy(c) => format!("rejected: {c}"),
        Verdict::Unresolved => "unresolved (needs sigma)".to_string(),
    };
    format!("{:<14} sigma {:>6}  chi_h {:>6}  {verdict}", r.counts.to_string(), r.sigma.to_string(), chi)
}

fn enumerate(genus: u32, max_fibers: u64, hyperelliptic: bool, show_rejected: bool, json: bool) -> Res {
    let p = ConstraintProfile::new(genus, max_fibers, hyperelliptic).map_err(|e| Failure(e.to_string()))?;
    let rows = enumerate_feasible(&p).map_err(|e| Failure(e.to_string()))?;
    let summary = summarize(&p, &rows);
    let unresolved: Vec<&FeasibilityRow> = rows.iter().filter(|r| r.verdict == Verdict::Unresolved).collect();
    let code = if summary.admitted.is_empty() && unresolved.is_empty() {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    };
    if json {
        let rejected: Vec<&FeasibilityRow> = if show_rejected {
            rows.iter().filter(|r| matches!(r.verdict, Verdict::RejectedBy(_))).collect()
        } else {
            Vec::new()
        };
        let doc = json!({
            "command": "enumerate",
            "summary": summary,
            "unresolved": unresolved,
            "rejected": rejected,
        });
        return Ok((code, to_json(&doc)));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "genus {genus}, n + s < {max_fibers}, {}; {} count vectors examined",
        if hyperelliptic { "hyperelliptic" } else { "any monodromy" },
        summary.rows_examined
    );
    if hyperelliptic {
        let _ = writeln!(out, "passing all constraints before chi_h: {}", summary.pre_chi.len());
        for r in &summary.pre_chi {
            let _ = writeln!(out, "  {}", row_line(r));
        }
        let _ = writeln!(out, "admitted: {}", summary.admitted.len());
        for r in &summary.admitted {
            let _ = writeln!(out, "  {}", row_line(r));
        }
        for d in &summary.discrepancies {
            let _ = writeln!(out, "note {}: {}", d.counts, d.note);
        }
    } else {
        let _ = writeln!(out, "passing the sigma-free constraints: {}", unresolved.len());
        for r in &unresolved {
            let _ = writeln!(out, "  {}", row_line(r));
        }
    }
    if show_rejected {
        out.push_str("rejected:\n");
        for r in rows.iter().filter(|r| matches!(r.verdict, Verdict::RejectedBy(_))) {
            let _ = writeln!(out, "  {}", row_line(r));
        }
    }
    Ok((code, out))
}

fn presentation_for(source: &str) -> Result<(String, GroupPresentation), Failure> {
    if let Some(e) = catalog::entry(source) {
        return catalog::pi1_presentation(source)
            .map(|p| (e.name.clone(), p))
            .map_err(|err| Failure(err.to_string()));
    }
    if !Path::new(source).exists() {
        return Err(Failure(format!("`{source}` is neither a catalog entry nor a file")));
    }
    let f = load_file(source)?;
    let words: Vec<_> = f.curves().iter().filter_map(|c| c.pi1_word().cloned()).collect();
    if words.is_empty() {
        return Err(Failure(format!("{source}: no curve carries a word")));
    }
    let p = quotient_by_cycles(&surface_group(f.spec().genus), &words).map_err(|e| Failure(e.to_string()))?;
    Ok((source.to_string(), p))
}

fn pi1(source: &str, max_cosets: u64, json: bool) -> Res {
    let (name, p) = presentation_for(source)?;
    let ab = abelianization(&p);
    let result = todd_coxeter(&p, max_cosets);
    let code = match result.outcome {
        Outcome::Order(_) => EXIT_OK,
        Outcome::Exceeded(_) => EXIT_NEGATIVE,
    };
    if json {
        let doc = json!({
            "command": "pi1",
            "source": name,
            "generators": p.generators().len(),
            "relators": p.relators().len(),
            "abelianization": ab,
            "abelianization_text": ab.to_string(),
            "enumeration": result,
        });
        return Ok((code, to_json(&doc)));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{name}: {} generators, {} relators",
        p.generators().len(),
        p.relators().len()
    );
    let _ = writeln!(out, "abelianization {ab}");
    match result.outcome {
        Outcome::Order(k) => {
            let _ = writeln!(out, "order {k} ({} cosets defined)", result.cosets_defined);
        }
        Outcome::Exceeded(k) => {
            let _ = writeln!(out, "undecided: more than {k} cosets needed");
        }
    }
    Ok((code, out))
}

#[derive(Serialize)]
struct EntrySummary<'a> {
    name: &'a str,
    aliases: &'a [String],
    genus: u32,
    boundary: u32,
    letters: usize,
    counts: &'a FiberCounts,
    hyperelliptic: bool,
    description: &'a str,
}

fn entry_summary(e: &CatalogEntry) -> EntrySummary<'_> {
    EntrySummary {
        name: &e.name,
        aliases: &e.aliases,
        genus: e.spec().genus,
        boundary: e.spec().boundary_count,
        letters: e.factorization.len(),
        counts: &e.declared_counts,
        hyperelliptic: e.hyperelliptic,
        description: &e.description,
    }
}

fn catalog_cmd(action: CatalogAction, json: bool) -> Res {
    match action {
        CatalogAction::List => {
            let entries: Vec<_> = load_catalog().iter().map(entry_summary).collect();
            if json {
                return Ok((EXIT_OK, to_json(&json!({ "command": "catalog list", "entries": entries }))));
            }
            let mut out = String::new();
            for e in &entries {
                let _ = writeln!(
                    out,
                    "{:<3} genus {} letters {:>2} counts {:<10} {}",
                    e.name,
                    e.genus,
                    e.letters,
                    e.counts.to_string(),
                    e.description
                );
            }
            Ok((EXIT_OK, out))
        }
        CatalogAction::Show { name } => {
            let e = catalog::lookup(&name).map_err(|e| Failure(e.to_string()))?;
            let audit = audit_entry(e);
            let report = catalog::invariant_report(&e.name).ok();
            let code = if audit.passed() { EXIT_OK } else { EXIT_NEGATIVE };
            if json {
                let doc = json!({
                    "command": "catalog show",
                    "entry": entry_summary(e),
                    "letters": e.factorization.letter_names(),
                    "notes": e.notes,
                    "audit": audit,
                    "invariants": report,
                });
                return Ok((code, to_json(&doc)));
            }
            let mut out = String::new();
            let _ = writeln!(out, "{}: {}", e.name, e.description);
            if !e.aliases.is_empty() {
                let _ = writeln!(out, "aliases: {}", e.aliases.join(", "));
            }
            let _ = writeln!(out, "genus {}, boundary {}", e.spec().genus, e.spec().boundary_count);
            let _ = writeln!(out, "word: {}", e.factorization.letter_names().join(" "));
            let _ = writeln!(out, "counts {} (tally {})", e.declared_counts, if audit.tally_ok { "ok" } else { "MISMATCH" });
            for row in &audit.word_kinds {
                let _ = writeln!(
                    out,
                    "  {:<7} {:<8} word {}",
                    row.curve,
                    row.declared.to_string(),
                    if row.consistent { "consistent" } else { "INCONSISTENT" }
                );
            }
            if let Some(ok) = audit.congruence_ok {
                let _ = writeln!(out, "congruence: {}", if ok { "holds" } else { "fails" });
            }
            if let Some(r) = report {
                let _ = write!(out, "e = {}, sigma = {}, chi_h = {}", r.e, r.sigma, format_ratio(&r.chi_h));
                match r.betti {
                    Betti::Feasible { b2plus, b2minus } => {
                        let _ = writeln!(out, ", (b2+, b2-) = ({b2plus},{b2minus})");
                    }
                    Betti::Infeasible => out.push_str(", Betti numbers infeasible for a simply connected total space\n"),
                }
            }
            for n in &e.notes {
                let _ = writeln!(out, "note: {n}");
            }
            Ok((code, out))
        }
        CatalogAction::Export { name } => {
            let e = catalog::lookup(&name).map_err(|e| Failure(e.to_string()))?;
            let text = mono::export_entry(e);
            if json {
                return Ok((EXIT_OK, to_json(&json!({ "command": "catalog export", "name": e.name, "mono": text }))));
            }
            Ok((EXIT_OK, text))
        }
    }
}

fn bounds(genus: u32, json: bool) -> Res {
    let report = min_fiber_bounds(genus).map_err(|e| Failure(e.to_string()))?;
    if json {
        return Ok((EXIT_OK, to_json(&json!({ "command": "bounds", "report": report }))));
    }
    Ok((EXIT_OK, report.to_string()))
}
