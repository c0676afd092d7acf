//! Named monodromy factorizations with their vanishing-cycle data.
//!
//! Most curves are only known from pictures, so they carry a kind but no
//! homology class. Curves with a known fundamental-group word get their
//! class from the word's abelianization.

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::fpgroup::{quotient_by_cycles, surface_group, GroupPresentation};
use crate::invariants::{
    chi_and_betti, endo_nagami_total, euler_characteristic, hyperelliptic_signature, twist_count_congruence,
    FiberCounts, InvariantReport, SignatureLedger,
};
use crate::mcg::{Factorization, Sign, Target};
use crate::surface::{classify_kind_from_word, homology_of_word, CurveClass, CurveKind, SurfaceSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("no catalog entry named `{0}`")]
    UnknownEntry(String),
    #[error("catalog entry `{0}` has no curve words")]
    NoWordData(String),
    #[error("signature of `{0}` is not determined by its data")]
    NoSignature(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub aliases: Vec<String>,
    pub description: String,
    pub factorization: Factorization,
    pub declared_counts: FiberCounts,
    pub hyperelliptic: bool,
    /// Signature bookkeeping for entries where the hyperelliptic formula
    /// does not apply.
    pub ledger: Option<SignatureLedger>,
    pub notes: Vec<String>,
}

impl CatalogEntry {
    pub fn spec(&self) -> SurfaceSpec {
        self.factorization.spec()
    }

    /// Curves that carry a fundamental-group word.
    pub fn worded_curves(&self) -> impl Iterator<Item = &CurveClass> {
        self.factorization.curves().iter().filter(|c| c.pi1_word().is_some())
    }

    pub fn matches(&self, name: &str) -> bool {
        self.name == name || self.aliases.iter().any(|a| a == name)
    }
}

struct Raw {
    name: &'static str,
    aliases: &'static [&'static str],
    description: &'static str,
    genus: u32,
    letters: &'static [&'static str],
    words: &'static [(&'static str, &'static str)],
    /// Separating curves whose type is not 1.
    types: &'static [(&'static str, u32)],
    target: &'static [(u32, i64)],
    counts: (u64, &'static [u64]),
    hyperelliptic: bool,
    ledger: Option<&'static str>,
    notes: &'static [&'static str],
}

/// Kind from the naming convention of the figures: `d`, `e`, `f` and `C`
/// families are separating, everything else nonseparating.
fn kind_by_family(name: &str, types: &[(&str, u32)]) -> CurveKind {
    if let Some((_, h)) = types.iter().find(|(n, _)| *n == name) {
        return CurveKind::Separating(*h);
    }
    match name.chars().next() {
        Some('d' | 'e' | 'f' | 'C') => CurveKind::Separating(1),
        _ => CurveKind::Nonseparating,
    }
}

const RAW: &[Raw] = &[
    Raw {
        name: "T",
        aliases: &[],
        description: "genus-2 factorization of t_delta1 t_delta2 with (n,s) = (4,3)",
        genus: 2,
        letters: &["e", "x1", "x2", "x3", "d", "B2", "C"],
        words: &[],
        types: &[],
        target: &[(1, 1), (2, 1)],
        counts: (4, &[3]),
        hyperelliptic: true,
        ledger: None,
        notes: &[],
    },
    Raw {
        name: "V2",
        aliases: &[],
        description: "generalized Matsumoto factorization, genus 2",
        genus: 2,
        letters: &["B0", "B1", "B2", "C", "B0", "B1", "B2", "C"],
        words: &[],
        types: &[],
        target: &[(1, 1), (2, 1)],
        counts: (6, &[2]),
        hyperelliptic: true,
        ledger: None,
        notes: &[],
    },
    Raw {
        name: "V4",
        aliases: &[],
        description: "generalized Matsumoto factorization, genus 4",
        genus: 4,
        letters: &["B0", "B1", "B2", "B3", "B4", "C", "B0", "B1", "B2", "B3", "B4", "C"],
        words: &[],
        types: &[("C", 2)],
        target: &[(1, 1), (2, 1)],
        counts: (10, &[0, 2]),
        hyperelliptic: true,
        ledger: None,
        notes: &["C cuts the surface into two genus-2 halves, so it is separating of type 2"],
    },
    Raw {
        name: "W",
        aliases: &["W3"],
        description: "genus-3 factorization with (n,s) = (12,6)",
        genus: 3,
        letters: &[
            "x1", "x2", "x3", "d", "B2", "e'", "x1'", "x2'", "x3'", "d'", "B2'", "C'", "ebar", "x1bar", "x2bar",
            "x3bar", "dbar", "B2bar",
        ],
        words: &[],
        types: &[],
        target: &[(1, 1), (2, 2)],
        counts: (12, &[6]),
        hyperelliptic: true,
        ledger: None,
        notes: &["also known as W3"],
    },
    Raw {
        name: "W1",
        aliases: &[],
        description: "nonhyperelliptic genus-4 factorization with (n,s) = (18,5)",
        genus: 4,
        letters: &[
            "A0''", "A1''", "A2''", "B0''", "B1''", "B2''", "ebar", "x1bar", "x2bar", "x3bar", "dbar", "B2bar", "x1",
            "x2", "x3", "d", "B2", "e'", "x1'", "x2'", "x3'", "d'", "B2'",
        ],
        words: &[
            ("x1", "b1 b2 a2~ a1 b2 a2~ a1"),
            ("x1'", "b2 a2~ a3 b3 b2 a2~ a3"),
            ("x1bar", "a1~ a2 b2 a2~ a3 b3 a3^3 a1~ a2 b2 a2~ a3"),
            ("x2", "a1^2 b1 b2^2 a2~ a1"),
            ("d", "b2~ a1~ a2 b2 a2~ a1"),
            ("d'", "b2 a3~ a2 b2~ a2~ a3"),
            ("B2", "a2~ [a1,b1~] a1~"),
            ("B2'", "a3~ a2 b2~ a2~ [a1,b1~] b2 a2~"),
            ("B2bar", "a3~ a2 b2~ a2~ [a1,b1~] b2^2 a2~"),
            ("B0''", "b3 b4"),
            ("B1''", "a4~ b4~ b3~ a3~"),
            ("B2''", "a3~ [a4,b4] a4~"),
        ],
        types: &[],
        target: &[(1, 1), (2, 1)],
        counts: (18, &[5, 0]),
        hyperelliptic: false,
        ledger: Some("mats*1,block:-6*1,sep*-3"),
        notes: &[
            "the B2'' word is printed as `= 1 = 1`; read as a single relator",
            "signature from the block ledger: -4 - 6 - 3(-1) = -7",
        ],
    },
    Raw {
        name: "W2",
        aliases: &[],
        description: "hyperelliptic genus-4 factorization with (n,s) = (18,6,0)",
        genus: 4,
        letters: &[
            "alpha0", "alpha1", "alpha2", "alpha3", "alpha4", "beta0", "beta1", "beta2", "beta3", "beta4", "f", "y1",
            "y2", "x3", "d", "D2", "C", "e''", "z1", "z2", "z3", "d''", "B2''", "C''",
        ],
        words: &[
            ("beta0", "b1 b2 b3 b4"),
            ("beta1", "a1 b1 b2 b3 b4 a4"),
            ("beta2", "a1 b2 b3 b4 a4 b4~"),
            ("beta3", "a2 b2 b3 [b4,a4] a3"),
            ("beta4", "a3~ a2 b2~ a2~ [a1,b1~] b2 a2~"),
            ("y1", "b1 b2^2 a2~ a1 b2^2 a2~ a1"),
            ("D2", "b2 a2~ [a1,b1~] a1~"),
            ("C", "[a1,b1]"),
            ("z1", "b3 a3~ a4 b4 a4~ b3 a3~ a4"),
            ("C''", "[a4,b4]"),
            ("B2''", "a4~ a3 b3~ a3~ a2 b2~ a2~ [a1,b1~] b2 b3 a3~"),
        ],
        types: &[],
        target: &[(1, 2), (2, 2)],
        counts: (18, &[6, 0]),
        hyperelliptic: true,
        ledger: None,
        notes: &[
            "the beta block is printed as beta0 beta1 beta1 beta3 beta4; transcribed as beta0 beta1 beta2 beta3 beta4, since the genus-4 Matsumoto block and the beta2 word both need beta2",
        ],
    },
];

fn build(raw: &Raw) -> CatalogEntry {
    let spec = SurfaceSpec::new(raw.genus, 2);
    let mut curves: Vec<CurveClass> = Vec::new();
    for (name, text) in raw.words {
        let word = spec.parse_word(text).unwrap_or_else(|e| panic!("{}: word for {name}: {e}", raw.name));
        let class = homology_of_word(&word, spec).expect("word is over the surface generators");
        let kind = kind_by_family(name, raw.types);
        let class = (!kind.is_nullhomologous()).then_some(class);
        let curve = CurveClass::new(*name, kind, class, Some(word), spec)
            .unwrap_or_else(|e| panic!("{}: curve {name}: {e}", raw.name));
        curves.push(curve);
    }
    for name in raw.letters {
        if !curves.iter().any(|c| c.name() == *name) {
            let curve = CurveClass::new(*name, kind_by_family(name, raw.types), None, None, spec)
                .unwrap_or_else(|e| panic!("{}: curve {name}: {e}", raw.name));
            curves.push(curve);
        }
    }
    let word: Vec<(&str, Sign)> = raw.letters.iter().map(|n| (*n, Sign::Positive)).collect();
    let factorization = Factorization::from_names(spec, curves, &word, Target::Boundary(raw.target.to_vec()))
        .unwrap_or_else(|e| panic!("{}: {e}", raw.name));
    let declared_counts = FiberCounts::new(raw.genus, raw.counts.0, raw.counts.1.to_vec()).expect("declared counts");
    let tally = factorization.fiber_counts();
    assert_eq!(tally.as_ref(), Some(&declared_counts), "{}: letter tally disagrees with declared counts", raw.name);
    CatalogEntry {
        name: raw.name.to_string(),
        aliases: raw.aliases.iter().map(|s| s.to_string()).collect(),
        description: raw.description.to_string(),
        factorization,
        declared_counts,
        hyperelliptic: raw.hyperelliptic,
        ledger: raw.ledger.map(|l| SignatureLedger::parse(l).expect("ledger")),
        notes: raw.notes.iter().map(|s| s.to_string()).collect(),
    }
}

/// All entries in catalog order.
pub fn load_catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| RAW.iter().map(build).collect())
}

/// Entry by name or alias.
pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    load_catalog().iter().find(|e| e.matches(name))
}

pub fn lookup(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    entry(name).ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
}

/// Surface group of the closed fiber quotiented by the entry's curve words,
/// in table order.
pub fn pi1_presentation(name: &str) -> Result<GroupPresentation, CatalogError> {
    let e = entry(name).ok_or_else(|| CatalogError::NoWordData(name.to_string()))?;
    let words: Vec<_> = e.worded_curves().filter_map(|c| c.pi1_word().cloned()).collect();
    if words.is_empty() {
        return Err(CatalogError::NoWordData(name.to_string()));
    }
    Ok(quotient_by_cycles(&surface_group(e.spec().genus), &words).expect("words are over the surface generators"))
}

/// Signature of an entry: the ledger total if one is recorded, otherwise
/// the hyperelliptic formula.
pub fn entry_signature(e: &CatalogEntry) -> Result<i64, CatalogError> {
    if let Some(l) = &e.ledger {
        return Ok(endo_nagami_total(l));
    }
    if e.hyperelliptic {
        if let Some(s) = hyperelliptic_signature(&e.declared_counts).as_integer() {
            return Ok(s);
        }
    }
    Err(CatalogError::NoSignature(e.name.clone()))
}

pub fn invariant_report(name: &str) -> Result<InvariantReport, CatalogError> {
    let e = lookup(name)?;
    let sigma = entry_signature(e)?;
    Ok(chi_and_betti(euler_characteristic(&e.declared_counts), sigma))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordKindRow {
    pub curve: String,
    pub declared: CurveKind,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryAudit {
    pub name: String,
    pub letters: usize,
    pub declared_counts: FiberCounts,
    pub tally: Option<FiberCounts>,
    pub tally_ok: bool,
    pub word_kinds: Vec<WordKindRow>,
    /// Present for hyperelliptic entries.
    pub congruence_ok: Option<bool>,
}

impl EntryAudit {
    pub fn passed(&self) -> bool {
        self.tally_ok && self.word_kinds.iter().all(|r| r.consistent) && self.congruence_ok != Some(false)
    }
}

/// Re-checks an entry's letter tally, worded kinds and, for hyperelliptic
/// entries, the twist-count congruence.
pub fn audit_entry(e: &CatalogEntry) -> EntryAudit {
    let tally = e.factorization.fiber_counts();
    let word_kinds = e
        .worded_curves()
        .map(|c| {
            let consistent = c
                .pi1_word()
                .and_then(|w| classify_kind_from_word(w, e.spec()).ok())
                .is_some_and(|check| c.kind().agrees_with(check));
            WordKindRow {
                curve: c.name().to_string(),
                declared: c.kind(),
                consistent,
            }
        })
        .collect();
    EntryAudit {
        name: e.name.clone(),
        letters: e.factorization.len(),
        declared_counts: e.declared_counts.clone(),
        tally_ok: tally.as_ref() == Some(&e.declared_counts),
        tally,
        word_kinds,
        congruence_ok: e.hyperelliptic.then(|| twist_count_congruence(&e.declared_counts)),
    }
}
