//! The `.mono` factorization file format.
//!
//! ```text
//! # comment
//! genus 1
//! boundary 0
//! curve a kind nonsep hom 1 0 word a1
//! curve b kind nonsep hom 0 1
//! twist a
//! twist b -
//! target identity
//! ```
//!
//! `genus` and `boundary` come first, then `curve` lines, then `twist`
//! lines, then a single `target` line (`identity` or one or more
//! `boundary <index> <exponent>` groups). Everything after `word` up to the
//! end of the line is a word over `a1 b1 ... ag bg`.

use std::fmt::Write as _;

use lefschetz::catalog::CatalogEntry;
use lefschetz::mcg::{Factorization, Sign, Target, TwistLetter};
use lefschetz::surface::{surface_generator_index, CurveClass, CurveKind, HomologyClass, SurfaceSpec};
use lefschetz::word::Word;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct MonoError {
    pub line: usize,
    pub column: usize,
    pub kind: MonoErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("undeclared curve `{0}`")]
    UndeclaredCurve(String),
    #[error("duplicate curve `{0}`")]
    DuplicateCurve(String),
    #[error("{0}")]
    Invalid(String),
    #[error("unexpected end of file: {0}")]
    Eof(&'static str),
}

/// A whitespace-separated token with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Tok {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.find('#').map_or(line, |i| &line[..i])
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '@'))
}

struct Cursor<'a> {
    line: usize,
    toks: Vec<Tok<'a>>,
    pos: usize,
    /// Column just past the last token, for errors at end of line.
    end: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, column: usize, kind: MonoErrorKind) -> MonoError {
        MonoError {
            line: self.line,
            column,
            kind,
        }
    }

    fn syntax(&self, column: usize, msg: impl Into<String>) -> MonoError {
        self.err(column, MonoErrorKind::Syntax(msg.into()))
    }

    fn next(&mut self, what: &str) -> Result<Tok<'a>, MonoError> {
        let t = self
            .toks
            .get(self.pos)
            .copied()
            .ok_or_else(|| self.syntax(self.end, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).copied()
    }

    fn keyword(&mut self, kw: &str) -> Result<Tok<'a>, MonoError> {
        let t = self.next(&format!("`{kw}`"))?;
        if t.text != kw {
            return Err(self.syntax(t.column, format!("expected `{kw}`, found `{}`", t.text)));
        }
        Ok(t)
    }

    fn int<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, MonoError> {
        let t = self.next(what)?;
        t.text
            .parse()
            .map_err(|_| self.syntax(t.column, format!("expected {what}, found `{}`", t.text)))
    }

    fn finish(&self) -> Result<(), MonoError> {
        match self.peek() {
            Some(t) => Err(self.syntax(t.column, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Curves,
    Twists,
    Done,
}

/// Parses a `.mono` file into a factorization.
pub fn parse_mono(text: &str) -> Result<Factorization, MonoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let body = strip_comment(raw);
            let toks = tokenize(body);
            let end = body.trim_end().chars().count() + 1;
            Cursor {
                line: i + 1,
                toks,
                pos: 0,
                end,
            }
        })
        .filter(|c| !c.toks.is_empty());
    let last_line = text.lines().count().max(1);
    let eof = |what| MonoError {
        line: last_line,
        column: 1,
        kind: MonoErrorKind::Eof(what),
    };

    let mut c = lines.next().ok_or_else(|| eof("expected `genus`"))?;
    c.keyword("genus")?;
    let genus: u32 = c.int("a non-negative genus")?;
    c.finish()?;
    let mut c = lines.next().ok_or_else(|| eof("expected `boundary`"))?;
    c.keyword("boundary")?;
    let boundary: u32 = c.int("a non-negative boundary count")?;
    c.finish()?;
    let spec = SurfaceSpec::new(genus, boundary);

    let mut curves: Vec<CurveClass> = Vec::new();
    let mut letters: Vec<TwistLetter> = Vec::new();
    let mut target: Option<(Target, usize)> = None;
    let mut section = Section::Curves;

    for mut c in lines {
        let head = c.next("a statement")?;
        match head.text {
            "curve" => {
                if section > Section::Curves {
                    return Err(c.syntax(head.column, "`curve` must come before `twist` and `target`"));
                }
                let curve = parse_curve(&mut c, spec)?;
                if curves.iter().any(|x| x.name() == curve.name()) {
                    return Err(c.err(c.toks[1].column, MonoErrorKind::DuplicateCurve(curve.name().to_string())));
                }
                curves.push(curve);
            }
            "twist" => {
                if section > Section::Twists {
                    return Err(c.syntax(head.column, "`twist` after `target`"));
                }
                section = Section::Twists;
                let name = c.next("a curve name")?;
                let curve = curves
                    .iter()
                    .position(|x| x.name() == name.text)
                    .ok_or_else(|| c.err(name.column, MonoErrorKind::UndeclaredCurve(name.text.to_string())))?;
                let sign = match c.peek() {
                    None => Sign::Positive,
                    Some(t) => {
                        c.pos += 1;
                        match t.text {
                            "+" => Sign::Positive,
                            "-" => Sign::Negative,
                            other => return Err(c.syntax(t.column, format!("expected `+` or `-`, found `{other}`"))),
                        }
                    }
                };
                c.finish()?;
                letters.push(TwistLetter { curve, sign });
            }
            "target" => {
                if section == Section::Done {
                    return Err(c.syntax(head.column, "more than one `target`"));
                }
                section = Section::Done;
                target = Some((parse_target(&mut c)?, c.line));
            }
            other => {
                return Err(c.syntax(
                    head.column,
                    format!("expected `curve`, `twist` or `target`, found `{other}`"),
                ))
            }
        }
    }
    let (target, target_line) = target.ok_or_else(|| eof("expected `target`"))?;
    Factorization::new(spec, curves, letters, target).map_err(|e| MonoError {
        line: target_line,
        column: 1,
        kind: MonoErrorKind::Invalid(e.to_string()),
    })
}

fn parse_curve(c: &mut Cursor<'_>, spec: SurfaceSpec) -> Result<CurveClass, MonoError> {
    let name = c.next("a curve name")?;
    if !is_valid_name(name.text) {
        return Err(c.syntax(name.column, format!("invalid curve name `{}`", name.text)));
    }
    c.keyword("kind")?;
    let k = c.next("a curve kind")?;
    let kind = match k.text {
        "nonsep" => CurveKind::Nonseparating,
        "sep" => CurveKind::Separating(c.int("a separating type")?),
        "boundary" => CurveKind::BoundaryParallel(c.int("a boundary index")?),
        other => {
            return Err(c.syntax(
                k.column,
                format!("expected `nonsep`, `sep` or `boundary`, found `{other}`"),
            ))
        }
    };
    let mut homology = None;
    let mut word = None;
    if c.peek().is_some_and(|t| t.text == "hom") {
        c.pos += 1;
        let mut coords = Vec::with_capacity(spec.rank());
        for _ in 0..spec.rank() {
            coords.push(c.int::<i64>("an integer coordinate")?);
        }
        homology = Some(HomologyClass::new(coords));
    }
    if let Some(t) = c.peek() {
        if t.text != "word" {
            return Err(c.syntax(t.column, format!("expected `hom` or `word`, found `{}`", t.text)));
        }
        c.pos += 1;
        let first = c.peek().ok_or_else(|| c.syntax(c.end, "expected word tokens"))?;
        let words: Vec<&str> = c.toks[c.pos..].iter().map(|t| t.text).collect();
        let text = words.join(" ");
        let parsed = Word::parse_with(&text, |g| surface_generator_index(g, spec.genus)).map_err(|e| {
            let offset = word_column(&c.toks[c.pos..], e.column());
            c.syntax(offset.unwrap_or(first.column), e.to_string())
        })?;
        c.pos = c.toks.len();
        word = Some(parsed);
    }
    CurveClass::new(name.text, kind, homology, word, spec)
        .map_err(|e| c.err(name.column, MonoErrorKind::Invalid(e.to_string())))
}

/// Maps a column in the space-joined word text back to the line.
fn word_column(toks: &[Tok<'_>], column: usize) -> Option<usize> {
    let mut at = 1;
    for t in toks {
        let len = t.text.chars().count();
        if column < at + len + 1 {
            return Some(t.column + column.saturating_sub(at));
        }
        at += len + 1;
    }
    None
}

fn parse_target(c: &mut Cursor<'_>) -> Result<Target, MonoError> {
    let first = c.next("`identity` or `boundary`")?;
    if first.text == "identity" {
        c.finish()?;
        return Ok(Target::Identity);
    }
    c.pos -= 1;
    let mut parts = Vec::new();
    while c.peek().is_some() {
        c.keyword("boundary")?;
        let index: u32 = c.int("a boundary index")?;
        let exponent: i64 = c.int("an exponent")?;
        parts.push((index, exponent));
    }
    Ok(Target::Boundary(parts))
}

fn kind_text(kind: CurveKind) -> String {
    match kind {
        CurveKind::Nonseparating => "nonsep".to_string(),
        CurveKind::Separating(h) => format!("sep {h}"),
        CurveKind::BoundaryParallel(i) => format!("boundary {i}"),
    }
}

/// Serializes a factorization. `header` lines become comments.
pub fn write_mono(f: &Factorization, header: &[String]) -> String {
    let spec = f.spec();
    let names = spec.generator_names();
    let mut out = String::new();
    for h in header {
        for line in h.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "genus {}", spec.genus);
    let _ = writeln!(out, "boundary {}", spec.boundary_count);
    for c in f.curves() {
        let _ = write!(out, "curve {} kind {}", c.name(), kind_text(c.kind()));
        if let Some(h) = c.homology() {
            out.push_str(" hom");
            for x in h.coords() {
                let _ = write!(out, " {x}");
            }
        }
        if let Some(w) = c.pi1_word() {
            let _ = write!(out, " word {}", w.display_with(&names));
        }
        out.push('\n');
    }
    for l in f.letters() {
        let name = f.curve_of(l).name();
        match l.sign {
            Sign::Positive => {
                let _ = writeln!(out, "twist {name}");
            }
            Sign::Negative => {
                let _ = writeln!(out, "twist {name} -");
            }
        }
    }
    match f.target() {
        Target::Identity => out.push_str("target identity\n"),
        Target::Boundary(parts) => {
            out.push_str("target");
            for (i, n) in parts {
                let _ = write!(out, " boundary {i} {n}");
            }
            out.push('\n');
        }
    }
    out
}

/// `.mono` text for a catalog entry, with its description and notes as
/// comments.
pub fn export_entry(e: &CatalogEntry) -> String {
    let mut header = vec![format!("{}: {}", e.name, e.description)];
    header.push(format!("counts {}", e.declared_counts));
    header.push(format!("hyperelliptic {}", e.hyperelliptic));
    header.extend(e.notes.iter().map(|n| format!("note: {n}")));
    write_mono(&e.factorization, &header)
}
