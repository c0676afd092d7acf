//! Numeric invariants of a Lefschetz fibration over the sphere computed from
//! its singular-fiber data.
//!
//! All arithmetic is exact. Signatures of hyperelliptic fibrations come from
//! the closed formula
//!
//! ```text
//! sigma = -(g+1)/(2g+1) n + sum_h (4h(g-h)/(2g+1) - 1) s_h
//! ```
//!
//! For genus 3 this reads `(-4n + s_1)/7`; closed forms printed elsewhere as
//! `(4n - s)/5` do not agree with it and are not used.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("genus {genus} needs {expected} separating counts, got {got}")]
    SeparatingArity { genus: u32, expected: usize, got: usize },
    #[error("a fibration needs at least one singular fiber")]
    NoSingularFibers,
    #[error("bad ledger term `{term}`: {reason}")]
    Ledger { term: String, reason: &'static str },
}

/// Singular-fiber counts `(n, s_1, ..., s_[g/2])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FiberCounts {
    genus: u32,
    n: u64,
    s: Vec<u64>,
}

impl FiberCounts {
    pub fn new(genus: u32, n: u64, s: Vec<u64>) -> Result<Self, InvariantsError> {
        if genus == 0 {
            return Err(InvariantsError::ZeroGenus);
        }
        let expected = (genus / 2) as usize;
        if s.len() != expected {
            return Err(InvariantsError::SeparatingArity {
                genus,
                expected,
                got: s.len(),
            });
        }
        if n + s.iter().sum::<u64>() == 0 {
            return Err(InvariantsError::NoSingularFibers);
        }
        Ok(FiberCounts { genus, n, s })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Nonseparating vanishing cycles.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Separating counts by type, `s[h-1] = s_h`.
    pub fn s(&self) -> &[u64] {
        &self.s
    }

    pub fn separating_total(&self) -> u64 {
        self.s.iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.n + self.separating_total()
    }
}

impl fmt::Display for FiberCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.n)?;
        for s in &self.s {
            write!(f, ",{s}")?;
        }
        f.write_str(")")
    }
}

/// `e = 4 - 4g + n + s`.
pub fn euler_characteristic(c: &FiberCounts) -> i64 {
    4 - 4 * c.genus as i64 + c.total() as i64
}

/// Exact signature of a hyperelliptic fibration; may be non-integral for
/// counts no fibration realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HyperellipticSignature {
    #[serde(serialize_with = "serialize_ratio")]
    pub value: Rational64,
    pub integral: bool,
}

impl HyperellipticSignature {
    pub fn as_integer(&self) -> Option<i64> {
        self.integral.then(|| self.value.to_integer())
    }
}

pub fn hyperelliptic_signature(c: &FiberCounts) -> HyperellipticSignature {
    let g = c.genus as i64;
    let denom = 2 * g + 1;
    let mut numer = -(g + 1) * c.n as i64;
    for (i, &sh) in c.s.iter().enumerate() {
        let h = i as i64 + 1;
        numer += (4 * h * (g - h) - denom) * sh as i64;
    }
    let value = Rational64::new(numer, denom);
    HyperellipticSignature {
        value,
        integral: value.is_integer(),
    }
}

/// A relator block with a known signature contribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockKind {
    /// Matsumoto's relator for even genus, contributing -4.
    MatsumotoEven,
    /// The relator of a single separating curve, contributing -1.
    SeparatingCurve,
    /// Any other block whose value is known to the caller.
    Named { label: Option<String>, value: i64 },
}

impl BlockKind {
    pub fn contribution(&self) -> i64 {
        match self {
            BlockKind::MatsumotoEven => -4,
            BlockKind::SeparatingCurve => -1,
            BlockKind::Named { value, .. } => *value,
        }
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockKind::MatsumotoEven => f.write_str("mats"),
            BlockKind::SeparatingCurve => f.write_str("sep"),
            BlockKind::Named { label: Some(l), value } => write!(f, "block:{value} ({l})"),
            BlockKind::Named { label: None, value } => write!(f, "block:{value}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub block: BlockKind,
    /// Negative for blocks cancelled out of the monodromy.
    pub multiplicity: i64,
}

/// Additive signature bookkeeping over relator blocks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SignatureLedger {
    pub entries: Vec<LedgerEntry>,
}

impl SignatureLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, block: BlockKind, multiplicity: i64) -> Self {
        self.entries.push(LedgerEntry { block, multiplicity });
        self
    }

    /// Parses comma-separated `kind*mult` terms, kinds `mats`, `sep` and
    /// `block:<int>`. Example: `mats*1,block:-6*1,sep*-3`.
    pub fn parse(spec: &str) -> Result<Self, InvariantsError> {
        let mut ledger = SignatureLedger::new();
        for raw in spec.split(',') {
            let term = raw.trim();
            let err = |reason| InvariantsError::Ledger {
                term: term.to_string(),
                reason,
            };
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (kind, mult) = term.rsplit_once('*').ok_or_else(|| err("expected `kind*mult`"))?;
            let multiplicity: i64 = mult.trim().parse().map_err(|_| err("multiplicity is not an integer"))?;
            let block = match kind.trim() {
                "mats" => BlockKind::MatsumotoEven,
                "sep" => BlockKind::SeparatingCurve,
                other => {
                    let v = other.strip_prefix("block:").ok_or_else(|| err("unknown block kind"))?;
                    let value = v.trim().parse().map_err(|_| err("block value is not an integer"))?;
                    BlockKind::Named { label: None, value }
                }
            };
            ledger = ledger.with(block, multiplicity);
        }
        Ok(ledger)
    }
}

pub fn endo_nagami_total(l: &SignatureLedger) -> i64 {
    l.entries.iter().map(|e| e.multiplicity * e.block.contribution()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Betti {
    Feasible { b2plus: i64, b2minus: i64 },
    /// No non-negative integer solution with `b1 = 0`.
    Infeasible,
}

/// `CP^2 # k (-CP^2)`, the homeomorphism type picked out by `b2+ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalSurface {
    pub blowups: i64,
}

impl fmt::Display for RationalSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blowups == 0 {
            f.write_str("CP²")
        } else {
            write!(f, "CP²#{}CP̄²", self.blowups)
        }
    }
}

impl Serialize for RationalSurface {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub e: i64,
    pub sigma: i64,
    #[serde(serialize_with = "serialize_ratio")]
    pub chi_h: Rational64,
    pub betti: Betti,
    pub candidate: Option<RationalSurface>,
}

/// `chi_h` and `(b2+, b2-)` assuming `b1 = 0`.
pub fn chi_and_betti(e: i64, sigma: i64) -> InvariantReport {
    let chi_h = Rational64::new(e + sigma, 4);
    let plus2 = e - 2 + sigma;
    let minus2 = e - 2 - sigma;
    let betti = if plus2.is_even() && plus2 >= 0 && minus2 >= 0 {
        Betti::Feasible {
            b2plus: plus2 / 2,
            b2minus: minus2 / 2,
        }
    } else {
        Betti::Infeasible
    };
    let candidate = match betti {
        Betti::Feasible { b2plus: 1, b2minus } => Some(RationalSurface { blowups: b2minus }),
        _ => None,
    };
    InvariantReport {
        e,
        sigma,
        chi_h,
        betti,
        candidate,
    }
}

/// `4(2g+1)` for odd genus, `2(2g+1)` for even genus.
pub fn congruence_modulus(genus: u32) -> u64 {
    let base = 2 * genus as u64 + 1;
    if genus % 2 == 1 {
        4 * base
    } else {
        2 * base
    }
}

/// Weighted twist count `n + sum_h 2h(4h+2) s_h`.
pub fn weighted_twist_count(c: &FiberCounts) -> u64 {
    c.n + c
        .s
        .iter()
        .enumerate()
        .map(|(i, &sh)| {
            let h = i as u64 + 1;
            2 * h * (4 * h + 2) * sh
        })
        .sum::<u64>()
}

/// Congruence satisfied by every hyperelliptic fibration.
pub fn twist_count_congruence(c: &FiberCounts) -> bool {
    weighted_twist_count(c).is_multiple_of(congruence_modulus(c.genus))
}

/// `sigma <= n - s - 2(2g - b1)`.
pub fn signature_bound_check(c: &FiberCounts, sigma: i64, b1: i64) -> bool {
    let bound = c.n as i64 - c.separating_total() as i64 - 2 * (2 * c.genus as i64 - b1);
    sigma <= bound
}

/// Lower bound on `n` for a simply connected total space.
pub fn min_nonseparating_bound(genus: u32) -> u64 {
    4 * genus as u64
}

pub(crate) fn serialize_ratio<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

/// `-7`, `1/2`, `-3/4`.
pub fn format_ratio(r: &Rational64) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}{}/{}", if r.is_negative() { "-" } else { "" }, r.numer().abs(), r.denom())
    }
}

/// Exact rational as f64, for display only.
pub fn ratio_to_f64(r: &Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fc(g: u32, n: u64, s: &[u64]) -> FiberCounts {
        FiberCounts::new(g, n, s.to_vec()).unwrap()
    }

    #[test]
    fn counts_validation() {
        assert_eq!(FiberCounts::new(0, 1, vec![]), Err(InvariantsError::ZeroGenus));
        assert!(matches!(
            FiberCounts::new(4, 1, vec![1]),
            Err(InvariantsError::SeparatingArity { expected: 2, .. })
        ));
        assert_eq!(FiberCounts::new(2, 0, vec![0]), Err(InvariantsError::NoSingularFibers));
        assert!(FiberCounts::new(1, 12, vec![]).is_ok());
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(&fc(4, 18, &[5, 0])), 11);
        assert_eq!(euler_characteristic(&fc(4, 18, &[6, 0])), 12);
        assert_eq!(euler_characteristic(&fc(1, 12, &[])), 12);
    }

    #[test]
    fn hyperelliptic_signature_examples() {
        assert_eq!(hyperelliptic_signature(&fc(4, 18, &[6, 0])).as_integer(), Some(-8));
        assert_eq!(hyperelliptic_signature(&fc(3, 12, &[6])).as_integer(), Some(-6));
        assert_eq!(hyperelliptic_signature(&fc(2, 8, &[6])).as_integer(), Some(-6));
        let frac = hyperelliptic_signature(&fc(2, 1, &[0]));
        assert!(!frac.integral);
        assert_eq!(frac.value, Rational64::new(-3, 5));
        assert_eq!(frac.as_integer(), None);
    }

    #[test]
    fn ledger_examples() {
        let x1 = SignatureLedger::new()
            .with(BlockKind::MatsumotoEven, 1)
            .with(
                BlockKind::Named {
                    label: Some("W".into()),
                    value: -6,
                },
                1,
            )
            .with(BlockKind::SeparatingCurve, -3);
        assert_eq!(endo_nagami_total(&x1), -7);
        assert_eq!(endo_nagami_total(&SignatureLedger::new().with(BlockKind::SeparatingCurve, 1)), -1);
        assert_eq!(endo_nagami_total(&SignatureLedger::new()), 0);
    }

    #[test]
    fn ledger_parse() {
        let l = SignatureLedger::parse("mats*1,block:-6*1,sep*-3").unwrap();
        assert_eq!(l.entries.len(), 3);
        assert_eq!(endo_nagami_total(&l), -7);
        assert!(SignatureLedger::parse("").is_err());
        assert!(SignatureLedger::parse("mats").is_err());
        assert!(SignatureLedger::parse("foo*1").is_err());
        assert!(SignatureLedger::parse("block:x*1").is_err());
        assert!(SignatureLedger::parse("sep*1.5").is_err());
    }

    #[test]
    fn chi_betti_examples() {
        let x1 = chi_and_betti(11, -7);
        assert_eq!(x1.betti, Betti::Feasible { b2plus: 1, b2minus: 8 });
        assert_eq!(x1.candidate.unwrap().to_string(), "CP²#8CP̄²");
        assert_eq!(x1.chi_h, Rational64::from_integer(1));
        let x2 = chi_and_betti(12, -8);
        assert_eq!(x2.betti, Betti::Feasible { b2plus: 1, b2minus: 9 });
        assert_eq!(chi_and_betti(4, 0).betti, Betti::Feasible { b2plus: 1, b2minus: 1 });
        // (T^2 x S^2) # 3(-CP^2) is not simply connected.
        assert_eq!(chi_and_betti(3, -3).betti, Betti::Infeasible);
        assert_eq!(chi_and_betti(5, -2).betti, Betti::Infeasible);
        assert_eq!(chi_and_betti(3, -3).candidate, None);
    }

    #[test]
    fn congruence_examples() {
        assert!(twist_count_congruence(&fc(2, 8, &[6])));
        assert!(twist_count_congruence(&fc(3, 16, &[1])));
        assert!(twist_count_congruence(&fc(4, 18, &[6, 0])));
        assert!(!twist_count_congruence(&fc(4, 18, &[5, 0])));
        assert_eq!(congruence_modulus(3), 28);
        assert_eq!(congruence_modulus(4), 18);
        assert_eq!(weighted_twist_count(&fc(4, 18, &[6, 1])), 18 + 72 + 40);
    }

    #[test]
    fn signature_bound_examples() {
        assert!(signature_bound_check(&fc(4, 18, &[6, 0]), -8, 0));
        assert!(signature_bound_check(&fc(2, 8, &[1]), -5, 0));
        assert!(!signature_bound_check(&fc(2, 4, &[0]), -3, 0));
    }

    #[test]
    fn min_bound_examples() {
        assert_eq!(min_nonseparating_bound(2), 8);
        assert_eq!(min_nonseparating_bound(3), 12);
        assert_eq!(min_nonseparating_bound(4), 16);
    }

    #[test]
    fn ratio_format() {
        assert_eq!(format_ratio(&Rational64::new(-7, 1)), "-7");
        assert_eq!(format_ratio(&Rational64::new(-3, 4)), "-3/4");
        assert_eq!(format_ratio(&Rational64::new(2, 4)), "1/2");
    }
}
