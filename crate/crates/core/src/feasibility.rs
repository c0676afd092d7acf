//! Search over singular-fiber counts `(n, s_1, ..., s_[g/2])` that a
//! Lefschetz fibration on a simply connected 4-manifold could have, and the
//! resulting bounds on the minimal number of singular fibers.
//!
//! `N_g` is the minimum over all genus-`g` fibrations, `M_g` over
//! hyperelliptic ones, so `N_g <= M_g`.

use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::catalog;
use crate::invariants::{
    euler_characteristic, hyperelliptic_signature, min_nonseparating_bound, serialize_ratio, signature_bound_check,
    twist_count_congruence, FiberCounts,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeasibilityError {
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("fiber bound must be at least 1")]
    ZeroBound,
    #[error("unsupported profile: {0}")]
    UnsupportedProfile(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstraintProfile {
    pub genus: u32,
    /// Strict: only counts with `n + s < max_total_fibers` are considered.
    pub max_total_fibers: u64,
    pub hyperelliptic: bool,
    pub simply_connected: bool,
}

impl ConstraintProfile {
    pub fn new(genus: u32, max_total_fibers: u64, hyperelliptic: bool) -> Result<Self, FeasibilityError> {
        if genus == 0 {
            return Err(FeasibilityError::ZeroGenus);
        }
        if max_total_fibers == 0 {
            return Err(FeasibilityError::ZeroBound);
        }
        Ok(ConstraintProfile {
            genus,
            max_total_fibers,
            hyperelliptic,
            simply_connected: true,
        })
    }

    pub fn hyperelliptic(genus: u32, max_total_fibers: u64) -> Result<Self, FeasibilityError> {
        ConstraintProfile::new(genus, max_total_fibers, true)
    }

    fn validate(&self) -> Result<(), FeasibilityError> {
        if self.genus == 0 {
            return Err(FeasibilityError::ZeroGenus);
        }
        if self.max_total_fibers == 0 {
            return Err(FeasibilityError::ZeroBound);
        }
        if !self.simply_connected {
            return Err(FeasibilityError::UnsupportedProfile(
                "only simply connected total spaces are modelled",
            ));
        }
        Ok(())
    }
}

/// Constraints in evaluation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    TotalBound,
    MinNonseparating,
    Congruence,
    SigmaIntegral,
    SignatureBound,
    ChiH,
}

impl Constraint {
    pub const ORDER: [Constraint; 6] = [
        Constraint::TotalBound,
        Constraint::MinNonseparating,
        Constraint::Congruence,
        Constraint::SigmaIntegral,
        Constraint::SignatureBound,
        Constraint::ChiH,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Constraint::TotalBound => "total_bound",
            Constraint::MinNonseparating => "min_nonseparating",
            Constraint::Congruence => "congruence",
            Constraint::SigmaIntegral => "sigma_integral",
            Constraint::SignatureBound => "signature_bound",
            Constraint::ChiH => "chi_h",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Constraint::TotalBound => "n + s below the bound",
            Constraint::MinNonseparating => "n >= 4g",
            Constraint::Congruence => "hyperelliptic twist-count congruence",
            Constraint::SigmaIntegral => "signature is an integer",
            Constraint::SignatureBound => "sigma <= n - s - 4g",
            Constraint::ChiH => "chi_h is an integer >= 1",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "constraint", rename_all = "snake_case")]
pub enum Verdict {
    Admitted,
    RejectedBy(Constraint),
    /// Passed every constraint that does not need the signature.
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sigma {
    Integer(i64),
    NonInteger(Rational64),
    /// Not derivable from counts (nonhyperelliptic profile).
    Unknown,
}

impl Serialize for Sigma {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Sigma::Integer(v) => s.serialize_i64(*v),
            Sigma::NonInteger(r) => s.serialize_str(&crate::invariants::format_ratio(r)),
            Sigma::Unknown => s.serialize_none(),
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::Integer(v) => write!(f, "{v}"),
            Sigma::NonInteger(r) => f.write_str(&crate::invariants::format_ratio(r)),
            Sigma::Unknown => f.write_str("?"),
        }
    }
}

fn serialize_opt_ratio<S: Serializer>(r: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => serialize_ratio(r, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityRow {
    pub counts: FiberCounts,
    pub sigma: Sigma,
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub chi_h: Option<Rational64>,
    pub verdict: Verdict,
}

impl FeasibilityRow {
    pub fn is_admitted(&self) -> bool {
        self.verdict == Verdict::Admitted
    }

    /// Passed everything before the `chi_h` stage.
    pub fn survives_pre_chi(&self) -> bool {
        matches!(self.verdict, Verdict::Admitted | Verdict::RejectedBy(Constraint::ChiH))
    }
}

/// Evaluates the constraints on `c` in the fixed order and records the
/// first failure.
pub fn check_counts(c: &FiberCounts, p: &ConstraintProfile) -> Result<FeasibilityRow, FeasibilityError> {
    p.validate()?;
    if c.genus() != p.genus {
        return Err(FeasibilityError::UnsupportedProfile("counts and profile disagree on the genus"));
    }
    Ok(evaluate(c.clone(), p))
}

fn evaluate(c: FiberCounts, p: &ConstraintProfile) -> FeasibilityRow {
    let reject = |c: FiberCounts, sigma, chi_h, k| FeasibilityRow {
        counts: c,
        sigma,
        chi_h,
        verdict: Verdict::RejectedBy(k),
    };
    if c.total() >= p.max_total_fibers {
        return reject(c, Sigma::Unknown, None, Constraint::TotalBound);
    }
    if c.n() < min_nonseparating_bound(p.genus) {
        return reject(c, Sigma::Unknown, None, Constraint::MinNonseparating);
    }
    if !p.hyperelliptic {
        return FeasibilityRow {
            counts: c,
            sigma: Sigma::Unknown,
            chi_h: None,
            verdict: Verdict::Unresolved,
        };
    }
    if !twist_count_congruence(&c) {
        return reject(c, Sigma::Unknown, None, Constraint::Congruence);
    }
    let hs = hyperelliptic_signature(&c);
    let e = euler_characteristic(&c);
    let chi_h = (Rational64::from_integer(e) + hs.value) / 4;
    let Some(sigma) = hs.as_integer() else {
        return reject(c, Sigma::NonInteger(hs.value), Some(chi_h), Constraint::SigmaIntegral);
    };
    if !signature_bound_check(&c, sigma, 0) {
        return reject(c, Sigma::Integer(sigma), Some(chi_h), Constraint::SignatureBound);
    }
    if !chi_h.is_integer() || chi_h < Rational64::from_integer(1) {
        return reject(c, Sigma::Integer(sigma), Some(chi_h), Constraint::ChiH);
    }
    FeasibilityRow {
        counts: c,
        sigma: Sigma::Integer(sigma),
        chi_h: Some(chi_h),
        verdict: Verdict::Admitted,
    }
}

/// All `s` vectors of length `len` with sum below `limit`, lexicographic.
fn separating_vectors(len: usize, limit: u64) -> Vec<Vec<u64>> {
    fn go(prefix: &mut Vec<u64>, left: usize, limit: u64, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for v in 0..limit {
            prefix.push(v);
            go(prefix, left - 1, limit - v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if limit > 0 {
        go(&mut Vec::with_capacity(len), len, limit, &mut out);
    }
    out
}

fn rows_for_n(p: &ConstraintProfile, n: u64) -> Vec<FeasibilityRow> {
    let len = (p.genus / 2) as usize;
    separating_vectors(len, p.max_total_fibers - n)
        .into_iter()
        .filter_map(|s| FiberCounts::new(p.genus, n, s).ok())
        .map(|c| evaluate(c, p))
        .collect()
}

/// Every count vector with `1 <= n + s < max_total_fibers`, evaluated, in
/// lexicographic order of `(n, s_1, s_2, ...)`.
pub fn enumerate_feasible(p: &ConstraintProfile) -> Result<Vec<FeasibilityRow>, FeasibilityError> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        p.validate()?;
        Ok((0..p.max_total_fibers)
            .into_par_iter()
            .flat_map_iter(|n| rows_for_n(p, n))
            .collect())
    }
    #[cfg(not(feature = "parallel"))]
    enumerate_feasible_sequential(p)
}

/// Single-threaded [`enumerate_feasible`].
pub fn enumerate_feasible_sequential(p: &ConstraintProfile) -> Result<Vec<FeasibilityRow>, FeasibilityError> {
    p.validate()?;
    Ok((0..p.max_total_fibers).flat_map(|n| rows_for_n(p, n)).collect())
}

/// Count vectors that pass every constraint but `chi_h`, or all of them,
/// for which the reference candidate lists disagree.
type ListedRows = &'static [(u64, &'static [u64])];

const LISTED_PRE_CHI: &[(u32, u64, ListedRows)] = &[
    (2, 14, &[(8, &[1]), (10, &[0])]),
    (3, 18, &[(16, &[1])]),
    (
        4,
        24,
        &[
            (16, &[0, 5]),
            (16, &[4, 2]),
            (18, &[2, 3]),
            (16, &[1, 2]),
            (18, &[3, 0]),
            (20, &[1, 1]),
        ],
    ),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub counts: FiberCounts,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub profile: ConstraintProfile,
    /// Rows that pass every constraint before the `chi_h` stage.
    pub pre_chi: Vec<FeasibilityRow>,
    pub admitted: Vec<FeasibilityRow>,
    pub discrepancies: Vec<Discrepancy>,
    pub rows_examined: usize,
}

pub fn summarize(p: &ConstraintProfile, rows: &[FeasibilityRow]) -> EnumerationSummary {
    let pre_chi: Vec<FeasibilityRow> = rows.iter().filter(|r| r.survives_pre_chi()).cloned().collect();
    let admitted: Vec<FeasibilityRow> = rows.iter().filter(|r| r.is_admitted()).cloned().collect();
    let listed = LISTED_PRE_CHI
        .iter()
        .find(|(g, b, _)| *g == p.genus && *b == p.max_total_fibers)
        .map(|(_, _, l)| *l);
    let discrepancies = match listed {
        Some(listed) if p.hyperelliptic => pre_chi
            .iter()
            .filter(|r| !listed.iter().any(|(n, s)| r.counts.n() == *n && r.counts.s() == *s))
            .map(|r| Discrepancy {
                counts: r.counts.clone(),
                note: format!(
                    "passes the constraints before chi_h but is missing from the published candidate list; chi_h = {}, {}",
                    r.chi_h.map_or("?".to_string(), |x| crate::invariants::format_ratio(&x)),
                    if r.is_admitted() { "admitted" } else { "rejected at chi_h" }
                ),
            })
            .collect(),
        _ => Vec::new(),
    };
    EnumerationSummary {
        profile: *p,
        pre_chi,
        admitted,
        discrepancies,
        rows_examined: rows.len(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    /// A factorization shipped in the catalog.
    Catalog(String),
    /// A fibration known from the literature, not shipped.
    Cited(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub fibers: u64,
    pub hyperelliptic: bool,
    pub source: WitnessSource,
}

/// `lower <= value <= upper`; `upper` is `None` when unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lower: u64,
    pub upper: Option<u64>,
}

impl Interval {
    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub genus: u32,
    /// Minimal number of singular fibers over all fibrations.
    pub n: Interval,
    /// Same, over hyperelliptic fibrations.
    pub m: Interval,
    pub witnesses: Vec<Witness>,
    pub question: Option<String>,
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.genus;
        if self.n == self.m && self.n.is_exact() {
            writeln!(f, "N_{g} = M_{g} = {}", self.n.lower)?;
        } else {
            for (label, iv) in [("N", self.n), ("M", self.m)] {
                match iv.upper {
                    Some(u) if u == iv.lower => writeln!(f, "{label}_{g} = {u}")?,
                    Some(u) => writeln!(f, "{} ≤ {label}_{g} ≤ {u}", iv.lower)?,
                    None => writeln!(f, "{label}_{g} ≥ {}", iv.lower)?,
                }
            }
        }
        for w in &self.witnesses {
            let src = match &w.source {
                WitnessSource::Catalog(name) => format!("catalog entry {name}"),
                WitnessSource::Cited(what) => what.clone(),
            };
            let kind = if w.hyperelliptic { "hyperelliptic" } else { "nonhyperelliptic" };
            writeln!(f, "witness: {} fibers, {kind}, {src}", w.fibers)?;
        }
        if let Some(q) = &self.question {
            writeln!(f, "open: {q}")?;
        }
        Ok(())
    }
}

fn catalog_witness(name: &str) -> Option<Witness> {
    let entry = catalog::entry(name)?;
    Some(Witness {
        fibers: entry.declared_counts.total(),
        hyperelliptic: entry.hyperelliptic,
        source: WitnessSource::Catalog(name.to_string()),
    })
}

fn witnesses_for(genus: u32) -> Vec<Witness> {
    match genus {
        1 => vec![Witness {
            fibers: 12,
            hyperelliptic: true,
            source: WitnessSource::Cited("elliptic fibration on E(1), (t_a t_b)^6".into()),
        }],
        2 => vec![Witness {
            fibers: 14,
            hyperelliptic: true,
            source: WitnessSource::Cited("genus-2 fibration with (n,s) = (8,6)".into()),
        }],
        3 => catalog_witness("W").into_iter().collect(),
        4 => ["W1", "W2"].iter().filter_map(|n| catalog_witness(n)).collect(),
        _ => Vec::new(),
    }
}

/// Smallest total among admitted hyperelliptic counts below `bound`, or
/// `bound` itself when none exist.
fn hyperelliptic_lower(genus: u32, bound: u64) -> u64 {
    let p = ConstraintProfile::hyperelliptic(genus, bound).expect("genus and bound are positive");
    enumerate_feasible(&p)
        .expect("profile is supported")
        .iter()
        .filter(|r| r.is_admitted())
        .map(|r| r.counts.total())
        .min()
        .unwrap_or(bound)
}

/// Bounds on `N_g` and `M_g`. For `g <= 4` the lower bound on `M_g`
/// comes from the enumerator run up to the smallest hyperelliptic witness
/// and upper bounds come from witnesses; beyond that only generic bounds are
/// known.
pub fn min_fiber_bounds(genus: u32) -> Result<BoundsReport, FeasibilityError> {
    if genus == 0 {
        return Err(FeasibilityError::ZeroGenus);
    }
    let witnesses = witnesses_for(genus);
    let m_upper = witnesses.iter().filter(|w| w.hyperelliptic).map(|w| w.fibers).min();
    let n_upper = witnesses.iter().map(|w| w.fibers).min();
    let generic_n = min_nonseparating_bound(genus);
    let (n, m, question) = match m_upper {
        Some(mu) if genus <= 4 => {
            let m = Interval {
                lower: hyperelliptic_lower(genus, mu),
                upper: Some(mu),
            };
            // Every fibration of genus at most 2 is hyperelliptic.
            let n = if genus <= 2 {
                m
            } else {
                Interval {
                    lower: generic_n,
                    upper: n_upper,
                }
            };
            (n, m, None)
        }
        _ => (
            Interval {
                lower: generic_n,
                upper: n_upper,
            },
            Interval {
                lower: generic_n + 1,
                upper: m_upper,
            },
            Some(format!("is N_{genus} = M_{genus} = 4g+6 = {}?", 4 * genus + 6)),
        ),
    };
    Ok(BoundsReport {
        genus,
        n,
        m,
        witnesses,
        question,
    })
}
