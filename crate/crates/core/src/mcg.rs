//! Dehn-twist words and their action on first homology.
//!
//! A factorization is stored left to right as written, `t_1 t_2 ... t_m`.
//! As mapping classes the word composes like functions, so `t_m` acts first
//! and the homology matrix of the word is the matrix product
//! `M(t_1) M(t_2) ... M(t_m)`.
//!
//! A twist about a curve with class `a` acts by the transvection
//! `x -> x + sign <x, a> a`. Only homology data is tracked: Hurwitz moves and
//! conjugations update classes, never actual curves, and every check here is
//! a necessary condition for a word to be a relator in the mapping class
//! group.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::invariants::{twist_count_congruence, FiberCounts};
use crate::surface::{symplectic_pairing, CurveClass, CurveKind, HomologyClass, SurfaceError, SurfaceSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McgError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("curve `{0}` has no homology class")]
    MissingHomology(String),
    #[error("position {position} is out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("integer overflow in the homology action")]
    Overflow,
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("duplicate curve `{0}`")]
    DuplicateCurve(String),
    #[error("letter {position} refers to curve index {index}, table has {len}")]
    BadLetter { position: usize, index: usize, len: usize },
    #[error("invalid target: {0}")]
    InvalidTarget(String),
}

/// Square integer matrix acting on column vectors. Entries are unbounded.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| self.data[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    /// Entries as `i64`, or `None` if one does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.rows()
            .into_iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, McgError> {
        if self.n != other.n {
            return Err(SurfaceError::DimensionMismatch {
                left: self.n,
                right: other.n,
            }
            .into());
        }
        let n = self.n;
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        m.data[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    /// `M x`; errors if a coordinate of the result does not fit in `i64`.
    pub fn apply(&self, x: &HomologyClass) -> Result<HomologyClass, McgError> {
        if x.dim() != self.n {
            return Err(SurfaceError::DimensionMismatch {
                left: self.n,
                right: x.dim(),
            }
            .into());
        }
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut acc = BigInt::zero();
            for (j, &xj) in x.coords().iter().enumerate() {
                if xj != 0 {
                    acc += self.get(i, j) * xj;
                }
            }
            out.push(acc.to_i64().ok_or(McgError::Overflow)?);
        }
        Ok(HomologyClass::new(out))
    }

    /// `M^T J M == J`.
    pub fn is_symplectic(&self) -> bool {
        if !self.n.is_multiple_of(2) {
            return false;
        }
        let j = pairing_matrix(self.n as u32 / 2);
        match self.transpose().mul(&j).and_then(|t| t.mul(self)) {
            Ok(p) => p == j,
            Err(_) => false,
        }
    }

    /// Inverse of a symplectic matrix, `J^-1 M^T J = -J M^T J`.
    pub fn symplectic_inverse(&self) -> Result<IntMatrix, McgError> {
        if !self.is_symplectic() {
            return Err(McgError::NotSymplectic);
        }
        let j = pairing_matrix(self.n as u32 / 2);
        let mut p = j.mul(&self.transpose())?.mul(&j)?;
        for x in &mut p.data {
            *x = -std::mem::take(x);
        }
        Ok(p)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Gram matrix of the pairing on `(a1, b1, ..., ag, bg)`.
pub fn pairing_matrix(genus: u32) -> IntMatrix {
    let n = 2 * genus as usize;
    let mut m = IntMatrix::zeros(n);
    for i in 0..genus as usize {
        m.data[(2 * i) * n + 2 * i + 1] = BigInt::one();
        m.data[(2 * i + 1) * n + 2 * i] = -BigInt::one();
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Transvection `x -> x + sign <x, a> a`.
pub fn twist_matrix(a: &HomologyClass, sign: Sign) -> Result<IntMatrix, McgError> {
    let n = a.dim();
    let mut m = IntMatrix::identity(n);
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let p = symplectic_pairing(&HomologyClass::new(e), a)? * sign.value();
        if p == 0 {
            continue;
        }
        for (i, &ai) in a.coords().iter().enumerate() {
            m.data[i * n + j] += BigInt::from(p) * ai;
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwistLetter {
    /// Index into the factorization's curve table.
    pub curve: usize,
    pub sign: Sign,
}

impl TwistLetter {
    pub fn positive(curve: usize) -> Self {
        TwistLetter {
            curve,
            sign: Sign::Positive,
        }
    }
}

/// Right-hand side of a factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Identity,
    /// `t_{delta_i}^{n_i}` for (boundary index, exponent) pairs.
    Boundary(Vec<(u32, i64)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    spec: SurfaceSpec,
    curves: Vec<CurveClass>,
    letters: Vec<TwistLetter>,
    target: Target,
}

impl Factorization {
    pub fn new(
        spec: SurfaceSpec,
        curves: Vec<CurveClass>,
        letters: Vec<TwistLetter>,
        target: Target,
    ) -> Result<Self, McgError> {
        let mut names = HashSet::new();
        for c in &curves {
            if !names.insert(c.name()) {
                return Err(McgError::DuplicateCurve(c.name().to_string()));
            }
            // Re-validate against this surface.
            CurveClass::new(c.name(), c.kind(), c.homology().cloned(), c.pi1_word().cloned(), spec)?;
        }
        for (position, l) in letters.iter().enumerate() {
            if l.curve >= curves.len() {
                return Err(McgError::BadLetter {
                    position,
                    index: l.curve,
                    len: curves.len(),
                });
            }
        }
        if let Target::Boundary(parts) = &target {
            let mut seen = HashSet::new();
            for &(i, _) in parts {
                if i == 0 || i > spec.boundary_count {
                    return Err(McgError::InvalidTarget(format!(
                        "boundary index {i} outside 1..={}",
                        spec.boundary_count
                    )));
                }
                if !seen.insert(i) {
                    return Err(McgError::InvalidTarget(format!("boundary index {i} repeated")));
                }
            }
        }
        Ok(Factorization {
            spec,
            curves,
            letters,
            target,
        })
    }

    /// Builds the letter list from curve names.
    pub fn from_names(
        spec: SurfaceSpec,
        curves: Vec<CurveClass>,
        word: &[(&str, Sign)],
        target: Target,
    ) -> Result<Self, McgError> {
        let letters = word
            .iter()
            .map(|(name, sign)| {
                curves
                    .iter()
                    .position(|c| c.name() == *name)
                    .map(|curve| TwistLetter { curve, sign: *sign })
                    .ok_or_else(|| McgError::UnknownCurve(name.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Factorization::new(spec, curves, letters, target)
    }

    pub fn spec(&self) -> SurfaceSpec {
        self.spec
    }

    pub fn curves(&self) -> &[CurveClass] {
        &self.curves
    }

    pub fn letters(&self) -> &[TwistLetter] {
        &self.letters
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn curve_of(&self, letter: &TwistLetter) -> &CurveClass {
        &self.curves[letter.curve]
    }

    pub fn curve_named(&self, name: &str) -> Option<&CurveClass> {
        self.curves.iter().find(|c| c.name() == name)
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.sign == Sign::Positive)
    }

    pub fn letter_names(&self) -> Vec<&str> {
        self.letters.iter().map(|l| self.curves[l.curve].name()).collect()
    }

    /// Tally of nonseparating and separating letters by type. Boundary
    /// parallel letters are not singular fibers of the capped fibration and
    /// are skipped. `None` unless the word is positive with at least one
    /// counted letter.
    pub fn fiber_counts(&self) -> Option<FiberCounts> {
        if !self.is_positive() || self.spec.genus == 0 {
            return None;
        }
        let mut n = 0;
        let mut s = vec![0u64; (self.spec.genus / 2) as usize];
        for l in &self.letters {
            match self.curves[l.curve].kind() {
                CurveKind::Nonseparating => n += 1,
                CurveKind::Separating(h) => s[h as usize - 1] += 1,
                CurveKind::BoundaryParallel(_) => {}
            }
        }
        FiberCounts::new(self.spec.genus, n, s).ok()
    }

    /// The same word on the closed surface: boundary-parallel letters and
    /// curves are dropped and the target becomes the identity.
    pub fn capped(&self) -> Factorization {
        let spec = self.spec.capped();
        let keep: Vec<bool> = self
            .curves
            .iter()
            .map(|c| !matches!(c.kind(), CurveKind::BoundaryParallel(_)))
            .collect();
        let mut remap = vec![usize::MAX; self.curves.len()];
        let mut curves = Vec::new();
        for (i, c) in self.curves.iter().enumerate() {
            if keep[i] {
                remap[i] = curves.len();
                curves.push(c.clone());
            }
        }
        let letters = self
            .letters
            .iter()
            .filter(|l| keep[l.curve])
            .map(|l| TwistLetter {
                curve: remap[l.curve],
                sign: l.sign,
            })
            .collect();
        Factorization {
            spec,
            curves,
            letters,
            target: Target::Identity,
        }
    }

    fn class_of(&self, index: usize) -> Result<HomologyClass, McgError> {
        let c = &self.curves[index];
        c.effective_homology(self.spec.genus)
            .ok_or_else(|| McgError::MissingHomology(c.name().to_string()))
    }

    /// Names of letters' curves that lack a class, in first-use order.
    pub fn missing_homology(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        self.letters
            .iter()
            .map(|l| &self.curves[l.curve])
            .filter(|c| c.effective_homology(self.spec.genus).is_none())
            .filter(|c| seen.insert(c.name()))
            .map(|c| c.name().to_string())
            .collect()
    }
}

/// `M(t_1) M(t_2) ... M(t_m)`.
pub fn factorization_matrix(f: &Factorization) -> Result<IntMatrix, McgError> {
    let mut m = IntMatrix::identity(f.spec.rank());
    for l in &f.letters {
        let a = f.class_of(l.curve)?;
        m = m.mul(&twist_matrix(&a, l.sign)?)?;
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MatrixCheck {
    Identity,
    NotIdentity,
    /// Some letters have no class, so the product cannot be formed.
    Unavailable { missing: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LetterRow {
    pub position: usize,
    pub curve: String,
    pub kind: CurveKind,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub matrix: MatrixCheck,
    /// Present when the word was flagged hyperelliptic and is positive.
    pub congruence_ok: Option<bool>,
    pub counts: Option<FiberCounts>,
    pub letters: Vec<LetterRow>,
    pub note: &'static str,
}

pub const VERIFICATION_NOTE: &str =
    "identity in the symplectic representation is necessary, not sufficient, for a mapping class relator";

impl VerificationReport {
    /// True when the product matrix is the identity.
    pub fn matrix_ok(&self) -> bool {
        self.matrix == MatrixCheck::Identity
    }

    /// True when no check that ran refuted the word.
    pub fn nothing_refuted(&self) -> bool {
        self.matrix != MatrixCheck::NotIdentity && self.congruence_ok != Some(false)
    }
}

/// Checks a capped factorization of the identity in homology. Errors when
/// a letter has no class.
pub fn verify_homological_relator(f: &Factorization, hyperelliptic: bool) -> Result<VerificationReport, McgError> {
    let capped = f.capped();
    let m = factorization_matrix(&capped)?;
    let mut report = audit_factorization(&capped, hyperelliptic);
    report.matrix = if m.is_identity() {
        MatrixCheck::Identity
    } else {
        MatrixCheck::NotIdentity
    };
    Ok(report)
}

/// Like [`verify_homological_relator`], but letters without classes make
/// the matrix check `Unavailable` instead of an error.
pub fn audit_factorization(f: &Factorization, hyperelliptic: bool) -> VerificationReport {
    let capped = f.capped();
    let missing = capped.missing_homology();
    let matrix = if missing.is_empty() {
        match factorization_matrix(&capped) {
            Ok(m) if m.is_identity() => MatrixCheck::Identity,
            Ok(_) => MatrixCheck::NotIdentity,
            Err(_) => MatrixCheck::Unavailable { missing },
        }
    } else {
        MatrixCheck::Unavailable { missing }
    };
    let counts = capped.fiber_counts();
    let congruence_ok = if hyperelliptic {
        counts.as_ref().map(twist_count_congruence)
    } else {
        None
    };
    let letters = capped
        .letters
        .iter()
        .enumerate()
        .map(|(position, l)| {
            let c = &capped.curves[l.curve];
            LetterRow {
                position,
                curve: c.name().to_string(),
                kind: c.kind(),
                sign: l.sign,
            }
        })
        .collect();
    VerificationReport {
        matrix,
        congruence_ok,
        counts,
        letters,
        note: VERIFICATION_NOTE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `(t_a, t_b) -> (t_b, t_{t_b^-1(a)})`.
    Right,
    /// `(t_a, t_b) -> (t_{t_a(b)}, t_a)`.
    Left,
}

fn base_name(name: &str) -> &str {
    name.split('@').next().unwrap_or(name)
}

impl Factorization {
    /// Index of a curve for `source` with the given class: an existing
    /// curve sharing its base name, kind and class, or a fresh
    /// `<base>@h<k>` entry.
    fn derived_curve(&mut self, source: usize, class: HomologyClass) -> usize {
        let genus = self.spec.genus;
        let src = &self.curves[source];
        let base = base_name(src.name()).to_string();
        let kind = src.kind();
        if let Some(i) = self.curves.iter().position(|c| {
            base_name(c.name()) == base && c.kind() == kind && c.effective_homology(genus).as_ref() == Some(&class)
        }) {
            return i;
        }
        let mut k = 1;
        let name = loop {
            let candidate = format!("{base}@h{k}");
            if self.curve_named(&candidate).is_none() {
                break candidate;
            }
            k += 1;
        };
        let curve = if kind.is_nullhomologous() {
            let mut c = src.renamed(name);
            if c.pi1_word().is_some() {
                c = c.with_homology(c.name().to_string(), class);
            }
            c
        } else {
            src.with_homology(name, class)
        };
        self.curves.push(curve);
        self.curves.len() - 1
    }

    /// Drops unreferenced move-derived curves and reindexes letters.
    fn collect_derived(&mut self) {
        let used: HashSet<usize> = self.letters.iter().map(|l| l.curve).collect();
        let keep: Vec<bool> = self
            .curves
            .iter()
            .enumerate()
            .map(|(i, c)| used.contains(&i) || !c.name().contains("@h"))
            .collect();
        if keep.iter().all(|&k| k) {
            return;
        }
        let mut remap = vec![usize::MAX; self.curves.len()];
        let mut curves = Vec::new();
        for (i, c) in self.curves.drain(..).enumerate() {
            if keep[i] {
                remap[i] = curves.len();
                curves.push(c);
            }
        }
        self.curves = curves;
        for l in &mut self.letters {
            l.curve = remap[l.curve];
        }
    }
}

/// Elementary Hurwitz move on letters `i` and `i + 1` (0-based). Signed
/// letters are handled too: `(t_a^e, t_b^d) -> (t_b^d, t_c^e)` with
/// `c = t_b^-d(a)` for a right move.
pub fn hurwitz_move(f: &Factorization, i: usize, direction: Direction) -> Result<Factorization, McgError> {
    if i + 1 >= f.letters.len() {
        return Err(McgError::PositionOutOfRange {
            position: i,
            len: f.letters.len(),
        });
    }
    let mut out = f.clone();
    let first = f.letters[i];
    let second = f.letters[i + 1];
    let a = f.class_of(first.curve)?;
    let b = f.class_of(second.curve)?;
    match direction {
        Direction::Right => {
            let c = twist_matrix(&b, second.sign.flip())?.apply(&a)?;
            let ci = out.derived_curve(first.curve, c);
            out.letters[i] = second;
            out.letters[i + 1] = TwistLetter {
                curve: ci,
                sign: first.sign,
            };
        }
        Direction::Left => {
            let c = twist_matrix(&a, first.sign)?.apply(&b)?;
            let ci = out.derived_curve(second.curve, c);
            out.letters[i] = TwistLetter {
                curve: ci,
                sign: second.sign,
            };
            out.letters[i + 1] = first;
        }
    }
    out.collect_derived();
    Ok(out)
}

/// Applies a symplectic matrix to every curve class. Names and kinds are
/// kept; curve words are dropped since they no longer describe the curves.
pub fn conjugate_factorization(f: &Factorization, m: &IntMatrix) -> Result<Factorization, McgError> {
    if m.dim() != f.spec.rank() || !m.is_symplectic() {
        return Err(McgError::NotSymplectic);
    }
    let genus = f.spec.genus;
    let curves = f
        .curves
        .iter()
        .map(|c| match c.effective_homology(genus) {
            Some(h) if !c.kind().is_nullhomologous() => Ok(c.with_homology(c.name().to_string(), m.apply(&h)?)),
            Some(_) => Ok(CurveClass::new(c.name(), c.kind(), c.homology().cloned(), None, f.spec)?),
            None => Err(McgError::MissingHomology(c.name().to_string())),
        })
        .collect::<Result<Vec<_>, McgError>>()?;
    Ok(Factorization {
        spec: f.spec,
        curves,
        letters: f.letters.clone(),
        target: f.target.clone(),
    })
}

/// Removes adjacent `t_c t_c^-1` and `t_c^-1 t_c` pairs until none remain.
pub fn cancel_adjacent_inverses(f: &Factorization) -> Factorization {
    let mut out: Vec<TwistLetter> = Vec::with_capacity(f.letters.len());
    for &l in &f.letters {
        match out.last() {
            Some(prev) if prev.curve == l.curve && prev.sign != l.sign => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Factorization {
        letters: out,
        ..f.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nonsep(name: &str, class: HomologyClass, spec: SurfaceSpec) -> CurveClass {
        CurveClass::new(name, CurveKind::Nonseparating, Some(class), None, spec).unwrap()
    }

    fn g1_ab() -> (SurfaceSpec, Vec<CurveClass>) {
        let spec = SurfaceSpec::closed(1);
        let curves = vec![
            nonsep("a", HomologyClass::a(1, 1), spec),
            nonsep("b", HomologyClass::b(1, 1), spec),
        ];
        (spec, curves)
    }

    fn power_word(k: usize) -> Vec<(&'static str, Sign)> {
        let mut w = Vec::new();
        for _ in 0..k {
            w.push(("a", Sign::Positive));
            w.push(("b", Sign::Positive));
        }
        w
    }

    /// Independent 2x2 arithmetic: the matrices written out by hand.
    fn oracle_ab_power(k: usize) -> [[i64; 2]; 2] {
        // t_a: a1 -> a1, b1 -> b1 - a1.   t_b: a1 -> a1 + b1, b1 -> b1.
        let ta = [[1, -1], [0, 1]];
        let tb = [[1, 0], [1, 1]];
        let mul = |x: [[i64; 2]; 2], y: [[i64; 2]; 2]| {
            let mut z = [[0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
                }
            }
            z
        };
        let step = mul(ta, tb);
        let mut acc = [[1, 0], [0, 1]];
        for _ in 0..k {
            acc = mul(acc, step);
        }
        acc
    }

    #[test]
    fn twist_matrix_examples() {
        let zero = twist_matrix(&HomologyClass::zero(2), Sign::Positive).unwrap();
        assert!(zero.is_identity());
        let ta = twist_matrix(&HomologyClass::a(1, 1), Sign::Positive).unwrap();
        assert_eq!(ta.apply(&HomologyClass::b(1, 1)).unwrap(), HomologyClass::new(vec![-1, 1]));
        assert_eq!(ta, IntMatrix::from_rows(&[vec![1, -1], vec![0, 1]]));
        let tb = twist_matrix(&HomologyClass::b(1, 1), Sign::Positive).unwrap();
        assert_eq!(tb, IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]));
        let inv = twist_matrix(&HomologyClass::a(1, 1), Sign::Negative).unwrap();
        assert!(ta.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn order_six_in_genus_one() {
        assert_eq!(oracle_ab_power(6), [[1, 0], [0, 1]]);
        assert_ne!(oracle_ab_power(5), [[1, 0], [0, 1]]);
        let (spec, curves) = g1_ab();
        for k in 1..=6 {
            let f = Factorization::from_names(spec, curves.clone(), &power_word(k), Target::Identity).unwrap();
            let m = factorization_matrix(&f).unwrap();
            let o = oracle_ab_power(k);
            assert_eq!(m.to_i64_rows().unwrap(), vec![o[0].to_vec(), o[1].to_vec()]);
            assert_eq!(verify_homological_relator(&f, false).unwrap().matrix_ok(), k == 6);
        }
    }

    #[test]
    fn empty_and_single() {
        let (spec, curves) = g1_ab();
        let empty = Factorization::new(spec, curves.clone(), vec![], Target::Identity).unwrap();
        assert!(factorization_matrix(&empty).unwrap().is_identity());
        let one = Factorization::from_names(spec, curves, &[("a", Sign::Positive)], Target::Identity).unwrap();
        assert!(!factorization_matrix(&one).unwrap().is_identity());
    }

    #[test]
    fn braid_relation_in_genus_two() {
        let spec = SurfaceSpec::closed(2);
        let curves = vec![
            nonsep("a", HomologyClass::a(2, 1), spec),
            nonsep("b", HomologyClass::b(2, 1), spec),
        ];
        use Sign::*;
        let word = [
            ("a", Positive),
            ("b", Positive),
            ("a", Positive),
            ("b", Negative),
            ("a", Negative),
            ("b", Negative),
        ];
        let f = Factorization::from_names(spec, curves, &word, Target::Identity).unwrap();
        assert!(verify_homological_relator(&f, false).unwrap().matrix_ok());
    }

    #[test]
    fn missing_homology_is_reported() {
        let spec = SurfaceSpec::closed(2);
        let curves = vec![CurveClass::new("x", CurveKind::Nonseparating, None, None, spec).unwrap()];
        let f = Factorization::from_names(spec, curves, &[("x", Sign::Positive)], Target::Identity).unwrap();
        assert_eq!(factorization_matrix(&f), Err(McgError::MissingHomology("x".into())));
        assert!(matches!(verify_homological_relator(&f, false), Err(McgError::MissingHomology(_))));
        let audit = audit_factorization(&f, false);
        assert_eq!(audit.matrix, MatrixCheck::Unavailable { missing: vec!["x".into()] });
        assert!(audit.nothing_refuted());
        // one twist in genus 2 fails the twist-count congruence mod 10
        let audit = audit_factorization(&f, true);
        assert_eq!(audit.congruence_ok, Some(false));
        assert!(!audit.nothing_refuted());
    }

    #[test]
    fn hurwitz_examples() {
        let spec = SurfaceSpec::closed(2);
        let curves = vec![
            nonsep("p", HomologyClass::a(2, 1), spec),
            nonsep("q", HomologyClass::a(2, 2), spec),
        ];
        let f = Factorization::from_names(spec, curves, &[("p", Sign::Positive), ("q", Sign::Positive)], Target::Identity)
            .unwrap();
        let g = hurwitz_move(&f, 0, Direction::Right).unwrap();
        assert_eq!(g.letter_names(), vec!["q", "p"]);
        assert_eq!(g.curves(), f.curves());

        let (spec1, curves1) = g1_ab();
        let f = Factorization::from_names(spec1, curves1, &[("a", Sign::Positive), ("b", Sign::Positive)], Target::Identity)
            .unwrap();
        let g = hurwitz_move(&f, 0, Direction::Right).unwrap();
        assert_eq!(g.letter_names(), vec!["b", "a@h1"]);
        // t_b^-1(a1) = a1 - <a1, b1> b1 = a1 - b1
        let c = g.curve_named("a@h1").unwrap();
        assert_eq!(c.homology().unwrap(), &HomologyClass::new(vec![1, -1]));
        assert_eq!(factorization_matrix(&g).unwrap(), factorization_matrix(&f).unwrap());
        let back = hurwitz_move(&g, 0, Direction::Left).unwrap();
        assert_eq!(back, f);

        assert!(matches!(
            hurwitz_move(&f, 1, Direction::Right),
            Err(McgError::PositionOutOfRange { position: 1, len: 2 })
        ));
    }

    #[test]
    fn conjugation_examples() {
        let (spec, curves) = g1_ab();
        let f = Factorization::from_names(spec, curves.clone(), &[("a", Sign::Positive)], Target::Identity).unwrap();
        let id = IntMatrix::identity(2);
        assert_eq!(conjugate_factorization(&f, &id).unwrap(), f);
        let tb = twist_matrix(&HomologyClass::b(1, 1), Sign::Positive).unwrap();
        let g = conjugate_factorization(&f, &tb).unwrap();
        // t_b(a1) = a1 + <a1, b1> b1 = a1 + b1
        assert_eq!(g.curves()[0].homology().unwrap(), &HomologyClass::new(vec![1, 1]));
        let expected = tb.mul(&factorization_matrix(&f).unwrap()).unwrap().mul(&tb.symplectic_inverse().unwrap()).unwrap();
        assert_eq!(factorization_matrix(&g).unwrap(), expected);

        let rel = Factorization::from_names(spec, curves, &power_word(6), Target::Identity).unwrap();
        let conj = conjugate_factorization(&rel, &tb).unwrap();
        assert!(factorization_matrix(&conj).unwrap().is_identity());

        let bad = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(conjugate_factorization(&f, &bad), Err(McgError::NotSymplectic));
    }

    #[test]
    fn cancellation_examples() {
        let (spec, mut curves) = g1_ab();
        curves.push(CurveClass::new("c", CurveKind::Nonseparating, Some(HomologyClass::new(vec![1, 1])), None, spec).unwrap());
        use Sign::*;
        let f = Factorization::from_names(spec, curves.clone(), &[("c", Positive), ("c", Negative)], Target::Identity).unwrap();
        assert!(cancel_adjacent_inverses(&f).is_empty());
        let f = Factorization::from_names(
            spec,
            curves.clone(),
            &[("a", Positive), ("c", Positive), ("c", Negative), ("b", Positive)],
            Target::Identity,
        )
        .unwrap();
        assert_eq!(cancel_adjacent_inverses(&f).letter_names(), vec!["a", "b"]);
        let f = Factorization::from_names(spec, curves, &[("a", Positive), ("b", Negative), ("a", Positive)], Target::Identity)
            .unwrap();
        assert_eq!(cancel_adjacent_inverses(&f), f);
    }

    #[test]
    fn construction_errors() {
        let (spec, curves) = g1_ab();
        let mut dup = curves.clone();
        dup.push(curves[0].clone());
        assert!(matches!(
            Factorization::new(spec, dup, vec![], Target::Identity),
            Err(McgError::DuplicateCurve(_))
        ));
        assert!(matches!(
            Factorization::from_names(spec, curves.clone(), &[("zz", Sign::Positive)], Target::Identity),
            Err(McgError::UnknownCurve(_))
        ));
        assert!(matches!(
            Factorization::new(spec, curves.clone(), vec![TwistLetter::positive(5)], Target::Identity),
            Err(McgError::BadLetter { .. })
        ));
        let bounded = SurfaceSpec::new(1, 2);
        assert!(Factorization::new(bounded, curves.clone(), vec![], Target::Boundary(vec![(1, 1), (2, 2)])).is_ok());
        assert!(Factorization::new(bounded, curves.clone(), vec![], Target::Boundary(vec![(1, 1), (1, 2)])).is_err());
        assert!(Factorization::new(bounded, curves, vec![], Target::Boundary(vec![(3, 1)])).is_err());
    }

    #[test]
    fn capping_drops_boundary_letters() {
        let spec = SurfaceSpec::new(1, 1);
        let curves = vec![
            nonsep("a", HomologyClass::a(1, 1), spec),
            CurveClass::new("delta", CurveKind::BoundaryParallel(1), None, None, spec).unwrap(),
        ];
        let f = Factorization::from_names(
            spec,
            curves,
            &[("a", Sign::Positive), ("delta", Sign::Negative)],
            Target::Boundary(vec![(1, 1)]),
        )
        .unwrap();
        let c = f.capped();
        assert_eq!(c.spec(), SurfaceSpec::closed(1));
        assert_eq!(c.letter_names(), vec!["a"]);
        assert_eq!(c.target(), &Target::Identity);
    }

    #[test]
    fn symplectic_inverse_round_trip() {
        let a = HomologyClass::new(vec![1, 2, -1, 3]);
        let m = twist_matrix(&a, Sign::Positive).unwrap();
        assert!(m.is_symplectic());
        assert!(m.mul(&m.symplectic_inverse().unwrap()).unwrap().is_identity());
    }
}
