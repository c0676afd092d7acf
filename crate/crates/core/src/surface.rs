//! Surface bookkeeping: genus and boundary data, the homology basis
//! `(a1, b1, ..., ag, bg)` with `<a_i, b_i> = +1`, and vanishing-cycle data.
//!
//! Boundary components are capped off for homological purposes, so the
//! homology rank is always `2g`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::word::{Word, WordParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("generator index {index} is outside the genus-{genus} surface group")]
    UnknownGenerator { index: u32, genus: u32 },
    #[error("curve `{name}`: {reason}")]
    InvalidCurve { name: String, reason: String },
    #[error(transparent)]
    Parse(#[from] WordParseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub boundary_count: u32,
}

impl SurfaceSpec {
    pub fn new(genus: u32, boundary_count: u32) -> Self {
        SurfaceSpec {
            genus,
            boundary_count,
        }
    }

    pub fn closed(genus: u32) -> Self {
        SurfaceSpec::new(genus, 0)
    }

    /// Rank of the homology used by the twist calculus.
    pub fn rank(&self) -> usize {
        2 * self.genus as usize
    }

    pub fn capped(&self) -> Self {
        SurfaceSpec::closed(self.genus)
    }

    /// Names of the standard generators, `a1 b1 a2 b2 ...`.
    pub fn generator_names(&self) -> Vec<String> {
        (0..self.rank() as u32).map(surface_generator_name).collect()
    }

    /// Parses a word over `a1..ag, b1..bg`.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordParseError> {
        let genus = self.genus;
        Word::parse_with(text, |name| surface_generator_index(name, genus))
    }
}

/// Index of `a<k>` or `b<k>` in the interleaved basis, for `1 <= k <= genus`.
pub fn surface_generator_index(name: &str, genus: u32) -> Option<u32> {
    let (offset, digits) = match name.strip_prefix('a') {
        Some(d) => (0, d),
        None => (1, name.strip_prefix('b')?),
    };
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let k: u32 = digits.parse().ok()?;
    (1..=genus).contains(&k).then(|| 2 * (k - 1) + offset)
}

pub fn surface_generator_name(index: u32) -> String {
    let k = index / 2 + 1;
    if index.is_multiple_of(2) {
        format!("a{k}")
    } else {
        format!("b{k}")
    }
}

/// Integer vector over the basis `(a1, b1, ..., ag, bg)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomologyClass {
    coords: Vec<i64>,
}

impl HomologyClass {
    pub fn new(coords: Vec<i64>) -> Self {
        HomologyClass { coords }
    }

    pub fn zero(genus: u32) -> Self {
        HomologyClass::new(vec![0; 2 * genus as usize])
    }

    /// Basis vector `a_k` (1-based).
    pub fn a(genus: u32, k: u32) -> Self {
        Self::basis(genus, 2 * (k - 1))
    }

    /// Basis vector `b_k` (1-based).
    pub fn b(genus: u32, k: u32) -> Self {
        Self::basis(genus, 2 * (k - 1) + 1)
    }

    fn basis(genus: u32, index: u32) -> Self {
        let mut c = HomologyClass::zero(genus);
        c.coords[index as usize] = 1;
        c
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Gcd of the coordinates; 0 for the zero vector.
    pub fn content(&self) -> i64 {
        self.coords.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn checked_add(&self, other: &HomologyClass) -> Result<HomologyClass, SurfaceError> {
        same_dim(self, other)?;
        Ok(HomologyClass::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x + y)
                .collect(),
        ))
    }

    pub fn scaled(&self, k: i64) -> HomologyClass {
        HomologyClass::new(self.coords.iter().map(|x| x * k).collect())
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = surface_generator_name(i as u32);
            match (wrote, c) {
                (false, 1) => write!(f, "{name}")?,
                (false, -1) => write!(f, "-{name}")?,
                (false, _) => write!(f, "{c}{name}")?,
                (true, 1) => write!(f, " + {name}")?,
                (true, -1) => write!(f, " - {name}")?,
                (true, c) if c > 0 => write!(f, " + {c}{name}")?,
                (true, c) => write!(f, " - {}{name}", -c)?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn same_dim(x: &HomologyClass, y: &HomologyClass) -> Result<(), SurfaceError> {
    if x.dim() != y.dim() {
        return Err(SurfaceError::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(())
}

/// The algebraic intersection pairing `<x, y>`.
pub fn symplectic_pairing(x: &HomologyClass, y: &HomologyClass) -> Result<i64, SurfaceError> {
    same_dim(x, y)?;
    Ok(x.coords
        .chunks_exact(2)
        .zip(y.coords.chunks_exact(2))
        .map(|(p, q)| p[0] * q[1] - p[1] * q[0])
        .sum())
}

/// Abelianization of a word over the surface generators.
pub fn homology_of_word(word: &Word, spec: SurfaceSpec) -> Result<HomologyClass, SurfaceError> {
    if let Some(index) = word.max_generator() {
        if index as usize >= spec.rank() {
            return Err(SurfaceError::UnknownGenerator {
                index,
                genus: spec.genus,
            });
        }
    }
    Ok(HomologyClass::new(word.exponent_sums(spec.rank())))
}

/// Outcome of the one-way homological test on a curve word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WordKindCheck {
    /// Nonzero class: the curve is certainly nonseparating.
    ConsistentNonseparating,
    /// Null-homologous: consistent with a separating curve.
    ConsistentSeparating,
}

pub fn classify_kind_from_word(word: &Word, spec: SurfaceSpec) -> Result<WordKindCheck, SurfaceError> {
    Ok(if homology_of_word(word, spec)?.is_zero() {
        WordKindCheck::ConsistentSeparating
    } else {
        WordKindCheck::ConsistentNonseparating
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum CurveKind {
    Nonseparating,
    /// Separating into subsurfaces of genus `h` and `g - h`.
    Separating(u32),
    /// Parallel to boundary component `i` (1-based).
    BoundaryParallel(u32),
}

impl CurveKind {
    pub fn is_nullhomologous(self) -> bool {
        !matches!(self, CurveKind::Nonseparating)
    }

    /// Whether a word check result agrees with this kind.
    pub fn agrees_with(self, check: WordKindCheck) -> bool {
        match self {
            CurveKind::Nonseparating => check == WordKindCheck::ConsistentNonseparating,
            _ => check == WordKindCheck::ConsistentSeparating,
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveKind::Nonseparating => f.write_str("nonsep"),
            CurveKind::Separating(h) => write!(f, "sep {h}"),
            CurveKind::BoundaryParallel(i) => write!(f, "boundary {i}"),
        }
    }
}

/// A named vanishing cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    name: String,
    kind: CurveKind,
    homology: Option<HomologyClass>,
    pi1_word: Option<Word>,
}

impl CurveClass {
    /// Builds a curve, checking its kind against the surface and against
    /// any homology class or word supplied.
    pub fn new(
        name: impl Into<String>,
        kind: CurveKind,
        homology: Option<HomologyClass>,
        pi1_word: Option<Word>,
        spec: SurfaceSpec,
    ) -> Result<Self, SurfaceError> {
        let name = name.into();
        let invalid = |reason: String| SurfaceError::InvalidCurve {
            name: name.clone(),
            reason,
        };
        match kind {
            CurveKind::Separating(h) if h == 0 || h > spec.genus / 2 => {
                return Err(invalid(format!(
                    "separating type {h} is outside 1..={} for genus {}",
                    spec.genus / 2,
                    spec.genus
                )))
            }
            CurveKind::BoundaryParallel(i) if i == 0 || i > spec.boundary_count => {
                return Err(invalid(format!(
                    "boundary index {i} is outside 1..={}",
                    spec.boundary_count
                )))
            }
            _ => {}
        }
        if let Some(h) = &homology {
            if h.dim() != spec.rank() {
                return Err(invalid(format!(
                    "homology has {} coordinates, expected {}",
                    h.dim(),
                    spec.rank()
                )));
            }
            if kind.is_nullhomologous() && !h.is_zero() {
                return Err(invalid(format!("{kind} curve must have zero class, got {h}")));
            }
            if !kind.is_nullhomologous() && !h.is_primitive() {
                return Err(invalid(format!(
                    "nonseparating class {h} must be nonzero and primitive"
                )));
            }
        }
        if let Some(w) = &pi1_word {
            let from_word = homology_of_word(w, spec)?;
            if let Some(h) = &homology {
                if *h != from_word {
                    return Err(invalid(format!(
                        "class {h} differs from the word's abelianization {from_word}"
                    )));
                }
            }
        }
        Ok(CurveClass {
            name,
            kind,
            homology,
            pi1_word,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// The declared class, if any.
    pub fn homology(&self) -> Option<&HomologyClass> {
        self.homology.as_ref()
    }

    pub fn pi1_word(&self) -> Option<&Word> {
        self.pi1_word.as_ref()
    }

    /// Class used by the twist calculus: the declared class, or zero for
    /// separating and boundary-parallel curves.
    pub fn effective_homology(&self, genus: u32) -> Option<HomologyClass> {
        match &self.homology {
            Some(h) => Some(h.clone()),
            None if self.kind.is_nullhomologous() => Some(HomologyClass::zero(genus)),
            None => None,
        }
    }

    pub(crate) fn renamed(&self, name: String) -> Self {
        CurveClass {
            name,
            ..self.clone()
        }
    }

    pub(crate) fn with_homology(&self, name: String, homology: HomologyClass) -> Self {
        CurveClass {
            name,
            kind: self.kind,
            homology: Some(homology),
            pi1_word: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g4() -> SurfaceSpec {
        SurfaceSpec::closed(4)
    }

    #[test]
    fn pairing_examples() {
        let a1 = HomologyClass::a(2, 1);
        let b1 = HomologyClass::b(2, 1);
        let a2 = HomologyClass::a(2, 2);
        let b2 = HomologyClass::b(2, 2);
        assert_eq!(symplectic_pairing(&a1, &b1).unwrap(), 1);
        assert_eq!(symplectic_pairing(&b1, &a1).unwrap(), -1);
        assert_eq!(symplectic_pairing(&a1, &a1).unwrap(), 0);
        let x = a1.checked_add(&b2).unwrap();
        let y = b1.checked_add(&a2).unwrap();
        assert_eq!(symplectic_pairing(&x, &y).unwrap(), 0);
        assert!(matches!(
            symplectic_pairing(&a1, &HomologyClass::a(1, 1)),
            Err(SurfaceError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn generator_names_resolve() {
        assert_eq!(surface_generator_index("a1", 4), Some(0));
        assert_eq!(surface_generator_index("b4", 4), Some(7));
        assert_eq!(surface_generator_index("a5", 4), None);
        assert_eq!(surface_generator_index("a0", 4), None);
        assert_eq!(surface_generator_index("a01", 4), None);
        assert_eq!(surface_generator_index("c1", 4), None);
        for i in 0..8 {
            assert_eq!(surface_generator_index(&surface_generator_name(i), 4), Some(i));
        }
    }

    #[test]
    fn homology_of_printed_words() {
        let spec = g4();
        let b2 = spec.parse_word("a2~ [a1,b1~] a1~").unwrap();
        let expected = HomologyClass::a(4, 1)
            .scaled(-1)
            .checked_add(&HomologyClass::a(4, 2).scaled(-1))
            .unwrap();
        assert_eq!(homology_of_word(&b2, spec).unwrap(), expected);

        let d = spec.parse_word("b2~ a1~ a2 b2 a2~ a1").unwrap();
        assert!(homology_of_word(&d, spec).unwrap().is_zero());
        assert!(homology_of_word(&Word::empty(), spec).unwrap().is_zero());
    }

    #[test]
    fn classify_examples() {
        let spec = g4();
        let check = |s: &str| classify_kind_from_word(&spec.parse_word(s).unwrap(), spec).unwrap();
        assert_eq!(check("b2 a3~ a2 b2~ a2~ a3"), WordKindCheck::ConsistentSeparating);
        assert_eq!(check("[a1,b1]"), WordKindCheck::ConsistentSeparating);
        let x1 = spec.parse_word("b1 b2 a2~ a1 b2 a2~ a1").unwrap();
        assert_eq!(
            classify_kind_from_word(&x1, spec).unwrap(),
            WordKindCheck::ConsistentNonseparating
        );
        assert_eq!(
            homology_of_word(&x1, spec).unwrap().coords(),
            &[2, 1, -2, 2, 0, 0, 0, 0]
        );
    }

    #[test]
    fn curve_validation() {
        let spec = SurfaceSpec::new(2, 1);
        let a1 = HomologyClass::a(2, 1);
        assert!(CurveClass::new("c", CurveKind::Nonseparating, Some(a1.clone()), None, spec).is_ok());
        assert!(CurveClass::new("c", CurveKind::Nonseparating, Some(a1.scaled(2)), None, spec).is_err());
        assert!(CurveClass::new("c", CurveKind::Nonseparating, Some(HomologyClass::zero(2)), None, spec).is_err());
        assert!(CurveClass::new("c", CurveKind::Separating(1), Some(a1.clone()), None, spec).is_err());
        assert!(CurveClass::new("c", CurveKind::Separating(2), None, None, spec).is_err());
        assert!(CurveClass::new("c", CurveKind::BoundaryParallel(2), None, None, spec).is_err());
        assert!(CurveClass::new("c", CurveKind::BoundaryParallel(1), None, None, spec).is_ok());
        let word = spec.parse_word("a1 b2 b2~").unwrap();
        assert!(CurveClass::new("c", CurveKind::Nonseparating, Some(a1.clone()), Some(word.clone()), spec).is_ok());
        let other = HomologyClass::b(2, 1);
        assert!(CurveClass::new("c", CurveKind::Nonseparating, Some(other), Some(word), spec).is_err());
    }

    #[test]
    fn display_class() {
        let c = HomologyClass::new(vec![2, 1, -2, 0]);
        assert_eq!(c.to_string(), "2a1 + b1 - 2a2");
        assert_eq!(HomologyClass::zero(2).to_string(), "0");
    }
}
