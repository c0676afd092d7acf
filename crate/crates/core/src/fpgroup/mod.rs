//! Finitely presented groups: surface groups, quotients by curve words,
//! abelianization and coset enumeration.

mod coset;
mod smith;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

pub use coset::{EnumerationResult, Outcome};
pub use smith::invariant_factors;

use crate::surface::surface_generator_name;
use crate::word::{Letter, Word, WordParseError};

/// Default coset limit used by the command line.
pub const DEFAULT_MAX_COSETS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpGroupError {
    #[error("generator index {index} out of range ({count} generators)")]
    UnknownGenerator { index: u32, count: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error(transparent)]
    Parse(#[from] WordParseError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, FpGroupError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(FpGroupError::DuplicateGenerator(g.clone()));
            }
        }
        let p = GroupPresentation {
            generators,
            relators: Vec::new(),
        };
        p.with_relators(relators)
    }

    /// Builds a presentation from relator strings in the word syntax.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, FpGroupError> {
        let p = GroupPresentation::new(generators.iter().map(|s| s.to_string()).collect(), Vec::new())?;
        let words = relators
            .iter()
            .map(|r| p.parse_word(r))
            .collect::<Result<Vec<_>, _>>()?;
        p.with_relators(words)
    }

    fn with_relators(mut self, relators: Vec<Word>) -> Result<Self, FpGroupError> {
        for w in &relators {
            self.check_word(w)?;
        }
        self.relators.extend(relators);
        Ok(self)
    }

    fn check_word(&self, w: &Word) -> Result<(), FpGroupError> {
        match w.max_generator() {
            Some(index) if index as usize >= self.generators.len() => Err(FpGroupError::UnknownGenerator {
                index,
                count: self.generators.len(),
            }),
            _ => Ok(()),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, WordParseError> {
        Word::parse_with(text, |name| {
            self.generators.iter().position(|g| g == name).map(|i| i as u32)
        })
    }

    /// Same group with generators renamed; relators are unchanged as index
    /// sequences.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self, FpGroupError> {
        assert_eq!(names.len(), self.generators.len(), "rename must keep the generator count");
        GroupPresentation::new(names, self.relators.clone())
    }

    /// Same group with relators in a different order.
    pub fn with_relator_order(&self, order: &[usize]) -> Self {
        GroupPresentation {
            generators: self.generators.clone(),
            relators: order.iter().map(|&i| self.relators[i].clone()).collect(),
        }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generators.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r.display_with(&self.generators))?;
        }
        f.write_str(" >")
    }
}

/// `pi_1` of the closed genus-`g` surface on generators `a1 b1 ... ag bg`,
/// with the single relator `bg~ ... b1~ (a1 b1 a1~) ... (ag bg ag~)`.
pub fn surface_group(genus: u32) -> GroupPresentation {
    let generators: Vec<String> = (0..2 * genus).map(surface_generator_name).collect();
    let a = |k: u32| Letter::new(2 * (k - 1), false);
    let b = |k: u32| Letter::new(2 * (k - 1) + 1, false);
    let mut rel: Vec<Letter> = (1..=genus).rev().map(|k| b(k).inverse()).collect();
    for k in 1..=genus {
        rel.extend([a(k), b(k), a(k).inverse()]);
    }
    let relators = if genus == 0 { Vec::new() } else { vec![Word::new(rel)] };
    GroupPresentation {
        generators,
        relators,
    }
}

/// Appends curve words as relators.
pub fn quotient_by_cycles(p: &GroupPresentation, cycles: &[Word]) -> Result<GroupPresentation, FpGroupError> {
    p.clone().with_relators(cycles.to_vec())
}

/// Invariant factors of the abelianization: each entry divides the next,
/// entries equal to 1 are dropped and free factors appear as trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    #[serde(serialize_with = "serialize_bigints")]
    pub divisors: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.divisors.iter().filter(|d| **d == BigInt::from(0)).count()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            None
        } else {
            Some(self.divisors.iter().product())
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .divisors
            .iter()
            .map(|d| if *d == BigInt::from(0) { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

pub fn abelianization(p: &GroupPresentation) -> AbelianInvariants {
    let n = p.generators.len();
    let rows: Vec<Vec<i64>> = p.relators.iter().map(|w| w.exponent_sums(n)).collect();
    let diag = invariant_factors(&rows, n);
    let rank = diag.len();
    let mut divisors: Vec<BigInt> = diag.into_iter().filter(|d| *d != BigInt::from(1)).collect();
    divisors.extend(std::iter::repeat_n(BigInt::from(0), n - rank));
    AbelianInvariants { divisors }
}

/// Coset enumeration over the trivial subgroup with at most `max_cosets`
/// rows stored at once.
pub fn todd_coxeter(p: &GroupPresentation, max_cosets: u64) -> EnumerationResult {
    coset::enumerate(p.generators.len(), &p.relators, max_cosets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_group_shape() {
        let g1 = surface_group(1);
        assert_eq!(g1.generators(), &["a1", "b1"]);
        assert_eq!(g1.relators().len(), 1);
        assert_eq!(g1.relators()[0], g1.parse_word("b1~ a1 b1 a1~").unwrap());

        let g4 = surface_group(4);
        let printed = "b4~ b3~ b2~ b1~ a1 b1 a1~ a2 b2 a2~ a3 b3 a3~ a4 b4 a4~";
        assert_eq!(g4.relators()[0], g4.parse_word(printed).unwrap());
    }

    #[test]
    fn surface_abelianization_is_free() {
        for g in 1..=6 {
            let ab = abelianization(&surface_group(g));
            assert_eq!(ab.divisors, vec![BigInt::from(0); 2 * g as usize]);
        }
    }

    #[test]
    fn cyclic_abelianization() {
        let p = GroupPresentation::parse(&["x"], &["x^5"]).unwrap();
        assert_eq!(abelianization(&p).divisors, vec![BigInt::from(5)]);
        assert_eq!(todd_coxeter(&p, 100).outcome, Outcome::Order(5));
    }

    #[test]
    fn quotient_appends() {
        let p = surface_group(2);
        assert_eq!(quotient_by_cycles(&p, &[]).unwrap(), p);
        let w = p.parse_word("a1 b2").unwrap();
        let q = quotient_by_cycles(&p, std::slice::from_ref(&w)).unwrap();
        assert_eq!(q.relators().len(), 2);
        assert_eq!(q.relators()[1], w);
        let bad = Word::new(vec![Letter::new(9, false)]);
        assert!(matches!(
            quotient_by_cycles(&p, &[bad]),
            Err(FpGroupError::UnknownGenerator { index: 9, .. })
        ));
    }

    #[test]
    fn presentation_errors() {
        assert!(matches!(
            GroupPresentation::parse(&["x", "x"], &[]),
            Err(FpGroupError::DuplicateGenerator(_))
        ));
        assert!(matches!(
            GroupPresentation::parse(&["x"], &["y"]),
            Err(FpGroupError::Parse(_))
        ));
    }

    #[test]
    fn display() {
        let p = GroupPresentation::parse(&["x", "y"], &["x^2", "[x,y]"]).unwrap();
        assert_eq!(p.to_string(), "< x, y | x x, x y x~ y~ >");
        let ab = abelianization(&p);
        assert_eq!(ab.to_string(), "Z/2 + Z");
        assert_eq!(ab.order(), None);
    }
}
