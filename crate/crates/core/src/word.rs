//! Words over a finite generating set.
//!
//! A word is a sequence of signed generator indices. The text syntax is
//! whitespace separated: `x` is a generator, `x~` its inverse, `x^3` or
//! `x~^2` a power, and `[x,y]` the commutator `x y x~ y~`.

use std::fmt;

use thiserror::Error;

/// One generator or inverse generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    gen: u32,
    inverse: bool,
}

impl Letter {
    pub fn new(gen: u32, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn gen(self) -> u32 {
        self.gen
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column of this letter in a coset table laid out as
    /// `[g0, g0~, g1, g1~, ...]`.
    pub(crate) fn column(self) -> usize {
        2 * self.gen as usize + usize::from(self.inverse)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<u32> {
        self.0.iter().map(|l| l.gen).max()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `x y x~ y~`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    /// Word raised to an integer power; negative powers invert.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    /// Cancels adjacent `x x~` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by removal of cancelling first/last letters.
    pub fn cyclic_reduce(&self) -> Word {
        let mut v = self.free_reduce().0;
        let mut lo = 0;
        let mut hi = v.len();
        while hi - lo >= 2 && v[lo] == v[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word(v.drain(lo..hi).collect())
    }

    /// Signed exponent sum of every generator `0..ngens`.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut sums = vec![0i64; ngens];
        for l in &self.0 {
            sums[l.gen as usize] += l.exponent();
        }
        sums
    }

    /// Parses the text syntax, resolving generator names with `resolve`.
    pub fn parse_with<F>(text: &str, resolve: F) -> Result<Word, WordParseError>
    where
        F: Fn(&str) -> Option<u32>,
    {
        let mut letters = Vec::new();
        for (offset, token) in tokens(text) {
            parse_token(token, offset, &resolve, &mut letters)?;
        }
        Ok(Word(letters))
    }

    /// Renders with generator names, inverses as `~`. Commutators are
    /// written out letter by letter.
    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(l.gen as usize) {
                Some(name) => f.write_str(name.as_ref())?,
                None => write!(f, "g{}", l.gen)?,
            }
            if l.inverse {
                f.write_str("~")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordParseError {
    #[error("unknown generator `{name}` at column {column}")]
    UnknownGenerator { name: String, column: usize },
    #[error("malformed token `{token}` at column {column}: {reason}")]
    Malformed {
        token: String,
        column: usize,
        reason: &'static str,
    },
}

impl WordParseError {
    /// 1-based column of the offending token.
    pub fn column(&self) -> usize {
        match self {
            WordParseError::UnknownGenerator { column, .. } => *column,
            WordParseError::Malformed { column, .. } => *column,
        }
    }

    /// Shifts the reported column by `by` characters.
    pub fn shifted(self, by: usize) -> Self {
        match self {
            WordParseError::UnknownGenerator { name, column } => WordParseError::UnknownGenerator {
                name,
                column: column + by,
            },
            WordParseError::Malformed {
                token,
                column,
                reason,
            } => WordParseError::Malformed {
                token,
                column: column + by,
                reason,
            },
        }
    }
}

/// Whitespace-separated tokens with their 0-based character offsets.
fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (ci, (bi, ch)) in text.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((cs, bs)) = start.take() {
                out.push((cs, &text[bs..bi]));
            }
        } else if start.is_none() {
            start = Some((ci, bi));
        }
    }
    if let Some((cs, bs)) = start {
        out.push((cs, &text[bs..]));
    }
    out.into_iter()
}

fn parse_token<F>(
    token: &str,
    offset: usize,
    resolve: &F,
    out: &mut Vec<Letter>,
) -> Result<(), WordParseError>
where
    F: Fn(&str) -> Option<u32>,
{
    let column = offset + 1;
    let malformed = |reason| WordParseError::Malformed {
        token: token.to_string(),
        column,
        reason,
    };
    if let Some(inner) = token.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| malformed("commutator is missing `]`"))?;
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| malformed("commutator needs two entries separated by `,`"))?;
        if x.is_empty() || y.is_empty() || y.contains(',') {
            return Err(malformed("commutator needs exactly two entries"));
        }
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        parse_power(x, column + 1, resolve, &mut xs)?;
        parse_power(y, column + 2 + x.chars().count(), resolve, &mut ys)?;
        out.extend(Word::commutator(&Word(xs), &Word(ys)).0);
        Ok(())
    } else {
        parse_power(token, column, resolve, out)
    }
}

/// `name`, `name~`, `name^k`, `name~^k`.
fn parse_power<F>(
    token: &str,
    column: usize,
    resolve: &F,
    out: &mut Vec<Letter>,
) -> Result<(), WordParseError>
where
    F: Fn(&str) -> Option<u32>,
{
    let malformed = |reason| WordParseError::Malformed {
        token: token.to_string(),
        column,
        reason,
    };
    let (head, power) = match token.split_once('^') {
        Some((h, p)) => {
            let k: i64 = p.parse().map_err(|_| malformed("exponent is not an integer"))?;
            (h, k)
        }
        None => (token, 1),
    };
    let (name, inverse) = match head.strip_suffix('~') {
        Some(n) => (n, true),
        None => (head, false),
    };
    if name.is_empty() {
        return Err(malformed("missing generator name"));
    }
    if name.contains(['~', '[', ']', ',']) {
        return Err(malformed("unexpected character in generator name"));
    }
    let gen = resolve(name).ok_or_else(|| WordParseError::UnknownGenerator {
        name: name.to_string(),
        column,
    })?;
    let letter = Letter::new(gen, inverse);
    let letter = if power < 0 { letter.inverse() } else { letter };
    out.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(name: &str) -> Option<u32> {
        match name {
            "x" => Some(0),
            "y" => Some(1),
            _ => None,
        }
    }

    fn w(s: &str) -> Word {
        Word::parse_with(s, xy).unwrap()
    }

    #[test]
    fn commutator_expands() {
        assert_eq!(w("[x,y~]"), w("x y~ x~ y"));
        assert_eq!(w("[x,y]").exponent_sums(2), vec![0, 0]);
    }

    #[test]
    fn powers() {
        assert_eq!(w("x^3"), w("x x x"));
        assert_eq!(w("x^-2"), w("x~ x~"));
        assert_eq!(w("x~^2"), w("x~ x~"));
        assert_eq!(w("x^0"), Word::empty());
    }

    #[test]
    fn reductions() {
        assert_eq!(w("x y y~ x~ y").free_reduce(), w("y"));
        assert_eq!(w("x y x y~ x~").cyclic_reduce(), w("y x y~").cyclic_reduce());
        assert_eq!(w("x y x~").cyclic_reduce(), w("y"));
        assert_eq!(w("x x~").cyclic_reduce(), Word::empty());
    }

    #[test]
    fn errors_carry_columns() {
        let err = Word::parse_with("x  z", xy).unwrap_err();
        assert_eq!(
            err,
            WordParseError::UnknownGenerator {
                name: "z".into(),
                column: 4
            }
        );
        assert!(matches!(
            Word::parse_with("[x,y", xy),
            Err(WordParseError::Malformed { column: 1, .. })
        ));
        assert!(Word::parse_with("x^a", xy).is_err());
        assert!(Word::parse_with("~", xy).is_err());
        assert!(Word::parse_with("[x,y,x]", xy).is_err());
    }

    #[test]
    fn display_round_trips() {
        let names = ["x", "y"];
        let word = w("x y~ [x,y] x^2");
        let text = word.display_with(&names).to_string();
        assert_eq!(w(&text), word);
    }
}
