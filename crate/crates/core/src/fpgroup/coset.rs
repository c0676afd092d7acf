//! Coset enumeration over the trivial subgroup.
//!
//! HLT strategy: cosets are processed in order, each relator is scanned from
//! the current coset and the first undefined entry of the scan is defined.
//! When the table is full, a lookahead pass scans every live coset against
//! every relator without defining anything, then the table is compacted.
//! Coincidences are merged with the usual queue-based procedure.

use serde::Serialize;

use crate::word::{Letter, Word};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "value", rename_all = "snake_case")]
pub enum Outcome {
    /// The table closed with this many live cosets.
    Order(u64),
    /// More than this many cosets were needed at once.
    Exceeded(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationResult {
    pub outcome: Outcome,
    /// Total number of coset definitions made, including ones later
    /// eliminated by coincidences.
    pub cosets_defined: u64,
}

struct Full;

struct Table {
    ncols: usize,
    capacity: usize,
    entries: Vec<u32>,
    /// `parent[c] == c` iff `c` is live; otherwise points at a smaller coset.
    parent: Vec<u32>,
    live: usize,
    defined: u64,
    queue: Vec<u32>,
}

impl Table {
    fn new(ngens: usize, capacity: usize) -> Self {
        let mut t = Table {
            ncols: 2 * ngens,
            capacity,
            entries: Vec::new(),
            parent: Vec::new(),
            live: 0,
            defined: 0,
            queue: Vec::new(),
        };
        t.push_row();
        t
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn push_row(&mut self) -> u32 {
        let c = self.parent.len() as u32;
        self.entries.extend(std::iter::repeat_n(NONE, self.ncols));
        self.parent.push(c);
        self.live += 1;
        self.defined += 1;
        c
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.entries[c as usize * self.ncols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.entries[c as usize * self.ncols + col] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, Full> {
        if self.len() >= self.capacity {
            return Err(Full);
        }
        let d = self.push_row();
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for col in 0..self.ncols {
                let d = self.get(g, col);
                if d == NONE {
                    continue;
                }
                self.set(d, col ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                    continue;
                }
                let nu_xi = self.get(nu, col ^ 1);
                if nu_xi != NONE {
                    self.merge(mu, nu_xi);
                    continue;
                }
                self.set(mu, col, nu);
                self.set(nu, col ^ 1, mu);
            }
        }
        self.queue.clear();
    }

    /// Scans `rel` from coset `start`, defining cosets when `fill` is set.
    fn scan(&mut self, start: u32, rel: &[usize], fill: bool) -> Result<(), Full> {
        let len = rel.len();
        if len == 0 {
            return Ok(());
        }
        let mut f = start;
        let mut i = 0usize;
        let mut b = start;
        let mut j = len as isize - 1;
        loop {
            while i < len && self.get(f, rel[i]) != NONE {
                f = self.get(f, rel[i]);
                i += 1;
            }
            if i == len {
                if f != start {
                    self.coincidence(f, start);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, rel[j as usize] ^ 1) != NONE {
                b = self.get(b, rel[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                // deduction
                self.set(f, rel[i], b);
                self.set(b, rel[i] ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, rel[i])?;
        }
    }

    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        let mut c = 0u32;
        while (c as usize) < self.len() {
            for rel in rels {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, rel, false);
            }
            c += 1;
        }
    }

    /// Renumbers live cosets to `0..live` in order. Returns the new index
    /// of the first live coset at or after `cursor`.
    fn compact(&mut self, cursor: u32) -> u32 {
        let n = self.len();
        let mut new_index = vec![NONE; n];
        let mut k = 0u32;
        for c in 0..n as u32 {
            if self.is_live(c) {
                new_index[c as usize] = k;
                k += 1;
            }
        }
        let new_cursor = (cursor as usize..n)
            .find(|&c| new_index[c] != NONE)
            .map_or(k, |c| new_index[c]);
        let mut entries = Vec::with_capacity(k as usize * self.ncols);
        for c in 0..n {
            if new_index[c] == NONE {
                continue;
            }
            let row = &self.entries[c * self.ncols..(c + 1) * self.ncols];
            entries.extend(row.iter().map(|&d| if d == NONE { NONE } else { new_index[d as usize] }));
        }
        self.entries = entries;
        self.parent = (0..k).collect();
        new_cursor
    }
}

/// Enumerates cosets of the trivial subgroup in the group with `ngens`
/// generators and the given relators, storing at most `max_cosets` rows.
pub fn enumerate(ngens: usize, relators: &[Word], max_cosets: u64) -> EnumerationResult {
    let capacity = usize::try_from(max_cosets.max(1)).unwrap_or(usize::MAX);
    let rels: Vec<Vec<usize>> = relators
        .iter()
        .map(Word::cyclic_reduce)
        .filter(|w| !w.is_empty())
        .map(|w| w.letters().iter().map(|l: &Letter| l.column()).collect())
        .collect();
    let mut table = Table::new(ngens, capacity);
    let ncols = 2 * ngens;

    let mut c = 0u32;
    'cosets: while (c as usize) < table.len() {
        let mut r = 0;
        let mut col = 0;
        loop {
            if !table.is_live(c) {
                break;
            }
            let step = if r < rels.len() {
                table.scan(c, &rels[r], true)
            } else if col < ncols {
                if table.get(c, col) == NONE {
                    table.define(c, col).map(|_| ())
                } else {
                    Ok(())
                }
            } else {
                break;
            };
            match step {
                Ok(()) => {
                    if r < rels.len() {
                        r += 1;
                    } else {
                        col += 1;
                    }
                }
                Err(Full) => {
                    table.lookahead(&rels);
                    let still_live = table.is_live(c);
                    let nc = table.compact(c);
                    if table.len() >= table.capacity {
                        return EnumerationResult {
                            outcome: Outcome::Exceeded(max_cosets),
                            cosets_defined: table.defined,
                        };
                    }
                    c = nc;
                    if !still_live {
                        continue 'cosets;
                    }
                }
            }
        }
        c += 1;
    }
    EnumerationResult {
        outcome: Outcome::Order(table.live as u64),
        cosets_defined: table.defined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(names: &[&str], rels: &[&str]) -> Vec<Word> {
        rels.iter()
            .map(|r| Word::parse_with(r, |n| names.iter().position(|x| *x == n).map(|i| i as u32)).unwrap())
            .collect()
    }

    #[test]
    fn cyclic_orders() {
        for n in 1..=12 {
            let rel = parse(&["x"], &[&format!("x^{n}")]);
            assert_eq!(enumerate(1, &rel, 1000).outcome, Outcome::Order(n));
        }
    }

    #[test]
    fn small_groups() {
        let s3 = parse(&["x", "y"], &["x^2", "y^3", "x y x y"]);
        assert_eq!(enumerate(2, &s3, 1000).outcome, Outcome::Order(6));
        let q8 = parse(&["x", "y"], &["x^4", "x^2 y~^2", "y~ x y x"]);
        assert_eq!(enumerate(2, &q8, 1000).outcome, Outcome::Order(8));
        // Alternating group A5 as the (2,3,5) triangle group.
        let a5 = parse(&["x", "y"], &["x^2", "y^3", "x y x y x y x y x y"]);
        assert_eq!(enumerate(2, &a5, 10_000).outcome, Outcome::Order(60));
    }

    #[test]
    fn trivial_by_coincidence() {
        // x y x~ = y^2, y x y~ = x^2 presents the trivial group.
        let rels = parse(&["x", "y"], &["x y x~ y~ y~", "y x y~ x~ x~"]);
        assert_eq!(enumerate(2, &rels, 10_000).outcome, Outcome::Order(1));
    }

    #[test]
    fn infinite_group_exceeds() {
        let rels = parse(&["x", "y"], &["x y x~ y~"]);
        let res = enumerate(2, &rels, 500);
        assert_eq!(res.outcome, Outcome::Exceeded(500));
        let free = enumerate(1, &[], 50);
        assert_eq!(free.outcome, Outcome::Exceeded(50));
    }

    #[test]
    fn no_generators() {
        assert_eq!(enumerate(0, &[], 10).outcome, Outcome::Order(1));
    }

    #[test]
    fn tiny_capacity_still_works_for_trivial() {
        let rels = parse(&["x"], &["x"]);
        assert_eq!(enumerate(1, &rels, 1).outcome, Outcome::Order(1));
    }
}
