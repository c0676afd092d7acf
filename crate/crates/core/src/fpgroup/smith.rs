//! Invariant factors of an integer matrix.
//!
//! Diagonalizes by unimodular row and column operations over big integers.
//! The pivot is always an entry of smallest nonzero absolute value in the
//! remaining block, which keeps coefficient growth modest.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Nonzero diagonal of the Smith normal form, positive, each dividing the
/// next. The number of entries is the rank.
pub fn invariant_factors(rows: &[Vec<i64>], ncols: usize) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            r.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let nrows = m.len();
    let mut diag = Vec::new();
    for t in 0..nrows.min(ncols) {
        let Some((pr, pc)) = smallest_nonzero(&m, t, ncols) else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            if !clear_column(&mut m, t) || !clear_row(&mut m, t, ncols) {
                let (pr, pc) = smallest_nonzero(&m, t, ncols).expect("block is nonzero");
                m.swap(t, pr);
                for row in m.iter_mut() {
                    row.swap(t, pc);
                }
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold the
            // offending row into row t and go again.
            let pivot = m[t][t].clone();
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !m[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let (lo, hi) = m.split_at_mut(i.max(t));
                    let (dst, src) = if t < i { (&mut lo[t], &hi[0]) } else { (&mut hi[0], &lo[i]) };
                    for (d, s) in dst[t..ncols].iter_mut().zip(&src[t..ncols]) {
                        *d += s;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
    }
    diag
}

/// Position of an entry with smallest nonzero absolute value in the block
/// `[t.., t..]`.
fn smallest_nonzero(m: &[Vec<BigInt>], t: usize, ncols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().take(ncols).skip(t) {
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                let done = a.is_one();
                best = Some((i, j, a));
                if done {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Reduces column `t` below the pivot. Returns false when a nonzero
/// remainder is left, meaning a smaller pivot exists.
fn clear_column(m: &mut [Vec<BigInt>], t: usize) -> bool {
    let mut clean = true;
    for i in t + 1..m.len() {
        if m[i][t].is_zero() {
            continue;
        }
        let q = m[i][t].div_floor(&m[t][t]);
        let (top, rest) = m.split_at_mut(i);
        let pivot_row = &top[t];
        for (x, p) in rest[0].iter_mut().zip(pivot_row).skip(t) {
            *x -= &q * p;
        }
        if !rest[0][t].is_zero() {
            clean = false;
        }
    }
    clean
}

fn clear_row(m: &mut [Vec<BigInt>], t: usize, ncols: usize) -> bool {
    let mut clean = true;
    for j in t + 1..ncols {
        if m[t][j].is_zero() {
            continue;
        }
        let q = m[t][j].div_floor(&m[t][t]);
        for row in m.iter_mut().skip(t) {
            let p = row[t].clone();
            row[j] -= &q * p;
        }
        if !m[t][j].is_zero() {
            clean = false;
        }
    }
    clean
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: &[Vec<i64>], ncols: usize) -> Vec<i64> {
        invariant_factors(rows, ncols)
            .into_iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(factors(&[vec![5]], 1), vec![5]);
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
        assert_eq!(factors(&[vec![4, 6]], 2), vec![2]);
        assert_eq!(factors(&[vec![0, 0]], 2), Vec::<i64>::new());
        assert_eq!(factors(&[], 3), Vec::<i64>::new());
        assert_eq!(
            factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3),
            vec![2, 6, 12]
        );
    }

    #[test]
    fn chain_and_determinant() {
        let rows = vec![vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]];
        let d = factors(&rows, 3);
        assert!(d.windows(2).all(|w| w[1] % w[0] == 0));
        // |det| = 90
        assert_eq!(d.iter().product::<i64>(), 90);
    }
}
