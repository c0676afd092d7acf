//! The enumerator against a naive, unpruned triple loop with its own
//! constraint arithmetic.

use lefschetz::feasibility::{enumerate_feasible, enumerate_feasible_sequential, ConstraintProfile, Sigma, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
struct OracleRow {
    n: u64,
    s: Vec<u64>,
    verdict: &'static str,
    sigma: Option<i64>,
}

/// Evaluates the constraint system from scratch in `i128`.
fn oracle_verdict(g: i128, n: i128, s: &[i128], bound: i128, hyperelliptic: bool) -> (&'static str, Option<i64>) {
    let sep: i128 = s.iter().sum();
    let total = n + sep;
    if total >= bound {
        return ("total_bound", None);
    }
    if n < 4 * g {
        return ("min_nonseparating", None);
    }
    if !hyperelliptic {
        return ("unresolved", None);
    }
    let weighted: i128 = n + s.iter().enumerate().map(|(i, &x)| {
        let h = i as i128 + 1;
        2 * h * (4 * h + 2) * x
    }).sum::<i128>();
    let modulus = if g % 2 == 1 { 4 * (2 * g + 1) } else { 2 * (2 * g + 1) };
    if weighted % modulus != 0 {
        return ("congruence", None);
    }
    let numer: i128 = -(g + 1) * n
        + s.iter().enumerate().map(|(i, &x)| {
            let h = i as i128 + 1;
            (4 * h * (g - h) - (2 * g + 1)) * x
        }).sum::<i128>();
    if numer % (2 * g + 1) != 0 {
        return ("sigma_integral", None);
    }
    let sigma = numer / (2 * g + 1);
    if sigma > n - sep - 4 * g {
        return ("signature_bound", Some(sigma as i64));
    }
    let e = 4 - 4 * g + total;
    if (e + sigma) % 4 != 0 || (e + sigma) / 4 < 1 {
        return ("chi_h", Some(sigma as i64));
    }
    ("admitted", Some(sigma as i64))
}

/// Every `(n, s_1, s_2)` with each coordinate in `0..=bound`, filtered to
/// `1 <= total < bound`. Only genus up to 5 (at most two separating types).
fn oracle(g: u32, bound: u64, hyperelliptic: bool) -> Vec<OracleRow> {
    assert!(g <= 5);
    let types = (g / 2) as usize;
    let mut out = Vec::new();
    for n in 0..=bound {
        for s1 in 0..=bound {
            for s2 in 0..=bound {
                let s_full = [s1, s2];
                if s_full[types..].iter().any(|&x| x != 0) {
                    continue;
                }
                let s = s_full[..types].to_vec();
                let total = n + s.iter().sum::<u64>();
                if total == 0 || total >= bound {
                    continue;
                }
                let si: Vec<i128> = s.iter().map(|&x| x as i128).collect();
                let (verdict, sigma) = oracle_verdict(g as i128, n as i128, &si, bound as i128, hyperelliptic);
                out.push(OracleRow { n, s, verdict, sigma });
            }
        }
    }
    out
}

fn library(g: u32, bound: u64, hyperelliptic: bool) -> Vec<OracleRow> {
    let p = ConstraintProfile::new(g, bound, hyperelliptic).unwrap();
    enumerate_feasible(&p)
        .unwrap()
        .into_iter()
        .map(|r| OracleRow {
            n: r.counts.n(),
            s: r.counts.s().to_vec(),
            verdict: match r.verdict {
                Verdict::Admitted => "admitted",
                Verdict::Unresolved => "unresolved",
                Verdict::RejectedBy(c) => c.id(),
            },
            sigma: match r.sigma {
                Sigma::Integer(v) => Some(v),
                _ => None,
            },
        })
        .collect()
}

#[test]
fn enumerator_matches_naive_oracle() {
    for g in 1..=5 {
        for bound in 1..=40 {
            let lib = library(g, bound, true);
            let ora = oracle(g, bound, true);
            assert_eq!(lib, ora, "genus {g}, bound {bound}");
        }
    }
}

#[test]
fn nonhyperelliptic_matches_naive_oracle() {
    for g in 1..=5 {
        for bound in [1, 13, 24, 40] {
            assert_eq!(library(g, bound, false), oracle(g, bound, false), "genus {g}, bound {bound}");
        }
    }
}

#[test]
fn admitted_rows_revalidate() {
    for g in 1..=5 {
        let p = ConstraintProfile::hyperelliptic(g, 40).unwrap();
        for r in enumerate_feasible(&p).unwrap().iter().filter(|r| r.is_admitted()) {
            let s: Vec<i128> = r.counts.s().iter().map(|&x| x as i128).collect();
            let (v, sigma) = oracle_verdict(g as i128, r.counts.n() as i128, &s, 40, true);
            assert_eq!(v, "admitted", "{}", r.counts);
            assert_eq!(Sigma::Integer(sigma.unwrap()), r.sigma);
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    for g in 1..=6 {
        for bound in [10, 25, 33] {
            let p = ConstraintProfile::hyperelliptic(g, bound).unwrap();
            assert_eq!(enumerate_feasible(&p).unwrap(), enumerate_feasible_sequential(&p).unwrap());
        }
    }
}

#[test]
fn nothing_admitted_below_witnesses() {
    for (g, witness) in [(2, 14), (3, 18)] {
        let p = ConstraintProfile::hyperelliptic(g, witness).unwrap();
        assert!(enumerate_feasible(&p).unwrap().iter().all(|r| !r.is_admitted()));
    }
}
