//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use fibersum_core::fpgroup::{IntMatrix, Letter};

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Determinant by cofactor expansion.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k` = gcd of all `k x k` minors, for `k = 1..=min(rows, cols)`.
pub fn determinantal_divisors(m: &IntMatrix) -> Vec<i128> {
    let kmax = m.rows().min(m.cols());
    (1..=kmax)
        .map(|k| {
            let mut g = 0i128;
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub: Vec<Vec<i128>> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| i128::from(m.get(r, c))).collect())
                        .collect();
                    g = gcd(g, det(&sub));
                }
            }
            g
        })
        .collect()
}

/// Invariant factors from determinantal divisors: `d_k / d_{k-1}`, zero
/// once a divisor vanishes.
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<i64> {
    let d = determinantal_divisors(m);
    let mut out = Vec::with_capacity(d.len());
    let mut prev = 1i128;
    for dk in d {
        if dk == 0 || prev == 0 {
            out.push(0);
            prev = 0;
        } else {
            out.push(i64::try_from(dk / prev).unwrap());
            prev = dk;
        }
    }
    out
}

/// Stack-based free reduction, written independently of the library.
pub fn reduce_by_stack(letters: &[Letter]) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for &l in letters {
        match stack.last() {
            Some(&top) if top.generator == l.generator && top.inverse != l.inverse => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    stack
}

/// `2 - 2g` of a connected smoothing: component Euler characteristics,
/// minus two per double point.
pub fn smoothed_euler_characteristic(components: &[(u32, i64)], pairings: &[Vec<u32>]) -> i64 {
    let base: i64 = components.iter().map(|&(g, _)| 2 - 2 * i64::from(g)).sum();
    let mut d = 0i64;
    for (i, row) in pairings.iter().enumerate() {
        for &v in &row[i + 1..] {
            d += i64::from(v);
        }
    }
    base - 2 * d
}
