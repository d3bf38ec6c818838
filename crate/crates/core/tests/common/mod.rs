#![allow(dead_code)]

use twocx_core::chain::{ChainComplex, IntegerMatrix};
use twocx_core::fox::cayley_complex;
use twocx_core::group::{parse_presentation, todd_coxeter, FiniteGroupTable, GroupPresentation};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub const S3: &str = "<x, y | x^2, y^3, x*y*x*y>";
pub const Q8: &str = "<x, y | x^2*y^-2, y^-1*x*y*x>";

/// Presentations with finite groups used throughout the tests.
pub fn corpus() -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = (2..=6).map(|n| (format!("<x | x^{n}>"), n)).collect();
    out.push((S3.to_string(), 6));
    out.push((Q8.to_string(), 8));
    out
}

pub fn group(text: &str) -> (GroupPresentation, FiniteGroupTable) {
    let p = parse_presentation(text).unwrap();
    let t = todd_coxeter(&p, 1000).unwrap();
    (p, t)
}

pub fn cayley(text: &str) -> ChainComplex {
    let (p, t) = group(text);
    cayley_complex(&p, &t).unwrap()
}

/// Rank over Q by fraction-free elimination.
pub fn rational_rank(m: &IntegerMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let (f, g) = (a[rank][c].clone(), a[r][c].clone());
                let pivot = a[rank].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x = &*x * &f - p * &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

fn gcd(a: BigInt, b: BigInt) -> BigInt {
    if b.is_zero() {
        a.abs()
    } else {
        let r = &a % &b;
        gcd(b, r)
    }
}

/// Invariant factors from determinantal divisors: `d_k = D_k / D_{k-1}`,
/// where `D_k` is the gcd of all k x k minors. Only for small matrices.
pub fn invariant_factors_by_minors(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut previous = BigInt::from(1);
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rows in combinations(m.rows(), k) {
            for cols in combinations(m.cols(), k) {
                let minor = IntegerMatrix::from_rows(
                    rows.iter()
                        .map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect())
                        .collect(),
                );
                g = gcd(g, minor.determinant());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &previous);
        previous = g;
    }
    out
}
