//! Smith normal form over Z with unimodular transforms.
//!
//! Pivoting always picks the nonzero entry of least absolute value in the
//! active submatrix, ties broken by lowest row then lowest column, so the
//! output is a function of the input alone.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::integer::IntegerMatrix;

/// `u * a * v == d`, with `u`, `v` unimodular and `d` diagonal with
/// nonnegative entries `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        diagonal_nonzero(&self.d)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn diagonal_nonzero(d: &IntegerMatrix) -> Vec<BigInt> {
    (0..d.rows().min(d.cols()))
        .map(|i| d.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

struct Calc {
    d: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    IntegerMatrix::identity(n).to_rows()
}

impl Calc {
    fn new(a: &IntegerMatrix, track: bool) -> Self {
        Calc {
            d: a.to_rows(),
            u: track.then(|| identity_rows(a.rows())),
            v: track.then(|| identity_rows(a.cols())),
            rows: a.rows(),
            cols: a.cols(),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.d.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.d {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_target += factor * row_source
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt, from_col: usize) {
        let src = self.d[source][from_col..].to_vec();
        for (x, s) in self.d[target][from_col..].iter_mut().zip(&src) {
            if !s.is_zero() {
                *x += factor * s;
            }
        }
        if let Some(u) = &mut self.u {
            let src = u[source].clone();
            for (x, s) in u[target].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *x += factor * s;
                }
            }
        }
    }

    /// col_target += factor * col_source
    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt, from_row: usize) {
        for row in &mut self.d[from_row..] {
            if !row[source].is_zero() {
                let delta = factor * &row[source];
                row[target] += delta;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v {
                if !row[source].is_zero() {
                    let delta = factor * &row[source];
                    row[target] += delta;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.d[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.d[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            if self.clear_cross(t) {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let pivot = self.d[t][t].clone();
            let offender = (t + 1..self.rows).find(|&i| {
                (t + 1..self.cols).any(|j| !self.d[i][j].is_multiple_of(&pivot))
            });
            if let Some(i) = offender {
                self.add_row(t, i, &BigInt::from(1), t);
                continue;
            }
            if self.d[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }

    /// Reduces row and column `t` against the pivot. Returns true when a
    /// nonzero remainder was left behind, so the pivot must be chosen again.
    fn clear_cross(&mut self, t: usize) -> bool {
        let pivot = self.d[t][t].clone();
        let mut remainder = false;
        for i in t + 1..self.rows {
            if self.d[i][t].is_zero() {
                continue;
            }
            let q = &self.d[i][t] / &pivot;
            if !q.is_zero() {
                self.add_row(i, t, &-q, t);
            }
            remainder |= !self.d[i][t].is_zero();
        }
        for j in t + 1..self.cols {
            if self.d[t][j].is_zero() {
                continue;
            }
            let q = &self.d[t][j] / &pivot;
            if !q.is_zero() {
                self.add_col(j, t, &-q, t);
            }
            remainder |= !self.d[t][j].is_zero();
        }
        remainder
    }

    fn into_matrix(rows: Vec<Vec<BigInt>>, r: usize, c: usize) -> IntegerMatrix {
        if rows.is_empty() {
            IntegerMatrix::zeros(r, c)
        } else {
            IntegerMatrix::from_rows(rows)
        }
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let mut calc = Calc::new(a, true);
    calc.run();
    let (r, c) = (calc.rows, calc.cols);
    SmithDecomposition {
        d: Calc::into_matrix(calc.d, r, c),
        u: Calc::into_matrix(calc.u.unwrap_or_default(), r, r),
        v: Calc::into_matrix(calc.v.unwrap_or_default(), c, c),
    }
}

/// Nonzero invariant factors only; skips the transforms.
pub fn invariant_factors(a: &IntegerMatrix) -> Vec<BigInt> {
    let mut calc = Calc::new(a, false);
    calc.run();
    let d = Calc::into_matrix(calc.d, a.rows(), a.cols());
    diagonal_nonzero(&d)
}

pub fn rank(a: &IntegerMatrix) -> usize {
    invariant_factors(a).len()
}

/// One integer solution of `a * x = b`, or `None` if there is none. Free
/// parameters of the Smith parameterization are set to zero.
pub fn solve_integer_system(a: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length");
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let factors = snf.invariant_factors();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, value) in ub.iter().enumerate() {
        match factors.get(i) {
            Some(d) => {
                let (q, r) = value.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            None => {
                if !value.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(snf.v.mul_vec(&y))
}
