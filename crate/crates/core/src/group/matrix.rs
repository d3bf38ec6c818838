//! Matrices over a group ring, read as maps of free left modules.
//!
//! Column `j` of a matrix holds the image of basis vector `e_j`. Because the
//! ring acts on the left and coordinates multiply entries from the left, the
//! composite `outer ∘ inner` has entries `Σ_l inner[l][j] * outer[k][l]`; see
//! [`GroupRingMatrix::compose`]. Over a commutative group this is the usual
//! matrix product.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use super::ring::{right_regular_representation, Flavor, GroupRing, GroupRingElement, RingError};
use super::table::FiniteGroupTable;
use crate::chain::IntegerMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    flavor: Flavor,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zeros(rows: usize, cols: usize, flavor: Flavor) -> Self {
        GroupRingMatrix {
            rows,
            cols,
            flavor,
            entries: vec![GroupRingElement::zero(flavor); rows * cols],
        }
    }

    pub fn identity(n: usize, ring: &GroupRing) -> Self {
        let mut m = GroupRingMatrix::zeros(n, n, ring.flavor());
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Builds from row-major entries, which must all share `flavor`.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        flavor: Flavor,
        entries: Vec<GroupRingElement>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.flavor() != flavor) {
            return Err(RingError::FlavorMismatch {
                expected: flavor,
                found: bad.flavor(),
            }
            .into());
        }
        Ok(GroupRingMatrix {
            rows,
            cols,
            flavor,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<GroupRingElement>>, flavor: Flavor) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Dimension("ragged rows".into()));
        }
        GroupRingMatrix::from_entries(r, c, flavor, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn get(&self, row: usize, col: usize) -> &GroupRingElement {
        &self.entries[row * self.cols + col]
    }

    /// Panics if `value` has the wrong flavor.
    pub fn set(&mut self, row: usize, col: usize, value: GroupRingElement) {
        assert_eq!(value.flavor(), self.flavor, "entry flavor must match matrix");
        self.entries[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[GroupRingElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|e| !e.is_zero())
            .map(|i| (i / self.cols, i % self.cols))
    }

    pub fn check_ring(&self, ring: &GroupRing) -> Result<(), MatrixError> {
        if self.flavor != ring.flavor() {
            return Err(RingError::FlavorMismatch {
                expected: ring.flavor(),
                found: self.flavor,
            }
            .into());
        }
        for e in &self.entries {
            ring.check(e)?;
        }
        Ok(())
    }

    fn same_shape(&self, other: &Self) -> Result<(), MatrixError> {
        if self.shape() != other.shape() {
            return Err(MatrixError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(GroupRingMatrix {
            rows: self.rows,
            cols: self.cols,
            flavor: self.flavor,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_entries(self.flavor, GroupRingElement::neg)
    }

    /// `outer ∘ inner`: apply `inner` first.
    pub fn compose(ring: &GroupRing, outer: &Self, inner: &Self) -> Result<Self, MatrixError> {
        if outer.cols != inner.rows {
            return Err(MatrixError::Dimension(format!(
                "cannot compose {}x{} after {}x{}",
                outer.rows, outer.cols, inner.rows, inner.cols
            )));
        }
        let mut out = GroupRingMatrix::zeros(outer.rows, inner.cols, ring.flavor());
        for k in 0..outer.rows {
            for j in 0..inner.cols {
                let mut acc = ring.zero();
                for l in 0..outer.cols {
                    let a = inner.get(l, j);
                    let b = outer.get(k, l);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&ring.mul(a, b)?)?;
                }
                out.entries[k * inner.cols + j] = acc;
            }
        }
        Ok(out)
    }

    /// Columns `start..end` as a new matrix.
    pub fn columns(&self, start: usize, end: usize) -> Self {
        let mut out = GroupRingMatrix::zeros(self.rows, end - start, self.flavor);
        for r in 0..self.rows {
            for c in start..end {
                out.set(r, c - start, self.get(r, c).clone());
            }
        }
        out
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        let mut out = GroupRingMatrix::zeros(end - start, self.cols, self.flavor);
        for r in start..end {
            for c in 0..self.cols {
                out.set(r - start, c, self.get(r, c).clone());
            }
        }
        out
    }

    /// Copies `self` into a zero matrix of the given size at `(row, col)`.
    pub fn embed(&self, rows: usize, cols: usize, row: usize, col: usize) -> Self {
        assert!(row + self.rows <= rows && col + self.cols <= cols);
        let mut out = GroupRingMatrix::zeros(rows, cols, self.flavor);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(row + r, col + c, self.get(r, c).clone());
            }
        }
        out
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut out = self.embed(rows, cols, 0, 0);
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Applies `f` entrywise; `f` must produce elements of `flavor`.
    pub fn map_entries<F>(&self, flavor: Flavor, mut f: F) -> Self
    where
        F: FnMut(&GroupRingElement) -> GroupRingElement,
    {
        GroupRingMatrix {
            rows: self.rows,
            cols: self.cols,
            flavor,
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }
}

/// Integer matrix of the map on underlying free abelian groups. The Z-basis of
/// a rank-`n` free module is `g_k e_j` at index `j * order + k`; block `(i, j)`
/// is the right regular representation of entry `(i, j)`.
pub fn expand_matrix(m: &GroupRingMatrix, table: &FiniteGroupTable) -> IntegerMatrix {
    let n = table.order();
    let mut out = IntegerMatrix::zeros(m.rows() * n, m.cols() * n);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let entry = m.get(i, j);
            if entry.is_zero() {
                continue;
            }
            let block = right_regular_representation(entry, table);
            for r in 0..n {
                for c in 0..n {
                    let v: &BigInt = block.get(r, c);
                    if v != &BigInt::default() {
                        *out.get_mut(i * n + r, j * n + c) = v.clone();
                    }
                }
            }
        }
    }
    out
}

impl fmt::Display for GroupRingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {} matrix", self.rows, self.cols, self.flavor)
    }
}
