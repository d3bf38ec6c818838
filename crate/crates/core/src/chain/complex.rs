use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::group::{expand_matrix, GroupRing, GroupRingMatrix, MatrixError};

use super::integer::IntegerMatrix;
use super::snf;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("operation needs a finite group table; symbolic complexes are not supported")]
    SymbolicNotSupported,
    #[error("degree {degree} is outside 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("complexes live over different group rings")]
    RingMismatch,
    #[error("homology in degree {degree} is undefined: boundaries do not compose to zero")]
    NotAComplex { degree: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// One failed equation, located by degree and (zero-based) matrix entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: String,
    pub degree: usize,
    pub entry: Option<(usize, usize)>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails in degree {}", self.check, self.degree)?;
        if let Some((r, c)) = self.entry {
            write!(f, " at entry ({r}, {c})")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Outcome of a verification: empty when every equation holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    pub(crate) fn push(&mut self, check: &str, degree: usize, entry: Option<(usize, usize)>, detail: String) {
        self.violations.push(Violation {
            check: check.to_string(),
            degree,
            entry,
            detail,
        });
    }

    /// Records every nonzero entry of `difference` as a violation.
    pub(crate) fn nonzero_entries(&mut self, check: &str, degree: usize, difference: &GroupRingMatrix) {
        for r in 0..difference.rows() {
            for c in 0..difference.cols() {
                if !difference.get(r, c).is_zero() {
                    self.push(check, degree, Some((r, c)), String::new());
                }
            }
        }
    }
}

/// A bounded chain complex of free modules `C_k -> ... -> C_1 -> C_0` over a
/// group ring, optionally augmented by `C_0 -> Z`.
///
/// `boundaries[i - 1]` is `∂_i`, of shape `rank(i-1) x rank(i)`. The
/// augmentation sends basis vector `e_j` of `C_0` to `augmentation[j]` and a
/// ring element to its coefficient sum times that weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: GroupRing,
    ranks: Vec<usize>,
    boundaries: Vec<GroupRingMatrix>,
    augmentation: Option<Vec<BigInt>>,
}

impl ChainComplex {
    pub fn new(
        ring: GroupRing,
        ranks: Vec<usize>,
        boundaries: Vec<GroupRingMatrix>,
        augmentation: Option<Vec<BigInt>>,
    ) -> Result<Self, ChainError> {
        if ranks.is_empty() {
            return Err(ChainError::Dimension("a complex needs at least degree 0".into()));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(ChainError::Dimension(format!(
                "{} ranks need {} boundaries, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        for (i, b) in boundaries.iter().enumerate() {
            let degree = i + 1;
            if b.shape() != (ranks[degree - 1], ranks[degree]) {
                return Err(ChainError::Dimension(format!(
                    "boundary {degree} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    ranks[degree - 1],
                    ranks[degree]
                )));
            }
            b.check_ring(&ring)?;
        }
        if let Some(a) = &augmentation {
            if a.len() != ranks[0] {
                return Err(ChainError::Dimension(format!(
                    "augmentation has {} weights for rank {}",
                    a.len(),
                    ranks[0]
                )));
            }
        }
        Ok(ChainComplex {
            ring,
            ranks,
            boundaries,
            augmentation,
        })
    }

    /// Augmentation sending every basis vector of `C_0` to 1.
    pub fn standard_augmentation(rank0: usize) -> Vec<BigInt> {
        vec![BigInt::one(); rank0]
    }

    /// The complex with nothing in any degree.
    pub fn zero(ring: GroupRing) -> Self {
        ChainComplex {
            ring,
            ranks: vec![0],
            boundaries: Vec::new(),
            augmentation: None,
        }
    }

    pub fn ring(&self) -> &GroupRing {
        &self.ring
    }

    /// Highest degree carried.
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Zero above the top degree.
    pub fn rank(&self, degree: usize) -> usize {
        self.ranks.get(degree).copied().unwrap_or(0)
    }

    pub fn boundaries(&self) -> &[GroupRingMatrix] {
        &self.boundaries
    }

    /// `∂_degree`; a zero matrix of the right shape outside `1..=top`.
    pub fn boundary(&self, degree: usize) -> GroupRingMatrix {
        if degree >= 1 && degree <= self.top() {
            self.boundaries[degree - 1].clone()
        } else {
            let rows = if degree == 0 { 0 } else { self.rank(degree - 1) };
            GroupRingMatrix::zeros(rows, self.rank(degree), self.ring.flavor())
        }
    }

    pub fn augmentation(&self) -> Option<&[BigInt]> {
        self.augmentation.as_deref()
    }

    /// Same data with the top degree extended by zero modules up to `top`.
    pub fn extended_to(&self, top: usize) -> ChainComplex {
        let mut out = self.clone();
        while out.top() < top {
            let d = out.top() + 1;
            out.boundaries.push(GroupRingMatrix::zeros(out.rank(d - 1), 0, out.ring.flavor()));
            out.ranks.push(0);
        }
        out
    }

    pub(crate) fn table(&self) -> Result<&crate::group::FiniteGroupTable, ChainError> {
        self.ring.table().ok_or(ChainError::SymbolicNotSupported)
    }

    /// Integer matrix of `∂_degree` on the underlying free abelian groups.
    pub fn expanded_boundary(&self, degree: usize) -> Result<IntegerMatrix, ChainError> {
        let table = self.table()?;
        Ok(expand_matrix(&self.boundary(degree), table))
    }

    /// Value of the augmentation on column `j` of a matrix into `C_0`.
    pub(crate) fn augment_column(&self, m: &GroupRingMatrix, col: usize) -> Option<BigInt> {
        let weights = self.augmentation.as_ref()?;
        Some(
            weights
                .iter()
                .enumerate()
                .map(|(k, w)| w * m.get(k, col).augmentation())
                .sum(),
        )
    }
}

/// Abelian group `Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_m` with `t_1 | ... | t_m`, all `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homology {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Homology {
    pub fn free(rank: usize) -> Self {
        Homology {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_integers(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Checks `∂_{i} ∘ ∂_{i+1} = 0` for every `i ≥ 1` and `ε ∘ ∂_1 = 0`. A failure
/// of `∂_i ∘ ∂_{i+1}` is reported in degree `i`.
pub fn verify_complex(c: &ChainComplex) -> Result<Report, ChainError> {
    let mut report = Report::default();
    for i in 1..c.top() {
        let composite = GroupRingMatrix::compose(c.ring(), &c.boundaries[i - 1], &c.boundaries[i])?;
        report.nonzero_entries("boundary composite", i, &composite);
    }
    if c.augmentation.is_some() && c.top() >= 1 {
        let d1 = &c.boundaries[0];
        for j in 0..d1.cols() {
            let value = c.augment_column(d1, j).unwrap_or_default();
            if !value.is_zero() {
                report.push("augmentation composite", 0, Some((0, j)), format!("value {value}"));
            }
        }
    }
    Ok(report)
}

/// `H_degree` of the complex of underlying abelian groups (the universal cover
/// when the complex is a cellular chain complex over `ZG`).
pub fn homology(c: &ChainComplex, degree: usize) -> Result<Homology, ChainError> {
    if degree > c.top() {
        return Err(ChainError::DegreeOutOfRange {
            degree,
            top: c.top(),
        });
    }
    let table = c.table()?;
    let n = c.rank(degree) * table.order();
    let outgoing = if degree == 0 {
        0
    } else {
        snf::rank(&c.expanded_boundary(degree)?)
    };
    let incoming = snf::invariant_factors(&c.expanded_boundary(degree + 1)?);
    let torsion = incoming.iter().filter(|t| !t.is_one()).cloned().collect();
    let rank = n
        .checked_sub(outgoing + incoming.len())
        .ok_or(ChainError::NotAComplex { degree })?;
    Ok(Homology { rank, torsion })
}

/// Homology in every degree `0..=top`.
pub fn homology_table(c: &ChainComplex) -> Result<Vec<Homology>, ChainError> {
    (0..=c.top()).map(|i| homology(c, i)).collect()
}

/// Verdict on whether a length-two complex is an algebraic 2-complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoComplexReport {
    pub complex: Report,
    /// Empty when `∂∂ ≠ 0`.
    pub homology: Vec<Homology>,
    pub augmentation_surjective: Option<bool>,
}

impl TwoComplexReport {
    pub fn h0_is_integers(&self) -> bool {
        self.homology.first().is_some_and(Homology::is_integers)
    }

    pub fn h1_vanishes(&self) -> bool {
        self.homology.get(1).is_some_and(Homology::is_zero)
    }

    pub fn passed(&self) -> bool {
        self.complex.passed()
            && self.h0_is_integers()
            && self.h1_vanishes()
            && self.augmentation_surjective != Some(false)
    }

    /// All failures, including the homology conditions, as violations.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = self.complex.violations.clone();
        if self.augmentation_surjective == Some(false) {
            out.push(Violation {
                check: "augmentation surjectivity".into(),
                degree: 0,
                entry: None,
                detail: "augmentation weights have a common factor".into(),
            });
        }
        if self.homology.is_empty() {
            return out;
        }
        if !self.h0_is_integers() {
            out.push(Violation {
                check: "cokernel of the first boundary is Z".into(),
                degree: 0,
                entry: None,
                detail: format!("H0 = {}", self.homology[0]),
            });
        }
        if !self.h1_vanishes() {
            out.push(Violation {
                check: "exactness".into(),
                degree: 1,
                entry: None,
                detail: format!("H1 = {}", self.homology[1]),
            });
        }
        out
    }
}

/// Passes iff `∂∂ = 0`, `H_0 ≅ Z` through the augmentation and `H_1 = 0`.
/// `H_2` is reported but not constrained.
pub fn verify_two_complex(c: &ChainComplex) -> Result<TwoComplexReport, ChainError> {
    if c.top() != 2 {
        return Err(ChainError::Dimension(format!(
            "expected a complex of length 2, got length {}",
            c.top()
        )));
    }
    c.table()?;
    let complex = verify_complex(c)?;
    // Homology needs only ∂∂ = 0; a bad augmentation still leaves it defined.
    let composes = complex.violations.iter().all(|v| v.check != "boundary composite");
    let homology = if composes {
        homology_table(c)?
    } else {
        Vec::new()
    };
    let augmentation_surjective = c
        .augmentation()
        .map(|w| w.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one());
    Ok(TwoComplexReport {
        complex,
        homology,
        augmentation_surjective,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoComplexError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("not an algebraic 2-complex: {}", .0.violations().first().map(ToString::to_string).unwrap_or_default())]
    Failed(Box<TwoComplexReport>),
}

/// A complex verified to be an algebraic 2-complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicTwoComplex(ChainComplex);

impl AlgebraicTwoComplex {
    pub fn new(c: ChainComplex) -> Result<Self, TwoComplexError> {
        let report = verify_two_complex(&c)?;
        if report.passed() {
            Ok(AlgebraicTwoComplex(c))
        } else {
            Err(TwoComplexError::Failed(Box::new(report)))
        }
    }

    pub(crate) fn from_verified(c: ChainComplex) -> Self {
        AlgebraicTwoComplex(c)
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.0
    }

    pub fn into_complex(self) -> ChainComplex {
        self.0
    }
}

impl AsRef<ChainComplex> for AlgebraicTwoComplex {
    fn as_ref(&self) -> &ChainComplex {
        &self.0
    }
}
