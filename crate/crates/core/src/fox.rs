//! Fox free derivatives and the cellular chain complex of a presentation's
//! Cayley complex.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::chain::ChainComplex;
use crate::group::{
    Flavor, FiniteGroupTable, GroupPresentation, GroupRing, GroupRingElement, GroupRingMatrix,
    GroupWord,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoxError {
    #[error("generator {generator} out of range for {count} generators")]
    GeneratorOutOfRange { generator: usize, count: usize },
    #[error("table has {images} generator images but the presentation has {generators} generators")]
    TableMismatch { images: usize, generators: usize },
}

/// `∂w/∂x_i` in the integral group ring of the free group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicDerivative(GroupRingElement);

impl SymbolicDerivative {
    pub fn value(&self) -> &GroupRingElement {
        &self.0
    }

    pub fn into_inner(self) -> GroupRingElement {
        self.0
    }
}

/// Free derivative of `w` with respect to generator `generator` of a free
/// group of rank `rank`.
///
/// Unrolls `∂(u a)/∂x = ∂u/∂x + u ∂a/∂x` along the letters: an `x` after
/// prefix `u` contributes `u`, an `x^-1` contributes `-u x^-1`.
pub fn fox_derivative(w: &GroupWord, generator: usize, rank: usize) -> Result<SymbolicDerivative, FoxError> {
    if generator >= rank {
        return Err(FoxError::GeneratorOutOfRange {
            generator,
            count: rank,
        });
    }
    if let Some(g) = w.max_generator().filter(|&g| g >= rank) {
        return Err(FoxError::GeneratorOutOfRange {
            generator: g,
            count: rank,
        });
    }
    let mut terms = Vec::new();
    let mut prefix = GroupWord::identity();
    for &letter in w.letters() {
        let after = prefix.mul(&GroupWord::letter(letter));
        if letter.generator == generator {
            if letter.inverse {
                terms.push((-BigInt::one(), after.clone()));
            } else {
                terms.push((BigInt::one(), prefix.clone()));
            }
        }
        prefix = after;
    }
    Ok(SymbolicDerivative(GroupRingElement::from_words(terms)))
}

/// Replaces every word by its image in `table`, combining coefficients.
pub fn project(d: &GroupRingElement, table: &FiniteGroupTable) -> GroupRingElement {
    match d {
        GroupRingElement::Symbolic(terms) => GroupRingElement::from_elements(
            terms.iter().map(|(w, c)| (c.clone(), table.evaluate_word(w))),
        ),
        GroupRingElement::Tabular(_) => d.clone(),
    }
}

/// Entrywise [`project`].
pub fn project_matrix(m: &GroupRingMatrix, table: &FiniteGroupTable) -> GroupRingMatrix {
    m.map_entries(Flavor::Tabular, |e| project(e, table))
}

fn symbolic_boundaries(p: &GroupPresentation) -> (GroupRingMatrix, GroupRingMatrix) {
    let ring = GroupRing::Free {
        rank: p.generator_count(),
    };
    let g = p.generator_count();
    let r = p.relators().len();
    let mut d1 = GroupRingMatrix::zeros(1, g, Flavor::Symbolic);
    for i in 0..g {
        let x = ring.generator(i).expect("generator in range");
        d1.set(0, i, x.sub(&ring.one()).expect("same flavor"));
    }
    let mut d2 = GroupRingMatrix::zeros(g, r, Flavor::Symbolic);
    for (j, relator) in p.relators().iter().enumerate() {
        for i in 0..g {
            let d = fox_derivative(relator, i, g).expect("presentation letters in range");
            d2.set(i, j, d.into_inner());
        }
    }
    (d1, d2)
}

/// Chain complex `C_2 -> C_1 -> C_0` of the universal cover of the Cayley
/// complex, over `Z[G]` for the enumerated group `table`.
///
/// Ranks are (1, generators, relators). Column `i` of `∂_1` is `x_i - 1`;
/// entry `(i, j)` of `∂_2` is the projected derivative of relator `j` with
/// respect to `x_i`. `C_0` carries the standard augmentation.
pub fn cayley_complex(p: &GroupPresentation, table: &FiniteGroupTable) -> Result<ChainComplex, FoxError> {
    if table.generator_images().len() != p.generator_count() {
        return Err(FoxError::TableMismatch {
            images: table.generator_images().len(),
            generators: p.generator_count(),
        });
    }
    let (d1, d2) = symbolic_boundaries(p);
    let ring = GroupRing::finite(table.clone());
    let complex = ChainComplex::new(
        ring,
        vec![1, p.generator_count(), p.relators().len()],
        vec![project_matrix(&d1, table), project_matrix(&d2, table)],
        Some(ChainComplex::standard_augmentation(1)),
    )
    .expect("Cayley complex shapes are consistent");
    Ok(complex)
}

/// The same complex over the free group ring, before any relator is imposed.
/// Boundaries compose to zero only for free presentations.
pub fn symbolic_cayley_complex(p: &GroupPresentation) -> ChainComplex {
    let (d1, d2) = symbolic_boundaries(p);
    ChainComplex::new(
        GroupRing::Free {
            rank: p.generator_count(),
        },
        vec![1, p.generator_count(), p.relators().len()],
        vec![d1, d2],
        Some(ChainComplex::standard_augmentation(1)),
    )
    .expect("Cayley complex shapes are consistent")
}
