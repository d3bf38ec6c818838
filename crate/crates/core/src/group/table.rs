use std::collections::VecDeque;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use super::presentation::GroupPresentation;
use super::word::GroupWord;

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table has order {order} but {what} has length {len}")]
    Shape {
        order: usize,
        what: &'static str,
        len: usize,
    },
    #[error("entry {value} out of range for order {order}")]
    OutOfRange { value: usize, order: usize },
    #[error("identity law fails for element {0}")]
    Identity(usize),
    #[error("inverse law fails for element {0}")]
    Inverse(usize),
    #[error("associativity fails for ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),
    #[error("relator {0} does not evaluate to the identity")]
    Relator(usize),
    #[error("generator images generate only {generated} of {order} elements")]
    NotGenerated { generated: usize, order: usize },
    #[error("table has {images} generator images but the presentation has {generators} generators")]
    GeneratorCount { images: usize, generators: usize },
}

/// A finite group given by its full multiplication table, with element 0 the
/// identity and a representative word for every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    product: Vec<usize>,
    inverse: Vec<usize>,
    generator_images: Vec<usize>,
    representatives: Vec<GroupWord>,
}

impl FiniteGroupTable {
    /// Builds a table from a flat row-major product table. Inverses are derived;
    /// call [`FiniteGroupTable::check`] to validate the group axioms.
    pub fn from_parts(
        product: Vec<usize>,
        generator_images: Vec<usize>,
        representatives: Vec<GroupWord>,
    ) -> Result<Self, TableError> {
        let order = representatives.len();
        if product.len() != order * order {
            return Err(TableError::Shape {
                order,
                what: "product table",
                len: product.len(),
            });
        }
        if let Some(&value) = product.iter().chain(&generator_images).find(|&&v| v >= order) {
            return Err(TableError::OutOfRange { value, order });
        }
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            if let Some(b) = (0..order).find(|&b| product[a * order + b] == 0) {
                inverse[a] = b;
            } else {
                return Err(TableError::Inverse(a));
            }
        }
        Ok(FiniteGroupTable {
            order,
            product,
            inverse,
            generator_images,
            representatives,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.generator_images
    }

    pub fn generator_image(&self, generator: usize) -> usize {
        self.generator_images[generator]
    }

    /// Shortest word (first in generator order) reaching each element.
    pub fn representatives(&self) -> &[GroupWord] {
        &self.representatives
    }

    pub fn representative(&self, element: usize) -> &GroupWord {
        &self.representatives[element]
    }

    /// Image of a word under the generator images. Letters must be in range.
    pub fn evaluate_word(&self, w: &GroupWord) -> usize {
        w.letters().iter().fold(0, |acc, l| {
            let g = self.generator_images[l.generator];
            let g = if l.inverse { self.inverse[g] } else { g };
            self.mul(acc, g)
        })
    }

    /// Checks the group axioms and that the table is a quotient of `p`
    /// generated by the generator images.
    pub fn check(&self, p: &GroupPresentation) -> Result<(), TableError> {
        if self.generator_images.len() != p.generator_count() {
            return Err(TableError::GeneratorCount {
                images: self.generator_images.len(),
                generators: p.generator_count(),
            });
        }
        self.check_axioms()?;
        for (j, r) in p.relators().iter().enumerate() {
            if self.evaluate_word(r) != 0 {
                return Err(TableError::Relator(j));
            }
        }
        let generated = self.generated_count();
        if generated != self.order {
            return Err(TableError::NotGenerated {
                generated,
                order: self.order,
            });
        }
        Ok(())
    }

    fn check_axioms(&self) -> Result<(), TableError> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(TableError::Identity(a));
            }
            let b = self.inverse[a];
            if self.mul(a, b) != 0 || self.mul(b, a) != 0 {
                return Err(TableError::Inverse(a));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)) {
                Ok(())
            } else {
                Err(TableError::Associativity(a, b, c))
            }
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(n as u64);
            for _ in 0..SAMPLED_TRIPLES {
                assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    fn generated_count(&self) -> usize {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(a) = queue.pop_front() {
            for &g in &self.generator_images {
                for next in [self.mul(a, g), self.mul(a, self.inverse[g])] {
                    if !seen[next] {
                        seen[next] = true;
                        count += 1;
                        queue.push_back(next);
                    }
                }
            }
        }
        count
    }
}
