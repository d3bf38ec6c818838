//! Integral group rings, either over a free group (symbolic words) or over an
//! enumerated finite group (element indices of a [`FiniteGroupTable`]).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::table::FiniteGroupTable;
use super::word::{GroupWord, Letter};
use crate::chain::IntegerMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Symbolic,
    Tabular,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Symbolic => f.write_str("symbolic"),
            Flavor::Tabular => f.write_str("tabular"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("flavor mismatch: expected {expected}, found {found}")]
    FlavorMismatch { expected: Flavor, found: Flavor },
    #[error("group element {element} out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("generator {generator} out of range for {count} generators")]
    GeneratorOutOfRange { generator: usize, count: usize },
}

/// A finite integer combination of group elements. Zero coefficients are never
/// stored; symbolic keys are freely reduced words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupRingElement {
    Symbolic(BTreeMap<GroupWord, BigInt>),
    Tabular(BTreeMap<usize, BigInt>),
}

fn accumulate<K: Ord>(terms: &mut BTreeMap<K, BigInt>, key: K, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl GroupRingElement {
    pub fn zero(flavor: Flavor) -> Self {
        match flavor {
            Flavor::Symbolic => GroupRingElement::Symbolic(BTreeMap::new()),
            Flavor::Tabular => GroupRingElement::Tabular(BTreeMap::new()),
        }
    }

    pub fn word(w: GroupWord) -> Self {
        GroupRingElement::Symbolic(BTreeMap::from([(w, BigInt::one())]))
    }

    pub fn element(g: usize) -> Self {
        GroupRingElement::Tabular(BTreeMap::from([(g, BigInt::one())]))
    }

    /// Symbolic element from `(coefficient, word)` pairs; like terms combine.
    pub fn from_words<I: IntoIterator<Item = (BigInt, GroupWord)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (c, w) in terms {
            accumulate(&mut map, w, c);
        }
        GroupRingElement::Symbolic(map)
    }

    /// Tabular element from `(coefficient, element)` pairs; like terms combine.
    pub fn from_elements<I: IntoIterator<Item = (BigInt, usize)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (c, g) in terms {
            accumulate(&mut map, g, c);
        }
        GroupRingElement::Tabular(map)
    }

    pub fn flavor(&self) -> Flavor {
        match self {
            GroupRingElement::Symbolic(_) => Flavor::Symbolic,
            GroupRingElement::Tabular(_) => Flavor::Tabular,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GroupRingElement::Symbolic(t) => t.is_empty(),
            GroupRingElement::Tabular(t) => t.is_empty(),
        }
    }

    pub fn term_count(&self) -> usize {
        match self {
            GroupRingElement::Symbolic(t) => t.len(),
            GroupRingElement::Tabular(t) => t.len(),
        }
    }

    /// Coefficient sum; the augmentation homomorphism to Z.
    pub fn augmentation(&self) -> BigInt {
        match self {
            GroupRingElement::Symbolic(t) => t.values().sum(),
            GroupRingElement::Tabular(t) => t.values().sum(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            GroupRingElement::Symbolic(t) => {
                GroupRingElement::Symbolic(t.iter().map(|(k, v)| (k.clone(), -v)).collect())
            }
            GroupRingElement::Tabular(t) => {
                GroupRingElement::Tabular(t.iter().map(|(k, v)| (*k, -v)).collect())
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return GroupRingElement::zero(self.flavor());
        }
        match self {
            GroupRingElement::Symbolic(t) => {
                GroupRingElement::Symbolic(t.iter().map(|(k, v)| (k.clone(), v * c)).collect())
            }
            GroupRingElement::Tabular(t) => {
                GroupRingElement::Tabular(t.iter().map(|(k, v)| (*k, v * c)).collect())
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        match (self, other) {
            (GroupRingElement::Symbolic(a), GroupRingElement::Symbolic(b)) => {
                let mut out = a.clone();
                for (k, v) in b {
                    accumulate(&mut out, k.clone(), v.clone());
                }
                Ok(GroupRingElement::Symbolic(out))
            }
            (GroupRingElement::Tabular(a), GroupRingElement::Tabular(b)) => {
                let mut out = a.clone();
                for (k, v) in b {
                    accumulate(&mut out, *k, v.clone());
                }
                Ok(GroupRingElement::Tabular(out))
            }
            _ => Err(RingError::FlavorMismatch {
                expected: self.flavor(),
                found: other.flavor(),
            }),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    pub fn symbolic_terms(&self) -> Option<&BTreeMap<GroupWord, BigInt>> {
        match self {
            GroupRingElement::Symbolic(t) => Some(t),
            GroupRingElement::Tabular(_) => None,
        }
    }

    pub fn tabular_terms(&self) -> Option<&BTreeMap<usize, BigInt>> {
        match self {
            GroupRingElement::Tabular(t) => Some(t),
            GroupRingElement::Symbolic(_) => None,
        }
    }

    pub fn coefficient_of_element(&self, g: usize) -> BigInt {
        self.tabular_terms()
            .and_then(|t| t.get(&g).cloned())
            .unwrap_or_default()
    }
}

/// The ring a matrix or complex lives over: the integral group ring of a free
/// group of given rank, or of an enumerated finite group.
#[derive(Clone, Debug)]
pub enum GroupRing {
    Free { rank: usize },
    Finite(Arc<FiniteGroupTable>),
}

impl PartialEq for GroupRing {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (GroupRing::Free { rank: a }, GroupRing::Free { rank: b }) => a == b,
            (GroupRing::Finite(a), GroupRing::Finite(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl Eq for GroupRing {}

impl GroupRing {
    pub fn finite(table: FiniteGroupTable) -> Self {
        GroupRing::Finite(Arc::new(table))
    }

    pub fn flavor(&self) -> Flavor {
        match self {
            GroupRing::Free { .. } => Flavor::Symbolic,
            GroupRing::Finite(_) => Flavor::Tabular,
        }
    }

    pub fn table(&self) -> Option<&FiniteGroupTable> {
        match self {
            GroupRing::Finite(t) => Some(t),
            GroupRing::Free { .. } => None,
        }
    }

    pub fn zero(&self) -> GroupRingElement {
        GroupRingElement::zero(self.flavor())
    }

    pub fn one(&self) -> GroupRingElement {
        match self {
            GroupRing::Free { .. } => GroupRingElement::word(GroupWord::identity()),
            GroupRing::Finite(_) => GroupRingElement::element(0),
        }
    }

    pub fn integer(&self, c: BigInt) -> GroupRingElement {
        self.one().scale(&c)
    }

    /// The group element for generator `i`, as a ring element.
    pub fn generator(&self, i: usize) -> Result<GroupRingElement, RingError> {
        match self {
            GroupRing::Free { rank } => {
                if i >= *rank {
                    return Err(RingError::GeneratorOutOfRange {
                        generator: i,
                        count: *rank,
                    });
                }
                Ok(GroupRingElement::word(GroupWord::letter(Letter::gen(i))))
            }
            GroupRing::Finite(t) => {
                let count = t.generator_images().len();
                if i >= count {
                    return Err(RingError::GeneratorOutOfRange {
                        generator: i,
                        count,
                    });
                }
                Ok(GroupRingElement::element(t.generator_image(i)))
            }
        }
    }

    /// Checks that `a` belongs to this ring: right flavor, keys in range.
    pub fn check(&self, a: &GroupRingElement) -> Result<(), RingError> {
        match (self, a) {
            (GroupRing::Free { rank }, GroupRingElement::Symbolic(t)) => {
                for w in t.keys() {
                    if let Some(g) = w.max_generator().filter(|g| g >= rank) {
                        return Err(RingError::GeneratorOutOfRange {
                            generator: g,
                            count: *rank,
                        });
                    }
                }
                Ok(())
            }
            (GroupRing::Finite(table), GroupRingElement::Tabular(t)) => {
                match t.keys().find(|&&g| g >= table.order()) {
                    Some(&element) => Err(RingError::ElementOutOfRange {
                        element,
                        order: table.order(),
                    }),
                    None => Ok(()),
                }
            }
            _ => Err(RingError::FlavorMismatch {
                expected: self.flavor(),
                found: a.flavor(),
            }),
        }
    }

    fn expect_flavor(&self, a: &GroupRingElement) -> Result<(), RingError> {
        if a.flavor() == self.flavor() {
            Ok(())
        } else {
            Err(RingError::FlavorMismatch {
                expected: self.flavor(),
                found: a.flavor(),
            })
        }
    }

    pub fn add(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement, RingError> {
        self.expect_flavor(a)?;
        self.expect_flavor(b)?;
        a.add(b)
    }

    pub fn sub(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement, RingError> {
        self.expect_flavor(a)?;
        self.expect_flavor(b)?;
        a.sub(b)
    }

    /// Convolution product `a * b`.
    pub fn mul(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement, RingError> {
        self.expect_flavor(a)?;
        self.expect_flavor(b)?;
        match (self, a, b) {
            (GroupRing::Free { .. }, GroupRingElement::Symbolic(x), GroupRingElement::Symbolic(y)) => {
                let mut out = BTreeMap::new();
                for (u, c) in x {
                    for (v, d) in y {
                        accumulate(&mut out, u.mul(v), c * d);
                    }
                }
                Ok(GroupRingElement::Symbolic(out))
            }
            (GroupRing::Finite(t), GroupRingElement::Tabular(x), GroupRingElement::Tabular(y)) => {
                let mut out = BTreeMap::new();
                for (&g, c) in x {
                    for (&h, d) in y {
                        accumulate(&mut out, t.mul(g, h), c * d);
                    }
                }
                Ok(GroupRingElement::Tabular(out))
            }
            _ => unreachable!("flavors checked above"),
        }
    }

    pub fn augmentation(&self, a: &GroupRingElement) -> BigInt {
        a.augmentation()
    }
}

/// Matrix of left multiplication by `a` on the basis `g_0, g_1, ...`: column
/// `k` holds the coordinates of `a * g_k`.
pub fn regular_representation(a: &GroupRingElement, table: &FiniteGroupTable) -> IntegerMatrix {
    let n = table.order();
    let mut m = IntegerMatrix::zeros(n, n);
    if let Some(terms) = a.tabular_terms() {
        for k in 0..n {
            for (&g, c) in terms {
                *m.get_mut(table.mul(g, k), k) += c;
            }
        }
    }
    m
}

/// Matrix of right multiplication by `a`: column `k` holds the coordinates of
/// `g_k * a`. This is the block used when expanding maps of left modules.
pub fn right_regular_representation(a: &GroupRingElement, table: &FiniteGroupTable) -> IntegerMatrix {
    let n = table.order();
    let mut m = IntegerMatrix::zeros(n, n);
    if let Some(terms) = a.tabular_terms() {
        for k in 0..n {
            for (&g, c) in terms {
                *m.get_mut(table.mul(k, g), k) += c;
            }
        }
    }
    m
}
