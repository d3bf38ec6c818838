//! Presentations, words, finite group tables, and group-ring arithmetic.

mod matrix;
mod presentation;
mod ring;
mod table;
mod todd_coxeter;
mod word;

pub use matrix::{expand_matrix, GroupRingMatrix, MatrixError};
pub use presentation::{parse_presentation, parse_word, GroupPresentation, ParseError};
pub use ring::{
    regular_representation, right_regular_representation, Flavor, GroupRing, GroupRingElement,
    RingError,
};
pub use table::{FiniteGroupTable, TableError, EXHAUSTIVE_ASSOCIATIVITY_LIMIT};
pub use todd_coxeter::{todd_coxeter, EnumerationError, DEFAULT_MAX_COSETS};
pub use word::{free_reduce, GroupWord, Letter};
