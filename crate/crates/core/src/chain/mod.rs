//! Chain complexes over group rings, exact integer linear algebra, homology,
//! and verification of chain maps and homotopy equivalences.

mod complex;
mod integer;
mod maps;
mod snf;
mod solve;

pub use complex::{
    homology, homology_table, verify_complex, verify_two_complex, AlgebraicTwoComplex,
    ChainComplex, ChainError, Homology, Report, TwoComplexError, TwoComplexReport, Violation,
};
pub use integer::IntegerMatrix;
pub use maps::{verify_chain_map, verify_equivalence, ChainMapCert, EquivalenceCertificate};
pub use snf::{invariant_factors, rank, smith_normal_form, solve_integer_system, SmithDecomposition};
pub use solve::{search_equivalence, solve_chain_map, solve_homotopy, solve_homotopy_inverse};
