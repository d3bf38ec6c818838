//! Chain complexes of universal covers of presentation complexes, and the
//! realization of algebraic 2-complexes by 3-complexes.
//!
//! - [`group`]: presentations, coset enumeration, group rings.
//! - [`fox`]: free derivatives and Cayley complexes.
//! - [`chain`]: complexes over group rings, Smith normal form, homology,
//!   chain maps and homotopy equivalences.
//! - [`realization`]: stabilization and the realizing 3-complex.

pub mod chain;
pub mod fox;
pub mod group;
pub mod realization;
