//! Exact computational representation theory for the groups of order `p^3`
//! (`p` an odd prime).
//!
//! The crate constructs the five isomorphism classes of groups of order
//! `p^3`, builds their complete lists of irreducible representations over
//! the cyclotomic field `Q(zeta_{p^3})`, and answers three questions about
//! an `n`-degree representation `rho = k_1 rho_1 + ... + k_r rho_r`:
//!
//! * how many such representations exist (closed binomial formulas, checked
//!   against streamed enumeration of multiplicity vectors),
//! * what the dimension of the space of invariant bilinear forms is
//!   (closed formula `sum k_i k_j` over dual pairs, checked against an
//!   exact nullspace computation),
//! * when a non-degenerate invariant form exists (multiplicity matching on
//!   dual pairs, checked by constructing explicit witnesses and by exact
//!   rank computations).
//!
//! All arithmetic is exact: cyclotomic numbers are vectors of
//! arbitrary-precision rationals in the power basis of `Q(zeta_{p^3})`,
//! counts are big integers, and every rank/nullspace decision is made by
//! exact elimination. Nothing is floating point.

pub mod combinat;
pub mod cyclo;
pub mod error;
pub mod groups;
pub mod irreps;
pub mod matrix;
pub mod solver;
pub mod verify;

pub use combinat::{
    admits_nondegenerate, census, count_nondegenerate, count_reps, enumerate_multvecs,
    invariant_dim, skew_dim, symmetric_dim, Census, MultVec,
};
pub use cyclo::{CycloNum, OddPrime, RootTable};
pub use error::Error;
pub use groups::{ConjClasses, Group, GroupElem, GroupFamily};
pub use irreps::{build_irreps, DualPairing, Irrep, IrrepSet};
pub use matrix::CycloMatrix;
pub use solver::{assemble, charp_mode, invariant_space, nondegenerate_witness, InvSpace, RepAssembly};
