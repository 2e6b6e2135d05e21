//! Exact computational workbench for diagram algebras and their symmetric-group
//! centralizers.
//!
//! The crate provides:
//!
//! * set partitions of `[1, 2d]`, their refinement lattice and Möbius function
//!   ([`partitions`]);
//! * exact arithmetic in the partition algebra `Par_d(δ)` and the Brauer
//!   algebra `Br_d(δ)`, including the diagram/orbit basis change and the
//!   centralizer bases under symmetric-group conjugation ([`diagram_algebra`]);
//! * the bijection between set partitions and edge-labeled multidigraphs,
//!   canonical forms for unlabeled multidigraphs, and the censuses counting
//!   them ([`graphs`]);
//! * generalized cycle types of Brauer diagrams as U/L/T strings, together
//!   with the mutually inverse maps to and from unions of directed cycles
//!   ([`gct`]);
//! * exact sparse rational matrices realizing the tensor-power actions, with
//!   rank, kernel, algebra-span and commutant solvers ([`schur_weyl`]);
//! * a Molien-series oracle for dimensions of conjugation-invariant
//!   polynomials on matrices under the permutation group ([`invariants`]).
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals); there
//! is no floating point anywhere. Every value is immutable after construction
//! and all operations are safe to call concurrently.

pub mod caps;
pub mod diagram_algebra;
pub mod error;
pub mod exact;
pub mod gct;
pub mod graphs;
pub mod invariants;
pub mod partitions;
pub mod schur_weyl;

pub use caps::Caps;
pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
