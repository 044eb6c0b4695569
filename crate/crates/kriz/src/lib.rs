//! Exact-arithmetic engine for the rational model of ordered configuration
//! spaces of a complex projective variety.
//!
//! Given a finite graded-commutative Poincare-duality algebra `H` (the
//! cohomology of the underlying variety) and a point count `n`, the crate
//! builds the associated differential bigraded algebra on generators
//! `G_ij` over the `n`-fold tensor power of `H`, works on its canonical
//! basis of marked monotonic forests, and computes bigraded dimensions,
//! differentials, cohomology, and the full symmetric-group representation
//! data, everything over exact rationals.

pub mod error;
pub mod qnum;

pub mod action;
pub mod chars;
pub mod exterior;
pub mod homology;
pub mod linalg;
pub mod perm;
pub mod ring;
pub mod subcomplex;
pub mod verify;

pub use error::KrizError;
pub use qnum::Q;

pub use chars::{Character, Partition};
pub use exterior::{CanonicalMonomial, Element, RawExpression, Strategy, TypeSignature};
pub use homology::BigradedTable;
pub use linalg::SparseRationalMatrix;
pub use perm::Permutation;
pub use ring::{GradedRing, RingElement, TensorElement};
