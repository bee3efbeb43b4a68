//! Exact construction, verification and classification of finite-dimensional
//! uniserial representations of the conformal Galilei algebras `sl(2) ⋉ h_n`.
//!
//! Everything is computed over the rationals. Values of 6j-symbols are kept as
//! exact quadratic surds `c·√q`, so every zero test the classification relies
//! on is decided exactly.
//!
//! Module map:
//!
//! * [`arith`]: rationals, half-integers, surds and factorials.
//! * [`matrix`]: dense rational matrices (products, kernels, rank).
//! * [`sl2`]: standard-basis irreducibles and equivariant maps.
//! * [`galilei`]: the Lie algebra `sl(2) ⋉ h_n` itself.
//! * [`sixj`]: the exact 6j-symbol engine.
//! * [`block_rep`]: block upper-triangular representations and their checks.
//! * [`classifier`]: length-3 solver and the exhaustive searches.
//! * [`acceptance`]: the end-to-end criteria, shared by tests and the CLI.

pub mod acceptance;
pub mod arith;
pub mod block_rep;
pub mod classifier;
mod error;
pub mod galilei;
pub mod matrix;
pub mod report;
pub mod sixj;
pub mod sl2;

pub use arith::{HalfInt, Rational, Surd, SurdSum};
pub use block_rep::{build_construction, BlockRep, SocleSequence};
pub use error::{Error, Result};
pub use galilei::{AlgebraSpec, BasisElement, GalileiElement};
pub use matrix::RatMatrix;
pub use sixj::SixJArgs;
pub use sl2::{EquivariantFamily, IrrepLabel, Sl2Triple};
