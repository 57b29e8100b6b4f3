//! Invariants of planar point clouds under 2×2 linear maps.
//!
//! A cloud is summarized by its linear coefficients `(M, H)`: the slope of
//! its least-squares line and the ratio of centered y-spread to x-spread.
//! Acting on the cloud with a matrix moves `(M, H)` along a rational map.
//! Functions of `(M, H)` that this map leaves fixed identify clouds up to
//! the transformation.
//!
//! * [`coefficients`]: raw sums and `(M, H)` of a cloud.
//! * [`transform`]: matrices, their action on clouds, and the induced map.
//! * [`generators`]: generator fields at the identity and PDE residual checks.
//! * [`family`]: one-parameter families and their invariant kernels.
//! * [`embedding`]: invariants for a single arbitrary matrix.
//! * [`parse`]: CSV and literal formats.
//! * [`cloudgen`]: seeded synthetic clouds.

pub mod cloudgen;
pub mod coefficients;
pub mod embedding;
pub mod error;
pub mod family;
pub mod generators;
pub mod parse;
pub mod transform;

pub use cloudgen::{CloudGenSpec, GeneratorKind};
pub use coefficients::{Cloud, LinearCoefficients, Point, RawSums};
pub use embedding::Embedding;
pub use error::{Error, Result};
pub use family::{KernelSpec, OneParamFamily};
pub use generators::{FamilyGenerator, GeneratorField, Kernel};
pub use transform::{Mat2, Matrix2};

/// Relative tolerance shared by every "is this zero" test: `D` of a cloud,
/// `D̂/D` of an image, matrix determinants and kernel denominators.
pub const DEGENERACY_EPS: f64 = 1e-12;
