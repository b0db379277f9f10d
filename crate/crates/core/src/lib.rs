//! Stretched Lie group actions on compactified homogeneous spaces.
//!
//! The crate computes the pullback of fundamental vector fields under
//! stretching maps `(x, y) -> (x, f(y))` near the boundary of an almost
//! homogeneous manifold, and checks the surrounding invariants with exact
//! rational arithmetic:
//!
//! * [`series`]: truncated multivariate power series, the jet substrate.
//! * [`stretch`]: stretching germs, collar fields, pullbacks and valuations.
//! * [`models`]: Klein and Poincaré ball models of real hyperbolic space.
//! * [`lie`]: matrix Lie algebras, normalizers, centers and condition (A).
//! * [`poset`]: stretch classes under the divisibility order.
//! * [`commands`]: the verification suites behind the `stretchforge` CLI.

pub mod commands;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod poset;
pub mod rational;
pub mod report;
pub mod series;
pub mod stretch;

pub use error::{Error, Result};
pub use rational::Rational;
pub use series::{TruncatedSeries, Valuation};

/// Version string embedded in every report.
pub const TOOL_VERSION: &str = concat!("stretchforge ", env!("CARGO_PKG_VERSION"));
