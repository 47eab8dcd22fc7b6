//! Minimal cone cross-sections.
//!
//! Solves, enumerates, and classifies stationary hyperplanes for the minimal
//! cone cross-section problem: given a simplicial cone K in R^n and a point
//! A, minimize the (n-1)-volume of K `intersect` H over hyperplanes H through
//! A. A hyperplane H(b) = {x : (b,x) = 1} through A is stationary exactly
//! when AH = n * AG, where H is the orthogonal projection of the origin on
//! the plane and G is the centroid of the cross-section.
//!
//! Modules:
//! - [`geometry`]: cones, hyperplanes, sections, simplex measures, special
//!   points, dual-cone predicates.
//! - [`stationarity`]: the stationarity residual and its equivalent
//!   characterizations (equal distances from A', foot = Monge point).
//! - [`orthant`]: closed-form/scalar-root solver for the non-negative
//!   orthant, plus shortest-segment results.
//! - [`solver`]: numeric minimization, stationary-point enumeration and
//!   classification for arbitrary hyperangles; 2D region classification;
//!   boundary infimum.
//! - [`oracle`]: brute-force references used to validate the solvers.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod orthant;
pub mod solver;
pub mod stationarity;
pub mod tol;

pub use error::{Error, Result};
pub use geometry::{Hyperangle, Hyperplane, Point, Section};

/// Library version string.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
