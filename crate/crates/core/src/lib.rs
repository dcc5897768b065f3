//! Concentration of Lipschitz functions and discrete curvature on finite
//! metric spaces.
//!
//! The crate is organized around a small set of exact primitives:
//!
//! - [`space`]: finite metric spaces, graph families, Cartesian/Hamming
//!   products, hairs.
//! - [`field`]: Lipschitz scalar fields, exhaustive enumeration of extremal
//!   integer fields, variance maximization.
//! - [`sigma`]: log-moment functions, grid estimates of subgaussian
//!   constants, structural checks on extremal fields.
//! - [`iso`]: balls, level sets, isoperimetric minima and the tripod /
//!   caterpillar ball-growth constructions.
//! - [`cube`]: symmetric discrete midpoints, convexity and convex closure on
//!   the Boolean lattice, Brunn-Minkowski curvature scans.
//! - [`transport`]: exact optimal transport, maximum-entropy plans,
//!   transport partitions, entropy interpolation and displacement-convexity
//!   certificates.
//! - [`bounds`]: closed-form tail bounds, permutation and lattice-level
//!   concentration, expander midpoint counts.
//! - [`walks`]: weighted geodesic enumeration and random-walk midpoint laws.
//!
//! Structural quantities (distances, masses of exact plans, variances of
//! integer fields) are kept in exact rational arithmetic; floating point is
//! reserved for log-moment analysis, entropy and spectra.

pub mod bounds;
pub mod cube;
pub mod error;
pub mod field;
pub mod iso;
pub mod sigma;
pub mod space;
pub mod transport;
pub mod walks;

pub use error::Error;

/// Exact rational with machine-word components, used for distances and
/// small structural quantities.
pub type Rational = num_rational::Ratio<i64>;

/// Arbitrary-precision rational, used for plan masses and marginals.
pub type BigRational = num_rational::BigRational;

pub type Result<T> = std::result::Result<T, Error>;
