//! Exact arithmetic for theta-congruent numbers.
//!
//! A positive integer `N` is theta-congruent when some triangle with rational
//! sides `a`, `b`, `c`, angle `theta` between `a` and `b` (with `cos theta = s/r`)
//! has area `N * sqrt(r^2 - s^2)`. Such triangles correspond to rational points
//! of order greater than two on
//!
//! ```text
//! E_N: y^2 = x (x + (r + s) N) (x - (r - s) N)
//! ```
//!
//! The group law, the triple/point correspondence, the Fermat-type step and
//! the two-triple combiner are generic over an exact [`Scalar`] field. The
//! crate-root aliases fix that field to [`Rat`] (big rationals), which is what
//! torsion computation and point search require.

pub mod combine;
pub mod correspondence;
pub mod curve;
pub mod error;
pub mod fermat;
pub mod geometry;
pub mod json;
pub mod numeric;
pub mod scalar;
pub mod search;
pub mod torsion;

pub use error::{Error, Result};
pub use geometry::Angle;
pub use scalar::Scalar;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rat = num_rational::BigRational;

/// Rational theta-triple over [`Rat`].
pub type ThetaTriple = geometry::ThetaTriple<Rat>;
/// Theta-congruent number curve over [`Rat`].
pub type Curve = curve::Curve<Rat>;
/// Point on a [`Curve`].
pub type Point = curve::Point<Rat>;
