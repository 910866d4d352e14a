//! Exact enumeration of maps and graphs on surfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated multivariate power series with generic
//!   coefficients, algebraic fixed-point solving and compositional inversion;
//! * [`mapkernel`]: combinatorial maps (rotation systems, optionally with
//!   edge signs), faces, genus, the map/quadrangulation correspondence,
//!   widths, surgery and core extraction;
//! * [`census`]: exhaustive generation of rooted maps, quadrangulations and
//!   labelled graphs;
//! * [`graphkernel`]: connectivity, block and 3-connected decompositions,
//!   embedding oracles (genus, Euler genus, face-width), colouring;
//! * [`genuschain`]: the generating-function chain linking rooted maps,
//!   quadrangulations and their near-irreducible cores;
//! * [`asymptotics`]: singular points, coefficient transfer, growth fitting;
//! * [`structure`]: graph-side generating-function identities and exact
//!   small-size statistics.
//!
//! Exact computations use [`Rational`] coefficients; numerics are generic over
//! [`num_traits::Float`].

pub mod asymptotics;
pub mod census;
pub mod genuschain;
pub mod graphkernel;
pub mod mapkernel;
pub mod series;
pub mod structure;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar.
pub type Rational = BigRational;

/// Exact power series, the workhorse of every identity check.
pub type Series = series::PowerSeries<Rational>;

/// Floating point power series, used for long numeric evaluations.
pub type FloatSeries = series::PowerSeries<f64>;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}
