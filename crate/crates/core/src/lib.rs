//! Exact-arithmetic toolkit for GIT stability of projective hypersurfaces and
//! Hodge-theoretic invariants of their degenerations.
//!
//! Everything here computes over the rationals with arbitrary precision; no
//! floating point is used anywhere. The crate is organized as:
//!
//! * [`polycore`] — sparse multivariate polynomials, parsing, linear changes
//!   of coordinates, pointwise differential data,
//! * [`newton`] — Newton polytope extraction and exact LP certificates for
//!   barycenter membership / separating weights,
//! * [`hm`] — weight systems, Hilbert–Mumford margins, destabilizer
//!   certificates and the top-level stability verdict,
//! * [`minexp`] — certified intervals for minimal exponents with derivation
//!   traces, and singularity classification,
//! * [`hodge`] — middle Hodge numbers, cores of block-sum degenerations,
//!   coordinate-arrangement cohomology and Hodge–Du Bois rows.
//!
//! Data-parallel inner loops (stratum enumeration, hint searches, batch
//! verification) run on rayon when the default `parallel` feature is enabled
//! and fall back to sequential iteration without it.

pub mod hm;
pub mod hodge;
pub mod minexp;
pub mod newton;
pub mod parallel;
pub mod polycore;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand used throughout the crate.
pub type Rat = BigRational;

/// Build a rational from an integer pair, normalizing sign and gcd.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Build an integral rational.
pub fn rat_int(num: i64) -> Rat {
    BigRational::from(BigInt::from(num))
}
