//! Exact coefficient rings: `q,t`-Laurent scalars with fractional exponents,
//! integer trivariate Laurent polynomials in `q,t,a`, and weight-indexed
//! polynomials in the `X` variables.

mod ratfunc;
mod scalar;
mod tripoly;
mod xpoly;

pub use ratfunc::RatFunc;
pub use scalar::QTScalar;
pub use tripoly::{parse_tri, TriPoly};
pub use xpoly::{Weight, XPoly};

use num_rational::Ratio;

/// Exact rational coefficient.
pub type Q = Ratio<i128>;

/// Rational number used for exponents and pairings.
pub type Rat = Ratio<i64>;

/// Common denominator for scaled fractional exponents. Every exponent
/// occurring for the supported root systems has a denominator dividing it.
pub const DEN: i64 = 1_441_440;

/// Scale a rational exponent to the common denominator.
pub fn scale(r: Rat) -> i64 {
    let d = *r.denom();
    assert!(DEN % d == 0, "exponent denominator {d} unsupported");
    r.numer() * (DEN / d)
}

/// Inverse of [`scale`].
pub fn unscale(e: i64) -> Rat {
    Rat::new(e, DEN)
}

pub(crate) fn fmt_exp(e: Rat) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}
