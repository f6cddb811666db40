//! The scalar field: arbitrary-precision rationals.
//!
//! `num_rational::BigRational` already maintains the invariants we need
//! (lowest terms, positive denominator, canonical zero), so the whole crate
//! works with a type alias instead of a wrapper.

use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;

/// Shorthand constructor used pervasively in fixtures and tests.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer shorthand.
pub fn int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Renders `p/q`, or just `p` for integers. This is the canonical textual
/// form accepted back by the CLI parsers.
pub fn display(q: &Rational) -> String {
    use num_traits::One;
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn canonical_forms() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert!(rat(0, 5).is_zero());
        assert_eq!(display(&rat(-3, 6)), "-1/2");
        assert_eq!(display(&int(7)), "7");
    }
}
