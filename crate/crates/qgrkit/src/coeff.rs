//! Exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient field: arbitrary-precision rationals.
pub type Coeff = BigRational;

pub fn zero() -> Coeff {
    Coeff::zero()
}

pub fn one() -> Coeff {
    Coeff::one()
}

pub fn from_i64(v: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(v))
}

pub fn from_frac(num: i64, den: i64) -> Coeff {
    assert!(den != 0, "zero denominator");
    Coeff::new(BigInt::from(num), BigInt::from(den))
}

/// Renders as `p` or `p/q` with a reduced fraction.
pub fn render(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// True for small "search" coefficients used in isomorphism hunting.
pub fn height_at_most(c: &Coeff, h: i64) -> bool {
    c.numer().abs() <= BigInt::from(h) && c.denom().abs() <= BigInt::from(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_reduces() {
        assert_eq!(render(&from_frac(2, 4)), "1/2");
        assert_eq!(render(&from_i64(-3)), "-3");
    }
}
