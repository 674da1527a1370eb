//! Exact rational linear programming.
//!
//! Everything here works over arbitrary-precision rationals; there is no
//! floating-point path.

mod branch;
mod matrix;
pub(crate) mod regular;
mod simplex;

pub use branch::{integer_max, IntegerSolution};
pub use matrix::RationalMatrix;
pub use regular::{check_k_regular, find_k_regular_violation, invert};
pub use simplex::{simplex_max, LpError, LpProblem, LpSolution, LpStatus};

use num_bigint::BigInt;
use num_traits::One;

pub type Rational = num_rational::BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// True iff every entry has denominator 1.
pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Exact `p/q` rendering, with `q` always present.
pub fn format_pq(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrality() {
        assert!(is_integral(&[rational(0), rational(1), rational(2)]));
        assert!(!is_integral(&[half()]));
        assert!(is_integral(&[]));
    }

    #[test]
    fn pq_format() {
        assert_eq!(format_pq(&rational(2)), "2/1");
        assert_eq!(format_pq(&-half()), "-1/2");
    }
}
