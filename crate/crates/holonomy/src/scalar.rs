//! Exact scalar arithmetic: arbitrary-precision rationals over the ground
//! field of characteristic 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground-field scalar: a reduced fraction with positive denominator.
/// `BigRational` maintains both invariants on construction.
pub type Scalar = BigRational;

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn from_int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// True when `s` is an integer (denominator 1 after reduction).
pub fn is_integer(s: &Scalar) -> bool {
    s.denom().is_one()
}

/// Least common multiple of the denominators of a slice of scalars.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Scalar>>(items: I) -> BigInt {
    let mut l = BigInt::one();
    for s in items {
        let d = s.denom().abs();
        let g = num_integer::Integer::gcd(&l, &d);
        l = l / g * d;
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactness_round_trip() {
        // (a/b) * (b/a) = 1 for random-ish nonzero rationals
        for (a, b) in [(3i64, 7i64), (-5, 2), (123456789, 987654321), (-1, -1)] {
            let x = ratio(a, b);
            let y = ratio(b, a);
            assert_eq!(x * y, one());
        }
    }

    #[test]
    fn denominator_lcm_basic() {
        let v = [ratio(1, 6), ratio(1, 4), ratio(3, 1)];
        assert_eq!(denominator_lcm(v.iter()), BigInt::from(12));
    }
}
