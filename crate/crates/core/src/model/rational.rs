//! Exact rationals.
//!
//! [`ExactRational`] is `num_rational::BigRational`, which keeps every value
//! reduced with a positive denominator after each operation, so two equal
//! values are always structurally equal.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

pub type ExactRational = num_rational::BigRational;

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
    ExactRational::new(num.into(), den.into())
}

pub fn from_int(n: impl Into<BigInt>) -> ExactRational {
    ExactRational::from_integer(n.into())
}

pub fn from_biguint(n: &BigUint) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n.clone()))
}

/// `1 / n` for a positive big integer.
pub fn reciprocal(n: &BigUint) -> ExactRational {
    ExactRational::new(BigInt::one(), BigInt::from(n.clone()))
}

pub fn to_f64(q: &ExactRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Numerator and denominator as decimal strings, denominator positive.
pub fn to_decimal_parts(q: &ExactRational) -> (String, String) {
    (q.numer().to_string(), q.denom().to_string())
}

pub fn is_zero(q: &ExactRational) -> bool {
    q.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn stored_reduced_with_positive_denominator() {
        let q = ratio(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(to_decimal_parts(&q), ("-3".into(), "2".into()));
    }

    fn arb_q() -> impl Strategy<Value = ExactRational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn field_laws_and_reduced_storage(a in arb_q(), b in arb_q(), c in arb_q()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            for q in [&a + &b, &a * &b, &a - &c] {
                prop_assert!(q.denom() > &BigInt::zero());
                prop_assert!(num_integer::Integer::gcd(q.numer(), q.denom()).is_one());
            }
        }
    }
}
