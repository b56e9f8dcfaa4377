//! Arbitrary-precision rational scalars.
//!
//! `BigRational` already maintains the canonical reduced form (coprime
//! numerator and denominator, positive denominator), which is exactly the
//! invariant we need, so we use it directly.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(k: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(k))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    assert!(q != 0, "zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `c^k` for possibly negative `k`; requires `c != 0` when `k < 0`.
pub fn pow(c: &Scalar, k: i64) -> Scalar {
    if k == 0 {
        return Scalar::one();
    }
    let mut acc = Scalar::one();
    let base = if k > 0 {
        c.clone()
    } else {
        assert!(!c.is_zero(), "negative power of zero");
        c.recip()
    };
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

pub fn is_one(c: &Scalar) -> bool {
    c.is_one()
}

pub fn fmt_scalar(c: &Scalar) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Sign-aware display fragment used by polynomial printers.
pub fn fmt_abs(c: &Scalar) -> String {
    fmt_scalar(&c.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_negative() {
        assert_eq!(pow(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(pow(&int(5), 0), int(1));
    }
}
