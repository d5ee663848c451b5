use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::QuadFormError;
use crate::arith;

/// A place of ℚ: the real place or a finite prime.
///
/// Ordered with `Infinity` first and primes ascending, which is the order
/// every report prints them in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(BigInt),
}

impl Place {
    /// Finite place at `p`; fails unless `p` is prime.
    pub fn prime(p: impl Into<BigInt>) -> Result<Self, QuadFormError> {
        let p = p.into();
        if p.is_positive() && arith::is_prime(p.magnitude()) {
            Ok(Place::Prime(p))
        } else {
            Err(QuadFormError::InvalidPlace(p))
        }
    }

    pub fn two() -> Self {
        Place::Prime(BigInt::from(2))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Place::Prime(_))
    }

    fn validated_prime(&self) -> Result<Option<&BigInt>, QuadFormError> {
        match self {
            Place::Infinity => Ok(None),
            Place::Prime(p) if p.is_positive() && arith::is_prime(p.magnitude()) => Ok(Some(p)),
            Place::Prime(p) => Err(QuadFormError::InvalidPlace(p.clone())),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = QuadFormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(Place::Infinity);
        }
        let p: BigInt = s
            .parse()
            .map_err(|_| QuadFormError::InvalidPlace(BigInt::zero()))?;
        Place::prime(p)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Hilbert symbol `(a, b)_v ∈ {+1, -1}` of two nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: &Place) -> Result<i8, QuadFormError> {
    if a.is_zero() || b.is_zero() {
        return Err(QuadFormError::ZeroArgument);
    }
    let a = arith::integral_representative(a);
    let b = arith::integral_representative(b);
    hilbert_symbol_int(&a, &b, v)
}

/// [`hilbert_symbol`] for nonzero integers.
pub fn hilbert_symbol_int(a: &BigInt, b: &BigInt, v: &Place) -> Result<i8, QuadFormError> {
    if a.is_zero() || b.is_zero() {
        return Err(QuadFormError::ZeroArgument);
    }
    let Some(p) = v.validated_prime()? else {
        return Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        });
    };
    let (alpha, u) = arith::split_valuation(a, p);
    let (beta, w) = arith::split_valuation(b, p);
    if *p == BigInt::from(2) {
        // (-1)^{ε(u)ε(w) + α·ω(w) + β·ω(u)}
        let eps = |x: &BigInt| u32::from(arith::small_residue(x, 4) == 3);
        let omega = |x: &BigInt| u32::from(matches!(arith::small_residue(x, 8), 3 | 5));
        let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
        Ok(if e % 2 == 0 { 1 } else { -1 })
    } else {
        let p_mod_4 = arith::small_residue(p, 4);
        let mut s: i8 = if (alpha * beta) % 2 == 1 && p_mod_4 == 3 {
            -1
        } else {
            1
        };
        if beta % 2 == 1 {
            s *= arith::legendre(&u, p);
        }
        if alpha % 2 == 1 {
            s *= arith::legendre(&w, p);
        }
        Ok(s)
    }
}

/// Whether the nonzero integer `a` is a square in the completion at `v`.
pub fn is_local_square(a: &BigInt, v: &Place) -> Result<bool, QuadFormError> {
    if a.is_zero() {
        return Err(QuadFormError::ZeroArgument);
    }
    let Some(p) = v.validated_prime()? else {
        return Ok(a.is_positive());
    };
    let (val, u) = arith::split_valuation(a, p);
    if val % 2 == 1 {
        return Ok(false);
    }
    Ok(if *p == BigInt::from(2) {
        arith::small_residue(&u, 8) == 1
    } else {
        arith::legendre(&u, p) == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn p(n: i64) -> Place {
        Place::prime(n).unwrap()
    }

    #[test]
    fn place_construction() {
        assert!(Place::prime(4).is_err());
        assert!(Place::prime(1).is_err());
        assert!(Place::prime(-3).is_err());
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinity);
        assert_eq!("13".parse::<Place>().unwrap(), p(13));
        assert!("15".parse::<Place>().is_err());
        assert!(Place::Infinity < p(2) && p(2) < p(3));
    }

    #[test]
    fn unvalidated_prime_place_is_rejected() {
        let bogus = Place::Prime(BigInt::from(9));
        assert!(matches!(
            hilbert_symbol(&q(2), &q(3), &bogus),
            Err(QuadFormError::InvalidPlace(_))
        ));
    }

    #[test]
    fn documented_values() {
        assert_eq!(
            hilbert_symbol(&q(-1), &q(-1), &Place::Infinity).unwrap(),
            -1
        );
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &p(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(2), &q(3), &p(5)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&q(2), &q(-1), &p(2)).unwrap(), 1);
        assert_eq!(hilbert_symbol(&q(3), &q(3), &p(3)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&q(-1), &q(-1), &p(3)).unwrap(), 1);
    }

    #[test]
    fn rationals_use_square_class() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        for v in [Place::Infinity, p(2), p(3), p(5)] {
            assert_eq!(
                hilbert_symbol(&half, &q(-1), &v).unwrap(),
                hilbert_symbol(&q(2), &q(-1), &v).unwrap()
            );
        }
    }

    #[test]
    fn zero_argument() {
        assert!(hilbert_symbol(&q(0), &q(1), &Place::Infinity).is_err());
    }

    #[test]
    fn local_squares() {
        assert!(is_local_square(&BigInt::from(17), &p(2)).unwrap());
        assert!(!is_local_square(&BigInt::from(-1), &p(2)).unwrap());
        assert!(is_local_square(&BigInt::from(-1), &p(5)).unwrap());
        assert!(!is_local_square(&BigInt::from(-1), &p(3)).unwrap());
        assert!(!is_local_square(&BigInt::from(3), &p(3)).unwrap());
        assert!(is_local_square(&BigInt::from(9), &p(3)).unwrap());
        assert!(!is_local_square(&BigInt::from(-4), &Place::Infinity).unwrap());
    }
}
