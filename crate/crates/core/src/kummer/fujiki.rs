//! Pushforward scaling of Beauville–Bogomolov forms along a rational map of
//! hyper-Kähler manifolds, from Fujiki relations `∫ x²ⁿ = c·q(x)ⁿ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use serde::Serialize;

use super::KummerError;
use crate::arith;

/// Degree of the quotient map from the generalized Kummer sixfold.
pub const KUMMER_MAP_DEGREE: u64 = 32;
/// Fujiki constant of Kum³-type manifolds.
pub const FUJIKI_KUM3: i64 = 60;
/// Fujiki constant of K3^[3]-type manifolds.
pub const FUJIKI_K3_3: i64 = 15;
/// Sixfolds: the Fujiki relation involves the sixth power.
pub const SIXFOLD_POWER: u32 = 6;
/// Divisor turning the pushforward into a rational isometry up to twist.
pub const ISOMETRY_DIVISOR: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FujikiData {
    pub degree: u64,
    #[serde(serialize_with = "ser_rational")]
    pub c_src: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub c_dst: BigRational,
    /// Top degree `2n` of the Fujiki relation.
    pub power: u32,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}

impl FujikiData {
    /// The Kum³ to K3^[3] sixfold data.
    pub fn kummer_sixfold() -> Self {
        Self {
            degree: KUMMER_MAP_DEGREE,
            c_src: BigRational::from_integer(FUJIKI_KUM3.into()),
            c_dst: BigRational::from_integer(FUJIKI_K3_3.into()),
            power: SIXFOLD_POWER,
        }
    }

    fn validate(&self) -> Result<(), KummerError> {
        if self.degree == 0 {
            return Err(KummerError::InvalidFujikiData(
                "degree must be positive".into(),
            ));
        }
        if !self.c_src.is_positive() || !self.c_dst.is_positive() {
            return Err(KummerError::InvalidFujikiData(
                "Fujiki constants must be positive".into(),
            ));
        }
        if self.power == 0 || self.power % 2 == 1 {
            return Err(KummerError::InvalidFujikiData(format!(
                "power must be a positive even number, got {}",
                self.power
            )));
        }
        Ok(())
    }
}

/// The `λ` with `q_dst(r_*x) = λ·q_src(x)`.
///
/// Comparing `∫ (r_*x)²ⁿ` with `∫ x²ⁿ` through both Fujiki relations gives
/// `λⁿ = deg^{2n−1}·c_src/c_dst`; the n-th root must be rational.
pub fn bbf_pushforward_scale(f: &FujikiData) -> Result<BigRational, KummerError> {
    f.validate()?;
    let n = f.power / 2;
    let deg = BigInt::from(f.degree);
    let mu = BigRational::from_integer(Pow::pow(&deg, f.power - 1)) * &f.c_src / &f.c_dst;
    let root = |x: &BigInt| arith::exact_root(x.magnitude(), n);
    match (root(mu.numer()), root(mu.denom())) {
        (Some(p), Some(q)) => Ok(BigRational::new(BigInt::from(p), BigInt::from(q))),
        _ => Err(KummerError::NotAPerfectPower {
            value: mu.to_string(),
            root: n,
        }),
    }
}

/// `λ / divisor²`: the twist left after rescaling the pushforward.
pub fn normalized_isometry_scale(
    lambda: &BigRational,
    divisor: &BigRational,
) -> Result<BigRational, KummerError> {
    if divisor.is_zero() {
        return Err(KummerError::ZeroDivisor);
    }
    Ok(lambda / (divisor * divisor))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn kummer_sixfold_scale() {
        let lambda = bbf_pushforward_scale(&FujikiData::kummer_sixfold()).unwrap();
        assert_eq!(lambda, q(512));
        assert_eq!(
            normalized_isometry_scale(&lambda, &q(ISOMETRY_DIVISOR)).unwrap(),
            q(2)
        );
    }

    #[test]
    fn trivial_map() {
        for power in [2, 4, 6, 8] {
            let f = FujikiData {
                degree: 1,
                c_src: q(7),
                c_dst: q(7),
                power,
            };
            assert_eq!(bbf_pushforward_scale(&f).unwrap(), q(1));
        }
    }

    #[test]
    fn rational_roots() {
        // μ = 2³ · 1/2 = 4, square root 2
        let f = FujikiData {
            degree: 2,
            c_src: BigRational::new(1.into(), 2.into()),
            c_dst: q(1),
            power: 4,
        };
        assert_eq!(bbf_pushforward_scale(&f).unwrap(), q(2));
        // deg 1, c_src/c_dst = 8/27 → 2/3
        let f = FujikiData {
            degree: 1,
            c_src: q(8),
            c_dst: q(27),
            power: 6,
        };
        assert_eq!(
            bbf_pushforward_scale(&f).unwrap(),
            BigRational::new(2.into(), 3.into())
        );
    }

    #[test]
    fn not_a_perfect_power() {
        let f = FujikiData {
            degree: 2,
            c_src: q(1),
            c_dst: q(1),
            power: 6,
        };
        assert!(matches!(
            bbf_pushforward_scale(&f),
            Err(KummerError::NotAPerfectPower { root: 3, .. })
        ));
    }

    #[test]
    fn invalid_data() {
        let bad = [
            FujikiData {
                degree: 0,
                c_src: q(1),
                c_dst: q(1),
                power: 6,
            },
            FujikiData {
                degree: 1,
                c_src: q(-1),
                c_dst: q(1),
                power: 6,
            },
            FujikiData {
                degree: 1,
                c_src: q(1),
                c_dst: q(0),
                power: 6,
            },
            FujikiData {
                degree: 1,
                c_src: q(1),
                c_dst: q(1),
                power: 5,
            },
        ];
        for f in bad {
            assert!(matches!(
                bbf_pushforward_scale(&f),
                Err(KummerError::InvalidFujikiData(_))
            ));
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(normalized_isometry_scale(&q(1), &q(1)).unwrap(), q(1));
        assert_eq!(normalized_isometry_scale(&q(8), &q(2)).unwrap(), q(2));
        assert_eq!(
            normalized_isometry_scale(&q(1), &q(0)),
            Err(KummerError::ZeroDivisor)
        );
        assert_eq!(
            normalized_isometry_scale(&q(3), &q(-3)).unwrap(),
            BigRational::new(1.into(), 3.into())
        );
    }
}
