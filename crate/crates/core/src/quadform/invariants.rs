use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::place::{hilbert_symbol, hilbert_symbol_int, is_local_square};
use super::space::QuadSpace;
use super::{Place, QuadFormError};
use crate::arith;

/// `(r⁺, r⁻)`.
pub fn signature(v: &QuadSpace) -> (usize, usize) {
    let d = &v.diagonalization().entries;
    let pos = d.iter().filter(|x| x.is_positive()).count();
    (pos, d.len() - pos)
}

/// Squarefree representative of `det(gram)` modulo squares.
pub fn disc_class(v: &QuadSpace) -> BigInt {
    if v.dim() == 0 {
        return BigInt::one();
    }
    arith::square_class(&v.determinant())
}

/// `ε_v = ∏_{i<j} (dᵢ, dⱼ)_v` over the stored diagonalization.
pub fn hasse_invariant(v: &QuadSpace, place: &Place) -> Result<i8, QuadFormError> {
    hasse_of_diagonal(&v.diagonalization().entries, place)
}

/// Hasse invariant of an explicit diagonal form.
pub fn hasse_of_diagonal(d: &[BigRational], place: &Place) -> Result<i8, QuadFormError> {
    let mut eps = 1i8;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            eps *= hilbert_symbol(&d[i], &d[j], place)?;
        }
    }
    Ok(eps)
}

/// Infinity, 2, and every odd prime dividing a numerator or denominator of
/// a diagonal entry of one of the inputs.
pub fn relevant_places(spaces: &[&QuadSpace]) -> BTreeSet<Place> {
    let mut out = BTreeSet::from([Place::Infinity, Place::two()]);
    for v in spaces {
        for d in &v.diagonalization().entries {
            for part in [d.numer(), d.denom()] {
                for p in arith::prime_divisors(part) {
                    out.insert(Place::Prime(p.into()));
                }
            }
        }
    }
    out
}

/// Complete rational invariants of a quadratic space.
///
/// `hasse` lists every place where the symbol could differ from `+1`; a
/// place missing from the map carries `+1`. Equality compares the symbols at
/// the union of listed places, so profiles computed against different place
/// sets still compare correctly.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantProfile {
    pub dim: usize,
    pub signature: (usize, usize),
    #[serde(serialize_with = "ser_bigint")]
    pub disc_class: BigInt,
    pub hasse: BTreeMap<Place, i8>,
}

pub(crate) fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(x) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.collect_str(x),
    }
}

impl InvariantProfile {
    pub fn hasse_at(&self, place: &Place) -> i8 {
        self.hasse.get(place).copied().unwrap_or(1)
    }

    /// Places where the Hasse symbol is `-1`.
    pub fn negative_places(&self) -> impl Iterator<Item = &Place> {
        self.hasse.iter().filter(|(_, &s)| s == -1).map(|(p, _)| p)
    }

    /// Checks the relations every realizable profile satisfies.
    pub fn check_consistency(&self) -> Result<(), QuadFormError> {
        let bad = |why: &str| Err(QuadFormError::InconsistentProfile(why.to_owned()));
        let (rp, rn) = self.signature;
        if rp + rn != self.dim {
            return bad("signature does not add up to the dimension");
        }
        if self.disc_class.sign() == num_bigint::Sign::NoSign
            || arith::squarefree_part(&self.disc_class) != self.disc_class
        {
            return bad("discriminant class is not a nonzero squarefree integer");
        }
        if self.disc_class.is_negative() != (rn % 2 == 1) {
            return bad("discriminant sign disagrees with the signature");
        }
        if self.hasse.values().any(|&s| s != 1 && s != -1) {
            return bad("Hasse symbols must be +1 or -1");
        }
        let real = if (rn * rn.saturating_sub(1) / 2) % 2 == 0 {
            1
        } else {
            -1
        };
        if self.hasse_at(&Place::Infinity) != real {
            return bad("real Hasse symbol disagrees with the signature");
        }
        if self.hasse.values().filter(|&&s| s == -1).count() % 2 == 1 {
            return bad("Hasse symbols violate the product formula");
        }
        Ok(())
    }
}

impl PartialEq for InvariantProfile {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.signature == other.signature
            && self.disc_class == other.disc_class
            && self
                .hasse
                .keys()
                .chain(other.hasse.keys())
                .all(|p| self.hasse_at(p) == other.hasse_at(p))
    }
}

impl Eq for InvariantProfile {}

impl fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim {}, signature ({}, {}), disc {}, hasse",
            self.dim, self.signature.0, self.signature.1, self.disc_class
        )?;
        for (p, s) in &self.hasse {
            write!(f, " {p}:{}", if *s > 0 { "+1" } else { "-1" })?;
        }
        Ok(())
    }
}

pub fn invariant_profile(v: &QuadSpace) -> InvariantProfile {
    profile_at(v, &relevant_places(&[v]))
}

pub(crate) fn profile_at(v: &QuadSpace, places: &BTreeSet<Place>) -> InvariantProfile {
    let hasse = places
        .iter()
        .map(|p| {
            (
                p.clone(),
                hasse_invariant(v, p).expect("places are validated"),
            )
        })
        .collect();
    InvariantProfile {
        dim: v.dim(),
        signature: signature(v),
        disc_class: disc_class(v),
        hasse,
    }
}

/// Which invariant separates two non-isometric spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum IsometryReport {
    Isometric,
    Dimension {
        left: usize,
        right: usize,
    },
    Signature {
        left: (usize, usize),
        right: (usize, usize),
    },
    Discriminant {
        #[serde(serialize_with = "ser_bigint")]
        left: BigInt,
        #[serde(serialize_with = "ser_bigint")]
        right: BigInt,
    },
    Hasse {
        place: Place,
        left: i8,
        right: i8,
    },
}

impl IsometryReport {
    pub fn is_isometric(&self) -> bool {
        matches!(self, IsometryReport::Isometric)
    }
}

/// Hasse–Minkowski: isometric over ℚ iff all invariants agree.
pub fn is_isometric(v: &QuadSpace, w: &QuadSpace) -> IsometryReport {
    let places = relevant_places(&[v, w]);
    let (pv, pw) = (profile_at(v, &places), profile_at(w, &places));
    if pv.dim != pw.dim {
        return IsometryReport::Dimension {
            left: pv.dim,
            right: pw.dim,
        };
    }
    if pv.signature != pw.signature {
        return IsometryReport::Signature {
            left: pv.signature,
            right: pw.signature,
        };
    }
    if pv.disc_class != pw.disc_class {
        return IsometryReport::Discriminant {
            left: pv.disc_class,
            right: pw.disc_class,
        };
    }
    for p in &places {
        let (l, r) = (pv.hasse_at(p), pw.hasse_at(p));
        if l != r {
            return IsometryReport::Hasse {
                place: p.clone(),
                left: l,
                right: r,
            };
        }
    }
    IsometryReport::Isometric
}

/// Why a profile cannot be realized by a rational quadratic space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionCode {
    /// Subspace larger than the ambient space.
    Dimension,
    /// Some signature component of the complement would be negative.
    Signature,
    /// Zero-dimensional complement needs discriminant 1.
    EmptyDiscriminant,
    /// Zero-dimensional complement needs all Hasse symbols +1.
    EmptyHasse,
    /// Rank-one forms have trivial Hasse symbols everywhere.
    RankOneHasse,
    /// A binary form with `-d` a local square is hyperbolic there.
    RankTwoHasse,
    /// Forced symbols break a global relation (signature or product formula).
    Inconsistent,
}

impl ObstructionCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObstructionCode::Dimension => "dimension",
            ObstructionCode::Signature => "signature",
            ObstructionCode::EmptyDiscriminant => "empty-discriminant",
            ObstructionCode::EmptyHasse => "empty-hasse",
            ObstructionCode::RankOneHasse => "rank-one-hasse",
            ObstructionCode::RankTwoHasse => "rank-two-hasse",
            ObstructionCode::Inconsistent => "inconsistent",
        }
    }
}

impl fmt::Display for ObstructionCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A local (or, with `place = None`, global) reason for a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub place: Option<Place>,
    pub code: ObstructionCode,
}

/// Realizability obstructions for a profile assumed internally consistent.
pub(crate) fn realizability_obstructions(p: &InvariantProfile) -> Vec<Obstruction> {
    let minus_disc = -&p.disc_class;
    let mut out = Vec::new();
    match p.dim {
        0 => {
            if !p.disc_class.is_one() {
                out.push(Obstruction {
                    place: None,
                    code: ObstructionCode::EmptyDiscriminant,
                });
            }
            out.extend(p.negative_places().map(|pl| Obstruction {
                place: Some(pl.clone()),
                code: ObstructionCode::EmptyHasse,
            }));
        }
        1 => out.extend(p.negative_places().map(|pl| Obstruction {
            place: Some(pl.clone()),
            code: ObstructionCode::RankOneHasse,
        })),
        2 => {
            for pl in p.negative_places() {
                if is_local_square(&minus_disc, pl).expect("validated place") {
                    out.push(Obstruction {
                        place: Some(pl.clone()),
                        code: ObstructionCode::RankTwoHasse,
                    });
                }
            }
        }
        _ => {}
    }
    out
}

/// Whether some rational quadratic space has exactly these invariants.
pub fn exists_with_invariants(p: &InvariantProfile) -> Result<bool, QuadFormError> {
    p.check_consistency()?;
    Ok(realizability_obstructions(p).is_empty())
}

/// `(a, b)_v` for square-class integers.
pub(crate) fn symbol(a: &BigInt, b: &BigInt, v: &Place) -> i8 {
    hilbert_symbol_int(a, b, v).expect("nonzero classes at validated places")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::space::rational;

    fn u() -> QuadSpace {
        QuadSpace::from_integers(&[vec![0, 1], vec![1, 0]], Some("U")).unwrap()
    }

    fn block(blocks: &[QuadSpace]) -> QuadSpace {
        let n: usize = blocks.iter().map(QuadSpace::dim).sum();
        let mut g = vec![vec![rational(0); n]; n];
        let mut off = 0;
        for b in blocks {
            for i in 0..b.dim() {
                for j in 0..b.dim() {
                    g[off + i][off + j] = b.gram()[i][j].clone();
                }
            }
            off += b.dim();
        }
        QuadSpace::new(g, None).unwrap()
    }

    fn rank1(n: i64) -> QuadSpace {
        QuadSpace::diagonal_integers(&[n], None).unwrap()
    }

    fn kum3() -> QuadSpace {
        block(&[u(), u(), u(), rank1(-8)])
    }

    fn p(n: i64) -> Place {
        Place::prime(n).unwrap()
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&u()), (1, 1));
        assert_eq!(signature(&kum3()), (3, 4));
        assert_eq!(signature(&block(&[rank1(-2), rank1(-2)])), (0, 2));
    }

    #[test]
    fn discriminants() {
        assert_eq!(disc_class(&u()), BigInt::from(-1));
        assert_eq!(disc_class(&kum3()), BigInt::from(2));
        let paranjape = block(&[u(), u(), rank1(-2), rank1(-2)]);
        assert_eq!(disc_class(&paranjape), BigInt::from(1));
    }

    #[test]
    fn hasse_values() {
        let pos = QuadSpace::diagonal_integers(&[1, 1, 1], None).unwrap();
        for v in [Place::Infinity, p(2), p(3), p(5), p(7)] {
            assert_eq!(hasse_invariant(&pos, &v).unwrap(), 1);
            assert_eq!(hasse_invariant(&u(), &v).unwrap(), 1);
        }
        // Paranjape lattice: ε_v = (2, -1)_v = +1 at every place.
        let paranjape = block(&[u(), u(), rank1(-2), rank1(-2)]);
        for v in [Place::Infinity, p(2), p(3), p(5), p(7), p(11)] {
            let two_minus_one = hilbert_symbol(&rational(2), &rational(-1), &v).unwrap();
            assert_eq!(two_minus_one, 1);
            assert_eq!(
                hasse_invariant(&paranjape, &v).unwrap(),
                two_minus_one,
                "at {v}"
            );
        }
    }

    #[test]
    fn places() {
        assert_eq!(
            relevant_places(&[&u()]),
            BTreeSet::from([Place::Infinity, p(2)])
        );
        assert_eq!(
            relevant_places(&[&kum3()]),
            BTreeSet::from([Place::Infinity, p(2)])
        );
        let ilp = block(&[u(), u(), rank1(-6), rank1(-2)]);
        assert_eq!(
            relevant_places(&[&ilp]),
            BTreeSet::from([Place::Infinity, p(2), p(3)])
        );
    }

    #[test]
    fn profiles() {
        let one = invariant_profile(&rank1(1));
        assert_eq!(one.dim, 1);
        assert_eq!(one.signature, (1, 0));
        assert_eq!(one.disc_class, BigInt::from(1));
        assert!(one.hasse.values().all(|&s| s == 1));
        let u2 = QuadSpace::from_integers(&[vec![0, 2], vec![2, 0]], None).unwrap();
        assert_eq!(invariant_profile(&u2), invariant_profile(&u()));
        for prof in [one, invariant_profile(&u2), invariant_profile(&kum3())] {
            prof.check_consistency().unwrap();
        }
    }

    #[test]
    fn isometry_reports() {
        let u2 = QuadSpace::from_integers(&[vec![0, 2], vec![2, 0]], None).unwrap();
        assert!(is_isometric(&u2, &u()).is_isometric());
        assert_eq!(
            is_isometric(&rank1(2), &rank1(1)),
            IsometryReport::Discriminant {
                left: BigInt::from(2),
                right: BigInt::from(1)
            }
        );
        assert!(matches!(
            is_isometric(&rank1(1), &u()),
            IsometryReport::Dimension { .. }
        ));
        assert!(matches!(
            is_isometric(&rank1(1), &rank1(-1)),
            IsometryReport::Signature { .. }
        ));
        // ⟨1,1⟩ vs ⟨3,3⟩: same dim, sig, disc; Hasse differs at 3.
        let a = QuadSpace::diagonal_integers(&[1, 1], None).unwrap();
        let b = QuadSpace::diagonal_integers(&[3, 3], None).unwrap();
        assert!(matches!(is_isometric(&a, &b), IsometryReport::Hasse { .. }));
    }

    fn profile(dim: usize, sig: (usize, usize), disc: i64, minus: &[Place]) -> InvariantProfile {
        let mut hasse = BTreeMap::from([(Place::Infinity, 1), (Place::two(), 1)]);
        for m in minus {
            hasse.insert(m.clone(), -1);
        }
        let rn = sig.1;
        if (rn * rn.saturating_sub(1) / 2) % 2 == 1 {
            hasse.insert(Place::Infinity, -1);
        }
        InvariantProfile {
            dim,
            signature: sig,
            disc_class: BigInt::from(disc),
            hasse,
        }
    }

    #[test]
    fn existence_rules() {
        assert!(exists_with_invariants(&profile(1, (1, 0), 3, &[])).unwrap());
        assert!(!exists_with_invariants(&profile(2, (1, 1), -1, &[p(2), p(3)])).unwrap());
        assert!(exists_with_invariants(&profile(0, (0, 0), 1, &[])).unwrap());
        // ⟨1, 1⟩ ⊕ ... : dim 2, disc 1 with -1 at 3 and 2 is realized by ⟨3, 3⟩.
        assert!(exists_with_invariants(&profile(2, (2, 0), 1, &[p(2), p(3)])).unwrap());
        assert!(exists_with_invariants(&profile(3, (3, 0), 1, &[p(2), p(3)])).unwrap());
        assert!(!exists_with_invariants(&profile(1, (1, 0), 3, &[p(2), p(3)])).unwrap());
    }

    #[test]
    fn inconsistent_profiles_error() {
        let mut bad = profile(1, (1, 0), 3, &[]);
        bad.disc_class = BigInt::from(-3);
        assert!(exists_with_invariants(&bad).is_err());
        let odd = profile(3, (3, 0), 1, &[p(3)]);
        assert!(exists_with_invariants(&odd).is_err());
        let mut not_sqfree = profile(1, (1, 0), 3, &[]);
        not_sqfree.disc_class = BigInt::from(12);
        assert!(exists_with_invariants(&not_sqfree).is_err());
    }
}
