//! Rational quadratic spaces and their Hasse–Minkowski invariants.
//!
//! Everything here is exact. A space is classified over ℚ by its dimension,
//! signature, discriminant square class and the Hasse symbols
//! `ε_v = ∏_{i<j} (dᵢ, dⱼ)_v` of any diagonalization. The same data decides
//! whether one space embeds isometrically in another: by Witt cancellation an
//! embedding `V ↪ W` exists iff some `C` satisfies `V ⊥ C ≅ W`, and the
//! invariants of `C` are forced by those of `V` and `W` through
//! `ε_v(V ⊥ C) = ε_v(V)·ε_v(C)·(d(V), d(C))_v`.

mod invariants;
mod place;
mod space;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith;

pub use invariants::{
    disc_class, exists_with_invariants, hasse_invariant, hasse_of_diagonal, invariant_profile,
    is_isometric, relevant_places, signature, InvariantProfile, IsometryReport, Obstruction,
    ObstructionCode,
};
pub use place::{hilbert_symbol, hilbert_symbol_int, is_local_square, Place};
pub use space::{diagonalize, matrix_rank, Diagonalization, Matrix, QuadSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadFormError {
    #[error("gram matrix is degenerate")]
    DegenerateForm,
    #[error("gram matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("{0} is not a prime")]
    InvalidPlace(BigInt),
    #[error("Hilbert symbol arguments must be nonzero")]
    ZeroArgument,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("inconsistent invariant profile: {0}")]
    InconsistentProfile(String),
}

/// Outcome of an isometric-embedding test `V ↪ W`.
///
/// On success `complement` holds the invariants of the orthogonal complement;
/// on failure `obstructions` says where and why no complement exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingVerdict {
    pub embeds: bool,
    pub complement: Option<InvariantProfile>,
    pub obstructions: Vec<Obstruction>,
}

impl EmbeddingVerdict {
    fn rejected(obstructions: Vec<Obstruction>) -> Self {
        debug_assert!(!obstructions.is_empty());
        Self {
            embeds: false,
            complement: None,
            obstructions,
        }
    }
}

/// Decides whether `v` embeds isometrically into `w` over ℚ.
pub fn embeds(v: &QuadSpace, w: &QuadSpace) -> EmbeddingVerdict {
    if v.dim() > w.dim() {
        return EmbeddingVerdict::rejected(vec![Obstruction {
            place: None,
            code: ObstructionCode::Dimension,
        }]);
    }
    let (vp, vn) = signature(v);
    let (wp, wn) = signature(w);
    if vp > wp || vn > wn {
        return EmbeddingVerdict::rejected(vec![Obstruction {
            place: Some(Place::Infinity),
            code: ObstructionCode::Signature,
        }]);
    }

    let places = relevant_places(&[v, w]);
    let dv = disc_class(v);
    let dw = disc_class(w);
    let dc = arith::squarefree_part(&(&dv * &dw));
    let hasse: BTreeMap<Place, i8> = places
        .iter()
        .map(|pl| {
            let ew = hasse_invariant(w, pl).expect("validated place");
            let ev = hasse_invariant(v, pl).expect("validated place");
            (pl.clone(), ew * ev * invariants::symbol(&dv, &dc, pl))
        })
        .collect();
    let forced = InvariantProfile {
        dim: w.dim() - v.dim(),
        signature: (wp - vp, wn - vn),
        disc_class: dc,
        hasse,
    };

    if forced.check_consistency().is_err() {
        return EmbeddingVerdict::rejected(vec![Obstruction {
            place: None,
            code: ObstructionCode::Inconsistent,
        }]);
    }
    let obstructions = invariants::realizability_obstructions(&forced);
    if obstructions.is_empty() {
        EmbeddingVerdict {
            embeds: true,
            complement: Some(forced),
            obstructions,
        }
    } else {
        EmbeddingVerdict::rejected(obstructions)
    }
}

/// The twist `V(k)`: every Gram entry multiplied by `k`.
pub fn scale(v: &QuadSpace, k: &BigRational) -> Result<QuadSpace, QuadFormError> {
    if k.is_zero() {
        return Err(QuadFormError::ZeroScale);
    }
    let gram = v
        .gram()
        .iter()
        .map(|row| row.iter().map(|x| x * k).collect())
        .collect();
    let label = v.label().map(|l| format!("{l}({k})"));
    QuadSpace::new(gram, label)
}

/// Whether `V` represents zero nontrivially over ℚ, decided place by place.
pub fn is_isotropic(v: &QuadSpace) -> bool {
    let n = v.dim();
    let (rp, rn) = signature(v);
    if n < 2 || rp == 0 || rn == 0 {
        return false;
    }
    if n >= 5 {
        return true;
    }
    let d = disc_class(v);
    if n == 2 {
        return d == BigInt::from(-1);
    }
    let minus_one = BigInt::from(-1);
    let places = relevant_places(&[v]);
    places.iter().all(|pl| {
        let eps = hasse_invariant(v, pl).expect("validated place");
        if n == 3 {
            invariants::symbol(&minus_one, &-&d, pl) == eps
        } else {
            let d_square = is_local_square(&d, pl).expect("validated place");
            !(d_square && eps == -invariants::symbol(&minus_one, &minus_one, pl))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::space::rational;
    use super::*;

    fn u() -> QuadSpace {
        QuadSpace::from_integers(&[vec![0, 1], vec![1, 0]], Some("U")).unwrap()
    }

    fn diag(entries: &[i64]) -> QuadSpace {
        QuadSpace::diagonal_integers(entries, None).unwrap()
    }

    fn sum(parts: &[QuadSpace]) -> QuadSpace {
        let n: usize = parts.iter().map(QuadSpace::dim).sum();
        let mut g = vec![vec![rational(0); n]; n];
        let mut off = 0;
        for b in parts {
            for i in 0..b.dim() {
                for j in 0..b.dim() {
                    g[off + i][off + j] = b.gram()[i][j].clone();
                }
            }
            off += b.dim();
        }
        QuadSpace::new(g, None).unwrap()
    }

    fn kum3_twisted() -> QuadSpace {
        scale(&sum(&[u(), u(), u(), diag(&[-8])]), &rational(2)).unwrap()
    }

    #[test]
    fn scaling() {
        let s = scale(&diag(&[-8]), &rational(2)).unwrap();
        assert_eq!(s.gram()[0][0], rational(-16));
        assert_eq!(disc_class(&s), BigInt::from(-1));
        let u2 = scale(&u(), &rational(2)).unwrap();
        assert_eq!(u2.gram()[0][1], rational(2));
        assert_eq!(u2.label(), Some("U(2)"));
        let v = diag(&[1, 1, -3]);
        assert_eq!(signature(&scale(&v, &rational(5)).unwrap()), (2, 1));
        assert_eq!(signature(&scale(&v, &rational(-5)).unwrap()), (1, 2));
        assert_eq!(scale(&v, &rational(0)), Err(QuadFormError::ZeroScale));
    }

    #[test]
    fn twisted_kummer_lattice_profile() {
        let p = invariant_profile(&kum3_twisted());
        assert_eq!(p.dim, 7);
        assert_eq!(p.signature, (3, 4));
        assert_eq!(p.disc_class, BigInt::from(1));
        assert!(p.hasse.values().all(|&s| s == 1), "{p}");
    }

    #[test]
    fn paranjape_embeds_with_rank_one_complement() {
        let v = sum(&[u(), u(), diag(&[-2, -2])]);
        let verdict = embeds(&v, &kum3_twisted());
        assert!(verdict.embeds);
        let c = verdict.complement.unwrap();
        assert_eq!(c, invariant_profile(&diag(&[1])));
        assert!(exists_with_invariants(&c).unwrap());
    }

    #[test]
    fn ilp_is_obstructed_at_three() {
        let v = sum(&[u(), u(), diag(&[-6, -2])]);
        let verdict = embeds(&v, &kum3_twisted());
        assert!(!verdict.embeds);
        assert!(verdict.complement.is_none());
        let three = Place::prime(3).unwrap();
        assert!(verdict
            .obstructions
            .iter()
            .any(|o| o.place.as_ref() == Some(&three) && o.code == ObstructionCode::RankOneHasse));
        // forced symbol at 3: ε₃(W)·ε₃(V)·(d(V), d(C))₃ with d(V) = d(C) = 3
        let w = kum3_twisted();
        let forced = hasse_invariant(&w, &three).unwrap()
            * hasse_invariant(&v, &three).unwrap()
            * hilbert_symbol(&rational(3), &rational(3), &three).unwrap();
        assert_eq!(forced, -1);
    }

    #[test]
    fn self_embedding() {
        for v in [u(), diag(&[3, -5, 7]), kum3_twisted()] {
            let verdict = embeds(&v, &v);
            assert!(verdict.embeds);
            let c = verdict.complement.unwrap();
            assert_eq!(c.dim, 0);
            assert_eq!(c.disc_class, BigInt::from(1));
        }
    }

    #[test]
    fn dimension_and_signature_obstructions() {
        let v = embeds(&diag(&[1, 1, 1]), &u());
        assert_eq!(v.obstructions[0].code, ObstructionCode::Dimension);
        let v = embeds(&diag(&[1, 1]), &sum(&[u(), diag(&[-1])]));
        assert_eq!(v.obstructions[0].code, ObstructionCode::Signature);
    }

    #[test]
    fn binary_complement_obstruction() {
        assert!(embeds(&diag(&[1]), &diag(&[1, 1, 1])).embeds);
        // ⟨7⟩ is not a sum of three squares: no embedding into ⟨1,1,1⟩.
        let v = embeds(&diag(&[7]), &diag(&[1, 1, 1]));
        assert!(!v.embeds);
        assert!(v
            .obstructions
            .iter()
            .all(|o| o.code == ObstructionCode::RankTwoHasse));
        assert!(embeds(&diag(&[3]), &diag(&[1, 1, 1])).embeds);
    }

    #[test]
    fn isotropy() {
        assert!(is_isotropic(&u()));
        assert!(!is_isotropic(&diag(&[1, 1])));
        assert!(!is_isotropic(&diag(&[1, -2])));
        assert!(is_isotropic(&diag(&[1, 1, -2])));
        assert!(!is_isotropic(&diag(&[1, 1, -3])));
        assert!(!is_isotropic(&diag(&[1, 1, 1, -7])));
        assert!(is_isotropic(&diag(&[1, 1, 1, -1])));
        assert!(is_isotropic(&diag(&[1, 1, 1, 1, -7])));
        assert!(!is_isotropic(&diag(&[1, 1, 1, 1, 7])));
    }
}
