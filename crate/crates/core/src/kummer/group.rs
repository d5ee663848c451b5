use std::fmt;

use serde::Serialize;

use super::config::TorsionConfig;
use super::torsion::{four_torsion, two_torsion, Level, TorsionPoint};
use super::KummerError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// The automorphism `x ↦ ±x + ε` of the abelian surface, with `ε` a
/// 4-torsion point so that the zero-sum locus is preserved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    translation: TorsionPoint,
    sign: Sign,
}

impl GroupElement {
    pub fn new(translation: TorsionPoint, sign: Sign) -> Result<Self, KummerError> {
        if !translation.is_four_torsion() {
            return Err(KummerError::NotFourTorsion(translation.to_string()));
        }
        Ok(Self { translation, sign })
    }

    pub fn identity(level: Level) -> Self {
        Self {
            translation: TorsionPoint::zero(level),
            sign: Sign::Plus,
        }
    }

    pub fn translation(&self) -> TorsionPoint {
        self.translation
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn level(&self) -> Level {
        self.translation.level()
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.sign == Sign::Plus
    }

    /// Membership in `G = A₂ × ⟨−1⟩`.
    pub fn in_g(&self) -> bool {
        self.translation.is_two_torsion()
    }

    /// `self ∘ other`: `x ↦ s₁(s₂x + ε₂) + ε₁`.
    pub fn compose(&self, other: &Self) -> Result<Self, KummerError> {
        let moved = match self.sign {
            Sign::Plus => other.translation,
            Sign::Minus => other.translation.neg(),
        };
        Ok(Self {
            translation: moved.add(&self.translation)?,
            sign: self.sign.times(other.sign),
        })
    }

    pub fn inverse(&self) -> Self {
        // x ↦ s·x + ε inverts to x ↦ s·x − s·ε
        let t = match self.sign {
            Sign::Plus => self.translation.neg(),
            Sign::Minus => self.translation,
        };
        Self {
            translation: t,
            sign: self.sign,
        }
    }

    pub(crate) fn apply_index(&self, x: u32) -> u32 {
        let level = self.level();
        let y = match self.sign {
            Sign::Plus => x,
            Sign::Minus => level.neg(x),
        };
        level.add(y, self.translation.index())
    }

    pub fn apply(&self, x: &TorsionPoint) -> Result<TorsionPoint, KummerError> {
        if x.level() != self.level() {
            return Err(KummerError::LevelMismatch(
                self.level().get(),
                x.level().get(),
            ));
        }
        Ok(TorsionPoint::from_index(
            x.level(),
            self.apply_index(x.index()),
        ))
    }

    /// The action on all points as an index table.
    pub(crate) fn point_table(&self) -> Vec<u32> {
        (0..self.level().size())
            .map(|x| self.apply_index(x))
            .collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.translation, self.sign)
    }
}

/// The 32 elements `(τ, ±1)`, `τ ∈ A₂`, identity first.
pub fn build_g(level: u32) -> Result<Vec<GroupElement>, KummerError> {
    Ok(two_torsion(level)?
        .into_iter()
        .flat_map(|t| {
            [Sign::Plus, Sign::Minus].map(|s| GroupElement {
                translation: t,
                sign: s,
            })
        })
        .collect())
}

/// All 512 elements `(ε, ±1)` with `ε ∈ A₄`.
pub fn extended_group(level: u32) -> Result<Vec<GroupElement>, KummerError> {
    Ok(four_torsion(level)?
        .into_iter()
        .flat_map(|t| {
            [Sign::Plus, Sign::Minus].map(|s| GroupElement {
                translation: t,
                sign: s,
            })
        })
        .collect())
}

pub fn act(g: &GroupElement, cfg: &TorsionConfig) -> Result<TorsionConfig, KummerError> {
    if g.level() != cfg.level() {
        return Err(KummerError::LevelMismatch(
            g.level().get(),
            cfg.level().get(),
        ));
    }
    Ok(act_unchecked(g, cfg))
}

pub(crate) fn act_unchecked(g: &GroupElement, cfg: &TorsionConfig) -> TorsionConfig {
    TorsionConfig::from_indices(cfg.level(), cfg.indices().map(|x| g.apply_index(x)))
}

/// Same as [`act`] through a precomputed [`GroupElement::point_table`].
pub(crate) fn act_table(table: &[u32], cfg: &TorsionConfig) -> TorsionConfig {
    TorsionConfig::from_indices(cfg.level(), cfg.indices().map(|x| table[x as usize]))
}

/// Structural summary of a finite set of group elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupStructure {
    pub order: usize,
    pub closed: bool,
    pub abelian: bool,
    pub exponent_two: bool,
}

pub fn group_structure(elements: &[GroupElement]) -> Result<GroupStructure, KummerError> {
    let set: std::collections::HashSet<_> = elements.iter().copied().collect();
    let mut closed = set.len() == elements.len();
    let mut abelian = true;
    for g in elements {
        for h in elements {
            let gh = g.compose(h)?;
            closed &= set.contains(&gh);
            abelian &= gh == h.compose(g)?;
        }
    }
    let exponent_two = elements
        .iter()
        .all(|g| g.compose(g).map(|s| s.is_identity()).unwrap_or(false));
    Ok(GroupStructure {
        order: set.len(),
        closed,
        abelian,
        exponent_two,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: [i64; 4]) -> TorsionPoint {
        TorsionPoint::new(4, c).unwrap()
    }

    #[test]
    fn g_is_elementary_abelian_of_order_32() {
        let g = build_g(4).unwrap();
        assert_eq!(g.len(), 32);
        assert!(g[0].is_identity());
        let s = group_structure(&g).unwrap();
        assert_eq!(
            s,
            GroupStructure {
                order: 32,
                closed: true,
                abelian: true,
                exponent_two: true
            }
        );
        assert!(g.iter().all(GroupElement::in_g));
    }

    #[test]
    fn extended_group_is_not_exponent_two() {
        let e = extended_group(4).unwrap();
        assert_eq!(e.len(), 512);
        let s = group_structure(&e).unwrap();
        assert!(s.closed);
        assert!(!s.abelian);
        assert!(!s.exponent_two);
        assert_eq!(e.iter().filter(|g| g.in_g()).count(), 32);
    }

    #[test]
    fn composition_rules() {
        let tau = p([2, 0, 0, 0]);
        let theta = p([0, 2, 2, 0]);
        let a = GroupElement::new(tau, Sign::Minus).unwrap();
        let b = GroupElement::new(theta, Sign::Minus).unwrap();
        assert!(a.compose(&a).unwrap().is_identity());
        let ab = a.compose(&b).unwrap();
        assert_eq!(
            ab,
            GroupElement::new(tau.add(&theta).unwrap(), Sign::Plus).unwrap()
        );
        let eps = GroupElement::new(p([1, 3, 0, 2]), Sign::Minus).unwrap();
        assert!(eps.compose(&eps.inverse()).unwrap().is_identity());
        assert!(matches!(
            GroupElement::new(TorsionPoint::new(8, [1, 0, 0, 0]).unwrap(), Sign::Plus),
            Err(KummerError::NotFourTorsion(_))
        ));
    }

    #[test]
    fn action_basics() {
        let a = p([1, 0, 2, 3]);
        let b = p([0, 1, 1, 1]);
        let cfg = TorsionConfig::new([a, b, a.neg(), b.neg()]).unwrap();
        let id = GroupElement::identity(a.level());
        assert_eq!(act(&id, &cfg).unwrap(), cfg);
        let minus = GroupElement::new(p([0, 0, 0, 0]), Sign::Minus).unwrap();
        assert_eq!(act(&minus, &cfg).unwrap(), cfg);
        for g in build_g(4).unwrap() {
            assert_eq!(act(&g, &act(&g, &cfg).unwrap()).unwrap(), cfg);
        }
        let other = GroupElement::identity(Level::new(8).unwrap());
        assert!(matches!(
            act(&other, &cfg),
            Err(KummerError::LevelMismatch(8, 4))
        ));
    }

    #[test]
    fn table_agrees_with_direct_action() {
        for g in extended_group(4).unwrap().iter().step_by(7) {
            let t = g.point_table();
            for x in 0..256u32 {
                assert_eq!(t[x as usize], g.apply_index(x));
            }
        }
    }
}
