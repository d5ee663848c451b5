use std::collections::HashSet;

use rayon::prelude::*;

use super::config::{ConfigSet, TorsionConfig};
use super::group::{act_table, GroupElement, Sign};
use super::torsion::{Level, TorsionPoint};
use super::KummerError;

/// Largest level at which the full zero-sum locus is enumerated.
pub const EXHAUSTIVE_LEVEL: u32 = 4;

/// Every zero-sum configuration at level 4, in sorted order.
///
/// Each multiset is visited once as its sorted tuple `a ≤ b ≤ c ≤ d` with
/// `d = −(a+b+c)` forced, so no deduplication pass is needed. The sweep is
/// split across workers by the smallest point.
pub fn zero_sum_configs(level: u32) -> Result<Vec<TorsionConfig>, KummerError> {
    let l = Level::new(level)?;
    if level > EXHAUSTIVE_LEVEL {
        return Err(KummerError::LevelTooLargeForExhaustive(level));
    }
    let n = l.size();
    let chunks: Vec<Vec<TorsionConfig>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for b in a..n {
                let ab = l.add(a, b);
                for c in b..n {
                    let d = l.neg(l.add(ab, c));
                    if d >= c {
                        out.push(TorsionConfig::from_indices(l, [a, b, c, d]));
                    }
                }
            }
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// The shared level-4 sweep: zero-sum configurations enumerated once and
/// tested against any number of group elements.
pub struct ZeroSumSweep {
    level: Level,
    configs: Vec<TorsionConfig>,
}

impl ZeroSumSweep {
    pub fn new(level: u32) -> Result<Self, KummerError> {
        let configs = zero_sum_configs(level)?;
        Ok(Self {
            level: Level::new(level)?,
            configs,
        })
    }

    pub fn configs(&self) -> &[TorsionConfig] {
        &self.configs
    }

    /// Fixed sets of each element, in the order given.
    pub fn fixed_sets(&self, elements: &[GroupElement]) -> Result<Vec<ConfigSet>, KummerError> {
        if let Some(g) = elements.iter().find(|g| g.level() != self.level) {
            return Err(KummerError::LevelMismatch(
                self.level.get(),
                g.level().get(),
            ));
        }
        Ok(elements
            .par_iter()
            .map(|g| {
                let table = g.point_table();
                self.configs
                    .iter()
                    .filter(|c| act_table(&table, c) == **c)
                    .copied()
                    .collect()
            })
            .collect())
    }

    /// Number of elements of `elements` fixing each configuration.
    pub fn stabilizer_orders(&self, elements: &[GroupElement]) -> Vec<usize> {
        let tables: Vec<Vec<u32>> = elements.iter().map(GroupElement::point_table).collect();
        self.configs
            .par_iter()
            .map(|c| tables.iter().filter(|t| act_table(t, c) == *c).count())
            .collect()
    }
}

/// Configurations fixed by `g`, by exhaustive sweep (level 4 only).
pub fn fixed_configs(g: &GroupElement) -> Result<ConfigSet, KummerError> {
    let sweep = ZeroSumSweep::new(g.level().get())?;
    Ok(sweep.fixed_sets(&[*g])?.pop().expect("one element"))
}

/// Zero-sum configurations fixed by translation by `ε` of exact order 4,
/// at any level.
///
/// An invariant multiset of four points is a union of orbits; orbits of an
/// order-4 translation have four points, so the configuration is a single
/// orbit `{a, a+ε, a+2ε, a+3ε}` with sum `4a + 6ε`. The zero-sum orbits are
/// read off from all points `a`.
pub fn translation_fixed_configs(eps: &TorsionPoint) -> Result<ConfigSet, KummerError> {
    if !eps.is_four_torsion() || eps.is_two_torsion() {
        return Err(KummerError::NotOrderFour(eps.to_string()));
    }
    let level = eps.level();
    let e = eps.index();
    let e2 = level.add(e, e);
    let e3 = level.add(e2, e);
    let six_e = level.mul(e, 6);
    let out: HashSet<TorsionConfig> = (0..level.size())
        .into_par_iter()
        .filter(|&a| level.add(level.mul(a, 4), six_e) == 0)
        .map(|a| {
            TorsionConfig::from_indices(
                level,
                [a, level.add(a, e), level.add(a, e2), level.add(a, e3)],
            )
        })
        .collect();
    Ok(out)
}

/// `|translation_fixed_configs(ε)|` without materializing the set.
///
/// The zero-sum orbits are the solutions of `4a = −6ε`, counted one
/// coordinate at a time and divided by the orbit size.
pub fn translation_fixed_count(eps: &TorsionPoint) -> Result<u64, KummerError> {
    if !eps.is_four_torsion() || eps.is_two_torsion() {
        return Err(KummerError::NotOrderFour(eps.to_string()));
    }
    let n = eps.level().get() as u64;
    let solutions: u64 = eps
        .coords()
        .iter()
        .map(|&e| {
            let rhs = (n - (6 * e as u64) % n) % n;
            (0..n).filter(|a| 4 * a % n == rhs).count() as u64
        })
        .product();
    Ok(solutions / 4)
}

/// Translation by `ε` as a group element, for use with the sweep.
pub fn translation(eps: &TorsionPoint) -> Result<GroupElement, KummerError> {
    GroupElement::new(*eps, Sign::Plus)
}

#[cfg(test)]
mod tests {
    use super::super::config::{isolated_points, v_configs, w_configs};
    use super::super::group::build_g;
    use super::super::torsion::{exact_order_four, two_torsion};
    use super::*;

    use std::sync::OnceLock;

    fn sweep() -> &'static ZeroSumSweep {
        static SWEEP: OnceLock<ZeroSumSweep> = OnceLock::new();
        SWEEP.get_or_init(|| ZeroSumSweep::new(4).unwrap())
    }

    #[test]
    fn sweep_is_canonical_and_complete() {
        let configs = sweep().configs();
        let set: HashSet<_> = configs.iter().copied().collect();
        assert_eq!(set.len(), configs.len());
        // oracle: every ordered triple with the fourth point forced, hashed
        let l = Level::new(4).unwrap();
        let mut brute = HashSet::new();
        for a in 0..256 {
            for b in 0..256 {
                let ab = l.add(a, b);
                for c in 0..256 {
                    let d = l.neg(l.add(ab, c));
                    brute.insert(TorsionConfig::from_indices(l, [a, b, c, d]));
                }
            }
        }
        assert_eq!(brute, set);
        assert!(matches!(
            zero_sum_configs(8),
            Err(KummerError::LevelTooLargeForExhaustive(8))
        ));
    }

    #[test]
    fn reflection_fixed_sets_split_into_w_and_isolated() {
        let g = build_g(4).unwrap();
        let fixed = sweep().fixed_sets(&g).unwrap();
        for (elt, fix) in g.iter().zip(&fixed) {
            let tau = elt.translation();
            if elt.is_identity() {
                assert_eq!(fix.len(), sweep().configs().len());
            } else if elt.sign() == Sign::Minus {
                let w = w_configs(&tau).unwrap();
                let iso = isolated_points(&tau).unwrap();
                assert!(w.is_disjoint(&iso));
                let expected: ConfigSet = w.union(&iso).copied().collect();
                assert_eq!(*fix, expected);
            } else {
                let mut expected = ConfigSet::new();
                for theta in two_torsion(4).unwrap() {
                    expected.extend(v_configs(&tau, &theta).unwrap());
                }
                assert_eq!(*fix, expected);
            }
        }
    }

    #[test]
    fn order_four_translations_fix_nothing_at_level_four() {
        let eps = exact_order_four(4).unwrap();
        let elems: Vec<_> = eps.iter().map(|e| translation(e).unwrap()).collect();
        for (e, fix) in eps.iter().zip(sweep().fixed_sets(&elems).unwrap()) {
            assert!(fix.is_empty());
            assert!(translation_fixed_configs(e).unwrap().is_empty());
            assert_eq!(translation_fixed_count(e).unwrap(), 0);
        }
    }

    #[test]
    fn order_four_translations_fix_64_orbits_from_level_eight() {
        for level in [8, 16] {
            for e in exact_order_four(level).unwrap().iter().step_by(17) {
                let fix = translation_fixed_configs(e).unwrap();
                assert_eq!(fix.len(), 64, "level {level}, ε = {e}");
                assert_eq!(translation_fixed_count(e).unwrap(), 64);
                assert!(fix.iter().all(|c| c.support_size() == 4));
            }
        }
        let tau = TorsionPoint::new(8, [4, 0, 0, 0]).unwrap();
        assert!(matches!(
            translation_fixed_configs(&tau),
            Err(KummerError::NotOrderFour(_))
        ));
    }

    #[test]
    fn single_fixed_set_matches_shared_sweep() {
        let g = build_g(4).unwrap()[5];
        assert_eq!(
            fixed_configs(&g).unwrap(),
            sweep().fixed_sets(&[g]).unwrap()[0]
        );
    }
}
