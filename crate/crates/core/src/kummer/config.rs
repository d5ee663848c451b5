use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};

use super::torsion::{half_fiber, two_torsion, Level, TorsionPoint};
use super::KummerError;

/// A point of the zero-sum symmetric product: a multiset of four torsion
/// points summing to zero, stored as its sorted index tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionConfig {
    level: Level,
    pts: [u32; 4],
}

pub type ConfigSet = HashSet<TorsionConfig>;

impl TorsionConfig {
    pub fn new(points: [TorsionPoint; 4]) -> Result<Self, KummerError> {
        let level = points[0].level();
        if let Some(p) = points.iter().find(|p| p.level() != level) {
            return Err(KummerError::LevelMismatch(level.get(), p.level().get()));
        }
        let pts = points.map(|p| p.index());
        let sum = pts.iter().fold(0, |s, &x| level.add(s, x));
        if sum != 0 {
            return Err(KummerError::NotZeroSum(format!(
                "{:?}",
                points.map(|p| p.to_string())
            )));
        }
        Ok(Self::from_indices(level, pts))
    }

    /// Canonicalizes without checking the zero-sum condition.
    pub(crate) fn from_indices(level: Level, mut pts: [u32; 4]) -> Self {
        pts.sort_unstable();
        Self { level, pts }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn points(&self) -> [TorsionPoint; 4] {
        self.pts.map(|i| TorsionPoint::from_index(self.level, i))
    }

    pub(crate) fn indices(&self) -> [u32; 4] {
        self.pts
    }

    /// Number of distinct points in the support.
    pub fn support_size(&self) -> usize {
        1 + self.pts.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

impl fmt::Display for TorsionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.points();
        write!(f, "[{}, {}, {}, {}]", p[0], p[1], p[2], p[3])
    }
}

impl Serialize for TorsionConfig {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `x ↦ −x + τ` as a lookup table over point indices.
pub(crate) fn reflection_table(tau: &TorsionPoint) -> Vec<u32> {
    let level = tau.level();
    (0..level.size())
        .map(|x| level.add(level.neg(x), tau.index()))
        .collect()
}

fn require_two_torsion(p: &TorsionPoint) -> Result<(), KummerError> {
    if p.is_two_torsion() {
        Ok(())
    } else {
        Err(KummerError::NotTwoTorsion(p.to_string()))
    }
}

/// `W_τ = {(a, b, −a+τ, −b+τ)}` over all pairs of points.
///
/// Enumerates `N⁸/2` pairs; affordable up to level 8.
pub fn w_configs(tau: &TorsionPoint) -> Result<ConfigSet, KummerError> {
    require_two_torsion(tau)?;
    let level = tau.level();
    let refl = reflection_table(tau);
    let n = level.size();
    let mut out = HashSet::with_capacity(w_config_count(level.get())? as usize);
    for a in 0..n {
        let ra = refl[a as usize];
        for b in a..n {
            out.insert(TorsionConfig::from_indices(
                level,
                [a, b, ra, refl[b as usize]],
            ));
        }
    }
    Ok(out)
}

/// `|W_τ|` in closed form.
///
/// The involution `x ↦ −x+τ` has 16 fixed points, so it has
/// `m = (N⁴ + 16)/2` orbits, and a configuration of `W_τ` is an unordered
/// pair of orbits with repetition allowed.
pub fn w_config_count(level: u32) -> Result<u64, KummerError> {
    let l = Level::new(level)?;
    let m = (l.size() as u64 + 16) / 2;
    Ok(m * (m + 1) / 2)
}

/// `|W_τ|` from an enumeration of the orbits of `x ↦ −x+τ`, without
/// materializing the set: configurations are unordered pairs of orbits.
pub fn w_config_count_enumerated(tau: &TorsionPoint) -> Result<u64, KummerError> {
    require_two_torsion(tau)?;
    let refl = reflection_table(tau);
    let m = (0..tau.level().size())
        .filter(|&a| a <= refl[a as usize])
        .count() as u64;
    Ok(m * (m + 1) / 2)
}

/// `V_{τ,θ} = {(a, a+τ, −a+θ, −a+τ+θ)}` over all points `a`.
pub fn v_configs(tau: &TorsionPoint, theta: &TorsionPoint) -> Result<ConfigSet, KummerError> {
    require_two_torsion(tau)?;
    require_two_torsion(theta)?;
    if tau.level() != theta.level() {
        return Err(KummerError::LevelMismatch(
            tau.level().get(),
            theta.level().get(),
        ));
    }
    if tau.is_zero() {
        return Err(KummerError::ZeroTau);
    }
    let level = tau.level();
    let (t, th) = (tau.index(), theta.index());
    let tth = level.add(t, th);
    Ok((0..level.size())
        .map(|a| {
            let na = level.neg(a);
            TorsionConfig::from_indices(
                level,
                [a, level.add(a, t), level.add(na, th), level.add(na, tth)],
            )
        })
        .collect())
}

/// Four pairwise distinct points of the half fiber `{a : 2a = τ}` summing
/// to zero: the isolated fixed points of `x ↦ −x + τ`.
pub fn isolated_points(tau: &TorsionPoint) -> Result<ConfigSet, KummerError> {
    let fib = half_fiber(tau)?;
    let level = tau.level();
    let idx: Vec<u32> = fib.iter().map(TorsionPoint::index).collect();
    let mut out = HashSet::new();
    for i in 0..16 {
        for j in i + 1..16 {
            for k in j + 1..16 {
                for l in k + 1..16 {
                    let pts = [idx[i], idx[j], idx[k], idx[l]];
                    if pts.iter().fold(0, |s, &x| level.add(s, x)) == 0 {
                        out.insert(TorsionConfig::from_indices(level, pts));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Counting-argument tally for isolated points: ordered triples in the half
/// fiber, with the fourth point forced, split by support size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatedRecount {
    pub ordered: u64,
    pub singleton_support: u64,
    pub two_point_support: u64,
    pub three_point_support: u64,
    pub four_point_support: u64,
    pub isolated: u64,
}

pub fn isolated_recount(tau: &TorsionPoint) -> Result<IsolatedRecount, KummerError> {
    let fib = half_fiber(tau)?;
    let level = tau.level();
    let mut counts = [0u64; 5];
    for a in &fib {
        for b in &fib {
            for c in &fib {
                let s = level.add(level.add(a.index(), b.index()), c.index());
                let d = level.neg(s);
                let cfg = TorsionConfig::from_indices(level, [a.index(), b.index(), c.index(), d]);
                counts[cfg.support_size()] += 1;
            }
        }
    }
    let ordered = counts.iter().sum();
    // each 4-element set arises from 4! orderings
    Ok(IsolatedRecount {
        ordered,
        singleton_support: counts[1],
        two_point_support: counts[2],
        three_point_support: counts[3],
        four_point_support: counts[4],
        isolated: (ordered - counts[1] - counts[2] - counts[3]) / 24,
    })
}

const PAIRINGS: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];

/// Every `τ` with `ξ ∈ W_τ`, sorted. A config lies in `W_τ` exactly when its
/// points split into two pairs each summing to `τ`.
pub fn w_membership(cfg: &TorsionConfig) -> Vec<TorsionPoint> {
    let level = cfg.level;
    let p = cfg.pts;
    let mut out: Vec<u32> = PAIRINGS
        .iter()
        .filter_map(|q| {
            let s = level.add(p[q[0]], p[q[1]]);
            (s == level.add(p[q[2]], p[q[3]])).then_some(s)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out.into_iter()
        .map(|i| TorsionPoint::from_index(level, i))
        .collect()
}

pub fn in_w(cfg: &TorsionConfig, tau: &TorsionPoint) -> bool {
    let level = cfg.level;
    let p = cfg.pts;
    tau.level() == level
        && PAIRINGS.iter().any(|q| {
            level.add(p[q[0]], p[q[1]]) == tau.index() && level.add(p[q[2]], p[q[3]]) == tau.index()
        })
}

/// Whether `ξ = (a, a+τ, −a+θ, −a+τ+θ)` for some `a`; any such `a` is one
/// of the four points, so trying each suffices.
pub fn in_v(cfg: &TorsionConfig, tau: &TorsionPoint, theta: &TorsionPoint) -> bool {
    let level = cfg.level;
    if tau.level() != level || theta.level() != level {
        return false;
    }
    let (t, th) = (tau.index(), theta.index());
    let tth = level.add(t, th);
    cfg.pts.iter().any(|&a| {
        let na = level.neg(a);
        let cand = TorsionConfig::from_indices(
            level,
            [a, level.add(a, t), level.add(na, th), level.add(na, tth)],
        );
        cand == *cfg
    })
}

/// `{(a, a+τ₁+τ₂, −a+τ₁, −a+τ₂) : 2a = τ₁+τ₂+τ₃}`, the expected triple
/// intersection of W-sets.
pub fn triple_configs(
    t1: &TorsionPoint,
    t2: &TorsionPoint,
    t3: &TorsionPoint,
) -> Result<ConfigSet, KummerError> {
    let level = t1.level();
    let s12 = t1.add(t2)?;
    let s = s12.add(t3)?;
    let (i1, i2, i12) = (t1.index(), t2.index(), s12.index());
    Ok(half_fiber(&s)?
        .iter()
        .map(|a| {
            let a = a.index();
            let na = level.neg(a);
            TorsionConfig::from_indices(
                level,
                [a, level.add(a, i12), level.add(na, i1), level.add(na, i2)],
            )
        })
        .collect())
}

/// The 120 distinct V-sets as `(τ, θ)` representatives, one per class
/// `θ ~ θ + τ`, in index order.
pub fn v_labels(level: u32) -> Result<Vec<(TorsionPoint, TorsionPoint)>, KummerError> {
    let a2 = two_torsion(level)?;
    let mut out = Vec::with_capacity(120);
    for tau in a2.iter().filter(|t| !t.is_zero()) {
        for theta in &a2 {
            if theta.index() < theta.add(tau)?.index() {
                out.push((*tau, *theta));
            }
        }
    }
    Ok(out)
}
