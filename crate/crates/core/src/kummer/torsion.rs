use std::fmt;

use serde::{Serialize, Serializer};

use super::KummerError;

/// Torsion level `N` of the model `(ℤ/Nℤ)⁴` of an abelian surface.
///
/// Must be a positive multiple of 4 so that 4-torsion translations exist,
/// and small enough that a point index fits in a `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level(u32);

impl Level {
    pub const MAX: u32 = 252;

    pub fn new(n: u32) -> Result<Self, KummerError> {
        if n == 0 || n % 4 != 0 || n > Self::MAX {
            return Err(KummerError::BadLevel(n));
        }
        Ok(Level(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of points, `N⁴`.
    pub fn size(self) -> u32 {
        self.0.pow(4)
    }

    pub(crate) fn encode(self, c: [u32; 4]) -> u32 {
        let n = self.0;
        ((c[0] * n + c[1]) * n + c[2]) * n + c[3]
    }

    pub(crate) fn decode(self, mut idx: u32) -> [u32; 4] {
        let n = self.0;
        let mut c = [0; 4];
        for k in (0..4).rev() {
            c[k] = idx % n;
            idx /= n;
        }
        c
    }

    pub(crate) fn add(self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.decode(x), self.decode(y));
        self.encode(std::array::from_fn(|k| (a[k] + b[k]) % self.0))
    }

    pub(crate) fn neg(self, x: u32) -> u32 {
        let a = self.decode(x);
        self.encode(std::array::from_fn(|k| (self.0 - a[k]) % self.0))
    }

    pub(crate) fn mul(self, x: u32, k: u32) -> u32 {
        let a = self.decode(x);
        self.encode(std::array::from_fn(|i| {
            (a[i] as u64 * k as u64 % self.0 as u64) as u32
        }))
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point of `(ℤ/Nℤ)⁴`, the `N`-torsion of the abelian surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPoint {
    level: Level,
    index: u32,
}

impl TorsionPoint {
    /// Point with the given coordinates reduced modulo the level.
    pub fn new(level: u32, coords: [i64; 4]) -> Result<Self, KummerError> {
        let level = Level::new(level)?;
        let n = level.get() as i64;
        let c = coords.map(|x| x.rem_euclid(n) as u32);
        Ok(Self {
            level,
            index: level.encode(c),
        })
    }

    pub fn zero(level: Level) -> Self {
        Self { level, index: 0 }
    }

    pub(crate) fn from_index(level: Level, index: u32) -> Self {
        debug_assert!(index < level.size());
        Self { level, index }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn coords(&self) -> [u32; 4] {
        self.level.decode(self.index)
    }

    fn same_level(&self, other: &Self) -> Result<(), KummerError> {
        if self.level == other.level {
            Ok(())
        } else {
            Err(KummerError::LevelMismatch(
                self.level.get(),
                other.level.get(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, KummerError> {
        self.same_level(other)?;
        Ok(Self::from_index(
            self.level,
            self.level.add(self.index, other.index),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::from_index(self.level, self.level.neg(self.index))
    }

    pub fn times(&self, k: u32) -> Self {
        Self::from_index(self.level, self.level.mul(self.index, k))
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    pub fn is_two_torsion(&self) -> bool {
        self.times(2).is_zero()
    }

    pub fn is_four_torsion(&self) -> bool {
        self.times(4).is_zero()
    }

    /// The same point of the abelian surface viewed at a finer level
    /// (`target` a multiple of the current level).
    pub fn lift_to(&self, target: u32) -> Result<Self, KummerError> {
        let t = Level::new(target)?;
        if t.get() % self.level.get() != 0 {
            return Err(KummerError::LevelMismatch(self.level.get(), target));
        }
        let f = t.get() / self.level.get();
        Ok(Self::from_index(t, t.encode(self.coords().map(|c| c * f))))
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords();
        write!(f, "({},{},{},{})", c[0], c[1], c[2], c[3])
    }
}

impl Serialize for TorsionPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All `N⁴` points in index (lexicographic coordinate) order.
pub fn all_points(level: Level) -> impl Iterator<Item = TorsionPoint> {
    (0..level.size()).map(move |i| TorsionPoint::from_index(level, i))
}

/// Points killed by `k`, enumerated coordinatewise.
fn kernel_of(level: Level, k: u32) -> Vec<TorsionPoint> {
    let n = level.get();
    let step = n / k;
    let vals: Vec<u32> = (0..k).map(|i| i * step).collect();
    let mut out = Vec::with_capacity((k as usize).pow(4));
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                for &d in &vals {
                    out.push(TorsionPoint::from_index(level, level.encode([a, b, c, d])));
                }
            }
        }
    }
    out
}

/// The 16 points with `2x = 0`.
pub fn two_torsion(level: u32) -> Result<Vec<TorsionPoint>, KummerError> {
    Ok(kernel_of(Level::new(level)?, 2))
}

/// The 256 points with `4x = 0`.
pub fn four_torsion(level: u32) -> Result<Vec<TorsionPoint>, KummerError> {
    Ok(kernel_of(Level::new(level)?, 4))
}

/// The 240 four-torsion points of exact order 4.
pub fn exact_order_four(level: u32) -> Result<Vec<TorsionPoint>, KummerError> {
    Ok(four_torsion(level)?
        .into_iter()
        .filter(|p| !p.is_two_torsion())
        .collect())
}

/// `{a : 2a = τ}`, a coset of the 2-torsion with 16 elements.
pub fn half_fiber(tau: &TorsionPoint) -> Result<Vec<TorsionPoint>, KummerError> {
    if !tau.is_two_torsion() {
        return Err(KummerError::NotTwoTorsion(tau.to_string()));
    }
    let level = tau.level();
    let n = level.get();
    let t = tau.coords();
    // 2a_k ≡ t_k (mod N) with t_k ∈ {0, N/2}: a_k ∈ {t_k/2, t_k/2 + N/2}.
    let choices: Vec<[u32; 2]> = t.iter().map(|&tk| [tk / 2, tk / 2 + n / 2]).collect();
    let mut out = Vec::with_capacity(16);
    for &a in &choices[0] {
        for &b in &choices[1] {
            for &c in &choices[2] {
                for &d in &choices[3] {
                    out.push(TorsionPoint::from_index(level, level.encode([a, b, c, d])));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}
