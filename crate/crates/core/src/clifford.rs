//! Clifford algebra of a rational quadratic space and the Kuga–Satake
//! bookkeeping built on it.
//!
//! The algebra is realized over a diagonalization `⟨d₁, …, dₙ⟩` of the form:
//! generators satisfy `eᵢ² = dᵢ` and `eᵢeⱼ = −eⱼeᵢ`, and a basis monomial is a
//! subset of generator indices stored as a bitmask. Elements are sparse maps
//! from monomials to rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::quadform::{Diagonalization, QuadSpace};

/// Widest algebra representable with 64-bit monomial masks.
pub const MAX_RANK: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("Kuga-Satake construction needs rank at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("rank {0} exceeds the supported maximum of {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("anchor vector is isotropic, so right multiplication by it is not invertible")]
    NonInvertibleAnchor,
    #[error("element is not homogeneous of degree one")]
    NotGradeOne,
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

/// A basis monomial `e_S`, `S ⊆ {1, …, n}`.
///
/// Ordered by size, then lexicographically on the sorted index list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blade(pub u64);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Blade from zero-based generator indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        Blade(indices.iter().fold(0u64, |m, &i| m | (1 << i)))
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Zero-based generator indices in ascending order.
    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|i| self.0 >> i & 1 == 1).collect()
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        f.write_str("e")?;
        let idx: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        f.write_str(&idx.join(","))
    }
}

/// Sparse element of `C(V)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliffordElement {
    coeffs: BTreeMap<Blade, BigRational>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(BigRational::one())
    }

    pub fn scalar(c: BigRational) -> Self {
        Self::term(Blade::SCALAR, c)
    }

    pub fn term(blade: Blade, c: BigRational) -> Self {
        let mut e = Self::zero();
        e.add_term(blade, c);
        e
    }

    /// Generator `eᵢ` (zero-based index).
    pub fn generator(i: usize) -> Self {
        Self::term(Blade(1 << i), BigRational::one())
    }

    /// Degree-one element `Σ cᵢ eᵢ`.
    pub fn vector(coords: &[BigRational]) -> Self {
        let mut e = Self::zero();
        for (i, c) in coords.iter().enumerate() {
            e.add_term(Blade(1 << i), c.clone());
        }
        e
    }

    pub fn add_term(&mut self, blade: Blade, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(blade).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&blade);
        }
    }

    pub fn coeff(&self, blade: Blade) -> BigRational {
        self.coeffs
            .get(&blade)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_grade_one(&self) -> bool {
        self.coeffs.keys().all(|b| b.grade() == 1)
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|b| b.grade() % 2 == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c.clone());
        }
        out
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(b, c)| format!("({c}){b}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `C(V)` presented over a diagonal basis of `V`.
#[derive(Clone, Debug)]
pub struct CliffordAlgebra {
    rank: usize,
    diag: Vec<BigRational>,
    basis_change: Diagonalization,
}

/// Builds the Clifford algebra of `v`.
pub fn build(v: &QuadSpace) -> Result<CliffordAlgebra, CliffordError> {
    if v.dim() > MAX_RANK {
        return Err(CliffordError::RankTooLarge(v.dim()));
    }
    let basis_change = v.diagonalization().clone();
    Ok(CliffordAlgebra {
        rank: v.dim(),
        diag: basis_change.entries.clone(),
        basis_change,
    })
}

impl CliffordAlgebra {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Squares `eᵢ² = dᵢ` of the generators.
    pub fn generator_squares(&self) -> &[BigRational] {
        &self.diag
    }

    /// `2^rank`.
    pub fn dimension(&self) -> u128 {
        1u128 << self.rank
    }

    /// `2^(rank−1)`, the dimension of the even part.
    pub fn even_dimension(&self) -> u128 {
        if self.rank == 0 {
            1
        } else {
            1u128 << (self.rank - 1)
        }
    }

    /// Degree-one element corresponding to a vector in the original
    /// coordinates of `V`.
    pub fn vector_from_original(
        &self,
        v: &[BigRational],
    ) -> Result<CliffordElement, CliffordError> {
        if v.len() != self.rank {
            return Err(CliffordError::DimensionMismatch {
                got: v.len(),
                expected: self.rank,
            });
        }
        Ok(CliffordElement::vector(
            &self.basis_change.to_diagonal_coords(v),
        ))
    }

    /// `e_S · e_T = sign · (∏_{i∈S∩T} dᵢ) · e_{S△T}`.
    ///
    /// The sign counts the transpositions needed to move every generator of
    /// `T` left past the larger generators of `S`.
    pub fn blade_product(&self, s: Blade, t: Blade) -> (BigRational, Blade) {
        let mut swaps = 0u32;
        let mut rest = t.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            let above = if j == 63 { 0 } else { s.0 >> (j + 1) };
            swaps += above.count_ones();
        }
        let mut factor = if swaps % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        let mut common = s.0 & t.0;
        while common != 0 {
            let i = common.trailing_zeros() as usize;
            common &= common - 1;
            factor *= &self.diag[i];
        }
        (factor, Blade(s.0 ^ t.0))
    }

    pub fn multiply(&self, x: &CliffordElement, y: &CliffordElement) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for (s, a) in &x.coeffs {
            for (t, b) in &y.coeffs {
                let (f, blade) = self.blade_product(*s, *t);
                out.add_term(blade, f * a * b);
            }
        }
        out
    }

    /// `q(x) = Σ dᵢ cᵢ²` for a degree-one element.
    pub fn quadratic_value(&self, x: &CliffordElement) -> Result<BigRational, CliffordError> {
        if !x.is_grade_one() {
            return Err(CliffordError::NotGradeOne);
        }
        Ok(x.coeffs
            .iter()
            .map(|(b, c)| c * c * &self.diag[b.0.trailing_zeros() as usize])
            .sum())
    }
}

/// The `2^(n−1)` even-size monomials, in basis order.
pub fn even_part(a: &CliffordAlgebra) -> Vec<Blade> {
    let mut out: Vec<Blade> = (0..1u128 << a.rank)
        .map(|m| Blade(m as u64))
        .filter(|b| b.grade() % 2 == 0)
        .collect();
    out.sort();
    out
}

/// Dimension `2^(rank−2)` of the Kuga–Satake abelian variety.
pub fn ks_dimension(rank: usize) -> Result<BigUint, CliffordError> {
    if rank < 2 {
        return Err(CliffordError::RankTooSmall(rank));
    }
    Ok(BigUint::one() << (rank - 2))
}

/// Matrix of `w ↦ v·w·v₀` on the even part, columns indexed by the even
/// basis (image of basis element `j` is column `j`).
pub fn ks_embedding_operator(
    a: &CliffordAlgebra,
    v: &CliffordElement,
    v0: &CliffordElement,
) -> Result<Vec<Vec<BigRational>>, CliffordError> {
    if !v.is_grade_one() || !v0.is_grade_one() {
        return Err(CliffordError::NotGradeOne);
    }
    if a.quadratic_value(v0)?.is_zero() {
        return Err(CliffordError::NonInvertibleAnchor);
    }
    let basis = even_part(a);
    let index: HashMap<Blade, usize> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let n = basis.len();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (j, b) in basis.iter().enumerate() {
        let w = CliffordElement::term(*b, BigRational::one());
        let image = a.multiply(&a.multiply(v, &w), v0);
        for (blade, c) in image.terms() {
            let i = index[blade];
            m[i][j] = c.clone();
        }
    }
    Ok(m)
}
