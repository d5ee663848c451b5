use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::QuadFormError;

pub type Matrix = Vec<Vec<BigRational>>;

/// Congruence diagonalization `Pᵀ·G·P = diag(entries)`.
///
/// Columns of `change_of_basis` are the new basis vectors written in the
/// original coordinates. Every elementary step has determinant one, so
/// `det P = 1` and `det G = ∏ entries`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    pub entries: Vec<BigRational>,
    pub change_of_basis: Matrix,
}

impl Diagonalization {
    /// Coordinates in the diagonal basis of a vector given in original coordinates.
    pub fn to_diagonal_coords(&self, v: &[BigRational]) -> Vec<BigRational> {
        solve(&self.change_of_basis, v)
    }

    /// Original coordinates of a vector given in the diagonal basis.
    pub fn to_original_coords(&self, c: &[BigRational]) -> Vec<BigRational> {
        let n = c.len();
        (0..n)
            .map(|i| (0..n).map(|k| &self.change_of_basis[i][k] * &c[k]).sum())
            .collect()
    }
}

/// A nondegenerate quadratic space over ℚ, given by its Gram matrix.
#[derive(Clone, Debug)]
pub struct QuadSpace {
    gram: Matrix,
    label: Option<String>,
    diag: Diagonalization,
}

impl PartialEq for QuadSpace {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram && self.label == other.label
    }
}

impl Eq for QuadSpace {}

impl QuadSpace {
    /// Validates squareness, exact symmetry and nondegeneracy.
    pub fn new(gram: Matrix, label: Option<String>) -> Result<Self, QuadFormError> {
        let n = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(QuadFormError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(QuadFormError::NotSymmetric { row: i, col: j });
                }
            }
        }
        let diag = diagonalize_gram(&gram)?;
        Ok(Self { gram, label, diag })
    }

    pub fn from_integers(rows: &[Vec<i64>], label: Option<&str>) -> Result<Self, QuadFormError> {
        let gram = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        Self::new(gram, label.map(str::to_owned))
    }

    /// Diagonal form `⟨d₁, …, dₙ⟩`.
    pub fn diagonal(entries: &[BigRational], label: Option<&str>) -> Result<Self, QuadFormError> {
        let n = entries.len();
        let mut gram = vec![vec![BigRational::zero(); n]; n];
        for (i, d) in entries.iter().enumerate() {
            gram[i][i] = d.clone();
        }
        Self::new(gram, label.map(str::to_owned))
    }

    pub fn diagonal_integers(entries: &[i64], label: Option<&str>) -> Result<Self, QuadFormError> {
        let e: Vec<_> = entries
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        Self::diagonal(&e, label)
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn diagonalization(&self) -> &Diagonalization {
        &self.diag
    }

    pub fn determinant(&self) -> BigRational {
        self.diag
            .entries
            .iter()
            .fold(BigRational::one(), |acc, d| acc * d)
    }

    /// `xᵀ G y`.
    pub fn bilinear(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let n = self.dim();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &x[i] * &self.gram[i][j] * &y[j];
            }
        }
        acc
    }

    /// Gram matrix of `Bᵀ G B` for a square change of basis `b`.
    pub fn congruent(&self, b: &Matrix) -> Result<Self, QuadFormError> {
        let n = self.dim();
        let gb: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &self.gram[i][k] * &b[k][j]).sum())
                    .collect()
            })
            .collect();
        let out: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &b[k][i] * &gb[k][j]).sum())
                    .collect()
            })
            .collect();
        Self::new(out, self.label.clone())
    }
}

impl fmt::Display for QuadSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            write!(f, "{l} ")?;
        }
        f.write_str("[")?;
        for (i, row) in self.gram.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Diagonal entries of a congruent diagonal form, with the change of basis.
pub fn diagonalize(v: &QuadSpace) -> Diagonalization {
    v.diag.clone()
}

/// Symmetric Gaussian elimination.
///
/// A zero pivot `k` is repaired by replacing `e_k` with `e_k + e_j` for the
/// first `j > k` pairing nontrivially with `e_k` (or `e_k - e_j` when that
/// sum is isotropic).
fn diagonalize_gram(gram: &Matrix) -> Result<Diagonalization, QuadFormError> {
    let n = gram.len();
    let mut a = gram.clone();
    let mut p: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();

    for k in 0..n {
        if a[k][k].is_zero() {
            let j = (k + 1..n)
                .find(|&j| !a[k][j].is_zero())
                .ok_or(QuadFormError::DegenerateForm)?;
            // e_k += t·e_j makes the pivot 2t·a[k][j] + a[j][j] for t = ±1;
            // both signs vanish only if a[k][j] = 0.
            let two_akj = &a[k][j] + &a[k][j];
            let t = if (&two_akj + &a[j][j]).is_zero() {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            add_multiple(&mut a, &mut p, k, j, &t);
        }
        debug_assert!(!a[k][k].is_zero());
        for j in k + 1..n {
            if a[j][k].is_zero() {
                continue;
            }
            let c = -(&a[j][k] / &a[k][k]);
            add_multiple(&mut a, &mut p, j, k, &c);
        }
    }
    let entries: Vec<BigRational> = (0..n).map(|i| a[i][i].clone()).collect();
    Ok(Diagonalization {
        entries,
        change_of_basis: p,
    })
}

/// Basis change `e_target += c·e_source`, applied congruently.
fn add_multiple(a: &mut Matrix, p: &mut Matrix, target: usize, source: usize, c: &BigRational) {
    let n = a.len();
    for col in 0..n {
        let delta = c * &a[source][col];
        a[target][col] += delta;
    }
    for row in 0..n {
        let delta = c * &a[row][source];
        a[row][target] += delta;
    }
    for row in 0..n {
        let delta = c * &p[row][source];
        p[row][target] += delta;
    }
}

/// Gauss–Jordan solve of `m·x = rhs` for invertible `m`.
pub(crate) fn solve(m: &Matrix, rhs: &[BigRational]) -> Vec<BigRational> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("invertible matrix");
        aug.swap(col, piv);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=n {
                    let d = &f * &aug[col][c];
                    aug[r][c] -= d;
                }
            }
        }
    }
    aug.into_iter().map(|mut row| row.pop().unwrap()).collect()
}

/// Rank of a rational matrix (rows × cols) by row reduction.
pub fn matrix_rank(rows: &Matrix) -> usize {
    let mut m = rows.clone();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].recip();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] * &inv;
                for c in col..cols {
                    let d = &f * &m[rank][c];
                    m[r][c] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
