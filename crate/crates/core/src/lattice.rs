//! Named lattices, direct sums, and the JSON lattice file format.
//!
//! A lattice file is a JSON object with an optional `"name"` and a required
//! `"gram"`: an array of `n` arrays of `n` strings, each a rational written as
//! `-?digits(/digits)?`. Only the rational Gram matrix is kept.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadform::{QuadFormError, QuadSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("unknown lattice name `{0}`")]
    UnknownName(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bad matrix entry at row {row}, column {col}: `{text}` is not a rational")]
    BadEntry {
        row: usize,
        col: usize,
        text: String,
    },
    #[error("gram row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("gram matrix is not symmetric: entry ({row}, {col}) differs from ({col}, {row})")]
    NotSymmetric { row: usize, col: usize },
    #[error("gram matrix is degenerate")]
    Degenerate,
}

impl From<QuadFormError> for LatticeError {
    fn from(e: QuadFormError) -> Self {
        match e {
            QuadFormError::NotSymmetric { row, col } => LatticeError::NotSymmetric { row, col },
            QuadFormError::NotSquare { row, len, expected } => {
                LatticeError::NotSquare { row, len, expected }
            }
            _ => LatticeError::Degenerate,
        }
    }
}

/// A catalogue entry: a quadratic space with a name and a citation string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedLattice {
    pub name: String,
    pub space: QuadSpace,
    pub provenance: String,
}

pub const BUILTIN_NAMES: [&str; 5] = ["U", "Lambda_Kum3", "Paranjape", "ILP", "rank1:<n>"];

pub fn hyperbolic_plane() -> QuadSpace {
    QuadSpace::from_integers(&[vec![0, 1], vec![1, 0]], Some("U")).expect("U is nondegenerate")
}

pub fn rank_one(n: &BigInt) -> Result<QuadSpace, LatticeError> {
    let space = QuadSpace::diagonal(
        &[BigRational::from_integer(n.clone())],
        Some(&format!("<{n}>")),
    )?;
    Ok(space)
}

fn rank_one_small(n: i64) -> QuadSpace {
    rank_one(&BigInt::from(n)).expect("nonzero")
}

/// `U⊕³ ⊕ ⟨−8⟩`, the second cohomology lattice of Kum³-type manifolds.
pub fn kummer_lattice() -> QuadSpace {
    let u = hyperbolic_plane();
    direct_sum_all(&[&u, &u, &u, &rank_one_small(-8)]).with_label("Lambda_Kum3")
}

/// Looks up a catalogue lattice by key.
pub fn builtin(name: &str) -> Result<NamedLattice, LatticeError> {
    let u = hyperbolic_plane();
    let (space, provenance) = match name {
        "U" => (u, "hyperbolic plane, Gram [[0,1],[1,0]]".to_owned()),
        "Lambda_Kum3" => (
            kummer_lattice(),
            "U^3 + <-8>: H^2 lattice of manifolds of Kum^3 type".to_owned(),
        ),
        "Paranjape" => (
            direct_sum_all(&[&u, &u, &rank_one_small(-2), &rank_one_small(-2)]),
            "U^2 + <-2>^2: transcendental lattice of the K3 family of Paranjape".to_owned(),
        ),
        "ILP" => (
            direct_sum_all(&[&u, &u, &rank_one_small(-6), &rank_one_small(-2)]),
            "U^2 + <-6> + <-2>: transcendental lattice of the K3 family of Ingalls-Logan-Patashnick"
                .to_owned(),
        ),
        other => {
            let Some(n) = other.strip_prefix("rank1:") else {
                return Err(LatticeError::UnknownName(other.to_owned()));
            };
            let n: BigInt = parse_integer(n).ok_or_else(|| LatticeError::UnknownName(other.to_owned()))?;
            (rank_one(&n)?, format!("rank-one lattice <{n}>"))
        }
    };
    Ok(NamedLattice {
        name: name.to_owned(),
        space: space.with_label(name),
        provenance,
    })
}

/// Block-diagonal sum `a ⊕ b`.
pub fn direct_sum(a: &QuadSpace, b: &QuadSpace) -> QuadSpace {
    let label = match (a.label(), b.label()) {
        (Some(x), Some(y)) => Some(format!("{x} + {y}")),
        _ => None,
    };
    let sum = direct_sum_all(&[a, b]);
    match label {
        Some(l) => sum.with_label(l),
        None => sum,
    }
}

fn direct_sum_all(parts: &[&QuadSpace]) -> QuadSpace {
    let n: usize = parts.iter().map(|p| p.dim()).sum();
    let mut gram = vec![vec![BigRational::zero(); n]; n];
    let mut off = 0;
    for p in parts {
        for (i, row) in p.gram().iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                gram[off + i][off + j] = x.clone();
            }
        }
        off += p.dim();
    }
    QuadSpace::new(gram, None).expect("sum of nondegenerate spaces is nondegenerate")
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    gram: Vec<Vec<String>>,
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses one entry of the grammar `-?digits(/digits)?`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        None => parse_integer(s).map(BigRational::from_integer),
        Some((n, d)) => {
            let num = parse_integer(n)?;
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let den: BigInt = d.parse().ok()?;
            (!den.is_zero()).then(|| BigRational::new(num, den))
        }
    }
}

/// Parses a lattice file into a quadratic space.
pub fn parse_lattice(text: &str) -> Result<QuadSpace, LatticeError> {
    let file: LatticeFile = serde_json::from_str(text).map_err(|e| LatticeError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = file.gram.len();
    let mut gram = Vec::with_capacity(n);
    for (i, row) in file.gram.iter().enumerate() {
        if row.len() != n {
            return Err(LatticeError::NotSquare {
                row: i,
                len: row.len(),
                expected: n,
            });
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, s)| {
                parse_rational(s).ok_or_else(|| LatticeError::BadEntry {
                    row: i,
                    col: j,
                    text: s.clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        gram.push(parsed);
    }
    Ok(QuadSpace::new(gram, file.name)?)
}

/// Canonical serialization: pretty JSON, entries in lowest terms.
pub fn serialize_lattice(v: &QuadSpace) -> String {
    let file = LatticeFile {
        name: v.label().map(str::to_owned),
        gram: v
            .gram()
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("lattice files always serialize")
}
