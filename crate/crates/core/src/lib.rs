//! Exact verification toolkit for generalized Kummer sixfolds.
//!
//! - [`quadform`]: rational quadratic spaces, Hilbert symbols, Hasse–Minkowski
//!   isometry and embedding decisions.
//! - [`lattice`]: the named lattices and the JSON lattice file format.
//! - [`clifford`]: Clifford algebras, even parts and Kuga–Satake dimensions.
//! - [`kummer`]: torsion-level models of the symplectic group action on the
//!   zero-sum symmetric product, and the Fujiki scaling arithmetic.

pub mod arith;
pub mod clifford;
pub mod kummer;
pub mod lattice;
pub mod quadform;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub use clifford::{CliffordAlgebra, CliffordElement, CliffordError};
pub use kummer::{GroupElement, KummerError, TorsionConfig, TorsionPoint};
pub use lattice::{LatticeError, NamedLattice};
pub use quadform::{EmbeddingVerdict, InvariantProfile, Place, QuadFormError, QuadSpace};
