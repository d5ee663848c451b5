//! Fixed loci of the group `G = A₂ × ⟨−1⟩` acting on the generalized Kummer
//! fourfold, modeled at torsion level.
//!
//! The abelian surface `A` is replaced by its `N`-torsion `(ℤ/Nℤ)⁴` and the
//! zero-sum symmetric product by multisets of four torsion points summing to
//! zero. The identities checked here are polynomial in the group law, so
//! they hold on the torsion model exactly when they hold pointwise on `A`.
//! Resolution geometry (exceptional fibers, strict transforms) is outside
//! the model.

mod checks;
mod config;
mod fixed;
mod fujiki;
mod group;
mod torsion;
mod verify;

use thiserror::Error;

pub use checks::{
    conjugation_check, conjugation_check_with, intersection_report, literal_intersections,
    membership_intersections, off_fiber_check, IntersectionReport, Method, Violation, WAtlas,
    LITERAL_LEVEL,
};
pub use config::{
    in_v, in_w, isolated_points, isolated_recount, triple_configs, v_configs, v_labels,
    w_config_count, w_config_count_enumerated, w_configs, w_membership, ConfigSet, IsolatedRecount,
    TorsionConfig,
};
pub use fixed::{
    fixed_configs, translation, translation_fixed_configs, translation_fixed_count,
    zero_sum_configs, ZeroSumSweep, EXHAUSTIVE_LEVEL,
};
pub use fujiki::{
    bbf_pushforward_scale, normalized_isometry_scale, FujikiData, FUJIKI_K3_3, FUJIKI_KUM3,
    ISOMETRY_DIVISOR, KUMMER_MAP_DEGREE, SIXFOLD_POWER,
};
pub use group::{
    act, build_g, extended_group, group_structure, GroupElement, GroupStructure, Sign,
};
pub use torsion::{
    all_points, exact_order_four, four_torsion, half_fiber, two_torsion, Level, TorsionPoint,
};
pub use verify::{verify, Check, Status, Suite, SuiteReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KummerError {
    #[error("level must be a positive multiple of 4 and at most {max}, got {0}", max = Level::MAX)]
    BadLevel(u32),
    #[error("levels differ: {0} and {1}")]
    LevelMismatch(u32, u32),
    #[error("{0} is not a 2-torsion point")]
    NotTwoTorsion(String),
    #[error("{0} is not a 4-torsion point")]
    NotFourTorsion(String),
    #[error("{0} does not have exact order 4")]
    NotOrderFour(String),
    #[error("τ must be nonzero")]
    ZeroTau,
    #[error("points {0} do not sum to zero")]
    NotZeroSum(String),
    #[error("exhaustive enumeration is limited to level {max}, got {0}", max = EXHAUSTIVE_LEVEL)]
    LevelTooLargeForExhaustive(u32),
    #[error("{value} has no rational root of degree {root}")]
    NotAPerfectPower { value: String, root: u32 },
    #[error("invalid Fujiki data: {0}")]
    InvalidFujikiData(String),
    #[error("divisor must be nonzero")]
    ZeroDivisor,
    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),
}
