//! Verification suites over the torsion model, grouped the way the
//! command-line front end exposes them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::checks::{
    conjugation_check, conjugation_check_with, intersection_report, WAtlas, LITERAL_LEVEL,
};
use super::config::{
    in_w, isolated_points, isolated_recount, v_configs, v_labels, w_config_count,
    w_config_count_enumerated, w_configs, w_membership, ConfigSet, TorsionConfig,
};
use super::fixed::{translation_fixed_count, ZeroSumSweep, EXHAUSTIVE_LEVEL};
use super::group::{act, build_g, extended_group, group_structure, GroupElement, Sign};
use super::torsion::{exact_order_four, two_torsion, Level, TorsionPoint};
use super::{off_fiber_check, KummerError};

/// Levels up to which W-sets are enumerated pair by pair.
const ENUMERATION_LEVEL: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Suite {
    #[serde(rename = "2.2")]
    GroupStructure,
    #[serde(rename = "2.4")]
    Census,
    #[serde(rename = "2.5")]
    Intersections,
    #[serde(rename = "2.7")]
    FixedLoci,
    #[serde(rename = "2.8")]
    Conjugation,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::GroupStructure,
        Suite::Census,
        Suite::Intersections,
        Suite::FixedLoci,
        Suite::Conjugation,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::GroupStructure => "2.2",
            Suite::Census => "2.4",
            Suite::Intersections => "2.5",
            Suite::FixedLoci => "2.7",
            Suite::Conjugation => "2.8",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Suite::GroupStructure => "group generated by fixed-point elements",
            Suite::Census => "census of W and V components",
            Suite::Intersections => "intersections of W components",
            Suite::FixedLoci => "fixed loci of G",
            Suite::Conjugation => "conjugation by 4-torsion",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = KummerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|l| l.id() == s)
            .ok_or_else(|| KummerError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::Info => "INFO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &str, status: Status) -> Self {
        Self {
            name: name.to_string(),
            status,
            expected: None,
            observed: None,
            note: None,
            witness: None,
        }
    }

    /// Passes iff `observed == expected`.
    fn count(name: &str, expected: u64, observed: u64) -> Self {
        let status = if expected == observed {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            expected: Some(expected),
            observed: Some(observed),
            ..Self::new(name, status)
        }
    }

    fn holds(name: &str, ok: bool) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail })
    }

    fn info(name: &str, observed: u64) -> Self {
        Self {
            observed: Some(observed),
            ..Self::new(name, Status::Info)
        }
    }

    fn skipped(name: &str, why: &str) -> Self {
        Self {
            note: Some(why.to_string()),
            ..Self::new(name, Status::Skipped)
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn witness(mut self, w: Option<impl ToString>) -> Self {
        if self.status == Status::Fail {
            self.witness = w.map(|w| w.to_string());
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub title: &'static str,
    pub level: u32,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

/// Lazily built data shared between suites at one level.
struct Context {
    level: u32,
    sweep: Option<ZeroSumSweep>,
    atlas: Option<WAtlas>,
}

impl Context {
    fn exhaustive(&self) -> bool {
        self.level <= EXHAUSTIVE_LEVEL
    }

    fn literal(&self) -> bool {
        self.level <= LITERAL_LEVEL
    }

    fn sweep(&mut self) -> Result<&ZeroSumSweep, KummerError> {
        if self.sweep.is_none() {
            self.sweep = Some(ZeroSumSweep::new(self.level)?);
        }
        Ok(self.sweep.as_ref().expect("just built"))
    }

    fn atlas(&mut self) -> Result<&WAtlas, KummerError> {
        if self.atlas.is_none() {
            self.atlas = Some(WAtlas::build(self.level)?);
        }
        Ok(self.atlas.as_ref().expect("just built"))
    }
}

const NEEDS_SWEEP: &str = "needs the exhaustive sweep, available at level 4 only";

/// Runs the selected suites (all of them for `None`) at `level`.
pub fn verify(level: u32, only: Option<Suite>) -> Result<Vec<SuiteReport>, KummerError> {
    Level::new(level)?;
    let mut ctx = Context {
        level,
        sweep: None,
        atlas: None,
    };
    let suites: Vec<Suite> = match only {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    suites
        .into_iter()
        .map(|suite| {
            let checks = match suite {
                Suite::GroupStructure => group_suite(&mut ctx)?,
                Suite::Census => census_suite(&mut ctx)?,
                Suite::Intersections => intersection_suite(level)?,
                Suite::FixedLoci => fixed_locus_suite(&mut ctx)?,
                Suite::Conjugation => conjugation_suite(&mut ctx)?,
            };
            Ok(SuiteReport {
                suite,
                title: suite.title(),
                level,
                checks,
            })
        })
        .collect()
}

fn group_suite(ctx: &mut Context) -> Result<Vec<Check>, KummerError> {
    let level = ctx.level;
    let g = build_g(level)?;
    let s = group_structure(&g)?;
    let mut out = vec![
        Check::count("order of G", 32, s.order as u64),
        Check::holds("G closed under composition", s.closed),
        Check::holds("G abelian", s.abelian),
        Check::holds("G has exponent 2", s.exponent_two),
    ];

    // Elements outside G: translations by order-4 points and their
    // compositions with -1.
    let eps = exact_order_four(level)?;
    let counts: BTreeSet<u64> = eps
        .iter()
        .map(translation_fixed_count)
        .collect::<Result<_, _>>()?;
    out.push(uniform_info(
        "order-4 translation fixed configs at this level",
        &counts,
    ));
    let (l2, l4) = (2 * level, 4 * level);
    if l4 <= Level::MAX {
        let mut stable = true;
        let mut lifted = BTreeSet::new();
        let mut witness = None;
        for e in &eps {
            let a = translation_fixed_count(&e.lift_to(l2)?)?;
            let b = translation_fixed_count(&e.lift_to(l4)?)?;
            lifted.insert(a);
            if a != b && witness.is_none() {
                witness = Some(*e);
            }
            stable &= a == b;
        }
        let mut c = Check::holds(
            &format!("order-4 translation fixed configs stable from level {l2} to {l4}"),
            stable && lifted.len() == 1,
        )
        .witness(witness);
        c.observed = lifted.iter().next().copied().filter(|_| lifted.len() == 1);
        out.push(c);
    } else {
        out.push(Check::skipped(
            "order-4 translation fixed configs stable under refinement",
            "refined level too large",
        ));
    }
    let bad = eps.iter().find(|e| !off_fiber_check(e));
    out.push(
        Check::count(
            "order-4 reflections miss the zero-sum fiber",
            eps.len() as u64,
            eps.iter().filter(|e| off_fiber_check(e)).count() as u64,
        )
        .witness(bad),
    );

    // Elements of G: their fixed families grow with the level.
    let w_here = w_config_count(level)?;
    if level <= ENUMERATION_LEVEL {
        let tau = two_torsion(level)?[1];
        out.push(Check::count(
            "|W_τ| by enumeration matches closed form",
            w_here,
            w_configs(&tau)?.len() as u64,
        ));
    }
    if l2 <= Level::MAX {
        let w_next = w_config_count(l2)?;
        out.push(
            Check::holds(
                &format!("|W_τ| grows from level {level} to {l2}"),
                w_next > w_here,
            )
            .note(format!("{w_here} -> {w_next}")),
        );
        let (tau, theta) = v_labels(level)?[0];
        let v_here = v_configs(&tau, &theta)?.len();
        let v_next = v_configs(&tau.lift_to(l2)?, &theta.lift_to(l2)?)?.len();
        out.push(
            Check::holds(
                &format!("|V_τ,θ| grows from level {level} to {l2}"),
                v_next > v_here,
            )
            .note(format!("{v_here} -> {v_next}")),
        );
    }

    if ctx.exhaustive() {
        out.extend(coverage_checks(ctx, &g)?);
    } else {
        out.push(Check::skipped(
            "fixed loci of G cover exactly the W components",
            NEEDS_SWEEP,
        ));
        out.push(Check::skipped(
            "stabilizer order doubles with each containing W",
            NEEDS_SWEEP,
        ));
    }
    Ok(out)
}

fn uniform_info(name: &str, values: &BTreeSet<u64>) -> Check {
    match values.len() {
        1 => Check::info(name, *values.iter().next().expect("one value")),
        _ => Check::new(name, Status::Info).note(format!("values {values:?}")),
    }
}

fn coverage_checks(ctx: &mut Context, g: &[GroupElement]) -> Result<Vec<Check>, KummerError> {
    let nontrivial: Vec<GroupElement> = g.iter().filter(|e| !e.is_identity()).copied().collect();
    let fixed = ctx.sweep()?.fixed_sets(&nontrivial)?;
    let covered: ConfigSet = fixed.into_iter().flatten().collect();
    let w_union: ConfigSet = ctx.atlas()?.sets().iter().flatten().copied().collect();
    let stray = covered.symmetric_difference(&w_union).min().copied();
    let mut out = vec![Check::holds(
        "fixed loci of G cover exactly the W components",
        stray.is_none(),
    )
    .witness(stray)
    .note(format!("{} configurations", w_union.len()))];

    let sweep = ctx.sweep()?;
    let orders = sweep.stabilizer_orders(g);
    let mut by_members: BTreeMap<usize, u64> = BTreeMap::new();
    let mut bad = None;
    for (cfg, &order) in sweep.configs().iter().zip(&orders) {
        let k = w_membership(cfg).len();
        if k == 0 {
            continue;
        }
        *by_members.entry(k).or_default() += 1;
        if order != 1 << k && bad.is_none() {
            bad = Some(*cfg);
        }
    }
    out.push(
        Check::holds(
            "stabilizer order doubles with each containing W",
            bad.is_none(),
        )
        .witness(bad),
    );
    for (k, n) in by_members {
        out.push(Check::info(
            &format!("configurations in exactly {k} of the W components"),
            n,
        ));
    }
    Ok(out)
}

fn census_suite(ctx: &mut Context) -> Result<Vec<Check>, KummerError> {
    let level = ctx.level;
    let taus = two_torsion(level)?;
    let mut out = Vec::new();

    if ctx.literal() {
        let sets = ctx.atlas()?.sets();
        let distinct: BTreeSet<Vec<TorsionConfig>> = sets.iter().map(sorted).collect();
        out.push(Check::count(
            "distinct W components",
            16,
            distinct.len() as u64,
        ));
        let sizes: BTreeSet<u64> = sets.iter().map(|s| s.len() as u64).collect();
        out.push(uniform_check("|W_τ| independent of τ", &sizes));
    } else {
        // W_τ = W_τ' forces τ = τ': a generic member of W_τ lies in no other.
        let a = TorsionPoint::new(level, [1, 0, 0, 0])?;
        let b = TorsionPoint::new(level, [0, 1, 0, 0])?;
        let mut separated = 0;
        for t in &taus {
            let cfg = TorsionConfig::new([a, b, a.neg().add(t)?, b.neg().add(t)?])?;
            if taus.iter().all(|u| u == t || !in_w(&cfg, u)) {
                separated += 1;
            }
        }
        out.push(
            Check::count("distinct W components", 16, separated).note("separated by witnesses"),
        );
        let sizes: BTreeSet<u64> = taus
            .iter()
            .map(w_config_count_enumerated)
            .collect::<Result<_, _>>()?;
        out.push(uniform_check("|W_τ| independent of τ", &sizes).note("orbit enumeration"));
    }

    let mut distinct_v = BTreeSet::new();
    let mut shift_ok = 0;
    let mut inside_ok = 0;
    let mut pairs = 0;
    let mut shift_bad = None;
    let mut inside_bad = None;
    for tau in taus.iter().filter(|t| !t.is_zero()) {
        for theta in &taus {
            pairs += 1;
            let v = v_configs(tau, theta)?;
            if v == v_configs(tau, &theta.add(tau)?)? {
                shift_ok += 1;
            } else {
                shift_bad.get_or_insert((*tau, *theta));
            }
            match v.iter().find(|c| !in_w(c, theta)) {
                None => inside_ok += 1,
                Some(c) => {
                    inside_bad.get_or_insert(*c);
                }
            }
            distinct_v.insert(sorted(&v));
        }
    }
    out.push(Check::count(
        "distinct V components",
        120,
        distinct_v.len() as u64,
    ));
    out.push(
        Check::count("V_τ,θ = V_τ,θ+τ", pairs, shift_ok)
            .witness(shift_bad.map(|(t, th)| format!("τ = {t}, θ = {th}"))),
    );
    out.push(Check::count("V_τ,θ inside W_θ", pairs, inside_ok).witness(inside_bad));
    Ok(out)
}

fn uniform_check(name: &str, values: &BTreeSet<u64>) -> Check {
    let c = Check::holds(name, values.len() == 1);
    match values.len() {
        1 => Check {
            observed: values.iter().next().copied(),
            ..c
        },
        _ => c.note(format!("values {values:?}")),
    }
}

fn sorted(set: &ConfigSet) -> Vec<TorsionConfig> {
    let mut v: Vec<_> = set.iter().copied().collect();
    v.sort_unstable();
    v
}

fn intersection_suite(level: u32) -> Result<Vec<Check>, KummerError> {
    let r = intersection_report(level)?;
    let first = |kind: &str| {
        r.violations.iter().find(|v| v.check == kind).map(|v| {
            let taus: Vec<String> = v.taus.iter().map(ToString::to_string).collect();
            match &v.witness {
                Some(w) => format!("τ = {}: {w}", taus.join(" ")),
                None => format!("τ = {}", taus.join(" ")),
            }
        })
    };
    let method = format!("{:?}", r.method).to_lowercase();
    Ok(vec![
        Check::count(
            "pairs with W ∩ W = V",
            r.pairs_checked as u64,
            r.pairs_passed as u64,
        )
        .note(method.clone())
        .witness(first("pair")),
        Check::count(
            "triples meeting in the 4 expected configurations",
            r.triples_checked as u64,
            r.triples_passed as u64,
        )
        .note(method.clone())
        .witness(first("triple")),
        Check::count(
            "quadruples with empty intersection",
            r.quadruples_checked as u64,
            r.quadruples_empty as u64,
        )
        .note(method)
        .witness(first("quadruple")),
    ])
}

fn fixed_locus_suite(ctx: &mut Context) -> Result<Vec<Check>, KummerError> {
    let level = ctx.level;
    let taus = two_torsion(level)?;
    let mut out = Vec::new();

    let mut sizes = BTreeSet::new();
    let mut recounts = BTreeSet::new();
    let mut outside_w = true;
    let mut fixed_ok = true;
    let mut in_other_w = true;
    let mut witness = None;
    for tau in &taus {
        let iso = isolated_points(tau)?;
        sizes.insert(iso.len() as u64);
        recounts.insert(isolated_recount(tau)?.isolated);
        let minus = GroupElement::new(*tau, Sign::Minus)?;
        for cfg in &iso {
            let a = !in_w(cfg, tau);
            let b = act(&minus, cfg)? == *cfg;
            let c = taus
                .iter()
                .any(|th| !th.is_zero() && in_w(cfg, &th.add(tau).expect("same level")));
            if !(a && b && c) && witness.is_none() {
                witness = Some(*cfg);
            }
            outside_w &= a;
            fixed_ok &= b;
            in_other_w &= c;
        }
    }
    out.push(single_count(
        "isolated points per τ by enumeration",
        140,
        &sizes,
    ));
    out.push(
        single_count("isolated points per τ by recount", 140, &recounts)
            .note("(16³ − 16 − 16·45)/24"),
    );
    out.push(Check::holds("isolated points lie outside W_τ", outside_w).witness(witness));
    out.push(Check::holds("isolated points fixed by (τ, -1)", fixed_ok).witness(witness));
    out.push(Check::holds("isolated points lie in some W_τ+θ, θ ≠ 0", in_other_w).witness(witness));

    if !ctx.exhaustive() {
        out.push(Check::skipped(
            "fixed locus of (τ, -1) is W_τ ⊎ isolated points",
            NEEDS_SWEEP,
        ));
        out.push(Check::skipped(
            "fixed locus of (τ, +1) is the union of 8 V components",
            NEEDS_SWEEP,
        ));
        return Ok(out);
    }
    let g: Vec<GroupElement> = build_g(level)?
        .into_iter()
        .filter(|e| !e.is_identity())
        .collect();
    let fixed = ctx.sweep()?.fixed_sets(&g)?;
    let atlas = ctx.atlas()?;
    let (mut minus_ok, mut minus_total, mut plus_ok, mut plus_total) = (0, 0, 0, 0);
    let (mut minus_bad, mut plus_bad) = (None, None);
    for (elt, fix) in g.iter().zip(&fixed) {
        let tau = elt.translation();
        match elt.sign() {
            Sign::Minus => {
                minus_total += 1;
                let w = &atlas.sets()[taus.binary_search(&tau).expect("two-torsion")];
                let iso = isolated_points(&tau)?;
                let expected: ConfigSet = w.union(&iso).copied().collect();
                if w.is_disjoint(&iso) && *fix == expected {
                    minus_ok += 1;
                } else {
                    minus_bad
                        .get_or_insert_with(|| fix.symmetric_difference(&expected).min().copied());
                }
            }
            Sign::Plus => {
                plus_total += 1;
                let mut parts = BTreeSet::new();
                let mut expected = ConfigSet::new();
                for theta in &taus {
                    let v = v_configs(&tau, theta)?;
                    parts.insert(sorted(&v));
                    expected.extend(v);
                }
                if parts.len() == 8 && *fix == expected {
                    plus_ok += 1;
                } else {
                    plus_bad
                        .get_or_insert_with(|| fix.symmetric_difference(&expected).min().copied());
                }
            }
        }
    }
    out.push(
        Check::count(
            "fixed locus of (τ, -1) is W_τ ⊎ isolated points",
            minus_total,
            minus_ok,
        )
        .witness(minus_bad.flatten()),
    );
    out.push(
        Check::count(
            "fixed locus of (τ, +1) is the union of 8 V components",
            plus_total,
            plus_ok,
        )
        .witness(plus_bad.flatten()),
    );
    Ok(out)
}

fn single_count(name: &str, expected: u64, values: &BTreeSet<u64>) -> Check {
    let observed = if values.len() == 1 {
        *values.iter().next().expect("one value")
    } else {
        0
    };
    let c = Check::count(name, expected, observed);
    if values.len() > 1 {
        c.note(format!("values {values:?}"))
    } else {
        c
    }
}

fn conjugation_suite(ctx: &mut Context) -> Result<Vec<Check>, KummerError> {
    let elements = extended_group(ctx.level)?;
    let mut ok = 0;
    let mut bad = None;
    let literal = ctx.literal();
    for h in &elements {
        let pass = if literal {
            conjugation_check_with(h, ctx.atlas()?)?
        } else {
            conjugation_check(h)?
        };
        if pass {
            ok += 1;
        } else {
            bad.get_or_insert(*h);
        }
    }
    let method = if literal { "literal" } else { "pair structure" };
    let moving = elements
        .iter()
        .filter(|h| !h.translation().times(2).is_zero())
        .count();
    Ok(vec![
        Check::count("(ε, ±1) maps W_τ onto W_τ+2ε", elements.len() as u64, ok)
            .note(method)
            .witness(bad),
        Check::info(
            "elements permuting the W components nontrivially",
            moving as u64,
        ),
    ])
}
