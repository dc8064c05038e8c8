//! Elementary one-dimensional chaotic maps and the weighted combination system.
//!
//! The combination map mixes a Logistic or Sine base map with a tent-shaped
//! linear term and two auxiliary elementary functions per branch:
//!
//! ```text
//!            | ω₁·f₁(F(r,x)) + α₁·g₁(r·x) + ξ₁·(β₁ − r)·x/2       mod 1,  x < 0.5
//!   G_r(x) = |
//!            | ω₂·f₂(F(r,x)) + α₂·g₂(r·x) + ξ₂·(β₂ − r)·(1 − x)/2 mod 1,  x ≥ 0.5
//! ```
//!
//! All arithmetic is plain `f64`; for a fixed spec the orbit is bitwise
//! reproducible on a given platform.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_r, check_unit, Error, Result};

/// `u − ⌊u⌋`, always in `[0, 1)` (also for negative `u`).
#[inline]
pub fn frac(u: f64) -> f64 {
    let v = u - u.floor();
    // u slightly below an integer can round up to exactly 1.0
    if v >= 1.0 {
        0.0
    } else {
        v
    }
}

#[inline]
fn finite_or_zero(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

/// Logistic map `r·x·(1 − x)`.
pub fn logistic(r: f64, x: f64) -> Result<f64> {
    check_r(r)?;
    check_unit("x", x)?;
    Ok(logistic_raw(r, x))
}

/// Sine map `r·sin(πx)/4`.
pub fn sine_map(r: f64, x: f64) -> Result<f64> {
    check_r(r)?;
    check_unit("x", x)?;
    Ok(sine_raw(r, x))
}

/// Tent map; `x = 0.5` takes the descending branch.
pub fn tent(r: f64, x: f64) -> Result<f64> {
    check_r(r)?;
    check_unit("x", x)?;
    Ok(tent_raw(r, x))
}

/// Logistic-Tent system `(r·x(1−x) + (4−r)·x/2) mod 1`, with `(1−x)` in the
/// tent term on the upper branch.
pub fn logistic_tent(r: f64, x: f64) -> Result<f64> {
    check_r(r)?;
    check_unit("x", x)?;
    Ok(frac(logistic_tent_raw(r, x, Branch::of(x))))
}

#[inline]
fn logistic_raw(r: f64, x: f64) -> f64 {
    r * x * (1.0 - x)
}

#[inline]
fn sine_raw(r: f64, x: f64) -> f64 {
    r * (PI * x).sin() / 4.0
}

#[inline]
fn tent_raw(r: f64, x: f64) -> f64 {
    if x < 0.5 {
        r * x / 2.0
    } else {
        r * (1.0 - x) / 2.0
    }
}

#[inline]
fn logistic_tent_raw(r: f64, x: f64, branch: Branch) -> f64 {
    match branch {
        Branch::Lower => logistic_raw(r, x) + (4.0 - r) * x / 2.0,
        Branch::Upper => logistic_raw(r, x) + (4.0 - r) * (1.0 - x) / 2.0,
    }
}

/// Which half of a piecewise map is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `x < 0.5`
    Lower,
    /// `x ≥ 0.5`
    Upper,
}

impl Branch {
    #[inline]
    pub fn of(x: f64) -> Self {
        if x < 0.5 {
            Branch::Lower
        } else {
            Branch::Upper
        }
    }
}

/// Selector for the `f_i` / `g_i` slots of the combination map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FnKind {
    Linear,
    Sine,
    Cosine,
    Tangent,
    Cotangent,
    Exponential,
    Logarithm,
}

/// `a·x`, `sin(a·x)`, `cos(a·x)`, ... with scale constant `a`.
///
/// Evaluation is total: a non-finite result (cot at multiples of π, log of a
/// non-positive argument, exp overflow) evaluates to 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElementaryFn {
    pub kind: FnKind,
    #[serde(default = "one")]
    pub scale: f64,
}

fn one() -> f64 {
    1.0
}

impl ElementaryFn {
    pub const fn new(kind: FnKind, scale: f64) -> Self {
        ElementaryFn { kind, scale }
    }

    pub const fn unit(kind: FnKind) -> Self {
        ElementaryFn { kind, scale: 1.0 }
    }

    pub const fn identity() -> Self {
        Self::unit(FnKind::Linear)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = self.scale * x;
        let v = match self.kind {
            FnKind::Linear => t,
            FnKind::Sine => t.sin(),
            FnKind::Cosine => t.cos(),
            FnKind::Tangent => t.tan(),
            FnKind::Cotangent => t.cos() / t.sin(),
            FnKind::Exponential => t.exp(),
            FnKind::Logarithm => t.ln(),
        };
        finite_or_zero(v)
    }
}

/// The elementary maps. Only `Logistic` and `Sine` may serve as the inner map
/// `F` of a [`CombinedMapSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseMap {
    Logistic,
    Sine,
    Tent,
    LogisticTent,
}

impl BaseMap {
    pub fn apply(self, r: f64, x: f64) -> Result<f64> {
        match self {
            BaseMap::Logistic => logistic(r, x),
            BaseMap::Sine => sine_map(r, x),
            BaseMap::Tent => tent(r, x),
            BaseMap::LogisticTent => logistic_tent(r, x),
        }
    }

    pub fn is_piecewise(self) -> bool {
        matches!(self, BaseMap::Tent | BaseMap::LogisticTent)
    }

    fn raw(self, r: f64, x: f64, branch: Branch) -> f64 {
        match self {
            BaseMap::Logistic => logistic_raw(r, x),
            BaseMap::Sine => sine_raw(r, x),
            BaseMap::Tent => match branch {
                Branch::Lower => r * x / 2.0,
                Branch::Upper => r * (1.0 - x) / 2.0,
            },
            BaseMap::LogisticTent => logistic_tent_raw(r, x, branch),
        }
    }
}

impl FromStr for BaseMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "logistic" => Ok(BaseMap::Logistic),
            "sine" => Ok(BaseMap::Sine),
            "tent" => Ok(BaseMap::Tent),
            "logistic-tent" | "lts" => Ok(BaseMap::LogisticTent),
            other => Err(Error::InvalidArgument(format!("unknown map '{other}'"))),
        }
    }
}

/// Weights and function selectors of one branch of the combination map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchParams {
    pub f: ElementaryFn,
    pub g: ElementaryFn,
    pub omega: f64,
    pub alpha: f64,
    pub xi: f64,
    pub beta: f64,
}

impl BranchParams {
    fn weights_finite(&self) -> bool {
        [self.omega, self.alpha, self.xi, self.beta, self.f.scale, self.g.scale]
            .iter()
            .all(|w| w.is_finite())
    }
}

/// The three parameter presets studied for the combination map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::I, Case::II, Case::III];

    pub fn spec(self) -> CombinedMapSpec {
        case_preset(self)
    }

    pub fn name(self) -> &'static str {
        match self {
            Case::I => "i",
            Case::II => "ii",
            Case::III => "iii",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(Case::I),
            "ii" | "2" => Ok(Case::II),
            "iii" | "3" => Ok(Case::III),
            other => Err(Error::InvalidArgument(format!("unknown case '{other}'"))),
        }
    }
}

/// Full parameterization of the combination map. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct CombinedMapSpec {
    base: BaseMap,
    lower: BranchParams,
    upper: BranchParams,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    base: BaseMap,
    lower: BranchParams,
    upper: BranchParams,
}

impl TryFrom<RawSpec> for CombinedMapSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        CombinedMapSpec::new(raw.base, raw.lower, raw.upper)
    }
}

impl From<CombinedMapSpec> for RawSpec {
    fn from(s: CombinedMapSpec) -> Self {
        RawSpec {
            base: s.base,
            lower: s.lower,
            upper: s.upper,
        }
    }
}

impl CombinedMapSpec {
    pub fn new(base: BaseMap, lower: BranchParams, upper: BranchParams) -> Result<Self> {
        if !matches!(base, BaseMap::Logistic | BaseMap::Sine) {
            return Err(Error::InvalidArgument(format!(
                "inner map must be logistic or sine, got {base:?}"
            )));
        }
        if !lower.weights_finite() || !upper.weights_finite() {
            return Err(Error::InvalidArgument(
                "combination weights must be finite".into(),
            ));
        }
        Ok(CombinedMapSpec { base, lower, upper })
    }

    /// The Logistic-Tent system expressed as a combination spec
    /// (`ω = 1`, `f = id`, `α = 0`, `ξ = 1`, `β = 4`).
    pub fn logistic_tent() -> Self {
        let branch = BranchParams {
            f: ElementaryFn::identity(),
            g: ElementaryFn::identity(),
            omega: 1.0,
            alpha: 0.0,
            xi: 1.0,
            beta: 4.0,
        };
        CombinedMapSpec {
            base: BaseMap::Logistic,
            lower: branch,
            upper: branch,
        }
    }

    pub fn base(&self) -> BaseMap {
        self.base
    }

    pub fn lower(&self) -> &BranchParams {
        &self.lower
    }

    pub fn upper(&self) -> &BranchParams {
        &self.upper
    }

    pub fn branch(&self, branch: Branch) -> &BranchParams {
        match branch {
            Branch::Lower => &self.lower,
            Branch::Upper => &self.upper,
        }
    }

    /// Value of the given branch before the final `mod 1`.
    #[inline]
    pub fn unwrapped(&self, r: f64, x: f64, branch: Branch) -> f64 {
        let p = self.branch(branch);
        let inner = self.base.raw(r, x, branch);
        let tent_arg = match branch {
            Branch::Lower => x,
            Branch::Upper => 1.0 - x,
        };
        p.omega * p.f.eval(inner) + p.alpha * p.g.eval(r * x) + p.xi * (p.beta - r) * tent_arg / 2.0
    }

    /// Evaluate `G_r(x)` without range checks.
    #[inline]
    pub(crate) fn step(&self, r: f64, x: f64) -> Result<f64> {
        let u = self.unwrapped(r, x, Branch::of(x));
        if u.is_finite() {
            Ok(frac(u))
        } else {
            Err(Error::Singularity { r, x })
        }
    }
}

/// `G_r(x)` for the given spec.
pub fn combined_map(spec: &CombinedMapSpec, r: f64, x: f64) -> Result<f64> {
    check_r(r)?;
    check_unit("x", x)?;
    spec.step(r, x)
}

/// Resolved parameter sets of the three presets.
pub fn case_preset(which: Case) -> CombinedMapSpec {
    use FnKind::*;
    let u = ElementaryFn::unit;
    let (base, lower, upper) = match which {
        Case::I => (
            BaseMap::Logistic,
            BranchParams {
                f: u(Sine),
                g: u(Cotangent),
                omega: 10.0,
                alpha: 2.0,
                xi: 2.0,
                beta: 4.0,
            },
            BranchParams {
                f: u(Exponential),
                g: ElementaryFn::new(Cosine, PI),
                omega: 20.0,
                alpha: -2.0,
                xi: 4.0,
                beta: -20.0,
            },
        ),
        // α = 0 on both branches, so g is never observed
        Case::II => (
            BaseMap::Logistic,
            BranchParams {
                f: u(Sine),
                g: ElementaryFn::identity(),
                omega: 20.0,
                alpha: 0.0,
                xi: 0.5,
                beta: 80.0,
            },
            BranchParams {
                f: u(Exponential),
                g: ElementaryFn::identity(),
                omega: 20.0,
                alpha: 0.0,
                xi: 1.0,
                beta: 80.0,
            },
        ),
        Case::III => (
            BaseMap::Sine,
            BranchParams {
                f: u(Cosine),
                g: u(Tangent),
                omega: 1.0,
                alpha: 1.0,
                xi: 7.0,
                beta: 40.0,
            },
            BranchParams {
                f: u(Tangent),
                g: ElementaryFn::identity(),
                omega: 1.0,
                alpha: 1.0,
                xi: 15.0,
                beta: 20.0,
            },
        ),
    };
    CombinedMapSpec { base, lower, upper }
}

/// Any map the analysis tools can iterate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChaoticMap {
    Base(BaseMap),
    Combined(CombinedMapSpec),
}

impl ChaoticMap {
    pub fn apply(&self, r: f64, x: f64) -> Result<f64> {
        match self {
            ChaoticMap::Base(b) => b.apply(r, x),
            ChaoticMap::Combined(s) => combined_map(s, r, x),
        }
    }

    pub fn is_piecewise(&self) -> bool {
        match self {
            ChaoticMap::Base(b) => b.is_piecewise(),
            ChaoticMap::Combined(_) => true,
        }
    }

    /// The active branch expression without the final `mod 1`.
    pub fn unwrapped(&self, r: f64, x: f64, branch: Branch) -> f64 {
        match self {
            ChaoticMap::Base(b) => b.raw(r, x, branch),
            ChaoticMap::Combined(s) => s.unwrapped(r, x, branch),
        }
    }
}

impl From<Case> for ChaoticMap {
    fn from(c: Case) -> Self {
        ChaoticMap::Combined(c.spec())
    }
}

impl From<BaseMap> for ChaoticMap {
    fn from(b: BaseMap) -> Self {
        ChaoticMap::Base(b)
    }
}

impl From<CombinedMapSpec> for ChaoticMap {
    fn from(s: CombinedMapSpec) -> Self {
        ChaoticMap::Combined(s)
    }
}

impl FromStr for ChaoticMap {
    type Err = Error;

    /// Accepts a preset name (`i`, `ii`, `iii`) or an elementary map name.
    fn from_str(s: &str) -> Result<Self> {
        s.parse::<Case>()
            .map(ChaoticMap::from)
            .or_else(|_| s.parse::<BaseMap>().map(ChaoticMap::Base))
    }
}

/// An orbit `x₀, x₁ = G(x₀), ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    values: Vec<f64>,
    r: f64,
    x0: f64,
}

impl Orbit {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("orbits have at least one element")
    }
}

/// `Λ(y0, r, n)`: the first `n` orbit values starting from the seed `y0`.
pub fn sequence(spec: &CombinedMapSpec, y0: f64, r: f64, n: usize) -> Result<Orbit> {
    let mut values = vec![0.0; n];
    fill_sequence(spec, y0, r, &mut values)?;
    Ok(Orbit { values, r, x0: y0 })
}

/// Writes `Λ(y0, r, out.len())` into `out`.
pub fn fill_sequence(spec: &CombinedMapSpec, y0: f64, r: f64, out: &mut [f64]) -> Result<()> {
    if out.is_empty() {
        return Err(Error::InvalidArgument("sequence length must be >= 1".into()));
    }
    check_r(r)?;
    check_unit("y0", y0)?;
    let mut x = y0;
    out[0] = x;
    for slot in out.iter_mut().skip(1) {
        x = spec.step(r, x)?;
        *slot = x;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn logistic_examples() {
        assert_eq!(logistic(4.0, 0.5).unwrap(), 1.0);
        assert_eq!(logistic(2.0, 0.5).unwrap(), 0.5);
        assert_abs_diff_eq!(logistic(3.2, 0.3).unwrap(), 0.672, epsilon = 1e-12);
    }

    #[test]
    fn sine_examples() {
        assert_eq!(sine_map(4.0, 0.5).unwrap(), 1.0);
        assert_abs_diff_eq!(sine_map(2.0, 1.0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sine_map(1.0, 0.25).unwrap(), 0.1767766953, epsilon = 1e-10);
    }

    #[test]
    fn tent_examples() {
        assert_eq!(tent(2.0, 0.25).unwrap(), 0.25);
        assert_eq!(tent(2.0, 0.5).unwrap(), 0.5);
        assert_abs_diff_eq!(tent(4.0, 0.9).unwrap(), 0.2, epsilon = 1e-12);
    }

    #[test]
    fn logistic_tent_examples() {
        assert_eq!(logistic_tent(4.0, 0.5).unwrap(), 0.0);
        assert_eq!(logistic_tent(0.5, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(logistic_tent(2.0, 0.25).unwrap(), 0.625, epsilon = 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(logistic(0.0, 0.5), Err(Error::Domain { what: "r", .. })));
        assert!(matches!(logistic(4.5, 0.5), Err(Error::Domain { .. })));
        assert!(matches!(sine_map(1.0, -0.1), Err(Error::Domain { what: "x", .. })));
        assert!(tent(1.0, 1.5).is_err());
        assert!(logistic_tent(f64::NAN, 0.2).is_err());
        assert!(combined_map(&Case::II.spec(), 1.0, 2.0).is_err());
    }

    #[test]
    fn combined_case_ii() {
        let s = Case::II.spec();
        // 20·sin(0.75) + 0.5·76·0.25/2 = 18.382775200466682
        assert_abs_diff_eq!(combined_map(&s, 4.0, 0.25).unwrap(), 0.382775200466682, epsilon = 1e-12);
        assert_eq!(combined_map(&s, 4.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn combined_case_iii_upper_branch() {
        // tan(S(2, 0.5)) + g₂(2·0.5) + 15·18·0.5/2 = 69.0463024898438
        let v = combined_map(&Case::III.spec(), 2.0, 0.5).unwrap();
        assert_abs_diff_eq!(v, 0.04630248984379648, epsilon = 1e-12);
    }

    #[test]
    fn case_i_cot_singularity_is_total() {
        // cot(r·0) is infinite; substituted by 0
        let v = combined_map(&Case::I.spec(), 3.0, 0.0).unwrap();
        assert!((0.0..1.0).contains(&v));
    }

    #[test]
    fn negative_sums_wrap_into_unit_interval() {
        // Case (i) upper branch has β₂ = −20, so the tent term is negative
        let v = combined_map(&Case::I.spec(), 4.0, 0.9).unwrap();
        assert!((0.0..1.0).contains(&v));
        assert_eq!(frac(-0.25), 0.75);
        assert_eq!(frac(-1e-18), 0.0);
    }

    #[test]
    fn branch_boundary() {
        let s = Case::II.spec();
        let below = 0.5f64.next_down();
        let want_lower = frac(s.unwrapped(4.0, below, Branch::Lower));
        assert_eq!(combined_map(&s, 4.0, below).unwrap(), want_lower);
        let want_upper = frac(s.unwrapped(4.0, 0.5, Branch::Upper));
        assert_eq!(combined_map(&s, 4.0, 0.5).unwrap(), want_upper);
        assert_ne!(want_upper, frac(s.unwrapped(4.0, 0.5, Branch::Lower)));
    }

    #[test]
    fn presets_resolve() {
        let i = Case::I.spec();
        assert_eq!(i.lower().omega, 10.0);
        assert_eq!(i.upper().omega, 20.0);
        assert_eq!((i.lower().alpha, i.upper().alpha), (2.0, -2.0));
        assert_eq!((i.lower().xi, i.upper().xi), (2.0, 4.0));
        assert_eq!((i.lower().beta, i.upper().beta), (4.0, -20.0));
        assert_eq!(i.upper().g, ElementaryFn::new(FnKind::Cosine, PI));
        assert_eq!(i.lower().g.kind, FnKind::Cotangent);
        assert_eq!(i.base(), BaseMap::Logistic);

        let ii = Case::II.spec();
        assert_eq!((ii.lower().xi, ii.upper().xi), (0.5, 1.0));
        assert_eq!((ii.lower().beta, ii.upper().beta), (80.0, 80.0));
        assert_eq!((ii.lower().f.kind, ii.upper().f.kind), (FnKind::Sine, FnKind::Exponential));

        let iii = Case::III.spec();
        assert_eq!(iii.upper().beta, 20.0);
        assert_eq!(iii.lower().beta, 40.0);
        assert_eq!((iii.lower().xi, iii.upper().xi), (7.0, 15.0));
        assert_eq!((iii.lower().f.kind, iii.upper().f.kind), (FnKind::Cosine, FnKind::Tangent));
        assert_eq!((iii.lower().g.kind, iii.upper().g.kind), (FnKind::Tangent, FnKind::Linear));
        assert_eq!(iii.base(), BaseMap::Sine);
    }

    #[test]
    fn logistic_tent_as_combined_spec() {
        let s = CombinedMapSpec::logistic_tent();
        for k in 0..1000 {
            let x = k as f64 / 1000.0;
            for r in [0.3, 1.0, 2.5, 4.0] {
                assert_abs_diff_eq!(
                    combined_map(&s, r, x).unwrap(),
                    logistic_tent(r, x).unwrap(),
                    epsilon = 1e-15
                );
            }
        }
    }

    #[test]
    fn sequence_examples() {
        let s = Case::II.spec();
        assert_eq!(sequence(&s, 0.25, 4.0, 1).unwrap().values(), &[0.25]);
        let o = sequence(&s, 0.25, 4.0, 2).unwrap();
        assert_eq!(o.values()[0], 0.25);
        assert_abs_diff_eq!(o.values()[1], 0.3827752, epsilon = 1e-6);
        let a = sequence(&s, 0.123, 3.7, 5000).unwrap();
        let b = sequence(&s, 0.123, 3.7, 5000).unwrap();
        assert!(a.values().iter().zip(b.values()).all(|(x, y)| x.to_bits() == y.to_bits()));
        assert!(sequence(&s, 0.25, 4.0, 0).is_err());
    }

    #[test]
    fn elementary_fns_are_total() {
        assert_eq!(ElementaryFn::unit(FnKind::Cotangent).eval(0.0), 0.0);
        assert_eq!(ElementaryFn::unit(FnKind::Logarithm).eval(0.0), 0.0);
        assert_eq!(ElementaryFn::unit(FnKind::Logarithm).eval(-1.0), 0.0);
        assert_eq!(ElementaryFn::unit(FnKind::Exponential).eval(1e6), 0.0);
        assert_abs_diff_eq!(ElementaryFn::new(FnKind::Linear, 3.0).eval(2.0), 6.0);
    }

    #[test]
    fn inline_spec_json_round_trip() {
        let s = Case::I.spec();
        let text = serde_json::to_string(&s).unwrap();
        let back: CombinedMapSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(s, back);
        let bad = text.replace("\"logistic\"", "\"tent\"");
        assert!(serde_json::from_str::<CombinedMapSpec>(&bad).is_err());
    }

    #[test]
    fn parse_map_names() {
        assert_eq!("ii".parse::<ChaoticMap>().unwrap(), ChaoticMap::from(Case::II));
        assert_eq!("lts".parse::<ChaoticMap>().unwrap(), ChaoticMap::Base(BaseMap::LogisticTent));
        assert!("banana".parse::<ChaoticMap>().is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(4000))]

        #[test]
        fn outputs_stay_in_range(r in 1e-9f64..=4.0, x in 0.0f64..=1.0) {
            for b in [BaseMap::Logistic, BaseMap::Sine, BaseMap::Tent] {
                let v = b.apply(r, x).unwrap();
                prop_assert!((0.0..=1.0).contains(&v), "{b:?}({r},{x}) = {v}");
            }
            let v = logistic_tent(r, x).unwrap();
            prop_assert!((0.0..1.0).contains(&v));
            for c in Case::ALL {
                let v = combined_map(&c.spec(), r, x).unwrap();
                prop_assert!((0.0..1.0).contains(&v), "case {c}: G({r},{x}) = {v}");
            }
        }
    }
}
