//! Numerical diagnostics for one-dimensional maps: Lyapunov exponents,
//! bifurcation data, output histograms, cobweb traces and divergence of
//! nearby orbits.
//!
//! Every function returns plain data; CSV rendering lives in the CLI.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::chaos::{Branch, ChaoticMap};
use crate::error::{check_r, check_unit, Error, Result};

pub const DEFAULT_X0: f64 = 0.1;
pub const DEFAULT_BURN_IN: usize = 1000;
pub const DEFAULT_ITERATIONS: usize = 5000;
pub const DEFAULT_GRID_POINTS: usize = 400;
pub const DEFAULT_DEPTH: usize = 100;
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

/// Step of the central difference used for `G'`.
pub const DERIVATIVE_STEP: f64 = 1e-7;
const LOG_FLOOR: f64 = 1e-300;

/// Upper 1% point of the chi-square distribution with 255 degrees of freedom.
pub const CHI2_255_CRIT_01: f64 = 310.4574;
/// Upper 5% point of the chi-square distribution with 255 degrees of freedom.
pub const CHI2_255_CRIT_05: f64 = 293.2478;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Chaotic,
    Periodic,
    Bifurcation,
}

impl Classification {
    pub fn from_exponent(value: f64, tol: f64) -> Self {
        if value > tol {
            Classification::Chaotic
        } else if value < -tol {
            Classification::Periodic
        } else {
            Classification::Bifurcation
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Chaotic => "chaotic",
            Classification::Periodic => "periodic",
            Classification::Bifurcation => "bifurcation",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    pub r: f64,
    pub x0: f64,
    pub n: usize,
    pub value: f64,
    pub classification: Classification,
    /// The orbit settled on an exact fixed point with zero slope; `value` is −∞.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovSettings {
    pub burn_in: usize,
    pub n: usize,
    pub tol: f64,
}

impl Default for LyapunovSettings {
    fn default() -> Self {
        LyapunovSettings {
            burn_in: DEFAULT_BURN_IN,
            n: DEFAULT_ITERATIONS,
            tol: DEFAULT_TOLERANCE,
        }
    }
}

impl LyapunovSettings {
    pub fn new(burn_in: usize, n: usize) -> Self {
        LyapunovSettings {
            burn_in,
            n,
            ..Default::default()
        }
    }
}

/// Slope of the active branch at `x`, by central difference on the branch
/// expression before the `mod 1`. `None` near the branch boundary of a
/// piecewise map.
fn branch_slope(map: &ChaoticMap, r: f64, x: f64) -> Option<f64> {
    let h = DERIVATIVE_STEP;
    if map.is_piecewise() && (x - 0.5).abs() < 2.0 * h {
        return None;
    }
    let branch = Branch::of(x);
    let d = (map.unwrapped(r, x + h, branch) - map.unwrapped(r, x - h, branch)) / (2.0 * h);
    d.is_finite().then_some(d)
}

/// Average of `ln|G'_r(x_i)|` over `n` post-transient orbit points.
pub fn lyapunov(map: &ChaoticMap, r: f64, x0: f64, settings: &LyapunovSettings) -> Result<LyapunovEstimate> {
    if settings.n < 1000 {
        return Err(Error::InvalidArgument(format!(
            "Lyapunov estimate needs n >= 1000, got {}",
            settings.n
        )));
    }
    check_r(r)?;
    if !(0.0..1.0).contains(&x0) {
        return Err(Error::Domain {
            what: "x0",
            value: x0,
            range: "[0, 1)",
        });
    }

    let mut x = x0;
    for _ in 0..settings.burn_in {
        x = map.apply(r, x)?;
    }

    let mut sum = 0.0;
    let mut used = 0usize;
    let mut fixed = true;
    let mut flat = false;
    for _ in 0..settings.n {
        if let Some(d) = branch_slope(map, r, x) {
            let mag = d.abs();
            if mag < LOG_FLOOR {
                flat = true;
            }
            sum += mag.max(LOG_FLOOR).ln();
            used += 1;
        }
        let next = map.apply(r, x)?;
        if next.to_bits() != x.to_bits() {
            fixed = false;
        }
        x = next;
    }
    if used == 0 {
        return Err(Error::NoUsableSamples);
    }

    let degenerate = fixed && flat;
    let value = if degenerate {
        f64::NEG_INFINITY
    } else {
        sum / used as f64
    };
    Ok(LyapunovEstimate {
        r,
        x0,
        n: settings.n,
        value,
        classification: Classification::from_exponent(value, settings.tol),
        degenerate,
    })
}

fn check_grid(r_grid: &[f64]) -> Result<()> {
    if r_grid.is_empty() {
        return Err(Error::InvalidArgument("r grid is empty".into()));
    }
    if r_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("r grid must be strictly increasing".into()));
    }
    Ok(())
}

/// `steps` evenly spaced values from `lo` to `hi`, both ends included.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|k| {
                if k == steps - 1 {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

/// One estimate per grid point, in grid order.
pub fn lyapunov_sweep(
    map: &ChaoticMap,
    r_grid: &[f64],
    x0: f64,
    settings: &LyapunovSettings,
) -> Result<Vec<LyapunovEstimate>> {
    check_grid(r_grid)?;
    r_grid.par_iter().map(|&r| lyapunov(map, r, x0, settings)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcationSample {
    pub r: f64,
    pub attractor_points: Vec<f64>,
}

fn iterate(map: &ChaoticMap, r: f64, x0: f64, skip: usize, take: usize) -> Result<Vec<f64>> {
    let mut x = x0;
    for _ in 0..skip {
        x = map.apply(r, x)?;
    }
    let mut out = Vec::with_capacity(take);
    for _ in 0..take {
        out.push(x);
        x = map.apply(r, x)?;
    }
    Ok(out)
}

/// `depth` post-transient orbit values for each `r` in the grid.
pub fn bifurcation(
    map: &ChaoticMap,
    r_grid: &[f64],
    x0: f64,
    burn_in: usize,
    depth: usize,
) -> Result<Vec<BifurcationSample>> {
    if depth == 0 {
        return Err(Error::InvalidArgument("bifurcation depth must be >= 1".into()));
    }
    check_grid(r_grid)?;
    check_unit("x0", x0)?;
    r_grid
        .par_iter()
        .map(|&r| {
            Ok(BifurcationSample {
                r,
                attractor_points: iterate(map, r, x0, burn_in, depth)?,
            })
        })
        .collect()
}

/// Counts of `n` post-transient orbit values in `bins` uniform bins over `[0, 1)`.
pub fn histogram(map: &ChaoticMap, r: f64, x0: f64, burn_in: usize, n: usize, bins: usize) -> Result<Vec<u64>> {
    if bins < 2 {
        return Err(Error::InvalidArgument("histogram needs at least 2 bins".into()));
    }
    if n < bins * 100 {
        return Err(Error::InvalidArgument(format!(
            "histogram needs n >= 100·bins = {}, got {n}",
            bins * 100
        )));
    }
    check_unit("x0", x0)?;
    let mut counts = vec![0u64; bins];
    let mut x = x0;
    for _ in 0..burn_in {
        x = map.apply(r, x)?;
    }
    for _ in 0..n {
        // elementary maps can reach 1.0 exactly; it lands in the top bin
        let k = ((x * bins as f64) as usize).min(bins - 1);
        counts[k] += 1;
        x = map.apply(r, x)?;
    }
    Ok(counts)
}

/// Pearson chi-square statistic of `counts` against equal expected counts.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub from: (f64, f64),
    pub to: (f64, f64),
}

/// Cobweb trace: from `(x, x)` up to `(x, G(x))`, then across to `(G(x), G(x))`.
pub fn cobweb(map: &ChaoticMap, r: f64, x0: f64, steps: usize) -> Result<Vec<Segment>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("cobweb needs at least one step".into()));
    }
    check_unit("x0", x0)?;
    let mut out = Vec::with_capacity(2 * steps);
    let mut x = x0;
    for _ in 0..steps {
        let y = map.apply(r, x)?;
        out.push(Segment { from: (x, x), to: (x, y) });
        out.push(Segment { from: (x, y), to: (y, y) });
        x = y;
    }
    Ok(out)
}

/// `|x_k − x'_k|` for orbits seeded at `x0` and `x0 + delta`, `k = 0..n`.
pub fn orbit_divergence(map: &ChaoticMap, r: f64, x0: f64, delta: f64, n: usize) -> Result<Vec<(usize, f64)>> {
    if delta < 0.0 || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!("delta must be >= 0, got {delta}")));
    }
    check_unit("x0", x0)?;
    check_unit("x0 + delta", x0 + delta)?;
    let a = iterate(map, r, x0, 0, n)?;
    let b = iterate(map, r, x0 + delta, 0, n)?;
    Ok(a.iter()
        .zip(&b)
        .enumerate()
        .map(|(k, (p, q))| (k, (p - q).abs()))
        .collect())
}
