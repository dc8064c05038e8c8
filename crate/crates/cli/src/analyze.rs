use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{ensure, Result};
use chaoscrypt::analysis::{
    bifurcation, chi_square_uniform, cobweb, histogram, lyapunov_sweep, orbit_divergence, LyapunovSettings,
    DEFAULT_BURN_IN, DEFAULT_DEPTH, DEFAULT_ITERATIONS, DEFAULT_TOLERANCE, DEFAULT_X0,
};
use clap::{Args, Subcommand};

use crate::common::{emit, MapArgs, RRange};

#[derive(Debug, Subcommand)]
pub enum AnalyzeCmd {
    /// Lyapunov exponent sweep: `r,le,classification`
    Lyapunov(LyapunovArgs),
    /// Post-transient attractor points: `r,point`
    Bifurcation(BifurcationArgs),
    /// Orbit histogram at one r: `bin,count`
    Histogram(HistogramArgs),
    /// Cobweb segments: `x0,y0,x1,y1`
    Cobweb(CobwebArgs),
    /// Divergence of two nearby orbits: `step,diff`
    Orbit(OrbitArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    #[command(flatten)]
    pub map: MapArgs,
    /// CSV destination [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    #[command(flatten)]
    pub common: Common,
    /// r grid as lo:hi:steps
    #[arg(long, default_value = "0.01:4:400")]
    pub r: RRange,
    #[arg(long, default_value_t = DEFAULT_X0)]
    pub x0: f64,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    pub burn_in: usize,
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    pub n: usize,
    /// Half-width of the band classified as a bifurcation point
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct BifurcationArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "0.01:4:400")]
    pub r: RRange,
    #[arg(long, default_value_t = DEFAULT_X0)]
    pub x0: f64,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    pub burn_in: usize,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct HistogramArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 4.0)]
    pub r: f64,
    #[arg(long, default_value_t = DEFAULT_X0)]
    pub x0: f64,
    #[arg(long, default_value_t = DEFAULT_BURN_IN)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub n: usize,
    #[arg(long, default_value_t = 256)]
    pub bins: usize,
}

#[derive(Debug, Args)]
pub struct CobwebArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 4.0)]
    pub r: f64,
    #[arg(long, default_value_t = DEFAULT_X0)]
    pub x0: f64,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 4.0)]
    pub r: f64,
    #[arg(long, default_value_t = 0.5)]
    pub x0: f64,
    /// Offset of the second seed
    #[arg(long, default_value_t = 1e-15)]
    pub dx: f64,
    #[arg(long, default_value_t = 200)]
    pub n: usize,
}

pub fn run(cmd: &AnalyzeCmd) -> Result<()> {
    let (common, csv) = match cmd {
        AnalyzeCmd::Lyapunov(a) => {
            ensure!(a.tol >= 0.0, "--tol must be non-negative");
            let settings = LyapunovSettings { burn_in: a.burn_in, n: a.n, tol: a.tol };
            let rows = lyapunov_sweep(&a.common.map.map()?, &a.r.grid(), a.x0, &settings)?;
            let mut csv = String::from("r,le,classification\n");
            for e in rows {
                writeln!(csv, "{},{},{}", e.r, e.value, e.classification)?;
            }
            (&a.common, csv)
        }
        AnalyzeCmd::Bifurcation(a) => {
            let rows = bifurcation(&a.common.map.map()?, &a.r.grid(), a.x0, a.burn_in, a.depth)?;
            let mut csv = String::from("r,point\n");
            for s in rows {
                for p in s.attractor_points {
                    writeln!(csv, "{},{}", s.r, p)?;
                }
            }
            (&a.common, csv)
        }
        AnalyzeCmd::Histogram(a) => {
            let counts = histogram(&a.common.map.map()?, a.r, a.x0, a.burn_in, a.n, a.bins)?;
            eprintln!("chi-square vs uniform ({} dof): {:.3}", a.bins - 1, chi_square_uniform(&counts));
            let mut csv = String::from("bin,count\n");
            for (k, c) in counts.iter().enumerate() {
                writeln!(csv, "{k},{c}")?;
            }
            (&a.common, csv)
        }
        AnalyzeCmd::Cobweb(a) => {
            let segs = cobweb(&a.common.map.map()?, a.r, a.x0, a.steps)?;
            let mut csv = String::from("x0,y0,x1,y1\n");
            for s in segs {
                writeln!(csv, "{},{},{},{}", s.from.0, s.from.1, s.to.0, s.to.1)?;
            }
            (&a.common, csv)
        }
        AnalyzeCmd::Orbit(a) => {
            let d = orbit_divergence(&a.common.map.map()?, a.r, a.x0, a.dx, a.n)?;
            let mut csv = String::from("step,diff\n");
            for (k, v) in d {
                writeln!(csv, "{k},{v}")?;
            }
            (&a.common, csv)
        }
    };
    emit(common.out.as_deref(), &csv)
}
