use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{ensure, Result};
use chaoscrypt::metrics::{
    correlation_report, entropies, key_sensitivity_test, npcr_uaci, Direction, DEFAULT_CORRELATION_SAMPLES,
};
use clap::{Args, Subcommand};
use serde_json::json;

use crate::common::{channel_label, fmt_opt, parse_unit_nonce, read_image, KeyArgs, ReportArgs};

#[derive(Debug, Subcommand)]
pub enum MetricsCmd {
    /// Adjacent-pixel correlation in four directions
    Correlation(CorrelationArgs),
    /// Shannon entropy per channel
    Entropy(EntropyArgs),
    /// NPCR and UACI between two images of equal geometry
    NpcrUaci(NpcrArgs),
    /// Decrypt with one key parameter perturbed and compare with the plaintext
    KeySensitivity(KeySensitivityArgs),
}

#[derive(Debug, Args)]
pub struct CorrelationArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CORRELATION_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct NpcrArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct KeySensitivityArgs {
    /// Plaintext image
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[command(flatten)]
    pub key: KeyArgs,
    /// Index of the perturbed key parameter, 0..=4
    #[arg(long, default_value_t = 0)]
    pub param: usize,
    #[arg(long, default_value_t = 1e-15)]
    pub delta: f64,
    #[arg(long, value_parser = parse_unit_nonce, default_value_t = 0.25)]
    pub nonce0: f64,
    /// Second nonce (y0_4 for colour, y0_2 for gray)
    #[arg(long, value_parser = parse_unit_nonce, default_value_t = 0.75)]
    pub nonce_aux: f64,
    #[command(flatten)]
    pub report: ReportArgs,
}

pub fn run(cmd: &MetricsCmd) -> Result<()> {
    match cmd {
        MetricsCmd::Correlation(a) => {
            let img = read_image(&a.input)?;
            let rep = correlation_report(&img, a.samples, a.seed)?;
            let mut table = format!("{:<8}", "channel");
            for d in Direction::ALL {
                write!(table, "{:>15}", d.name())?;
            }
            table.push('\n');
            for k in 0..img.channels() {
                write!(table, "{:<8}", channel_label(img.kind(), k))?;
                for d in Direction::ALL {
                    write!(table, "{:>15}", fmt_opt(rep.get(k, d)))?;
                }
                table.push('\n');
            }
            a.report.emit(json!({"image": a.input, "kind": img.kind(), "correlation": rep}), &table)
        }
        MetricsCmd::Entropy(a) => {
            let img = read_image(&a.input)?;
            let h = entropies(&img);
            let mut table = format!("{:<8}{:>10}\n", "channel", "entropy");
            for (k, e) in h.iter().enumerate() {
                writeln!(table, "{:<8}{:>10.4}", channel_label(img.kind(), k), e)?;
            }
            a.report.emit(json!({"image": a.input, "kind": img.kind(), "entropy": h}), &table)
        }
        MetricsCmd::NpcrUaci(a) => {
            let (x, y) = (read_image(&a.a)?, read_image(&a.b)?);
            ensure!(x.channels() == y.channels(), "images differ in channel count");
            let d = npcr_uaci(&x, &y)?;
            let mut table = format!("{:<8}{:>10}{:>10}\n", "channel", "NPCR %", "UACI %");
            for k in 0..d.npcr.len() {
                writeln!(table, "{:<8}{:>10.4}{:>10.4}", channel_label(x.kind(), k), d.npcr[k], d.uaci[k])?;
            }
            a.report.emit(json!({"a": a.a, "b": a.b, "npcr": d.npcr, "uaci": d.uaci}), &table)
        }
        MetricsCmd::KeySensitivity(a) => {
            let key = a.key.load()?;
            let plain = read_image(&a.input)?;
            let rep = key_sensitivity_test(&plain, &key, a.param, a.delta, (a.nonce0, a.nonce_aux))?;
            let mut table = format!("r{} perturbed by {:e}\n", rep.parameter, rep.perturbation);
            writeln!(table, "{:<8}{:>14}{:>10}", "channel", "correlation", "NPCR %")?;
            for k in 0..rep.npcr.len() {
                writeln!(
                    table,
                    "{:<8}{:>14}{:>10.4}",
                    channel_label(plain.kind(), k),
                    fmt_opt(rep.correlation[k]),
                    rep.npcr[k]
                )?;
            }
            writeln!(table, "exact reconstruction: {}", rep.exact)?;
            a.report.emit(json!({"image": a.input, "key_sensitivity": rep}), &table)
        }
    }
}
