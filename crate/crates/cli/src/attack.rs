use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{Context, Result};
use chaoscrypt::metrics::{chosen_plaintext_demo, crop_attack, image_correlation, noise_attack, pixel_agreement, Rect};
use chaoscrypt::{decrypt, CipherMeta};
use clap::{Args, Subcommand};
use serde_json::json;

use crate::common::{
    channel_label, fmt_opt, read_image, read_meta, rng_for, sidecar_for, write_image, write_text, KeyArgs, ReportArgs,
};

#[derive(Debug, Subcommand)]
pub enum AttackCmd {
    /// Zero a rectangle of the ciphertext and decrypt
    Crop(CropArgs),
    /// Add Gaussian noise to the ciphertext and decrypt
    Noise(NoiseArgs),
    /// Encrypt one plaintext twice with fresh nonces
    ChosenPlaintext(ChosenArgs),
}

#[derive(Debug, Args)]
pub struct CipherInput {
    /// Ciphertext PNG
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    /// Metadata sidecar [default: <in stem>.meta.json]
    #[arg(long)]
    pub meta: Option<PathBuf>,
    #[command(flatten)]
    pub key: KeyArgs,
    /// Decrypted image of the attacked ciphertext
    #[arg(long)]
    pub out: PathBuf,
    /// Also save the attacked ciphertext
    #[arg(long)]
    pub attacked: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}

impl CipherInput {
    fn load(&self) -> Result<(chaoscrypt::ImageBuffer, CipherMeta, chaoscrypt::SecretKey)> {
        let cipher = read_image(&self.input)?;
        let meta = read_meta(&self.meta.clone().unwrap_or_else(|| sidecar_for(&self.input)))?;
        Ok((cipher, meta, self.key.load()?))
    }
}

fn parse_rect(s: &str) -> std::result::Result<Rect, String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match v.as_slice() {
        &[row, col, h, w] => Ok(Rect::new(row, col, h, w)),
        _ => Err(format!("expected row,col,height,width, got {s:?}")),
    }
}

#[derive(Debug, Args)]
pub struct CropArgs {
    #[command(flatten)]
    pub io: CipherInput,
    /// Zeroed block as row,col,height,width (0-based corner)
    #[arg(long, value_parser = parse_rect, default_value = "80,80,200,200")]
    pub rect: Rect,
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    #[command(flatten)]
    pub io: CipherInput,
    /// Variance in normalized intensity units
    #[arg(long, default_value_t = 0.1)]
    pub var: f64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ChosenArgs {
    /// Plaintext image
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[command(flatten)]
    pub key: KeyArgs,
    /// Directory for c1.png, c2.png, diff.png and their sidecars
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Seed for the nonce draws [default: random]
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub report: ReportArgs,
}

pub fn run(cmd: &AttackCmd) -> Result<()> {
    match cmd {
        AttackCmd::Crop(a) => {
            let (cipher, meta, key) = a.io.load()?;
            let reference = decrypt(&cipher, &meta, &key)?;
            let attacked = crop_attack(&cipher, a.rect)?;
            let recovered = decrypt(&attacked, &meta, &key)?;
            let fraction = pixel_agreement(&recovered, &reference)?;
            if let Some(p) = &a.io.attacked {
                write_image(p, &attacked)?;
            }
            write_image(&a.io.out, &recovered)?;
            let mut table = format!("{:<8}{:>18}\n", "channel", "correct pixels");
            for (k, f) in fraction.iter().enumerate() {
                writeln!(table, "{:<8}{:>17.4}%", channel_label(reference.kind(), k), f * 100.0)?;
            }
            let report = json!({
                "attack": "crop",
                "rect": {"row": a.rect.row, "col": a.rect.col, "height": a.rect.height, "width": a.rect.width},
                "correct_fraction": fraction,
                "output": a.io.out,
            });
            a.io.report.emit(report, &table)
        }
        AttackCmd::Noise(a) => {
            let (cipher, meta, key) = a.io.load()?;
            let (_, seed) = rng_for(a.seed);
            let reference = decrypt(&cipher, &meta, &key)?;
            let attacked = noise_attack(&cipher, a.var, seed)?;
            let recovered = decrypt(&attacked, &meta, &key)?;
            let corr = image_correlation(&recovered, &reference)?;
            let fraction = pixel_agreement(&recovered, &reference)?;
            if let Some(p) = &a.io.attacked {
                write_image(p, &attacked)?;
            }
            write_image(&a.io.out, &recovered)?;
            let mut table = format!("noise variance {} (seed {seed})\n", a.var);
            writeln!(table, "{:<8}{:>14}{:>18}", "channel", "correlation", "correct pixels")?;
            for k in 0..corr.len() {
                writeln!(
                    table,
                    "{:<8}{:>14}{:>17.4}%",
                    channel_label(reference.kind(), k),
                    fmt_opt(corr[k]),
                    fraction[k] * 100.0
                )?;
            }
            let report = json!({
                "attack": "noise",
                "variance": a.var,
                "seed": seed,
                "correlation": corr,
                "correct_fraction": fraction,
                "output": a.io.out,
            });
            a.io.report.emit(report, &table)
        }
        AttackCmd::ChosenPlaintext(a) => {
            let key = a.key.load()?;
            let plain = read_image(&a.input)?;
            let (mut rng, seed) = rng_for(a.seed);
            let out = chosen_plaintext_demo(&plain, &key, &mut rng)?;
            std::fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
            for (name, (img, meta)) in [("c1", &out.first), ("c2", &out.second)] {
                write_image(&a.out_dir.join(format!("{name}.png")), img)?;
                write_text(&a.out_dir.join(format!("{name}.meta.json")), &meta.to_json())?;
            }
            write_image(&a.out_dir.join("diff.png"), &out.difference)?;
            let mut table = format!("seed {seed}\n{:<8}{:>10}{:>10}{:>14}\n", "channel", "NPCR %", "UACI %", "diff chi2");
            for k in 0..out.report.npcr.len() {
                writeln!(
                    table,
                    "{:<8}{:>10.4}{:>10.4}{:>14.2}",
                    channel_label(plain.kind(), k),
                    out.report.npcr[k],
                    out.report.uaci[k],
                    out.difference_chi_square[k]
                )?;
            }
            let report = json!({
                "attack": "chosen-plaintext",
                "seed": seed,
                "nonces": [[out.first.1.nonce0, out.first.1.nonce_aux], [out.second.1.nonce0, out.second.1.nonce_aux]],
                "npcr": out.report.npcr,
                "uaci": out.report.uaci,
                "difference_chi_square": out.difference_chi_square,
            });
            write_text(&a.out_dir.join("report.json"), &(serde_json::to_string_pretty(&report)? + "\n"))?;
            a.report.emit(report, &table)
        }
    }
}
