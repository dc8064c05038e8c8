use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use chaoscrypt::formats::{load_image, save_png};
use chaoscrypt::{Case, ChaoticMap, CipherMeta, CombinedMapSpec, ImageBuffer, SecretKey};
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Args)]
pub struct KeyArgs {
    /// Key file: {"case": "i"|"ii"|"iii"|{..spec..}, "r": [r0, r1, r2, r3, r4]}
    #[arg(long, env = "CHAOSCRYPT_KEY")]
    pub key: PathBuf,
    /// Replace the key's map with a preset
    #[arg(long, value_name = "i|ii|iii")]
    pub case: Option<Case>,
}

impl KeyArgs {
    pub fn load(&self) -> Result<SecretKey> {
        let text = fs::read_to_string(&self.key).with_context(|| format!("reading key {}", self.key.display()))?;
        let key = SecretKey::from_json(&text).with_context(|| format!("parsing key {}", self.key.display()))?;
        Ok(match self.case {
            Some(case) => key.with_map(case),
            None => key,
        })
    }
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Preset (i, ii, iii) or elementary map (logistic, sine, tent, lts)
    #[arg(long, default_value = "ii", conflicts_with = "spec")]
    pub case: ChaoticMap,
    /// JSON file with a custom combined-map specification
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

impl MapArgs {
    pub fn map(&self) -> Result<ChaoticMap> {
        match &self.spec {
            None => Ok(self.case),
            Some(p) => {
                let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                let spec: CombinedMapSpec =
                    serde_json::from_str(&text).with_context(|| format!("parsing map spec {}", p.display()))?;
                Ok(spec.into())
            }
        }
    }
}

/// `lo:hi:steps` or a single value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl std::str::FromStr for RRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
        let range = match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                RRange { lo: v, hi: v, steps: 1 }
            }
            [lo, hi, steps] => RRange {
                lo: num(lo)?,
                hi: num(hi)?,
                steps: steps.trim().parse().map_err(|e| format!("bad step count {steps:?}: {e}"))?,
            },
            _ => return Err(format!("expected lo:hi:steps or a single value, got {s:?}")),
        };
        if !(range.lo > 0.0 && range.hi <= 4.0) {
            return Err(format!("r must lie in (0, 4], got {s:?}"));
        }
        if range.steps == 0 || (range.steps > 1 && range.hi <= range.lo) {
            return Err(format!("need lo < hi and steps >= 1, got {s:?}"));
        }
        if range.steps == 1 && range.lo != range.hi {
            return Err(format!("a one-point range needs lo == hi, got {s:?}"));
        }
        Ok(range)
    }
}

impl RRange {
    pub fn grid(&self) -> Vec<f64> {
        chaoscrypt::analysis::linspace(self.lo, self.hi, self.steps)
    }
}

pub fn parse_unit_nonce(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("nonce must lie in [0, 1), got {v}"))
    }
}

/// Seeded generator, or a fresh seed from the thread generator.
pub fn rng_for(seed: Option<u64>) -> (ChaCha8Rng, u64) {
    let seed = seed.unwrap_or_else(|| rand::rng().random());
    (ChaCha8Rng::seed_from_u64(seed), seed)
}

pub fn read_image(path: &Path) -> Result<ImageBuffer> {
    load_image(path).with_context(|| format!("loading {}", path.display()))
}

/// Writes a PNG and reads it back to confirm the stored pixels.
pub fn write_image(path: &Path, img: &ImageBuffer) -> Result<()> {
    save_png(path, img).with_context(|| format!("writing {}", path.display()))?;
    let back = load_image(path).with_context(|| format!("re-reading {}", path.display()))?;
    ensure!(
        back.as_slice() == img.as_slice() && back.rows() == img.rows() && back.cols() == img.cols(),
        "{} did not read back identically",
        path.display()
    );
    Ok(())
}

/// `enc.png` → `enc.meta.json`.
pub fn sidecar_for(image: &Path) -> PathBuf {
    let stem = image.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    image.with_file_name(format!("{stem}.meta.json"))
}

pub fn read_meta(path: &Path) -> Result<CipherMeta> {
    let text = fs::read_to_string(path).with_context(|| format!("reading metadata {}", path.display()))?;
    CipherMeta::from_json(&text).with_context(|| format!("parsing metadata {}", path.display()))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes to `path`, or stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_text(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// What to print on stdout
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Also write the JSON report here
    #[arg(long)]
    pub json: Option<PathBuf>,
}

impl ReportArgs {
    pub fn emit(&self, mut report: Value, table: &str) -> Result<()> {
        let Some(obj) = report.as_object_mut() else {
            bail!("report must be a JSON object");
        };
        obj.insert("schema_version".into(), SCHEMA_VERSION.into());
        let json = serde_json::to_string_pretty(&report)? + "\n";
        if let Some(p) = &self.json {
            write_text(p, &json)?;
        }
        match self.format {
            Format::Table => emit(None, table),
            Format::Json => emit(None, &json),
        }
    }
}

pub fn channel_label(kind: chaoscrypt::ImageKind, k: usize) -> String {
    match kind {
        chaoscrypt::ImageKind::Color => ["R", "G", "B"][k].to_string(),
        _ => "gray".to_string(),
    }
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |c| format!("{c:+.4}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_range_parsing() {
        assert_eq!("0.01:4:400".parse::<RRange>().unwrap().grid().len(), 400);
        assert_eq!("3.5".parse::<RRange>().unwrap().grid(), vec![3.5]);
        assert!("0:4:10".parse::<RRange>().is_err());
        assert!("1:4.5:10".parse::<RRange>().is_err());
        assert!("3:2:10".parse::<RRange>().is_err());
        assert!("1:2".parse::<RRange>().is_err());
        assert!("1:2:0".parse::<RRange>().is_err());
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_for(Path::new("out/enc.png")), PathBuf::from("out/enc.meta.json"));
    }

    #[test]
    fn nonce_range() {
        assert!(parse_unit_nonce("0.5").is_ok());
        assert!(parse_unit_nonce("1").is_err());
        assert!(parse_unit_nonce("-0.1").is_err());
    }
}
