use serde::{Deserialize, Serialize};

use crate::chaos::frac;
use crate::error::{Error, Result};
use crate::image::{ImageBuffer, ImageKind};

/// Public per-ciphertext data the receiver needs besides the key: the
/// plaintext channel sums, the two random seeds, and the geometry.
///
/// `nonce_aux` is `y⁰₄` for colour images and `y⁰₂` for gray/binary images.
#[derive(Debug, Clone, PartialEq)]
pub struct CipherMeta {
    pub sums: Vec<u64>,
    pub nonce0: f64,
    pub nonce_aux: f64,
    pub rows: usize,
    pub cols: usize,
    pub kind: ImageKind,
}

pub const META_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct MetaFile {
    y: Vec<u64>,
    nonce0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nonce4: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nonce2: Option<f64>,
    m: usize,
    n: usize,
    kind: ImageKind,
    version: u32,
}

/// Exact per-channel sums `y_k` and normalized seeds `y⁰_k = y_k / (m·n·255)`.
pub fn channel_sums(img: &ImageBuffer) -> (Vec<u64>, Vec<f64>) {
    let ch = img.channels();
    let mut sums = vec![0u64; ch];
    for px in img.as_slice().chunks_exact(ch) {
        for (s, &v) in sums.iter_mut().zip(px) {
            *s += v as u64;
        }
    }
    let denom = (img.pixel_count() as u64 * 255) as f64;
    let seeds = sums.iter().map(|&s| s as f64 / denom).collect();
    (sums, seeds)
}

impl CipherMeta {
    pub fn validate(&self) -> Result<()> {
        if self.rows < 2 || self.cols < 2 {
            return Err(Error::MalformedMeta(format!("dimensions {}x{}", self.rows, self.cols)));
        }
        if self.sums.len() != self.kind.channels() {
            return Err(Error::MalformedMeta(format!(
                "{} channel sums for a {} image",
                self.sums.len(),
                self.kind
            )));
        }
        let max = (self.rows * self.cols) as u64 * 255;
        if let Some(s) = self.sums.iter().find(|&&s| s > max) {
            return Err(Error::MalformedMeta(format!("channel sum {s} exceeds {max}")));
        }
        for (name, v) in [("nonce0", self.nonce0), ("nonce_aux", self.nonce_aux)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::MalformedMeta(format!("{name} = {v} is outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn is_color(&self) -> bool {
        self.kind == ImageKind::Color
    }

    fn normalized(&self, k: usize) -> f64 {
        self.sums[k] as f64 / ((self.rows * self.cols) as u64 * 255) as f64
    }

    /// Seeds `y⁰₀..y⁰₄` of the five orbits.
    ///
    /// Gray/binary images only provide `y⁰₀`, `y⁰₁` and `y⁰₂`; the other two
    /// quadrants use `y⁰₃ = frac(y⁰₁ + y⁰₂)` and `y⁰₄ = frac(y⁰₀ + y⁰₁)`.
    pub fn seeds(&self) -> [f64; 5] {
        if self.is_color() {
            [self.nonce0, self.normalized(0), self.normalized(1), self.normalized(2), self.nonce_aux]
        } else {
            let y1 = self.normalized(0);
            [self.nonce0, y1, self.nonce_aux, frac(y1 + self.nonce_aux), frac(self.nonce0 + y1)]
        }
    }

    /// `y_k` as a signed shift amount; `k` is 1-based.
    pub(crate) fn y(&self, k: usize) -> i64 {
        self.sums[k - 1] as i64
    }

    pub fn to_json(&self) -> String {
        let (nonce4, nonce2) = if self.is_color() {
            (Some(self.nonce_aux), None)
        } else {
            (None, Some(self.nonce_aux))
        };
        let file = MetaFile {
            y: self.sums.clone(),
            nonce0: self.nonce0,
            nonce4,
            nonce2,
            m: self.rows,
            n: self.cols,
            kind: self.kind,
            version: META_VERSION,
        };
        serde_json::to_string_pretty(&file).expect("metadata always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: MetaFile = serde_json::from_str(text).map_err(|e| Error::Format(format!("metadata: {e}")))?;
        if f.version != META_VERSION {
            return Err(Error::MalformedMeta(format!("unsupported version {}", f.version)));
        }
        let nonce_aux = match (f.kind, f.nonce4, f.nonce2) {
            (ImageKind::Color, Some(v), None) => v,
            (ImageKind::Gray | ImageKind::Binary, None, Some(v)) => v,
            (kind, _, _) => {
                return Err(Error::MalformedMeta(format!(
                    "{kind} metadata needs exactly one of {}",
                    if kind == ImageKind::Color { "nonce4" } else { "nonce2" }
                )))
            }
        };
        let meta = CipherMeta {
            sums: f.y,
            nonce0: f.nonce0,
            nonce_aux,
            rows: f.m,
            cols: f.n,
            kind: f.kind,
        };
        meta.validate()?;
        Ok(meta)
    }
}
