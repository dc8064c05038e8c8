//! Statistical and differential security measurements and the attack
//! experiments built on them.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::analysis::chi_square_uniform;
use crate::cipher::{decrypt, encrypt_image, CipherMeta, SecretKey};
use crate::error::{Error, Result};
use crate::image::{ImageBuffer, ImageKind, Matrix};

/// Number of adjacent pairs drawn per channel and direction.
pub const DEFAULT_CORRELATION_SAMPLES: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Horizontal,
    Vertical,
    /// Lower left to top right.
    DiagonalUp,
    /// Lower right to top left.
    DiagonalDown,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Horizontal,
        Direction::Vertical,
        Direction::DiagonalUp,
        Direction::DiagonalDown,
    ];

    /// Neighbour offset `(di, dj)`.
    fn offset(self) -> (isize, isize) {
        match self {
            Direction::Horizontal => (0, 1),
            Direction::Vertical => (1, 0),
            Direction::DiagonalUp => (-1, 1),
            Direction::DiagonalDown => (-1, -1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
            Direction::DiagonalUp => "diagonal-up",
            Direction::DiagonalDown => "diagonal-down",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `E[(x − μx)(y − μy)] / (σx σy)`; `None` when either series is constant.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len(), "paired series");
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Draws `samples` random pixels that have a neighbour in `dir` and returns
/// the (pixel, neighbour) value series.
pub fn adjacent_pairs(plane: &Matrix, dir: Direction, samples: usize, rng: &mut impl Rng) -> Result<(Vec<f64>, Vec<f64>)> {
    let (rows, cols) = plane.dims();
    let (di, dj) = dir.offset();
    let (i_lo, i_hi) = if di < 0 { (1, rows) } else { (0, rows - di as usize) };
    let (j_lo, j_hi) = match dj {
        d if d < 0 => (1, cols),
        d => (0, cols.saturating_sub(d as usize)),
    };
    if i_lo >= i_hi || j_lo >= j_hi {
        return Err(Error::InvalidArgument(format!(
            "{rows}x{cols} image has no {dir} neighbours"
        )));
    }
    let mut xs = Vec::with_capacity(samples);
    let mut ys = Vec::with_capacity(samples);
    for _ in 0..samples {
        let i = rng.random_range(i_lo..i_hi);
        let j = rng.random_range(j_lo..j_hi);
        let (ni, nj) = ((i as isize + di) as usize, (j as isize + dj) as usize);
        xs.push(plane.get(i, j) as f64);
        ys.push(plane.get(ni, nj) as f64);
    }
    Ok((xs, ys))
}

/// Adjacent-pixel correlation per channel for one direction.
pub fn correlation(img: &ImageBuffer, dir: Direction, samples: usize, seed: u64) -> Result<Vec<Option<f64>>> {
    if samples < 2 {
        return Err(Error::InvalidArgument("correlation needs at least 2 samples".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    img.planes()
        .iter()
        .map(|p| adjacent_pairs(p, dir, samples, &mut rng).map(|(x, y)| pearson(&x, &y)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationEntry {
    pub channel: usize,
    pub direction: Direction,
    /// `None` if a sampled series was constant.
    pub coefficient: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub samples: usize,
    pub seed: u64,
    pub entries: Vec<CorrelationEntry>,
}

impl CorrelationReport {
    pub fn get(&self, channel: usize, direction: Direction) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.channel == channel && e.direction == direction)
            .and_then(|e| e.coefficient)
    }

    /// Largest `|c|` over all entries; `None` if any entry is degenerate.
    pub fn max_abs(&self) -> Option<f64> {
        self.entries
            .iter()
            .map(|e| e.coefficient.map(f64::abs))
            .try_fold(0.0f64, |acc, c| c.map(|c| acc.max(c)))
    }
}

/// All four directions for every channel; direction `d` uses seed `seed + d`.
pub fn correlation_report(img: &ImageBuffer, samples: usize, seed: u64) -> Result<CorrelationReport> {
    let mut entries = Vec::new();
    for (d, dir) in Direction::ALL.into_iter().enumerate() {
        for (channel, coefficient) in correlation(img, dir, samples, seed.wrapping_add(d as u64))?
            .into_iter()
            .enumerate()
        {
            entries.push(CorrelationEntry {
                channel,
                direction: dir,
                coefficient,
            });
        }
    }
    entries.sort_by_key(|e| e.channel);
    Ok(CorrelationReport { samples, seed, entries })
}

fn check_same_shape(a: &ImageBuffer, b: &ImageBuffer) -> Result<()> {
    if (a.rows(), a.cols(), a.channels()) != (b.rows(), b.cols(), b.channels()) {
        return Err(Error::GeometryMismatch(format!(
            "{}x{}x{} vs {}x{}x{}",
            a.rows(),
            a.cols(),
            a.channels(),
            b.rows(),
            b.cols(),
            b.channels()
        )));
    }
    Ok(())
}

/// Pixel-wise Pearson correlation between corresponding channels of two
/// images, over every pixel.
pub fn image_correlation(a: &ImageBuffer, b: &ImageBuffer) -> Result<Vec<Option<f64>>> {
    check_same_shape(a, b)?;
    Ok((0..a.channels())
        .map(|k| {
            let x: Vec<f64> = a.channel(k).as_slice().iter().map(|&v| v as f64).collect();
            let y: Vec<f64> = b.channel(k).as_slice().iter().map(|&v| v as f64).collect();
            pearson(&x, &y)
        })
        .collect())
}

pub fn byte_histogram(bytes: &[u8]) -> [u64; 256] {
    let mut h = [0u64; 256];
    for &b in bytes {
        h[b as usize] += 1;
    }
    h
}

/// Shannon entropy in bits over the 256 grey levels.
pub fn entropy(plane: &[u8]) -> f64 {
    let n = plane.len() as f64;
    let h: f64 = byte_histogram(plane)
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum();
    // −0.0 for a constant plane
    h.max(0.0)
}

pub fn entropies(img: &ImageBuffer) -> Vec<f64> {
    img.planes().iter().map(|p| entropy(p.as_slice())).collect()
}

/// Chi-square statistic of a channel's 256-level histogram against uniform.
pub fn histogram_chi_square(plane: &[u8]) -> f64 {
    chi_square_uniform(&byte_histogram(plane))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffReport {
    /// Per channel, in percent.
    pub npcr: Vec<f64>,
    /// Per channel, in percent.
    pub uaci: Vec<f64>,
}

impl DiffReport {
    pub fn min_npcr(&self) -> f64 {
        self.npcr.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// NPCR and UACI between two equally sized images, per channel.
pub fn npcr_uaci(a: &ImageBuffer, b: &ImageBuffer) -> Result<DiffReport> {
    check_same_shape(a, b)?;
    let ch = a.channels();
    let mut changed = vec![0u64; ch];
    let mut intensity = vec![0u64; ch];
    for (pa, pb) in a.as_slice().chunks_exact(ch).zip(b.as_slice().chunks_exact(ch)) {
        for k in 0..ch {
            let d = pa[k].abs_diff(pb[k]) as u64;
            changed[k] += (d != 0) as u64;
            intensity[k] += d;
        }
    }
    let area = a.pixel_count() as f64;
    Ok(DiffReport {
        npcr: changed.iter().map(|&c| 100.0 * c as f64 / area).collect(),
        uaci: intensity.iter().map(|&s| 100.0 * s as f64 / (255.0 * area)).collect(),
    })
}

/// Fraction of pixels per channel where both images agree exactly.
pub fn pixel_agreement(a: &ImageBuffer, b: &ImageBuffer) -> Result<Vec<f64>> {
    check_same_shape(a, b)?;
    let ch = a.channels();
    let mut same = vec![0u64; ch];
    for (pa, pb) in a.as_slice().chunks_exact(ch).zip(b.as_slice().chunks_exact(ch)) {
        for k in 0..ch {
            same[k] += (pa[k] == pb[k]) as u64;
        }
    }
    Ok(same.iter().map(|&s| s as f64 / a.pixel_count() as f64).collect())
}

/// `(row0, col0, height, width)`, zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rect {
    pub row: usize,
    pub col: usize,
    pub height: usize,
    pub width: usize,
}

impl Rect {
    pub fn new(row: usize, col: usize, height: usize, width: usize) -> Self {
        Rect { row, col, height, width }
    }
}

/// Zeroes `rect` in every channel.
pub fn crop_attack(cipher: &ImageBuffer, rect: Rect) -> Result<ImageBuffer> {
    if rect.row + rect.height > cipher.rows() || rect.col + rect.width > cipher.cols() {
        return Err(Error::InvalidArgument(format!(
            "crop rectangle {rect:?} exceeds {}x{}",
            cipher.rows(),
            cipher.cols()
        )));
    }
    let mut out = cipher.clone().with_kind(gray_if_binary(cipher.kind()))?;
    for i in rect.row..rect.row + rect.height {
        for j in rect.col..rect.col + rect.width {
            for k in 0..out.channels() {
                out.set(i, j, k, 0);
            }
        }
    }
    Ok(out)
}

fn gray_if_binary(kind: ImageKind) -> ImageKind {
    if kind == ImageKind::Binary {
        ImageKind::Gray
    } else {
        kind
    }
}

/// Adds zero-mean Gaussian noise of the given variance in normalized
/// intensity units (`v / 255`), clamps to `[0, 1]` and re-quantizes.
pub fn noise_attack(cipher: &ImageBuffer, variance: f64, seed: u64) -> Result<ImageBuffer> {
    if !(variance >= 0.0 && variance.is_finite()) {
        return Err(Error::InvalidArgument(format!("variance must be >= 0, got {variance}")));
    }
    let kind = gray_if_binary(cipher.kind());
    if variance == 0.0 {
        return cipher.clone().with_kind(kind);
    }
    let normal = Normal::new(0.0, variance.sqrt()).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = cipher
        .as_slice()
        .iter()
        .map(|&v| {
            let x = (v as f64 / 255.0 + normal.sample(&mut rng)).clamp(0.0, 1.0);
            (x * 255.0).round() as u8
        })
        .collect();
    ImageBuffer::new(cipher.rows(), cipher.cols(), kind, data)
}

#[derive(Debug, Clone)]
pub struct ChosenPlaintextOutcome {
    pub first: (ImageBuffer, CipherMeta),
    pub second: (ImageBuffer, CipherMeta),
    /// `|C₁ − C₂|`
    pub difference: ImageBuffer,
    pub report: DiffReport,
    /// Chi-square of each channel of `difference` against a flat histogram.
    pub difference_chi_square: Vec<f64>,
}

/// Encrypts `plain` twice with nonces drawn from `rng`.
pub fn chosen_plaintext_demo(plain: &ImageBuffer, key: &SecretKey, rng: &mut impl Rng) -> Result<ChosenPlaintextOutcome> {
    let mut run = || encrypt_image(plain, key, rng.random::<f64>(), rng.random::<f64>());
    let first = run()?;
    let second = run()?;
    let (c1, c2) = (&first.0, &second.0);
    let diff: Vec<u8> = c1
        .as_slice()
        .iter()
        .zip(c2.as_slice())
        .map(|(a, b)| a.abs_diff(*b))
        .collect();
    let difference = ImageBuffer::new(c1.rows(), c1.cols(), c1.kind(), diff)?;
    let report = npcr_uaci(c1, c2)?;
    let difference_chi_square = difference.planes().iter().map(|p| histogram_chi_square(p.as_slice())).collect();
    Ok(ChosenPlaintextOutcome {
        first,
        second,
        difference,
        report,
        difference_chi_square,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeySensitivityReport {
    pub parameter: usize,
    pub perturbation: f64,
    /// Correlation of the wrong-key decryption with the plaintext, per channel.
    pub correlation: Vec<Option<f64>>,
    /// NPCR of the wrong-key decryption against the plaintext, per channel.
    pub npcr: Vec<f64>,
    pub exact: bool,
}

/// Encrypt with `key`, decrypt with `r[parameter] += perturbation`, and
/// compare the result with the plaintext.
pub fn key_sensitivity_test(
    plain: &ImageBuffer,
    key: &SecretKey,
    parameter: usize,
    perturbation: f64,
    nonces: (f64, f64),
) -> Result<KeySensitivityReport> {
    let wrong = key.perturbed(parameter, perturbation)?;
    let (cipher, meta) = encrypt_image(plain, key, nonces.0, nonces.1)?;
    // binary plaintexts can decrypt to arbitrary bytes under a wrong key
    let recovered = decrypt(&cipher, &meta, &wrong)?;
    let as_plain_kind = |img: &ImageBuffer| {
        ImageBuffer::new(img.rows(), img.cols(), gray_if_binary(plain.kind()), img.as_slice().to_vec())
    };
    let (p, r) = (as_plain_kind(plain)?, as_plain_kind(&recovered)?);
    Ok(KeySensitivityReport {
        parameter,
        perturbation,
        correlation: image_correlation(&p, &r)?,
        npcr: npcr_uaci(&p, &r)?.npcr,
        exact: p == r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cipher::decrypt;

    #[test]
    fn pearson_examples() {
        let x: Vec<f64> = (0..100).map(|v| v as f64).collect();
        assert!((pearson(&x, &x).unwrap() - 1.0).abs() < 1e-12);
        let neg: Vec<f64> = x.iter().map(|v| -2.0 * v + 3.0).collect();
        assert!((pearson(&x, &neg).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(pearson(&x, &vec![4.0; 100]), None);
    }

    #[test]
    fn constant_channel_reported_not_zeroed() {
        let img = ImageBuffer::filled(8, 8, ImageKind::Gray, 7).unwrap();
        assert_eq!(correlation(&img, Direction::Horizontal, 100, 1).unwrap(), vec![None]);
        let r = correlation_report(&img, 100, 1).unwrap();
        assert_eq!(r.max_abs(), None);
    }

    #[test]
    fn correlation_needs_neighbours() {
        let row = ImageBuffer::filled(1, 8, ImageKind::Gray, 7).unwrap();
        assert!(correlation(&row, Direction::Vertical, 10, 0).is_err());
        assert!(correlation(&row, Direction::Horizontal, 10, 0).is_ok());
        assert!(correlation(&row, Direction::Horizontal, 1, 0).is_err());
    }

    #[test]
    fn diagonal_pairs_are_true_neighbours() {
        let plane = Matrix::from_fn(6, 6, |i, j| (10 * i + j) as u8);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (x, y) = adjacent_pairs(&plane, Direction::DiagonalUp, 200, &mut rng).unwrap();
        assert!(x.iter().zip(&y).all(|(a, b)| b - a == -9.0));
        let (x, y) = adjacent_pairs(&plane, Direction::DiagonalDown, 200, &mut rng).unwrap();
        assert!(x.iter().zip(&y).all(|(a, b)| b - a == -11.0));
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&[9; 1000]), 0.0);
        let uniform: Vec<u8> = (0..256 * 4).map(|v| v as u8).collect();
        assert_eq!(entropy(&uniform), 8.0);
        assert_eq!(entropy(&[0, 255]), 1.0);
    }

    #[test]
    fn npcr_uaci_examples() {
        let a = ImageBuffer::filled(4, 4, ImageKind::Color, 0).unwrap();
        let same = npcr_uaci(&a, &a).unwrap();
        assert_eq!(same.npcr, vec![0.0; 3]);
        assert_eq!(same.uaci, vec![0.0; 3]);

        let b = ImageBuffer::filled(4, 4, ImageKind::Color, 255).unwrap();
        let full = npcr_uaci(&a, &b).unwrap();
        assert_eq!(full.npcr, vec![100.0; 3]);
        assert_eq!(full.uaci, vec![100.0; 3]);

        let c = ImageBuffer::filled(4, 5, ImageKind::Color, 0).unwrap();
        assert!(npcr_uaci(&a, &c).is_err());
    }

    #[test]
    fn crop_examples() {
        let img = ImageBuffer::new(4, 4, ImageKind::Gray, (1..=16).collect()).unwrap();
        assert_eq!(crop_attack(&img, Rect::new(1, 1, 0, 0)).unwrap(), img);
        assert!(crop_attack(&img, Rect::new(0, 0, 4, 4)).unwrap().as_slice().iter().all(|&v| v == 0));
        assert!(crop_attack(&img, Rect::new(2, 2, 3, 1)).is_err());
    }

    #[test]
    fn noise_examples() {
        let img = ImageBuffer::new(4, 4, ImageKind::Gray, (0..16).map(|v| v * 17).collect()).unwrap();
        assert_eq!(noise_attack(&img, 0.0, 1).unwrap(), img);
        assert!(noise_attack(&img, -0.1, 1).is_err());

        let flat = ImageBuffer::filled(32, 32, ImageKind::Gray, 128).unwrap();
        let noisy = noise_attack(&flat, 0.1, 9).unwrap();
        let distinct = byte_histogram(noisy.as_slice()).iter().filter(|&&c| c > 0).count();
        assert!(distinct > 50);
        assert_eq!(noise_attack(&flat, 0.1, 9).unwrap(), noisy);
    }

    #[test]
    fn crop_corrupts_exactly_the_changed_bytes() {
        let key = SecretKey::reference();
        let data: Vec<u8> = (0..16 * 16).map(|v| (v * 7 % 256) as u8).collect();
        let plain = ImageBuffer::new(16, 16, ImageKind::Gray, data).unwrap();
        let (c, meta) = encrypt_image(&plain, &key, 0.4, 0.6).unwrap();
        for rect in [Rect::new(3, 4, 5, 6), Rect::new(0, 0, 16, 1), Rect::new(10, 10, 6, 6)] {
            let cropped = crop_attack(&c, rect).unwrap();
            let changed = c.as_slice().iter().zip(cropped.as_slice()).filter(|(a, b)| a != b).count();
            let out = decrypt(&cropped, &meta, &key).unwrap();
            let wrong = plain.as_slice().iter().zip(out.as_slice()).filter(|(a, b)| a != b).count();
            assert_eq!(wrong, changed, "{rect:?}");
        }
    }

    #[test]
    fn key_sensitivity_zero_perturbation_is_exact() {
        let key = SecretKey::reference();
        let plain = ImageBuffer::new(16, 16, ImageKind::Color, (0..768).map(|v| (v % 251) as u8).collect()).unwrap();
        let r = key_sensitivity_test(&plain, &key, 0, 0.0, (0.3, 0.7)).unwrap();
        assert!(r.exact);
        assert_eq!(r.npcr, vec![0.0; 3]);
    }

    #[test]
    fn chosen_plaintext_nonces_differ() {
        let key = SecretKey::reference();
        let plain = ImageBuffer::filled(16, 16, ImageKind::Color, 77).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let out = chosen_plaintext_demo(&plain, &key, &mut rng).unwrap();
        assert_ne!(out.first.0, out.second.0);
        assert_ne!(out.first.1.nonce0, out.second.1.nonce0);
        let (c, m) = &out.first;
        assert_eq!(&decrypt(c, m, &key).unwrap(), &plain);
    }
}
