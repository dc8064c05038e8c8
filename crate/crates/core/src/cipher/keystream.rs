//! Keystream matrices `Z¹ᵢ`, `Z²ᵢ` and shift offsets `tᵢ`.

use rayon::prelude::*;

use super::key::SecretKey;
use super::meta::CipherMeta;
use super::quadrant::{QuadrantGeometry, QuadrantSet};
use crate::chaos::{sequence, CombinedMapSpec};
use crate::error::{Error, Result};
use crate::image::Matrix;
use crate::shift::circshift_rows;

/// Scale applied to the last orbit value before reducing it to an offset.
const OFFSET_SCALE: f64 = 1e5;

#[derive(Debug, Clone, PartialEq)]
pub struct KeystreamSet {
    /// `Z¹₀` is `m × n`; `Z¹₁..Z¹₄` match the quadrant sizes.
    pub z1: [Matrix; 5],
    /// `Z²ᵢ = circshift(Z¹ᵢ, tᵢ)` for `i ≥ 1`, `Z²₀ = circshift(Z¹₀, −t₀)`.
    pub z2: [Matrix; 5],
    pub t: [u64; 5],
    pub seeds: [f64; 5],
}

/// `⌊x·255 + 0.5⌋`, clamped to 255.
pub fn quantize(x: f64) -> Result<u8> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            what: "x",
            value: x,
            range: "[0, 1]",
        });
    }
    Ok(quantize_unchecked(x))
}

#[inline]
fn quantize_unchecked(x: f64) -> u8 {
    (x * 255.0 + 0.5).floor().min(255.0) as u8
}

/// `Ω(Kᵢ, rᵢ)`: row 0 is `Λ(seed, r, w)`; column `j` continues as
/// `Λ(row0[j], r, h)`.
fn omega(spec: &CombinedMapSpec, seed: f64, r: f64, h: usize, w: usize) -> Result<Matrix> {
    let first = sequence(spec, seed, r, w)?;
    let mut m = Matrix::zeros(h, w);
    for (j, &x) in first.values().iter().enumerate() {
        let col = sequence(spec, x, r, h)?;
        for (i, &v) in col.values().iter().enumerate() {
            m.set(i, j, quantize_unchecked(v));
        }
    }
    Ok(m)
}

/// `tᵢ = ⌊(Kᵢ[⌊n/2⌋ − 1]·10⁵) mod (m·n)⌋` with `Kᵢ = Λ(y⁰ᵢ, rᵢ, ⌊n/2⌋)`.
fn offset(spec: &CombinedMapSpec, seed: f64, r: f64, rows: usize, cols: usize) -> Result<u64> {
    let k = sequence(spec, seed, r, cols / 2)?;
    let area = (rows * cols) as f64;
    Ok((k.last() * OFFSET_SCALE).rem_euclid(area).floor() as u64)
}

/// `⌊(t₁ + t₂ + t₃ + t₄) / 4⌋`.
pub fn mean_offset(t: &[u64; 4]) -> u64 {
    t.iter().sum::<u64>() / 4
}

pub fn build_keystreams(key: &SecretKey, meta: &CipherMeta) -> Result<KeystreamSet> {
    meta.validate()?;
    let spec = key.spec();
    let r = key.r();
    let seeds = meta.seeds();
    let (rows, cols) = (meta.rows, meta.cols);
    let geometry = QuadrantGeometry::new(rows, cols)?;

    let quadrants: Vec<(Matrix, Matrix, u64)> = (1..=4usize)
        .into_par_iter()
        .map(|q| {
            let (h, w) = geometry.dims(q);
            let z1 = omega(&spec, seeds[q], r[q], h, w)?;
            let t = offset(&spec, seeds[q], r[q], rows, cols)?;
            let z2 = circshift_rows(&z1, t as i64);
            Ok((z1, z2, t))
        })
        .collect::<Result<_>>()?;

    let tq = [quadrants[0].2, quadrants[1].2, quadrants[2].2, quadrants[3].2];
    let t0 = mean_offset(&tq);
    let k0 = sequence(&spec, seeds[0], r[0], rows * cols)?;
    let z1_0 = Matrix::from_vec(rows, cols, k0.values().iter().map(|&x| quantize_unchecked(x)).collect())?;
    let z2_0 = circshift_rows(&z1_0, -(t0 as i64));

    let mut it = quadrants.into_iter();
    let mut next = || it.next().expect("four quadrants");
    let (a, b, c, d) = (next(), next(), next(), next());
    Ok(KeystreamSet {
        z1: [z1_0, a.0, b.0, c.0, d.0],
        z2: [z2_0, a.1, b.1, c.1, d.1],
        t: [t0, tq[0], tq[1], tq[2], tq[3]],
        seeds,
    })
}

/// `DAʲᵢ = (Aʲᵢ ⊕ Z¹ᵢ) ⊕ Z²ᵢ` for every channel `j` of quadrant `i`.
pub fn xor_quadrants(set: &QuadrantSet, ks: &KeystreamSet) -> Result<QuadrantSet> {
    let mut out = set.clone();
    for k in 0..set.channels() {
        for q in 1..=4 {
            let part = out.part_mut(k, q);
            part.xor_assign(&ks.z1[q])?;
            part.xor_assign(&ks.z2[q])?;
        }
    }
    Ok(out)
}
