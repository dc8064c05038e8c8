//! Deterministic synthetic test images: smooth colour/gray scenes with the
//! strong neighbour correlation of natural photographs, a binary silhouette,
//! and uniformly random images.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::image::{ImageBuffer, ImageKind};

struct Scene {
    waves: Vec<(f64, f64, f64, f64)>,
    blobs: Vec<(f64, f64, f64, f64)>,
}

impl Scene {
    fn new(rng: &mut ChaCha8Rng) -> Self {
        let waves = (0..4)
            .map(|_| {
                (
                    rng.random_range(0.5..3.0),
                    rng.random_range(0.5..3.0),
                    rng.random_range(0.0..2.0 * PI),
                    rng.random_range(15.0..40.0),
                )
            })
            .collect();
        let blobs = (0..5)
            .map(|_| {
                (
                    rng.random_range(0.0..1.0),
                    rng.random_range(0.0..1.0),
                    rng.random_range(0.05..0.25),
                    rng.random_range(-70.0..70.0),
                )
            })
            .collect();
        Scene { waves, blobs }
    }

    fn value(&self, u: f64, v: f64, base: f64) -> f64 {
        let mut x = base + 40.0 * (u - 0.5) + 25.0 * (v - 0.5);
        for &(fu, fv, ph, amp) in &self.waves {
            x += amp * (2.0 * PI * (fu * u + fv * v) + ph).sin();
        }
        for &(cu, cv, rad, amp) in &self.blobs {
            let d2 = ((u - cu).powi(2) + (v - cv).powi(2)) / (rad * rad);
            x += amp * (-d2).exp();
        }
        x
    }
}

fn render(rows: usize, cols: usize, kind: ImageKind, seed: u64) -> ImageBuffer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scenes: Vec<Scene> = (0..kind.channels()).map(|_| Scene::new(&mut rng)).collect();
    let bases = [128.0, 110.0, 95.0];
    let mut data = Vec::with_capacity(rows * cols * kind.channels());
    for i in 0..rows {
        for j in 0..cols {
            let (u, v) = (j as f64 / cols as f64, i as f64 / rows as f64);
            for (k, s) in scenes.iter().enumerate() {
                let grain: f64 = rng.random_range(-3.0..3.0);
                data.push((s.value(u, v, bases[k]) + grain).round().clamp(1.0, 254.0) as u8);
            }
        }
    }
    ImageBuffer::new(rows, cols, kind, data).expect("consistent size")
}

/// Smooth colour scene; every sample lies in `1..=254`.
pub fn natural_color(rows: usize, cols: usize, seed: u64) -> ImageBuffer {
    render(rows, cols, ImageKind::Color, seed)
}

/// Smooth gray scene; every sample lies in `1..=254`.
pub fn natural_gray(rows: usize, cols: usize, seed: u64) -> ImageBuffer {
    render(rows, cols, ImageKind::Gray, seed)
}

/// A four-legged animal silhouette (255) on a black background.
pub fn binary_silhouette(rows: usize, cols: usize) -> ImageBuffer {
    // (centre u, centre v, radius u, radius v, tilt)
    let parts = [
        (0.50, 0.45, 0.26, 0.14, 0.0),
        (0.78, 0.28, 0.08, 0.13, -0.6),
        (0.86, 0.17, 0.09, 0.05, 0.3),
        (0.36, 0.70, 0.03, 0.20, 0.0),
        (0.44, 0.70, 0.03, 0.20, 0.1),
        (0.60, 0.70, 0.03, 0.20, -0.1),
        (0.68, 0.70, 0.03, 0.20, 0.0),
        (0.22, 0.42, 0.10, 0.025, 0.7),
    ];
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let (u, v) = (j as f64 / cols as f64, i as f64 / rows as f64);
            let inside = parts.iter().any(|&(cu, cv, ru, rv, tilt): &(f64, f64, f64, f64, f64)| {
                let (du, dv) = (u - cu, v - cv);
                let (c, s) = (tilt.cos(), tilt.sin());
                let (a, b) = (du * c + dv * s, -du * s + dv * c);
                (a / ru).powi(2) + (b / rv).powi(2) <= 1.0
            });
            data.push(if inside { 255 } else { 0 });
        }
    }
    ImageBuffer::new(rows, cols, ImageKind::Binary, data).expect("binary values")
}

/// Independent samples; binary images draw from `{0, 255}`.
pub fn random_image(rows: usize, cols: usize, kind: ImageKind, rng: &mut impl Rng) -> ImageBuffer {
    let data = (0..rows * cols * kind.channels())
        .map(|_| match kind {
            ImageKind::Binary => {
                if rng.random::<bool>() {
                    255
                } else {
                    0
                }
            }
            _ => rng.random::<u8>(),
        })
        .collect();
    ImageBuffer::new(rows, cols, kind, data).expect("consistent size")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{correlation, Direction};

    #[test]
    fn natural_images_are_strongly_correlated() {
        let img = natural_color(128, 128, 1);
        let c = correlation(&img, Direction::Horizontal, 5000, 0).unwrap();
        assert!(c.iter().all(|v| v.unwrap() > 0.9), "{c:?}");
        assert!(img.as_slice().iter().all(|&v| v > 0));
    }

    #[test]
    fn silhouette_is_binary_and_mixed() {
        let img = binary_silhouette(444, 455);
        let white = img.as_slice().iter().filter(|&&v| v == 255).count();
        assert!(white > 10_000 && white < 150_000, "{white}");
    }

    #[test]
    fn deterministic() {
        assert_eq!(natural_gray(20, 30, 4), natural_gray(20, 30, 4));
        assert_ne!(natural_gray(20, 30, 4), natural_gray(20, 30, 5));
    }
}
