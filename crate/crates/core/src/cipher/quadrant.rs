//! Quadrant division of each channel and its exact inverse.

use crate::error::{Error, Result};
use crate::image::{ImageBuffer, ImageKind, Matrix};

/// Split lines of an `m × n` image at `⌊m/2⌋` and `⌊n/2⌋`.
///
/// Quadrants are numbered 1..=4: top-left, top-right, bottom-left,
/// bottom-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadrantGeometry {
    rows: usize,
    cols: usize,
}

impl QuadrantGeometry {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows < 2 || cols < 2 {
            return Err(Error::ImageTooSmall { rows, cols });
        }
        Ok(QuadrantGeometry { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_split(&self) -> usize {
        self.rows / 2
    }

    pub fn col_split(&self) -> usize {
        self.cols / 2
    }

    /// `(row offset, col offset, height, width)` of quadrant `q` (1..=4).
    pub fn rect(&self, q: usize) -> (usize, usize, usize, usize) {
        let (hr, hc) = (self.row_split(), self.col_split());
        let (lr, lc) = (self.rows - hr, self.cols - hc);
        match q {
            1 => (0, 0, hr, hc),
            2 => (0, hc, hr, lc),
            3 => (hr, 0, lr, hc),
            4 => (hr, hc, lr, lc),
            _ => panic!("quadrant index {q} out of 1..=4"),
        }
    }

    pub fn dims(&self, q: usize) -> (usize, usize) {
        let (_, _, h, w) = self.rect(q);
        (h, w)
    }
}

/// Four quadrants per channel: `parts[channel][q − 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrantSet {
    geometry: QuadrantGeometry,
    kind: ImageKind,
    parts: Vec<[Matrix; 4]>,
}

impl QuadrantSet {
    pub fn from_parts(geometry: QuadrantGeometry, kind: ImageKind, parts: Vec<[Matrix; 4]>) -> Result<Self> {
        if parts.len() != kind.channels() {
            return Err(Error::GeometryMismatch(format!(
                "{} channel groups for a {kind} image",
                parts.len()
            )));
        }
        for group in &parts {
            for (idx, m) in group.iter().enumerate() {
                if m.dims() != geometry.dims(idx + 1) {
                    return Err(Error::GeometryMismatch(format!(
                        "quadrant {} is {:?}, expected {:?}",
                        idx + 1,
                        m.dims(),
                        geometry.dims(idx + 1)
                    )));
                }
            }
        }
        Ok(QuadrantSet { geometry, kind, parts })
    }

    pub fn geometry(&self) -> QuadrantGeometry {
        self.geometry
    }

    pub fn kind(&self) -> ImageKind {
        self.kind
    }

    /// Quadrant `q` (1..=4) of `channel`.
    pub fn part(&self, channel: usize, q: usize) -> &Matrix {
        &self.parts[channel][q - 1]
    }

    pub(crate) fn part_mut(&mut self, channel: usize, q: usize) -> &mut Matrix {
        &mut self.parts[channel][q - 1]
    }

    pub fn channels(&self) -> usize {
        self.parts.len()
    }
}

/// Divide every channel into four quadrants (twelve parts for colour).
pub fn div(img: &ImageBuffer) -> Result<QuadrantSet> {
    let geometry = QuadrantGeometry::new(img.rows(), img.cols())?;
    let parts = (0..img.channels())
        .map(|k| {
            [1, 2, 3, 4].map(|q| {
                let (r0, c0, h, w) = geometry.rect(q);
                Matrix::from_fn(h, w, |i, j| img.get(r0 + i, c0 + j, k))
            })
        })
        .collect();
    Ok(QuadrantSet {
        geometry,
        kind: img.kind(),
        parts,
    })
}

/// Rejoin quadrants into a full image.
pub fn ediv(set: &QuadrantSet) -> Result<ImageBuffer> {
    let g = set.geometry;
    let ch = set.channels();
    let mut data = vec![0u8; g.rows * g.cols * ch];
    for (k, group) in set.parts.iter().enumerate() {
        for (idx, m) in group.iter().enumerate() {
            let (r0, c0, h, w) = g.rect(idx + 1);
            if m.dims() != (h, w) {
                return Err(Error::GeometryMismatch(format!("quadrant {} has wrong size", idx + 1)));
            }
            for i in 0..h {
                for j in 0..w {
                    data[((r0 + i) * g.cols + c0 + j) * ch + k] = m.get(i, j);
                }
            }
        }
    }
    ImageBuffer::new(g.rows, g.cols, set.kind, data)
}
