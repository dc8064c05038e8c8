//! Pixel containers: [`ImageBuffer`] for whole images and [`Matrix`] for
//! single-channel planes (quadrants, keystreams).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ImageKind {
    Color,
    Gray,
    /// Single channel restricted to `{0, 255}`.
    Binary,
}

impl ImageKind {
    pub fn channels(self) -> usize {
        match self {
            ImageKind::Color => 3,
            ImageKind::Gray | ImageKind::Binary => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ImageKind::Color => "color",
            ImageKind::Gray => "gray",
            ImageKind::Binary => "binary",
        }
    }
}

impl fmt::Display for ImageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ImageKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "color" => Ok(ImageKind::Color),
            "gray" => Ok(ImageKind::Gray),
            "binary" => Ok(ImageKind::Binary),
            other => Err(Error::InvalidArgument(format!("unknown image kind '{other}'"))),
        }
    }
}

/// Row-major 2-D array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::GeometryMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Element-wise `self ^= other`.
    pub fn xor_assign(&mut self, other: &Matrix) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::GeometryMismatch(format!(
                "xor of {:?} with {:?}",
                self.dims(),
                other.dims()
            )));
        }
        self.data.iter_mut().zip(&other.data).for_each(|(a, b)| *a ^= b);
        Ok(())
    }
}

/// An `m × n × c` image of 8-bit samples, stored interleaved row-major
/// (`(i·n + j)·c + k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    rows: usize,
    cols: usize,
    kind: ImageKind,
    data: Vec<u8>,
}

impl ImageBuffer {
    pub fn new(rows: usize, cols: usize, kind: ImageKind, data: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidImage(format!("empty image {rows}x{cols}")));
        }
        if data.len() != rows * cols * kind.channels() {
            return Err(Error::InvalidImage(format!(
                "{} samples for a {rows}x{cols} {kind} image",
                data.len()
            )));
        }
        if kind == ImageKind::Binary && data.iter().any(|&p| p != 0 && p != 255) {
            return Err(Error::InvalidImage("binary image contains values other than 0 and 255".into()));
        }
        Ok(ImageBuffer { rows, cols, kind, data })
    }

    pub fn filled(rows: usize, cols: usize, kind: ImageKind, value: u8) -> Result<Self> {
        Self::new(rows, cols, kind, vec![value; rows * cols * kind.channels()])
    }

    /// Interleaves single-channel planes.
    pub fn from_channels(kind: ImageKind, planes: &[Matrix]) -> Result<Self> {
        if planes.len() != kind.channels() {
            return Err(Error::GeometryMismatch(format!(
                "{} planes for a {kind} image",
                planes.len()
            )));
        }
        let (rows, cols) = planes[0].dims();
        if planes.iter().any(|p| p.dims() != (rows, cols)) {
            return Err(Error::GeometryMismatch("planes differ in size".into()));
        }
        let c = planes.len();
        let mut data = vec![0u8; rows * cols * c];
        for (k, p) in planes.iter().enumerate() {
            for (idx, &v) in p.as_slice().iter().enumerate() {
                data[idx * c + k] = v;
            }
        }
        Self::new(rows, cols, kind, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> ImageKind {
        self.kind
    }

    pub fn channels(&self) -> usize {
        self.kind.channels()
    }

    pub fn pixel_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u8 {
        self.data[(i * self.cols + j) * self.channels() + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: u8) {
        let c = self.channels();
        self.data[(i * self.cols + j) * c + k] = v;
    }

    pub fn channel(&self, k: usize) -> Matrix {
        let c = self.channels();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().skip(k).step_by(c).copied().collect(),
        }
    }

    pub fn planes(&self) -> Vec<Matrix> {
        (0..self.channels()).map(|k| self.channel(k)).collect()
    }

    /// Same samples under another kind with the same channel count.
    pub fn with_kind(self, kind: ImageKind) -> Result<Self> {
        Self::new(self.rows, self.cols, kind, self.data)
    }

    pub(crate) fn from_raw_unchecked(rows: usize, cols: usize, kind: ImageKind, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), rows * cols * kind.channels());
        ImageBuffer { rows, cols, kind, data }
    }
}
