//! Circular shifts. A positive shift moves content towards higher indices:
//! `out[i] = in[(i − d) mod len]` along each axis.

use crate::image::{ImageBuffer, Matrix};

#[inline]
fn reduce(d: i64, len: usize) -> usize {
    d.rem_euclid(len as i64) as usize
}

/// Shift rows by `dr` and columns by `dc`.
pub fn circshift2(m: &Matrix, dr: i64, dc: i64) -> Matrix {
    let (rows, cols) = m.dims();
    let sr = reduce(dr, rows);
    let sc = reduce(dc, cols);
    if sr == 0 && sc == 0 {
        return m.clone();
    }
    let src = m.as_slice();
    let mut out = vec![0u8; rows * cols];
    for i in 0..rows {
        let from = (i + rows - sr) % rows;
        let src_row = &src[from * cols..(from + 1) * cols];
        let dst_row = &mut out[i * cols..(i + 1) * cols];
        // dst[j] = src[(j − sc) mod cols]
        dst_row[sc..].copy_from_slice(&src_row[..cols - sc]);
        dst_row[..sc].copy_from_slice(&src_row[cols - sc..]);
    }
    Matrix::from_vec(rows, cols, out).expect("dimensions preserved")
}

/// Scalar form: shift along the first dimension only.
pub fn circshift_rows(m: &Matrix, d: i64) -> Matrix {
    circshift2(m, d, 0)
}

/// Shift rows, columns and channels of an image. Single-channel images
/// ignore `dk`.
pub fn circshift3(img: &ImageBuffer, di: i64, dj: i64, dk: i64) -> ImageBuffer {
    let (rows, cols, ch) = (img.rows(), img.cols(), img.channels());
    let si = reduce(di, rows);
    let sj = reduce(dj, cols);
    let sk = reduce(dk, ch);
    if si == 0 && sj == 0 && sk == 0 {
        return img.clone();
    }
    let src = img.as_slice();
    let mut out = vec![0u8; src.len()];
    for i in 0..rows {
        let fi = (i + rows - si) % rows;
        for j in 0..cols {
            let fj = (j + cols - sj) % cols;
            let dst = (i * cols + j) * ch;
            let from = (fi * cols + fj) * ch;
            for k in 0..ch {
                let fk = (k + ch - sk) % ch;
                out[dst + k] = src[from + fk];
            }
        }
    }
    ImageBuffer::from_raw_unchecked(rows, cols, img.kind(), out)
}
