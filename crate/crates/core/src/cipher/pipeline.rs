//! The six encryption phases and their inverses.
//!
//! 1. channel sums and seeds
//! 2. two whole-image circular shifts keyed by the sums
//! 3. quadrant division per channel
//! 4. keystream construction and chained XOR per quadrant
//! 5. (none; numbering follows the original step labels)
//! 6. rejoin, per-channel shifts, whitening XOR, two final shifts

use super::key::SecretKey;
use super::keystream::{build_keystreams, xor_quadrants, KeystreamSet};
use super::meta::{channel_sums, CipherMeta};
use super::quadrant::{div, ediv};
use crate::error::{check_unit, Error, Result};
use crate::image::{ImageBuffer, ImageKind, Matrix};
use crate::shift::{circshift2, circshift3};

type Shift = [i64; 3];

fn apply(img: &ImageBuffer, shifts: &[Shift]) -> ImageBuffer {
    shifts
        .iter()
        .fold(img.clone(), |acc, s| circshift3(&acc, s[0], s[1], s[2]))
}

fn unapply(img: &ImageBuffer, shifts: &[Shift]) -> ImageBuffer {
    shifts
        .iter()
        .rev()
        .fold(img.clone(), |acc, s| circshift3(&acc, -s[0], -s[1], -s[2]))
}

fn color_pre_shifts(y1: i64, y2: i64, y3: i64) -> [Shift; 2] {
    [
        [y1 / 4, -(y2 / 4), y3 / 4],
        [(y1 + y2) / 10, (y2 + y3) / 10, -((y3 + y1) / 10)],
    ]
}

fn gray_pre_shifts(y1: i64) -> [Shift; 2] {
    [[y1 / 4, -(y1 / 3), 0], [2 * y1 / 10, 2 * y1 / 5, 0]]
}

fn pre_shifts(meta: &CipherMeta) -> [Shift; 2] {
    if meta.is_color() {
        color_pre_shifts(meta.y(1), meta.y(2), meta.y(3))
    } else {
        gray_pre_shifts(meta.y(1))
    }
}

fn final_shifts(meta: &CipherMeta) -> [Shift; 2] {
    if meta.is_color() {
        let (y1, y2, y3) = (meta.y(1), meta.y(2), meta.y(3));
        [[y1 + y2, y2 + y3, y1 + y3], [y1 / 50, y2 / 50, -(y3 / 50)]]
    } else {
        let y1 = meta.y(1);
        [[y1, -2 * y1, 0], [y1 / 50, -(y1 / 35), 0]]
    }
}

/// Per-channel 2-D shift after rejoining. A single-channel image uses the
/// first-channel rule.
fn channel_shift(meta: &CipherMeta, t0: i64, k: usize) -> (i64, i64) {
    match k {
        0 => (-meta.y(1) + t0, t0),
        1 => (t0, -meta.y(2) + t0),
        _ => (t0, -meta.y(3) + t0),
    }
}

/// Colour pre-shift: `[⌊y₁/4⌋, −⌊y₂/4⌋, ⌊y₃/4⌋]` then
/// `[⌊(y₁+y₂)/10⌋, ⌊(y₂+y₃)/10⌋, −⌊(y₃+y₁)/10⌋]`.
pub fn pre_shift(img: &ImageBuffer, y1: u64, y2: u64, y3: u64) -> ImageBuffer {
    apply(img, &color_pre_shifts(y1 as i64, y2 as i64, y3 as i64))
}

/// Gray pre-shift: `[⌊y₁/4⌋, −⌊y₁/3⌋]` then `[⌊2y₁/10⌋, ⌊2y₁/5⌋]`.
pub fn pre_shift_gray(img: &ImageBuffer, y1: u64) -> ImageBuffer {
    apply(img, &gray_pre_shifts(y1 as i64))
}

fn whitening_mask(ks: &KeystreamSet) -> Result<Matrix> {
    let mut mask = ks.z1[0].clone();
    mask.xor_assign(&ks.z2[0])?;
    Ok(mask)
}

fn check_geometry(img: &ImageBuffer, meta: &CipherMeta, ks: &KeystreamSet) -> Result<()> {
    if (img.rows(), img.cols()) != (meta.rows, meta.cols) || ks.z1[0].dims() != (meta.rows, meta.cols) {
        return Err(Error::GeometryMismatch(format!(
            "image {}x{}, metadata {}x{}, keystream {:?}",
            img.rows(),
            img.cols(),
            meta.rows,
            meta.cols,
            ks.z1[0].dims()
        )));
    }
    if img.channels() != meta.kind.channels() {
        return Err(Error::GeometryMismatch(format!(
            "{}-channel image with {} metadata",
            img.channels(),
            meta.kind
        )));
    }
    Ok(())
}

/// Phase 6(b)-(c): per-channel shifts, whitening with `Z¹₀ ⊕ Z²₀`, then the
/// two final whole-image shifts.
pub fn post_shift_and_whiten(joined: &ImageBuffer, meta: &CipherMeta, ks: &KeystreamSet) -> Result<ImageBuffer> {
    check_geometry(joined, meta, ks)?;
    let t0 = ks.t[0] as i64;
    let mask = whitening_mask(ks)?;
    let planes = joined
        .planes()
        .iter()
        .enumerate()
        .map(|(k, plane)| {
            let (dr, dc) = channel_shift(meta, t0, k);
            let mut p = circshift2(plane, dr, dc);
            p.xor_assign(&mask)?;
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    let whitened = ImageBuffer::from_channels(joined.kind(), &planes)?;
    Ok(apply(&whitened, &final_shifts(meta)))
}

/// Inverse of [`post_shift_and_whiten`].
pub fn undo_post_shift_and_whiten(cipher: &ImageBuffer, meta: &CipherMeta, ks: &KeystreamSet) -> Result<ImageBuffer> {
    check_geometry(cipher, meta, ks)?;
    let t0 = ks.t[0] as i64;
    let mask = whitening_mask(ks)?;
    let unshifted = unapply(cipher, &final_shifts(meta));
    let planes = unshifted
        .planes()
        .into_iter()
        .enumerate()
        .map(|(k, mut p)| {
            p.xor_assign(&mask)?;
            let (dr, dc) = channel_shift(meta, t0, k);
            Ok(circshift2(&p, -dr, -dc))
        })
        .collect::<Result<Vec<_>>>()?;
    ImageBuffer::from_channels(cipher.kind(), &planes)
}

/// Runs phases 2-6 for metadata that has already been filled in.
pub fn encrypt_with_meta(plain: &ImageBuffer, key: &SecretKey, meta: &CipherMeta) -> Result<ImageBuffer> {
    let ks = build_keystreams(key, meta)?;
    let work = plain.clone().with_kind(working_kind(plain.kind()))?;
    if work.channels() != meta.kind.channels() || (work.rows(), work.cols()) != (meta.rows, meta.cols) {
        return Err(Error::GeometryMismatch("plaintext does not match metadata".into()));
    }
    let shifted = apply(&work, &pre_shifts(meta));
    let parts = xor_quadrants(&div(&shifted)?, &ks)?;
    let joined = ediv(&parts)?;
    post_shift_and_whiten(&joined, meta, &ks)
}

// Intermediate and cipher images of binary inputs hold arbitrary bytes.
fn working_kind(kind: ImageKind) -> ImageKind {
    match kind {
        ImageKind::Binary => ImageKind::Gray,
        k => k,
    }
}

fn make_meta(plain: &ImageBuffer, nonce0: f64, nonce_aux: f64) -> Result<CipherMeta> {
    check_unit("nonce0", nonce0)?;
    check_unit("secondary nonce", nonce_aux)?;
    if plain.rows() < 2 || plain.cols() < 2 {
        return Err(Error::ImageTooSmall {
            rows: plain.rows(),
            cols: plain.cols(),
        });
    }
    let (sums, _) = channel_sums(plain);
    Ok(CipherMeta {
        sums,
        nonce0,
        nonce_aux,
        rows: plain.rows(),
        cols: plain.cols(),
        kind: plain.kind(),
    })
}

/// Encrypts a colour image with seeds `y⁰₀ = nonce0`, `y⁰₄ = nonce4`.
pub fn encrypt(plain: &ImageBuffer, key: &SecretKey, nonce0: f64, nonce4: f64) -> Result<(ImageBuffer, CipherMeta)> {
    if plain.kind() != ImageKind::Color {
        return Err(Error::InvalidImage(format!("expected a color image, got {}", plain.kind())));
    }
    let meta = make_meta(plain, nonce0, nonce4)?;
    Ok((encrypt_with_meta(plain, key, &meta)?, meta))
}

/// Encrypts a gray or binary image with seeds `y⁰₀ = nonce0`, `y⁰₂ = nonce2`.
pub fn encrypt_gray(plain: &ImageBuffer, key: &SecretKey, nonce0: f64, nonce2: f64) -> Result<(ImageBuffer, CipherMeta)> {
    if plain.kind() == ImageKind::Color {
        return Err(Error::InvalidImage("expected a gray or binary image".into()));
    }
    let meta = make_meta(plain, nonce0, nonce2)?;
    Ok((encrypt_with_meta(plain, key, &meta)?, meta))
}

/// Dispatches on the image kind; `nonce_aux` is `y⁰₄` (colour) or `y⁰₂`.
pub fn encrypt_image(plain: &ImageBuffer, key: &SecretKey, nonce0: f64, nonce_aux: f64) -> Result<(ImageBuffer, CipherMeta)> {
    match plain.kind() {
        ImageKind::Color => encrypt(plain, key, nonce0, nonce_aux),
        _ => encrypt_gray(plain, key, nonce0, nonce_aux),
    }
}

/// Inverts encryption using only the ciphertext, its metadata and the key.
///
/// A binary-kind result that is not {0, 255}-valued (wrong key or damaged
/// ciphertext) is returned tagged as gray.
pub fn decrypt(cipher: &ImageBuffer, meta: &CipherMeta, key: &SecretKey) -> Result<ImageBuffer> {
    meta.validate()?;
    let ks = build_keystreams(key, meta)?;
    let work = cipher.clone().with_kind(working_kind(cipher.kind()))?;
    let joined = undo_post_shift_and_whiten(&work, meta, &ks)?;
    let parts = xor_quadrants(&div(&joined)?, &ks)?;
    let shifted = ediv(&parts)?;
    let plain = unapply(&shifted, &pre_shifts(meta));
    match meta.kind {
        ImageKind::Binary => {
            let gray = plain.clone();
            Ok(plain.with_kind(ImageKind::Binary).unwrap_or(gray))
        }
        k => plain.with_kind(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::Case;
    use crate::image::Matrix;

    fn ramp(rows: usize, cols: usize, kind: ImageKind) -> ImageBuffer {
        let data = (0..rows * cols * kind.channels())
            .map(|x| match kind {
                ImageKind::Binary => if (x / 7) % 2 == 0 { 0 } else { 255 },
                _ => (x * 37 % 251) as u8,
            })
            .collect();
        ImageBuffer::new(rows, cols, kind, data).unwrap()
    }

    #[test]
    fn gray_preshift_composes_by_hand() {
        let img = ImageBuffer::new(4, 4, ImageKind::Gray, (0..16).collect()).unwrap();
        // [4, −5] then [3, 6] ≡ [3, 1] mod 4
        assert_eq!(pre_shift_gray(&img, 16), circshift3(&img, 3, 1, 0));
    }

    #[test]
    fn preshift_identities() {
        let img = ramp(5, 6, ImageKind::Color);
        assert_eq!(pre_shift(&img, 0, 0, 0), img);
        let img = ImageBuffer::new(4, 4, ImageKind::Gray, (0..16).collect()).unwrap();
        // y₁ = 240: [60, −80], [48, 96], all multiples of 4
        assert_eq!(pre_shift_gray(&img, 240), img);
    }

    fn zero_keystreams(rows: usize, cols: usize) -> KeystreamSet {
        let g = super::super::quadrant::QuadrantGeometry::new(rows, cols).unwrap();
        let z = || {
            [
                Matrix::zeros(rows, cols),
                Matrix::zeros(g.dims(1).0, g.dims(1).1),
                Matrix::zeros(g.dims(2).0, g.dims(2).1),
                Matrix::zeros(g.dims(3).0, g.dims(3).1),
                Matrix::zeros(g.dims(4).0, g.dims(4).1),
            ]
        };
        KeystreamSet {
            z1: z(),
            z2: z(),
            t: [0; 5],
            seeds: [0.0; 5],
        }
    }

    #[test]
    fn post_shift_identity_for_trivial_amounts() {
        let img = ramp(4, 4, ImageKind::Gray);
        let meta = CipherMeta {
            sums: vec![0],
            nonce0: 0.0,
            nonce_aux: 0.0,
            rows: 4,
            cols: 4,
            kind: ImageKind::Gray,
        };
        let ks = zero_keystreams(4, 4);
        assert_eq!(post_shift_and_whiten(&img, &meta, &ks).unwrap(), img);
    }

    #[test]
    fn first_channel_row_shift() {
        let img = ramp(6, 5, ImageKind::Color);
        let meta = CipherMeta {
            sums: vec![7, 0, 0],
            nonce0: 0.0,
            nonce_aux: 0.0,
            rows: 6,
            cols: 5,
            kind: ImageKind::Color,
        };
        let mut ks = zero_keystreams(6, 5);
        ks.t[0] = 3;
        let whitened = {
            // undo only the final shifts to see the post-6(b) state
            let out = post_shift_and_whiten(&img, &meta, &ks).unwrap();
            unapply(&out, &final_shifts(&meta))
        };
        let expected = circshift2(&img.channel(0), (-7 + 3i64).rem_euclid(6), 3);
        assert_eq!(whitened.channel(0), expected);
        assert_eq!(undo_post_shift_and_whiten(&post_shift_and_whiten(&img, &meta, &ks).unwrap(), &meta, &ks).unwrap(), img);
    }

    #[test]
    fn round_trip_all_kinds() {
        let key = SecretKey::reference();
        for kind in [ImageKind::Color, ImageKind::Gray, ImageKind::Binary] {
            for (m, n) in [(2, 2), (3, 7), (16, 16), (33, 20)] {
                let img = ramp(m, n, kind);
                let (c, meta) = encrypt_image(&img, &key, 0.123, 0.456).unwrap();
                assert_eq!((c.rows(), c.cols(), c.channels()), (m, n, kind.channels()));
                assert_eq!(decrypt(&c, &meta, &key).unwrap(), img, "{kind} {m}x{n}");
            }
        }
    }

    #[test]
    fn deterministic_for_fixed_nonces() {
        let key = SecretKey::reference().with_map(Case::III);
        let img = ramp(20, 24, ImageKind::Color);
        let a = encrypt(&img, &key, 0.9, 0.1).unwrap();
        let b = encrypt(&img, &key, 0.9, 0.1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn kind_checks() {
        let key = SecretKey::reference();
        assert!(encrypt(&ramp(4, 4, ImageKind::Gray), &key, 0.1, 0.1).is_err());
        assert!(encrypt_gray(&ramp(4, 4, ImageKind::Color), &key, 0.1, 0.1).is_err());
        assert!(encrypt(&ramp(4, 4, ImageKind::Color), &key, 1.1, 0.1).is_err());
        let one_row = ImageBuffer::filled(1, 8, ImageKind::Gray, 5).unwrap();
        assert!(matches!(encrypt_gray(&one_row, &key, 0.1, 0.1), Err(Error::ImageTooSmall { .. })));
    }

    #[test]
    fn decrypt_rejects_mismatched_meta() {
        let key = SecretKey::reference();
        let (c, mut meta) = encrypt(&ramp(8, 8, ImageKind::Color), &key, 0.2, 0.3).unwrap();
        meta.rows = 9;
        assert!(decrypt(&c, &meta, &key).is_err());

        let (c, mut meta) = encrypt_gray(&ramp(8, 8, ImageKind::Gray), &key, 0.2, 0.3).unwrap();
        meta.kind = ImageKind::Color;
        assert!(decrypt(&c, &meta, &key).is_err());
    }

    #[test]
    fn wrong_channel_sum_breaks_decryption() {
        let key = SecretKey::reference();
        let img = ramp(16, 16, ImageKind::Color);
        let (c, mut meta) = encrypt(&img, &key, 0.2, 0.3).unwrap();
        meta.sums[0] += 1;
        assert_ne!(decrypt(&c, &meta, &key).unwrap(), img);
    }

    #[test]
    fn all_255_color_image_round_trips() {
        // seeds y⁰ₖ are exactly 1.0 here
        let key = SecretKey::reference();
        let img = ImageBuffer::filled(6, 6, ImageKind::Color, 255).unwrap();
        let (c, meta) = encrypt(&img, &key, 0.5, 0.5).unwrap();
        assert_eq!(decrypt(&c, &meta, &key).unwrap(), img);
    }
}
