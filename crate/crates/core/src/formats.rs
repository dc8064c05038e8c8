//! Lossless image file I/O. PNG is the only output format; binary PPM/PGM
//! is accepted as input for fixtures.

use std::io::Cursor;
use std::path::Path;

use image::{DynamicImage, ExtendedColorType, ImageFormat, ImageReader};

use crate::error::{Error, Result};
use crate::image::{ImageBuffer, ImageKind};

fn from_dynamic(img: DynamicImage) -> Result<ImageBuffer> {
    let (cols, rows) = (img.width() as usize, img.height() as usize);
    match img {
        DynamicImage::ImageLuma8(buf) => {
            let data = buf.into_raw();
            let kind = if data.iter().all(|&v| v == 0 || v == 255) {
                ImageKind::Binary
            } else {
                ImageKind::Gray
            };
            ImageBuffer::new(rows, cols, kind, data)
        }
        DynamicImage::ImageRgb8(buf) => ImageBuffer::new(rows, cols, ImageKind::Color, buf.into_raw()),
        other => Err(Error::Format(format!(
            "unsupported pixel layout {:?}; 8-bit gray or RGB without alpha is required",
            other.color()
        ))),
    }
}

fn check_lossless(format: Option<ImageFormat>) -> Result<()> {
    match format {
        Some(ImageFormat::Png) | Some(ImageFormat::Pnm) => Ok(()),
        Some(f) => Err(Error::Format(format!(
            "{f:?} input rejected: only lossless PNG (or PPM/PGM) images are accepted"
        ))),
        None => Err(Error::Format("unrecognized image format".into())),
    }
}

/// Decodes PNG or PNM bytes. Single-channel images whose samples are all 0
/// or 255 load as [`ImageKind::Binary`].
pub fn decode_image(bytes: &[u8]) -> Result<ImageBuffer> {
    let format = image::guess_format(bytes).ok();
    check_lossless(format)?;
    let img = image::load_from_memory_with_format(bytes, format.expect("checked"))
        .map_err(|e| Error::Format(e.to_string()))?;
    from_dynamic(img)
}

pub fn load_image(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    let path = path.as_ref();
    let reader = ImageReader::open(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
        .with_guessed_format()
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    check_lossless(reader.format())?;
    let img = reader.decode().map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    from_dynamic(img)
}

fn color_type(img: &ImageBuffer) -> ExtendedColorType {
    match img.kind() {
        ImageKind::Color => ExtendedColorType::Rgb8,
        ImageKind::Gray | ImageKind::Binary => ExtendedColorType::L8,
    }
}

pub fn encode_png(img: &ImageBuffer) -> Result<Vec<u8>> {
    let mut out = Cursor::new(Vec::new());
    image::write_buffer_with_format(
        &mut out,
        img.as_slice(),
        img.cols() as u32,
        img.rows() as u32,
        color_type(img),
        ImageFormat::Png,
    )
    .map_err(|e| Error::Format(e.to_string()))?;
    Ok(out.into_inner())
}

pub fn save_png(path: impl AsRef<Path>, img: &ImageBuffer) -> Result<()> {
    let path = path.as_ref();
    let ext = path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
    if ext.as_deref() != Some("png") {
        return Err(Error::Format(format!("{}: output images must use the .png extension", path.display())));
    }
    let bytes = encode_png(img)?;
    std::fs::write(path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
