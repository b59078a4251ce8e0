use super::image::GrayImage;
use crate::error::{domain, Result};

/// Peak intensity of 8-bit images.
pub const PEAK: f64 = 255.0;

/// Value returned by [`psnr`] for identical images; written as `inf`.
pub const PSNR_IDENTICAL: f64 = f64::INFINITY;

/// Peak signal-to-noise ratio in dB, `10·log10(255² / MSE)`, after clipping
/// the reconstruction to `[0, 255]`.
pub fn psnr(original: &GrayImage, reconstructed: &GrayImage) -> Result<f64> {
    if (original.width(), original.height()) != (reconstructed.width(), reconstructed.height()) {
        return Err(domain(format!(
            "cannot compare a {}x{} image with a {}x{} image",
            original.width(),
            original.height(),
            reconstructed.width(),
            reconstructed.height()
        )));
    }
    let n = original.pixels().len();
    if n == 0 {
        return Err(domain("empty images"));
    }
    let sse: f64 = original
        .pixels()
        .iter()
        .zip(reconstructed.pixels())
        .map(|(a, b)| {
            let e = a - b.clamp(0.0, PEAK);
            e * e
        })
        .sum();
    if sse == 0.0 {
        return Ok(PSNR_IDENTICAL);
    }
    Ok(10.0 * (PEAK * PEAK / (sse / n as f64)).log10())
}

/// Formats a dB value for CSV output.
pub fn format_db(value: f64) -> String {
    if value.is_infinite() && value > 0.0 {
        "inf".into()
    } else {
        format!("{value:.6}")
    }
}
