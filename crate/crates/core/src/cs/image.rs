use crate::curves::{Cell, ScanOrder};
use crate::error::{domain, Result};

/// A grayscale image stored row-major, row 0 at the top.
///
/// Grid cells map to pixels with the grid origin at the bottom-left: cell
/// `(x, y)` is column `x`, row `height - 1 - y`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: u32, height: u32, pixels: Vec<f64>) -> Result<GrayImage> {
        if pixels.len() as u64 != u64::from(width) * u64::from(height) {
            return Err(domain(format!(
                "{} pixels given for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn from_bytes(width: u32, height: u32, bytes: &[u8]) -> Result<GrayImage> {
        GrayImage::new(width, height, bytes.iter().map(|&b| f64::from(b)).collect())
    }

    pub fn zeros(width: u32, height: u32) -> GrayImage {
        GrayImage {
            width,
            height,
            pixels: vec![0.0; (width * height) as usize],
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    /// Pixel at column `col`, row `row` (row 0 at the top).
    pub fn get(&self, col: u32, row: u32) -> f64 {
        self.pixels[(row * self.width + col) as usize]
    }

    pub fn set(&mut self, col: u32, row: u32, value: f64) {
        self.pixels[(row * self.width + col) as usize] = value;
    }

    fn offset_of(&self, cell: Cell) -> usize {
        ((self.height - 1 - cell.y) * self.width + cell.x) as usize
    }

    pub fn at_cell(&self, cell: Cell) -> f64 {
        self.pixels[self.offset_of(cell)]
    }

    /// The image with every pixel clamped to `[0, 255]`.
    pub fn clipped(&self) -> GrayImage {
        GrayImage {
            pixels: self.pixels.iter().map(|p| p.clamp(0.0, 255.0)).collect(),
            ..self.clone()
        }
    }

    pub fn sum(&self) -> f64 {
        self.pixels.iter().sum()
    }
}

/// Pads a 28×28 digit to 32×32 with a two-pixel black border.
pub fn pad_image(img: &GrayImage) -> Result<GrayImage> {
    if (img.width, img.height) != (28, 28) {
        return Err(domain(format!(
            "expected a 28x28 image, got {}x{}",
            img.width, img.height
        )));
    }
    let mut out = GrayImage::zeros(32, 32);
    for row in 0..28 {
        for col in 0..28 {
            out.set(col + 2, row + 2, img.get(col, row));
        }
    }
    Ok(out)
}

fn check_dims(img: &GrayImage, scan: &ScanOrder) -> Result<()> {
    if (img.width, img.height) != (scan.width(), scan.height()) {
        return Err(domain(format!(
            "image is {}x{} but {} is {}x{}",
            img.width,
            img.height,
            scan.label(),
            scan.width(),
            scan.height()
        )));
    }
    Ok(())
}

/// `signal[d]` is the pixel under cell `d` of the scan.
pub fn scan_flatten(img: &GrayImage, scan: &ScanOrder) -> Result<Vec<f64>> {
    check_dims(img, scan)?;
    Ok(scan.cells().iter().map(|&c| img.at_cell(c)).collect())
}

/// Inverse of [`scan_flatten`].
pub fn unflatten(signal: &[f64], scan: &ScanOrder) -> Result<GrayImage> {
    if signal.len() != scan.len() {
        return Err(domain(format!(
            "signal has {} samples but {} has {} cells",
            signal.len(),
            scan.label(),
            scan.len()
        )));
    }
    let mut img = GrayImage::zeros(scan.width(), scan.height());
    for (&c, &v) in scan.cells().iter().zip(signal) {
        let k = img.offset_of(c);
        img.pixels[k] = v;
    }
    Ok(img)
}
