//! Image containers and the codec between integer codes in `[0, M]` and gray levels.
//!
//! Code `g` maps to `(2g - M) / (M + 1)`: the centres of `M + 1` equal bins
//! tiling `(-1, 1)`. The map is affine, odd around mid-gray, and never reaches
//! the endpoints where `phi` diverges.

use crate::error::DomainError;
use crate::lip::GrayLevel;

/// Integer-valued image with samples in `[0, maxval]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawImage {
    width: usize,
    height: usize,
    maxval: u16,
    pixels: Vec<u16>,
}

impl RawImage {
    pub fn new(
        width: usize,
        height: usize,
        maxval: u16,
        pixels: Vec<u16>,
    ) -> Result<Self, DomainError> {
        check_dims(width, height, pixels.len())?;
        if maxval == 0 {
            return Err(DomainError::InvalidMaxval(0));
        }
        if let Some(&bad) = pixels.iter().find(|&&p| p > maxval) {
            return Err(DomainError::PixelOutOfRange {
                value: bad.into(),
                maxval: maxval.into(),
            });
        }
        Ok(RawImage {
            width,
            height,
            maxval,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn maxval(&self) -> u16 {
        self.maxval
    }

    pub fn pixels(&self) -> &[u16] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u16> {
        self.pixels
    }
}

/// An image over `D = width x height` with values in `(-1, 1)`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<GrayLevel>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<GrayLevel>) -> Result<Self, DomainError> {
        check_dims(width, height, pixels.len())?;
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    /// Builds an image from raw values, each of which must lie in `(-1, 1)`.
    pub fn from_values(width: usize, height: usize, values: &[f64]) -> Result<Self, DomainError> {
        let pixels = values
            .iter()
            .map(|&v| GrayLevel::new(v))
            .collect::<Result<Vec<_>, _>>()?;
        GrayImage::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// `card(D)`.
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    /// Always false for a constructed image; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[GrayLevel] {
        &self.pixels
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.pixels.iter().map(|p| p.value())
    }

    pub fn map<F: FnMut(GrayLevel) -> GrayLevel>(&self, f: F) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().copied().map(f).collect(),
        }
    }
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<(), DomainError> {
    if width == 0 || height == 0 {
        return Err(DomainError::EmptyImage { width, height });
    }
    let expected = width
        .checked_mul(height)
        .ok_or(DomainError::EmptyImage { width, height })?;
    if expected != len {
        return Err(DomainError::BufferSize {
            expected,
            actual: len,
        });
    }
    Ok(())
}

/// Maps code `g` in `[0, maxval]` to `(2g - maxval) / (maxval + 1)`.
pub fn decode_pixel(g: u16, maxval: u16) -> Result<GrayLevel, DomainError> {
    if maxval == 0 {
        return Err(DomainError::InvalidMaxval(0));
    }
    if g > maxval {
        return Err(DomainError::PixelOutOfRange {
            value: g.into(),
            maxval: maxval.into(),
        });
    }
    let m = f64::from(maxval);
    GrayLevel::new((2.0 * f64::from(g) - m) / (m + 1.0))
}

/// Inverse of [`decode_pixel`]: `round((v (M+1) + M) / 2)`, half away from zero,
/// then clamped to `[0, maxval]`.
pub fn encode_pixel(v: GrayLevel, maxval: u16) -> u16 {
    let m = f64::from(maxval);
    let code = ((v.value() * (m + 1.0) + m) / 2.0).round();
    code.clamp(0.0, m) as u16
}

pub fn decode_image(img: &RawImage) -> GrayImage {
    let pixels = img
        .pixels
        .iter()
        .map(|&g| decode_pixel(g, img.maxval).expect("RawImage samples are within maxval"))
        .collect();
    GrayImage {
        width: img.width,
        height: img.height,
        pixels,
    }
}

pub fn encode_image(img: &GrayImage, maxval: u16) -> Result<RawImage, DomainError> {
    if maxval == 0 {
        return Err(DomainError::InvalidMaxval(0));
    }
    Ok(RawImage {
        width: img.width,
        height: img.height,
        maxval,
        pixels: img
            .pixels
            .iter()
            .map(|&v| encode_pixel(v, maxval))
            .collect(),
    })
}
