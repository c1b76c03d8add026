//! Log-domain image statistics.
//!
//! The mean `<+>` of `(1/card(D)) <x> f(x, y)` and the variance
//! `sum (1/card(D)) ||f(x, y) <-> mu||^2` reduce, through `phi`, to the
//! ordinary population mean and variance of the log coordinates. That is
//! the path used here; [`log_mean_fold_oracle`] keeps the literal fold for
//! cross-checking.

use crate::error::DomainError;
use crate::image::GrayImage;
use crate::lip::{self, phi, phi_inv, GrayLevel, LogCoordinate};

/// Log-domain mean, variance, and pixel count of an image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageStats {
    pub mean: GrayLevel,
    /// Population variance of the log coordinates.
    pub variance: f64,
    pub count: usize,
}

/// Desired output statistics for enhancement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetStats {
    mean: GrayLevel,
    variance: f64,
}

impl TargetStats {
    pub fn new(mean: GrayLevel, variance: f64) -> Result<Self, DomainError> {
        if !(variance.is_finite() && variance > 0.0) {
            return Err(DomainError::InvalidTargetVariance(variance));
        }
        Ok(TargetStats { mean, variance })
    }

    /// Mean 0, variance 1/3: the moments of a uniform variable on `(-1, 1)`.
    pub fn uniform() -> Self {
        TargetStats {
            mean: GrayLevel::ZERO,
            variance: 1.0 / 3.0,
        }
    }

    pub fn mean(&self) -> GrayLevel {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }
}

impl Default for TargetStats {
    fn default() -> Self {
        TargetStats::uniform()
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Mean of the log coordinates, accumulated as offsets from the first pixel
/// so that a constant image reproduces its coordinate exactly.
fn mean_coordinate(img: &GrayImage) -> f64 {
    let pivot = phi(img.pixels()[0]).get();
    let sum: CompensatedSum = img.pixels().iter().map(|&p| phi(p).get() - pivot).collect();
    pivot + sum.total() / img.len() as f64
}

fn check_nonempty(img: &GrayImage) -> Result<(), DomainError> {
    if img.is_empty() {
        return Err(DomainError::EmptyImage {
            width: img.width(),
            height: img.height(),
        });
    }
    Ok(())
}

/// `mu_f = phi_inv(mean of phi(f))`.
pub fn log_mean(img: &GrayImage) -> Result<GrayLevel, DomainError> {
    check_nonempty(img)?;
    Ok(phi_inv(LogCoordinate::new(mean_coordinate(img))?))
}

/// `sigma_f^2 = mean of (phi(f) - phi(mean))^2`, population normalised.
pub fn log_variance(img: &GrayImage, mean: GrayLevel) -> Result<f64, DomainError> {
    check_nonempty(img)?;
    let m = phi(mean).get();
    let sum: CompensatedSum = img
        .pixels()
        .iter()
        .map(|&p| {
            let d = phi(p).get() - m;
            d * d
        })
        .collect();
    Ok(sum.total() / img.len() as f64)
}

pub fn compute_stats(img: &GrayImage) -> Result<ImageStats, DomainError> {
    let mean = log_mean(img)?;
    let variance = log_variance(img, mean)?;
    Ok(ImageStats {
        mean,
        variance,
        count: img.len(),
    })
}

/// Literal evaluation of the mean: a row-major `<+>` fold over
/// `(1/card(D)) <x> f(x, y)`, using the direct quotient formulas on plain values.
///
/// Kept as an oracle for [`log_mean`]; it never goes through `phi`.
pub fn log_mean_fold_oracle(img: &GrayImage) -> Result<GrayLevel, DomainError> {
    check_nonempty(img)?;
    let weight = 1.0 / img.len() as f64;
    let folded = img
        .values()
        .map(|v| lip::direct::smul(weight, v))
        .fold(0.0, lip::direct::add);
    Ok(GrayLevel::clamped(folded)?.0)
}
