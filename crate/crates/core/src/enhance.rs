//! Affine transforms `psi(v) = alpha <x> (v <+> beta)` and automatic enhancement.
//!
//! In log coordinates `psi` is the straight line `x -> alpha (x + phi(beta))`,
//! which makes composition, inversion and parameter estimation closed-form.
//! Estimation picks `alpha` and `beta` so that the output image has the
//! log-mean and log-variance of a [`TargetStats`].

use crate::error::{DomainError, EnhanceError};
use crate::image::GrayImage;
use crate::lip::{self, lip_neg, lip_sub, phi, phi_inv, GrayLevel, LogCoordinate};
use crate::stats::{compute_stats, ImageStats, TargetStats};

/// Log-variance at or below which an image counts as constant.
pub const EPSILON_VAR: f64 = 1e-18;

/// Curve samples stay this far from `+-1`.
const CURVE_MARGIN: f64 = 1.0 / 1024.0;

/// `psi(v) = alpha <x> (v <+> beta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineTransform {
    pub alpha: f64,
    pub beta: GrayLevel,
}

impl AffineTransform {
    pub const IDENTITY: AffineTransform = AffineTransform {
        alpha: 1.0,
        beta: GrayLevel::ZERO,
    };

    pub fn new(alpha: f64, beta: GrayLevel) -> Result<Self, DomainError> {
        if !alpha.is_finite() {
            return Err(DomainError::NonFinite(alpha));
        }
        Ok(AffineTransform { alpha, beta })
    }

    /// Convenience constructor from plain numbers; `beta` must lie in `(-1, 1)`.
    pub fn from_params(alpha: f64, beta: f64) -> Result<Self, DomainError> {
        AffineTransform::new(alpha, GrayLevel::new(beta)?)
    }

    /// Human-readable form with parameters rounded to `decimals`, e.g.
    /// `3.02 <x> (v <-> 0.65)`. A negative `beta` is written with `<->`.
    pub fn describe(&self, decimals: usize) -> String {
        let b = self.beta.value();
        let mag = format!("{:.*}", decimals, b.abs());
        let op = if b < 0.0 && mag.bytes().any(|c| matches!(c, b'1'..=b'9')) {
            "<->"
        } else {
            "<+>"
        };
        format!("{:.*} <x> (v {op} {mag})", decimals, self.alpha)
    }
}

impl Default for AffineTransform {
    fn default() -> Self {
        AffineTransform::IDENTITY
    }
}

/// Result of [`enhance`].
#[derive(Debug, Clone, PartialEq)]
pub struct Enhancement {
    pub image: GrayImage,
    pub transform: AffineTransform,
    /// Statistics of the input image.
    pub stats: ImageStats,
}

/// Chooses `alpha`, `beta` so that the transformed image has the target log-mean
/// and log-variance.
///
/// With a zero target mean this is `alpha = sigma_u / sigma_f`, `beta = <-> mu_f`.
/// For other target means `beta` is shifted so the output log-mean lands on it.
pub fn estimate_transform(
    stats: &ImageStats,
    target: &TargetStats,
) -> Result<AffineTransform, EnhanceError> {
    if stats.variance.is_nan() || stats.variance <= EPSILON_VAR {
        return Err(EnhanceError::ConstantImage {
            variance: stats.variance,
        });
    }
    let sigma_f = stats.variance.sqrt();
    let sigma_u = target.variance().sqrt();
    let alpha = sigma_u / sigma_f;
    let target_coord = phi(target.mean()).get();
    let beta = if target_coord == 0.0 {
        lip_neg(stats.mean)
    } else {
        let pre_image = phi_inv(LogCoordinate::new(target_coord * sigma_f / sigma_u)?);
        lip_sub(pre_image, stats.mean)
    };
    Ok(AffineTransform::new(alpha, beta)?)
}

pub fn apply_point(t: &AffineTransform, v: GrayLevel) -> GrayLevel {
    apply_point_checked(t, v).0
}

/// [`apply_point`] plus a flag set when the result had to be pulled back
/// inside `(-1, 1)` because it rounded to `+-1`.
pub fn apply_point_checked(t: &AffineTransform, v: GrayLevel) -> (GrayLevel, bool) {
    let (shifted, s1) = lip::lip_add_checked(v, t.beta);
    let (out, s2) = lip::lip_smul_checked(t.alpha, shifted);
    // unit gain returns the sum itself; any other gain rebuilds the value from phi
    (out, if t.alpha == 1.0 { s1 } else { s2 })
}

pub fn apply_image(t: &AffineTransform, img: &GrayImage) -> GrayImage {
    img.map(|v| apply_point(t, v))
}

/// [`apply_image`] that also counts pixels whose value had to be clamped.
pub fn apply_image_counting(t: &AffineTransform, img: &GrayImage) -> (GrayImage, usize) {
    let mut clamped = 0;
    let out = img.map(|v| {
        let (p, c) = apply_point_checked(t, v);
        clamped += usize::from(c);
        p
    });
    (out, clamped)
}

/// Estimates the transform from the image's own statistics and applies it.
pub fn enhance(img: &GrayImage, target: &TargetStats) -> Result<Enhancement, EnhanceError> {
    let stats = compute_stats(img)?;
    let transform = estimate_transform(&stats, target)?;
    Ok(Enhancement {
        image: apply_image(&transform, img),
        transform,
        stats,
    })
}

/// The transform equal to applying `first` and then `second`.
pub fn compose(
    second: &AffineTransform,
    first: &AffineTransform,
) -> Result<AffineTransform, EnhanceError> {
    if first.alpha == 0.0 {
        return Err(EnhanceError::DegenerateComposition);
    }
    // a2 (a1 (x + b1) + b2) = a2 a1 (x + b1 + b2 / a1)
    let b = phi(first.beta).get() + phi(second.beta).get() / first.alpha;
    Ok(AffineTransform::new(
        second.alpha * first.alpha,
        phi_inv(LogCoordinate::new(b)?),
    )?)
}

pub fn invert(t: &AffineTransform) -> Result<AffineTransform, EnhanceError> {
    if t.alpha == 0.0 {
        return Err(EnhanceError::NonInvertible);
    }
    let b = -t.alpha * phi(t.beta).get();
    Ok(AffineTransform::new(
        1.0 / t.alpha,
        phi_inv(LogCoordinate::new(b)?),
    )?)
}

/// `n` points `(v, psi(v))` with `v` evenly spaced over `[-1 + 1/1024, 1 - 1/1024]`.
pub fn sample_curve(
    t: &AffineTransform,
    n: usize,
) -> Result<Vec<(GrayLevel, GrayLevel)>, DomainError> {
    if n < 2 {
        return Err(DomainError::TooFewSamples(n));
    }
    let lo = -1.0 + CURVE_MARGIN;
    let hi = 1.0 - CURVE_MARGIN;
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| {
            let v = GrayLevel::new(lo + (hi - lo) * i as f64 / last)?;
            Ok((v, apply_point(t, v)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN3: f64 = 1.098_612_288_668_109_7;
    /// tanh(2.37 * atanh(0.71)), 40-digit reference.
    const PSI1_AT_ZERO: f64 = 0.970_604_427_179_832;

    fn g(v: f64) -> GrayLevel {
        GrayLevel::new(v).unwrap()
    }

    fn t(alpha: f64, beta: f64) -> AffineTransform {
        AffineTransform::from_params(alpha, beta).unwrap()
    }

    fn stats(mean: f64, variance: f64) -> ImageStats {
        ImageStats {
            mean: g(mean),
            variance,
            count: 10,
        }
    }

    #[test]
    fn estimate_examples() {
        let est = estimate_transform(&stats(0.0, LN3 * LN3), &TargetStats::uniform()).unwrap();
        assert!((est.alpha - 0.525_526_862_519_961_3).abs() < 1e-15);
        assert_eq!(est.beta.value(), 0.0);

        let est = estimate_transform(&stats(0.4, 1.0 / 3.0), &TargetStats::uniform()).unwrap();
        assert_eq!(est.alpha, 1.0);
        assert_eq!(est.beta, lip_neg(g(0.4)));

        let err = estimate_transform(&stats(0.0, 0.0), &TargetStats::uniform());
        assert_eq!(err, Err(EnhanceError::ConstantImage { variance: 0.0 }));
        let err = estimate_transform(&stats(0.0, 1e-19), &TargetStats::uniform());
        assert!(matches!(err, Err(EnhanceError::ConstantImage { .. })));
    }

    #[test]
    fn estimate_with_nonzero_target_mean() {
        let target = TargetStats::new(g(0.3), 0.2).unwrap();
        let img = GrayImage::from_values(4, 1, &[-0.9, -0.5, 0.1, 0.6]).unwrap();
        let out = enhance(&img, &target).unwrap();
        let s = compute_stats(&out.image).unwrap();
        assert!((phi(s.mean).get() - phi(g(0.3)).get()).abs() < 1e-12);
        assert!((s.variance - 0.2).abs() < 1e-12);
    }

    #[test]
    fn apply_point_examples() {
        let v = apply_point(&t(2.37, 0.71), GrayLevel::ZERO);
        assert!((v.value() - PSI1_AT_ZERO).abs() < 1e-15);
        for x in [-0.999, -0.2, 0.0, 0.5, 0.93] {
            assert_eq!(apply_point(&AffineTransform::IDENTITY, g(x)), g(x));
        }
        let cancel = apply_point(&t(4.69, 0.01), lip_neg(g(0.01)));
        assert_eq!(cancel.value(), 0.0);
    }

    #[test]
    fn apply_image_examples() {
        let img = GrayImage::from_values(2, 1, &[0.5, -0.5]).unwrap();
        let out = apply_image(&t(2.0, 0.0), &img);
        let vals: Vec<f64> = out.values().collect();
        assert!((vals[0] - 0.8).abs() < 1e-15 && (vals[1] + 0.8).abs() < 1e-15);
        assert_eq!(apply_image(&AffineTransform::IDENTITY, &img), img);
    }

    #[test]
    fn enhance_fixed_point() {
        // log coordinates +-1 have mean 0 and variance 1
        let x = (1.0f64 / 3.0).sqrt().tanh();
        let img = GrayImage::from_values(2, 2, &[x, -x, x, -x]).unwrap();
        let out = enhance(&img, &TargetStats::uniform()).unwrap();
        assert!((out.transform.alpha - 1.0).abs() < 1e-12);
        assert!(out.transform.beta.value().abs() < 1e-12);
        for (a, b) in out.image.values().zip(img.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn enhance_sign_patterns() {
        let dark = GrayImage::from_values(3, 1, &[-0.9, -0.7, -0.4]).unwrap();
        assert!(
            enhance(&dark, &TargetStats::uniform())
                .unwrap()
                .transform
                .beta
                .value()
                > 0.0
        );
        let flat = GrayImage::from_values(3, 1, &[0.01, 0.02, 0.03]).unwrap();
        assert!(
            enhance(&flat, &TargetStats::uniform())
                .unwrap()
                .transform
                .alpha
                > 1.0
        );
        let constant = GrayImage::from_values(1, 1, &[0.2]).unwrap();
        assert!(matches!(
            enhance(&constant, &TargetStats::uniform()),
            Err(EnhanceError::ConstantImage { .. })
        ));
    }

    #[test]
    fn compose_examples() {
        let a = t(2.37, 0.71);
        let c = compose(&AffineTransform::IDENTITY, &a).unwrap();
        assert!((c.alpha - a.alpha).abs() < 1e-12);
        assert!((c.beta.value() - a.beta.value()).abs() < 1e-12);

        let round = compose(&invert(&a).unwrap(), &a).unwrap();
        assert!((round.alpha - 1.0).abs() < 1e-10);
        assert!(round.beta.value().abs() < 1e-10);

        let gains = compose(&t(3.0, 0.0), &t(2.0, 0.0)).unwrap();
        assert_eq!(gains.alpha, 6.0);
        assert_eq!(gains.beta.value(), 0.0);

        let zero = AffineTransform::new(0.0, GrayLevel::ZERO).unwrap();
        assert_eq!(compose(&a, &zero), Err(EnhanceError::DegenerateComposition));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(
            invert(&AffineTransform::IDENTITY).unwrap(),
            AffineTransform::IDENTITY
        );
        let inv = invert(&t(2.0, 0.0)).unwrap();
        assert_eq!(inv.alpha, 0.5);
        assert_eq!(inv.beta.value(), 0.0);
        let psi1 = t(2.37, 0.71);
        let inv = invert(&psi1).unwrap();
        for i in 0..=100 {
            let v = g(-0.99 + 1.98 * i as f64 / 100.0);
            let back = apply_point(&inv, apply_point(&psi1, v));
            assert!((back.value() - v.value()).abs() < 1e-10);
        }
        let zero = AffineTransform::new(0.0, g(0.1)).unwrap();
        assert_eq!(invert(&zero), Err(EnhanceError::NonInvertible));
    }

    #[test]
    fn curve_examples() {
        let id = sample_curve(&AffineTransform::IDENTITY, 17).unwrap();
        assert!(id.iter().all(|(a, b)| a == b));
        assert_eq!(id[0].0.value(), -1.0 + 1.0 / 1024.0);
        assert_eq!(id[16].0.value(), 1.0 - 1.0 / 1024.0);

        let c = sample_curve(&t(2.37, 0.71), 3).unwrap();
        assert_eq!(c[1].0.value(), 0.0);
        assert!((c[1].1.value() - PSI1_AT_ZERO).abs() < 1e-15);

        let c = sample_curve(&t(3.02, -0.65), 256).unwrap();
        assert!(c.windows(2).all(|w| w[0].1 < w[1].1 && w[0].0 < w[1].0));

        assert_eq!(
            sample_curve(&AffineTransform::IDENTITY, 1),
            Err(DomainError::TooFewSamples(1))
        );
    }

    #[test]
    fn describe_rounds_and_signs() {
        assert_eq!(t(2.37, 0.71).describe(2), "2.37 <x> (v <+> 0.71)");
        assert_eq!(t(3.0212, -0.6493).describe(2), "3.02 <x> (v <-> 0.65)");
        assert_eq!(AffineTransform::IDENTITY.describe(1), "1.0 <x> (v <+> 0.0)");
        assert_eq!(t(1.0, -1e-9).describe(2), "1.00 <x> (v <+> 0.00)");
    }

    #[test]
    fn counting_reports_no_clamps_for_moderate_transforms() {
        let img = GrayImage::from_values(3, 1, &[-0.996, 0.0, 0.996]).unwrap();
        let (_, clamped) = apply_image_counting(&t(4.69, 0.01), &img);
        assert_eq!(clamped, 0);
        let (out, clamped) = apply_image_counting(&t(40.0, 0.0), &img);
        assert_eq!(clamped, 2);
        assert!(out.values().all(|v| v.abs() < 1.0));
    }
}
