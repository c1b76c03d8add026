//! Classical linear contrast stretch in raw code space, with truncation.
//!
//! Used only as a comparison point: it maps the image's mean and standard
//! deviation onto the same target moments as the logarithmic method, but
//! with ordinary arithmetic, and counts how many pixels land outside `[0, M]`.

use lipaffine::{RawImage, TargetStats};

pub struct Stretch {
    pub image: RawImage,
    pub clipped: usize,
}

/// Returns `None` for constant images.
pub fn linear_stretch(img: &RawImage, target: &TargetStats) -> Option<Stretch> {
    let n = img.pixels().len() as f64;
    let m = f64::from(img.maxval());
    let mean = img.pixels().iter().map(|&p| f64::from(p)).sum::<f64>() / n;
    let var = img
        .pixels()
        .iter()
        .map(|&p| (f64::from(p) - mean).powi(2))
        .sum::<f64>()
        / n;
    if var <= 0.0 {
        return None;
    }
    // target moments expressed in code units through the linear codec
    let half_range = (m + 1.0) / 2.0;
    let target_mean = target.mean().value() * half_range + m / 2.0;
    let gain = target.variance().sqrt() * half_range / var.sqrt();

    let mut clipped = 0;
    let pixels = img
        .pixels()
        .iter()
        .map(|&p| {
            let code = (target_mean + gain * (f64::from(p) - mean)).round();
            if code < 0.0 || code > m {
                clipped += 1;
            }
            code.clamp(0.0, m) as u16
        })
        .collect();
    let image = RawImage::new(img.width(), img.height(), img.maxval(), pixels)
        .expect("stretched codes are clamped to maxval");
    Some(Stretch { image, clipped })
}
