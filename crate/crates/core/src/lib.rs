//! Bounded logarithmic gray-level algebra and automatic affine image enhancement.
//!
//! Gray levels live in the open interval `(-1, 1)`, which carries a real
//! vector-space structure through the isomorphism `phi(v) = atanh(v)`.
//! Every operation here stays inside the interval, so enhancement never
//! needs clipping.
//!
//! The crate is organised bottom-up:
//!
//! * [`lip`]: scalar algebra (`<+>`, `<->`, `<x>`, `phi`, inner product, norm)
//! * [`image`]: raw integer images and the pixel codec onto `(-1, 1)`
//! * [`stats`]: log-domain mean and variance
//! * [`enhance`]: affine transforms and automatic parameter estimation
//! * [`pnm`]: PGM (P2/P5) reading and writing

pub mod enhance;
pub mod error;
pub mod image;
pub mod lip;
pub mod pnm;
pub mod stats;

pub use enhance::{
    apply_image, apply_image_counting, apply_point, apply_point_checked, compose, enhance,
    estimate_transform, invert, sample_curve, AffineTransform, Enhancement, EPSILON_VAR,
};
pub use error::{DomainError, EnhanceError, PnmError};
pub use image::{decode_image, decode_pixel, encode_image, encode_pixel, GrayImage, RawImage};
pub use lip::{
    lip_add, lip_inner, lip_neg, lip_norm, lip_smul, lip_sub, phi, phi_inv, phi_inv_checked,
    GrayLevel, LogCoordinate, EPSILON_E,
};
pub use pnm::{
    read_pgm, read_pgm_header, read_pgm_with_header, to_pgm_bytes, write_pgm, PnmFormat, PnmHeader,
};
pub use stats::{
    compute_stats, log_mean, log_mean_fold_oracle, log_variance, ImageStats, TargetStats,
};
