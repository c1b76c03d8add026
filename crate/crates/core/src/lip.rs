//! Scalar algebra of the gray-level space `E = (-1, 1)`.
//!
//! `E` is a real vector space under
//!
//! ```text
//! a <+> b   = (a + b) / (1 + ab)
//! a <-> b   = (a - b) / (1 - ab)
//! l <x> v   = ((1+v)^l - (1-v)^l) / ((1+v)^l + (1-v)^l)
//! ```
//!
//! and `phi(v) = 1/2 ln((1+v)/(1-v)) = atanh(v)` is an isomorphism onto
//! `(R, +, *)`. A [`GrayLevel`] carries both its value in `E` and its image
//! under `phi`. All operations work on the log coordinate and rebuild the
//! value with `tanh`, which is well conditioned everywhere; the quotient forms
//! above lose precision near `+-1`. Results far out along the real line
//! (where `tanh` rounds to `+-1` in double precision) keep exact coordinates
//! while the reported value stays strictly inside the interval.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::DomainError;

/// Margin kept from `+-1` when a gray level is built from an arbitrary real.
pub const EPSILON_E: f64 = 1e-12;

/// Largest `f64` strictly below one.
const ONE_BELOW: f64 = 1.0 - f64::EPSILON / 2.0;

/// A gray level strictly inside `(-1, 1)`.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct GrayLevel {
    value: f64,
    coord: f64,
}

/// The image of a gray level under `phi`; an ordinary finite real.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct LogCoordinate(f64);

impl LogCoordinate {
    pub fn new(x: f64) -> Result<Self, DomainError> {
        if x.is_finite() {
            Ok(LogCoordinate(x))
        } else {
            Err(DomainError::NonFinite(x))
        }
    }

    /// Overflowed coordinates saturate at `+-f64::MAX`.
    fn saturating(x: f64) -> Self {
        debug_assert!(!x.is_nan(), "log coordinate became NaN");
        LogCoordinate(x.clamp(-f64::MAX, f64::MAX))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<LogCoordinate> for f64 {
    fn from(x: LogCoordinate) -> f64 {
        x.0
    }
}

impl GrayLevel {
    /// The neutral element `theta = 0`.
    pub const ZERO: GrayLevel = GrayLevel {
        value: 0.0,
        coord: 0.0,
    };

    /// Builds a gray level from a value that must already lie in `(-1, 1)`.
    ///
    /// Values within [`EPSILON_E`] of the boundary are accepted as-is, but
    /// their log coordinate is taken at `+-(1 - EPSILON_E)`.
    pub fn new(value: f64) -> Result<Self, DomainError> {
        if !value.is_finite() {
            return Err(DomainError::NonFinite(value));
        }
        if value <= -1.0 || value >= 1.0 {
            return Err(DomainError::OutOfInterval(value));
        }
        Ok(GrayLevel {
            value,
            coord: guarded_atanh(value),
        })
    }

    /// Builds a gray level from any non-NaN real, clamping into
    /// `[-1 + EPSILON_E, 1 - EPSILON_E]`. The flag reports whether clamping happened.
    pub fn clamped(value: f64) -> Result<(Self, bool), DomainError> {
        if value.is_nan() {
            return Err(DomainError::NonFinite(value));
        }
        let bound = 1.0 - EPSILON_E;
        let c = value.clamp(-bound, bound);
        Ok((
            GrayLevel {
                value: c,
                coord: guarded_atanh(c),
            },
            c != value,
        ))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.value
    }

    /// Same as [`phi`].
    #[inline]
    pub fn coordinate(self) -> LogCoordinate {
        LogCoordinate(self.coord)
    }

    /// Builds the value side from a coordinate. Returns `true` when `tanh`
    /// rounded to `+-1` and the value had to be pulled back inside.
    fn from_coord(coord: f64) -> (Self, bool) {
        let t = coord.tanh();
        if t.abs() >= 1.0 {
            (
                GrayLevel {
                    value: ONE_BELOW.copysign(coord),
                    coord,
                },
                true,
            )
        } else {
            (GrayLevel { value: t, coord }, false)
        }
    }
}

impl fmt::Debug for GrayLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrayLevel({})", self.value)
    }
}

impl fmt::Display for GrayLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl TryFrom<f64> for GrayLevel {
    type Error = DomainError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        GrayLevel::new(value)
    }
}

impl From<GrayLevel> for f64 {
    fn from(v: GrayLevel) -> f64 {
        v.value
    }
}

/// `atanh` with the argument held inside `1 - EPSILON_E`; exactly odd.
fn guarded_atanh(v: f64) -> f64 {
    v.abs().min(1.0 - EPSILON_E).atanh().copysign(v)
}

/// `a <+> b = (a + b) / (1 + ab)`, evaluated as `phi_inv(phi(a) + phi(b))`.
pub fn lip_add(a: GrayLevel, b: GrayLevel) -> GrayLevel {
    lip_add_checked(a, b).0
}

pub(crate) fn lip_add_checked(a: GrayLevel, b: GrayLevel) -> (GrayLevel, bool) {
    if b.coord == 0.0 {
        return (a, false);
    }
    if a.coord == 0.0 {
        return (b, false);
    }
    GrayLevel::from_coord(LogCoordinate::saturating(a.coord + b.coord).0)
}

/// `a <-> b = (a - b) / (1 - ab)`, evaluated as `phi_inv(phi(a) - phi(b))`.
pub fn lip_sub(a: GrayLevel, b: GrayLevel) -> GrayLevel {
    if b.coord == 0.0 {
        return a;
    }
    if a.coord == 0.0 {
        return lip_neg(b);
    }
    GrayLevel::from_coord(LogCoordinate::saturating(a.coord - b.coord).0).0
}

/// The opposite `<-> v`, which is plain negation.
pub fn lip_neg(v: GrayLevel) -> GrayLevel {
    GrayLevel {
        value: -v.value,
        coord: -v.coord,
    }
}

/// Scalar multiplication `lambda <x> v`, evaluated as `phi_inv(lambda * phi(v))`.
///
/// # Panics
///
/// Panics if `lambda` is NaN or infinite.
pub fn lip_smul(lambda: f64, v: GrayLevel) -> GrayLevel {
    lip_smul_checked(lambda, v).0
}

pub(crate) fn lip_smul_checked(lambda: f64, v: GrayLevel) -> (GrayLevel, bool) {
    assert!(lambda.is_finite(), "scalar must be finite, got {lambda}");
    if lambda == 1.0 {
        return (v, false);
    }
    if lambda == 0.0 {
        return (GrayLevel::ZERO, false);
    }
    GrayLevel::from_coord(LogCoordinate::saturating(lambda * v.coord).0)
}

/// The isomorphism `phi(v) = 1/2 ln((1+v)/(1-v))`.
#[inline]
pub fn phi(v: GrayLevel) -> LogCoordinate {
    LogCoordinate(v.coord)
}

/// Inverse of [`phi`]: `(e^{2x} - 1) / (e^{2x} + 1) = tanh(x)`.
pub fn phi_inv(x: LogCoordinate) -> GrayLevel {
    GrayLevel::from_coord(x.0).0
}

/// Like [`phi_inv`], also reporting whether the value saturated at the
/// largest representable magnitude below one.
pub fn phi_inv_checked(x: LogCoordinate) -> (GrayLevel, bool) {
    GrayLevel::from_coord(x.0)
}

/// Scalar product `(a | b) = phi(a) * phi(b)`.
pub fn lip_inner(a: GrayLevel, b: GrayLevel) -> f64 {
    a.coord * b.coord
}

/// Norm `|phi(v)|`.
pub fn lip_norm(v: GrayLevel) -> f64 {
    v.coord.abs()
}

impl Add for GrayLevel {
    type Output = GrayLevel;
    fn add(self, rhs: GrayLevel) -> GrayLevel {
        lip_add(self, rhs)
    }
}

impl Sub for GrayLevel {
    type Output = GrayLevel;
    fn sub(self, rhs: GrayLevel) -> GrayLevel {
        lip_sub(self, rhs)
    }
}

impl Neg for GrayLevel {
    type Output = GrayLevel;
    fn neg(self) -> GrayLevel {
        lip_neg(self)
    }
}

impl Mul<GrayLevel> for f64 {
    type Output = GrayLevel;
    fn mul(self, rhs: GrayLevel) -> GrayLevel {
        lip_smul(self, rhs)
    }
}

/// The defining formulas evaluated literally on plain `f64` values.
///
/// These bypass `phi` entirely and serve as reference oracles for the
/// canonical operations. [`smul`](direct::smul) overflows for large scalars
/// near the boundary; keep it to moderate arguments.
pub mod direct {
    pub fn add(a: f64, b: f64) -> f64 {
        (a + b) / (1.0 + a * b)
    }

    pub fn sub(a: f64, b: f64) -> f64 {
        (a - b) / (1.0 - a * b)
    }

    pub fn smul(lambda: f64, v: f64) -> f64 {
        let p = (1.0 + v).powf(lambda);
        let q = (1.0 - v).powf(lambda);
        (p - q) / (p + q)
    }

    pub fn phi(v: f64) -> f64 {
        0.5 * ((1.0 + v) / (1.0 - v)).ln()
    }
}
