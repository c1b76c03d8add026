use thiserror::Error;

/// Violations of an operation's value domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("value {0} is not a finite real number")]
    NonFinite(f64),
    #[error("gray level {0} is outside the open interval (-1, 1)")]
    OutOfInterval(f64),
    #[error("pixel value {value} exceeds maximum {maxval}")]
    PixelOutOfRange { value: u32, maxval: u32 },
    #[error("maximum value must be in 1..=65535, got {0}")]
    InvalidMaxval(u32),
    #[error("image dimensions must be positive, got {width}x{height}")]
    EmptyImage { width: usize, height: usize },
    #[error("pixel buffer holds {actual} samples, expected {expected}")]
    BufferSize { expected: usize, actual: usize },
    #[error("target variance must be positive and finite, got {0}")]
    InvalidTargetVariance(f64),
    #[error("curve needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnhanceError {
    /// The image has (numerically) zero log-variance; no finite gain normalizes it.
    #[error("image is constant (log-variance {variance:e}); no finite gain can normalize it")]
    ConstantImage { variance: f64 },
    #[error("transform with zero gain cannot be inverted")]
    NonInvertible,
    #[error("cannot compose after a transform with zero gain")]
    DegenerateComposition,
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// PGM parse failures. Every variant carries the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PnmError {
    #[error("bad magic number at byte {offset}: expected P2 or P5")]
    BadMagic { offset: usize },
    #[error("non-numeric header token at byte {offset}")]
    BadHeaderToken { offset: usize },
    #[error("unexpected end of header at byte {offset}")]
    TruncatedHeader { offset: usize },
    #[error("invalid dimension {value} at byte {offset}")]
    BadDimension { offset: usize, value: u64 },
    #[error("invalid maxval {value} at byte {offset}: must be in 1..=65535")]
    BadMaxval { offset: usize, value: u64 },
    #[error("missing whitespace after header at byte {offset}")]
    MissingRasterSeparator { offset: usize },
    #[error("pixel count mismatch at byte {offset}: expected {expected} samples, found {found}")]
    PixelCountMismatch {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-numeric sample at byte {offset}")]
    BadSample { offset: usize },
    #[error("sample {value} exceeds maxval {maxval} at byte {offset}")]
    SampleOutOfRange {
        offset: usize,
        value: u64,
        maxval: u32,
    },
}

impl PnmError {
    pub fn offset(&self) -> usize {
        match *self {
            PnmError::BadMagic { offset }
            | PnmError::BadHeaderToken { offset }
            | PnmError::TruncatedHeader { offset }
            | PnmError::BadDimension { offset, .. }
            | PnmError::BadMaxval { offset, .. }
            | PnmError::MissingRasterSeparator { offset }
            | PnmError::PixelCountMismatch { offset, .. }
            | PnmError::BadSample { offset }
            | PnmError::SampleOutOfRange { offset, .. } => offset,
        }
    }
}
