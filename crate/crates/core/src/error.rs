use core::fmt;

/// Failures of the truncated-ring layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    /// Two operands were truncated at different degrees.
    CapMismatch { left: usize, right: usize },
    /// The constant term is not `1` or `-1`.
    NotInvertible,
    /// A formal variable has no image under an evaluation map.
    UnmappedVariable(usize),
    /// Two polynomials live over different numbers of variables.
    VariableCountMismatch { left: usize, right: usize },
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::CapMismatch { left, right } => {
                write!(f, "degree cap mismatch: {left} vs {right}")
            }
            RingError::NotInvertible => f.write_str("series has a non-unit constant term"),
            RingError::UnmappedVariable(i) => write!(f, "formal variable x{i} has no image"),
            RingError::VariableCountMismatch { left, right } => {
                write!(f, "variable count mismatch: {left} vs {right}")
            }
        }
    }
}

/// Failures of bundle-class evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BundleError {
    /// Chern classes were requested for an expression with real trivial summands.
    NotComplex {
        trivial_real: i64,
    },
    Ring(RingError),
}

impl fmt::Display for BundleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleError::NotComplex { trivial_real } => write!(
                f,
                "expression has {trivial_real} real trivial summand(s) and no complex structure"
            ),
            BundleError::Ring(e) => e.fmt(f),
        }
    }
}

impl From<RingError> for BundleError {
    fn from(e: RingError) -> Self {
        BundleError::Ring(e)
    }
}

/// Rejections produced by [`crate::stiefel::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StiefelError {
    /// Out-of-range `n`/`k` or a weight list of the wrong length.
    InvalidParameters(&'static str),
    /// The circle action is not free: `gcd(|l_1|, ..., |l_k|) != 1`.
    /// An all-zero weight list reports `gcd = 0`.
    NotAManifold { gcd: u64 },
}

impl fmt::Display for StiefelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StiefelError::InvalidParameters(why) => write!(f, "invalid parameters: {why}"),
            StiefelError::NotAManifold { gcd } => write!(f, "not a manifold: gcd(l) = {gcd}"),
        }
    }
}

impl core::error::Error for RingError {}

impl core::error::Error for BundleError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            BundleError::Ring(e) => Some(e),
            BundleError::NotComplex { .. } => None,
        }
    }
}

impl core::error::Error for StiefelError {}
