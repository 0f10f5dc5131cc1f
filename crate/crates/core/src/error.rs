use thiserror::Error;

/// Failures of the algebraic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-finite component (NaN or infinity)")]
    NonFinite,
    #[error("lightlike quaternion has zero norm and cannot be normalized")]
    LightlikeNormalization,
    #[error("lightlike quaternion is a zero divisor and has no inverse")]
    LightlikeInverse,
    #[error("lightlike quaternion has no polar form")]
    LightlikeNoPolarForm,
    #[error("timelike quaternion with a nonzero null vector part has no polar form")]
    NullVectorPart,
    #[error("polar axis does not satisfy the unit condition for its kind")]
    InvalidAxis,
    #[error("matrix is not a left representation of a split quaternion")]
    NotALeftRepresentation,
    #[error("negative power of a lightlike quaternion")]
    NegativePowerOfLightlike,
    #[error("axis is not unit timelike, unit spacelike or lightlike")]
    NonUnitAxis,
    #[error("exponential series did not converge within the term budget")]
    SeriesDidNotConverge,
    #[error("result overflowed to infinity")]
    OverflowedToInfinity,
}

impl Error {
    /// Stable identifier used by the calculator's error output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonFinite => "NonFinite",
            Error::LightlikeNormalization => "LightlikeNormalization",
            Error::LightlikeInverse => "LightlikeInverse",
            Error::LightlikeNoPolarForm => "LightlikeNoPolarForm",
            Error::NullVectorPart => "NullVectorPart",
            Error::InvalidAxis => "InvalidAxis",
            Error::NotALeftRepresentation => "NotALeftRepresentation",
            Error::NegativePowerOfLightlike => "NegativePowerOfLightlike",
            Error::NonUnitAxis => "NonUnitAxis",
            Error::SeriesDidNotConverge => "SeriesDidNotConverge",
            Error::OverflowedToInfinity => "OverflowedToInfinity",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
