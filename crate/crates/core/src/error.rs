use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("degree {degree} exceeds homogenization degree {target}")]
    DegreeTooLarge { degree: u32, target: u32 },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial")]
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("curve equation must be a nonzero homogeneous polynomial")]
    NotHomogeneous,
    #[error("curve equation is the zero polynomial")]
    Zero,
    #[error("degree {0} is too small for this computation (need d >= {1})")]
    DegreeTooSmall(u32, u32),
    #[error("soundness violation: {0}")]
    Soundness(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown family `{0}`; known families: {1}")]
    UnknownFamily(String, String),
    #[error("construction failed: {0}")]
    Construction(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreenessError {
    #[error("exponent equation t^2 - {sum}t + {prod} has no integer roots")]
    NonIntegerExponents { sum: i64, prod: i64 },
    #[error("index {0} is outside the range covered by the defect formula; use the direct oracle")]
    RangeNotCovered(i64),
    #[error("soundness violation: {0}")]
    Soundness(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Freeness(#[from] FreenessError),
}

impl AnalysisError {
    /// Internal inconsistency (cross-checks disagree), as opposed to bad input.
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            AnalysisError::Curve(CurveError::Soundness(_)) | AnalysisError::Freeness(FreenessError::Soundness(_))
        ) || matches!(self, AnalysisError::Freeness(FreenessError::NonIntegerExponents { .. }))
    }
}
