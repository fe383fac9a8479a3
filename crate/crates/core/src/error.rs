use thiserror::Error;

/// Errors raised by the polynomial, stability and idealizer routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty coefficient list")]
    EmptyInput,
    #[error("all coefficients are zero")]
    AllZero,
    #[error("cannot parse `{0}` as an exact rational")]
    Parse(String),
    #[error("hadamard product vanishes identically")]
    ResultIsZero,
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("polynomial is not divisible by x^{0}")]
    NotDivisible(usize),
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("expected degree {expected}, got {actual}")]
    DegreeMismatch { expected: usize, actual: usize },
    #[error("all coefficients must be positive")]
    NotPositiveCoefficients,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("coefficients violate the quasi-stable shape: {0}")]
    ShapeViolation(String),
    #[error("input is not quasi-stable: {0}")]
    NotQuasiStableInput(String),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("structural requirement violated: {0}")]
    StructureViolation(String),
    #[error("parameter out of range: {0}")]
    ParamDomain(String),
    #[error("i/o failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
