use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("the function is identically zero")]
    ZeroFunction,
    #[error("generating function is not analytic at the origin (denominator vanishes at 0)")]
    NonAnalytic,
    #[error("resultant is undefined for these degrees")]
    DegenerateResultant,
    #[error("no rational function within the degree budget reproduces the terms")]
    NoGuess,
    #[error(
        "no hypergeometric-type representation with rational bases found for m <= {m_max}: \
         some section has a denominator that does not split over the rationals"
    )]
    NoHypergeometricBasis { m_max: usize },
    #[error("the hypergeometric basis does not span the section")]
    NoFit,
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
