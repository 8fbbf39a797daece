use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("recurrence coefficient at index {index} is not defined (system provides {available} indices)")]
    UndefinedCoefficient { index: usize, available: usize },

    #[error("leading recurrence coefficient a_{index} is zero")]
    ZeroLeadingCoefficient { index: usize },

    #[error("Favard positivity fails at n = {index}: a_n c_(n+1) = {product}")]
    FavardViolation { index: usize, product: f64 },

    #[error("quadratic norm h_{index} = {value} is not positive")]
    NonPositiveNorm { index: usize, value: f64 },

    #[error("norm data inconsistent with the recurrence at index {index}: {detail}")]
    InconsistentNorms { index: usize, detail: String },

    #[error("integration did not converge: estimated error {error:e} exceeds tolerance {tolerance:e} after {panels} panels")]
    IntegrationFailed {
        error: f64,
        tolerance: f64,
        panels: usize,
    },

    #[error("non-finite integrand value at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("series did not converge within {terms} terms (last term {last_term:e})")]
    NonConvergent { terms: usize, last_term: f64 },

    #[error("{needed} moments required, {available} available")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("lower parameter {parameter} produces a pole at term {term} before the series terminates")]
    ParameterPole { parameter: f64, term: usize },

    #[error("series does not terminate: no upper parameter is a non-positive integer")]
    NonTerminating,

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("degree {n} exceeds the family bound {max}")]
    DegreeOutOfRange { n: usize, max: usize },

    #[error("point {x} lies outside the support")]
    OutsideSupport { x: f64 },

    #[error("point {x} lies inside the support interval [{lower}, {upper}]")]
    InsideSupport { x: f64, lower: f64, upper: f64 },

    #[error("points {i} and {j} coincide or are out of order")]
    CoincidentPoints { i: usize, j: usize },

    #[error("tridiagonal eigenvalue iteration did not converge for index {index}")]
    EigenNoConvergence { index: usize },

    #[error("linear system is singular or rank deficient (pivot {pivot:e} at column {column})")]
    SingularSystem { column: usize, pivot: f64 },

    #[error("weights disagree between construction routes: max relative gap {gap:e}")]
    WeightMismatch { gap: f64 },

    #[error("evaluation point is a pole: p_{n}(z) vanishes")]
    Pole { n: usize },

    #[error("coefficient b_{index} = {value} is nonzero; the system is not even")]
    NotEven { index: usize, value: f64 },

    #[error("q = {q} must lie in (0, 1)")]
    QOutOfRange { q: f64 },

    #[error("{0}")]
    Invalid(String),
}
