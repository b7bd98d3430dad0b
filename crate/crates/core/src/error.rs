use thiserror::Error;

/// Errors raised by distribution construction, projections, and test building.
#[derive(Debug, Error)]
pub enum Error {
    #[error("distributions are over different alphabets: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("alphabet must have at least 2 symbols, got {size}")]
    AlphabetTooSmall { size: usize },

    #[error("probability vector sums to {sum}, outside the accepted band around 1")]
    NotNormalized { sum: f64 },

    #[error("negative probability {value} at symbol {symbol}")]
    NegativeProbability { symbol: usize, value: f64 },

    #[error("symbol {symbol} out of range for alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: usize, alphabet_size: usize },

    #[error("sample is empty")]
    EmptySample,

    #[error("logarithm base must be a finite number greater than 1, got {base}")]
    InvalidLogBase { base: f64 },

    #[error("ball radius must be finite and nonnegative, got {radius}")]
    InvalidRadius { radius: f64 },

    #[error("target and ball center have disjoint supports; every divergence is infinite")]
    DisjointSupports,

    #[error("bisection did not reach tolerance {tolerance} within {iterations} iterations")]
    ConvergenceFailure { iterations: usize, tolerance: f64 },

    #[error("grid enumeration not supported for alphabet of size {size}")]
    AlphabetTooLargeForGrid { size: usize },

    #[error("grid step {step} out of range (must be in (0, {max}])")]
    InvalidGridStep { step: f64, max: f64 },

    #[error("complement requires at least one ball")]
    EmptyBallList,

    #[error("need at least {min} hypotheses, got {got}")]
    TooFewHypotheses { min: usize, got: usize },

    #[error("hypotheses {first} and {second} are not distinct")]
    HypothesesNotDistinct { first: usize, second: usize },

    #[error("expected {expected} prescribed exponents, got {got}")]
    GivenCountMismatch { expected: usize, got: usize },

    #[error("prescribed exponent {value} at position {index} must be finite and nonnegative")]
    InvalidGivenExponent { index: usize, value: f64 },

    #[error("hypothesis index {index} out of range for {count} hypotheses")]
    HypothesisOutOfRange { index: usize, count: usize },

    #[error("need at least 2 objects, got {got}")]
    TooFewObjects { got: usize },

    #[error("object index {index} out of range for {count} objects")]
    ObjectOutOfRange { index: usize, count: usize },

    #[error("per-object matrices have mismatched dimensions: {left} vs {right}")]
    MatrixSizeMismatch { left: usize, right: usize },

    #[error("index tuple has length {got}, expected {expected}")]
    TupleLengthMismatch { expected: usize, got: usize },

    #[error("dense export limited to M^K <= {limit}, this configuration has {size} tuples")]
    DenseExportTooLarge { size: u128, limit: u128 },

    #[error(
        "recovered right-decision exponent {value} for object {object} is negative; \
         the three prescribed compound exponents are inconsistent"
    )]
    InconsistentCompoundGivens { object: usize, value: f64 },

    #[error("type enumeration for N={n}, alphabet {alphabet_size} has {count} types, over the cap {cap}")]
    TooManyTypes {
        n: u64,
        alphabet_size: usize,
        count: u128,
        cap: u128,
    },

    #[error("N grid must be strictly increasing with at least {min} points")]
    InvalidNGrid { min: usize },

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("reliability matrix entry ({m},{l}) out of range for size {size}")]
    EntryOutOfRange { m: usize, l: usize, size: usize },

    #[error("matrix diagonal at {m} does not equal its row minimum")]
    DiagonalRuleViolated { m: usize },
}
