use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generators must satisfy 1 < p1 < p2 (got p1 = {p1}, p2 = {p2})")]
    OrderViolation { p1: u64, p2: u64 },

    /// `p1` and `p2` are both powers of `base`, so log(p1)/log(p2) is rational.
    #[error(
        "theory requires multiplicatively independent generators: \
         {p1} and {p2} are both powers of {base}"
    )]
    RationalLogRatio { p1: u64, p2: u64, base: u64 },

    #[error("power of ~{bits} bits exceeds the bit budget of {budget}")]
    BudgetExceeded { bits: u64, budget: u64 },

    #[error("fraction denominator must be positive")]
    ZeroDenominator,

    #[error("index {index} is beyond the convergent table (needs {needed} rows, have {len})")]
    IndexBeyondTable {
        index: usize,
        needed: usize,
        len: usize,
    },

    #[error("no predecessor: (0,0) is the least element")]
    NoPredecessor,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer overflow in exponent arithmetic")]
    Overflow,

    /// Two distinct affine forms compared equal, which irrationality rules out.
    #[error("internal consistency violation: {0}")]
    Inconsistent(String),
}
