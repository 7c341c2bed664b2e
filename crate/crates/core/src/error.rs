use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be odd and positive, got {0}")]
    BadModulus(i64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime {p} does not satisfy {condition}")]
    WrongResidueClass { p: u64, condition: &'static str },
    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("length mismatch: {0} residues but {1} moduli")]
    LengthMismatch(usize, usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("missing value for variable `{0}`")]
    MissingVariable(char),
    #[error("incomplete corner set: expected {expected} evaluations, got {got}")]
    IncompleteCorners { expected: usize, got: usize },
    #[error("too many variables: {0} (at most 4)")]
    TooManyVariables(usize),
    #[error("prime pool exhausted: bound needs more than {0} moduli")]
    PrimePoolExhausted(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("non-integral coefficient {0} in {1}")]
    NonIntegral(String, String),
    #[error("class number mismatch at p={p}: analytic {analytic}, form cycles {forms}")]
    ClassNumberMismatch { p: u64, analytic: u64, forms: u64 },
    #[error("floating-point precision failure: {0}")]
    Precision(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("{0}")]
    Discover(String),
    #[error("invalid range {0}")]
    BadRange(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
