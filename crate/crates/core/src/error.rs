use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term {0} is not a unit; series is not invertible")]
    NonUnitConstant(BigInt),
    #[error("product spec needs offset >= 1 and step >= 1 (got offset {offset}, step {step})")]
    InvalidProductSpec { offset: usize, step: usize },
    #[error("modulus k must be >= 1 (got {0})")]
    InvalidModulus(u32),
    #[error("residue p must satisfy 0 <= p < k (got p={p}, k={k})")]
    InvalidResidue { k: u32, p: u32 },
    #[error("ell must be >= 1 (got {0})")]
    InvalidEll(u32),
    #[error("n must be >= 1 (got {0})")]
    NonPositive(usize),
    #[error("n={n} exceeds the exhaustive enumeration cap {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("M_{ell} evaluation routes disagree at n={n}")]
    RouteDisagreement { ell: u32, n: usize },
    #[error("MP_{ell} series has negative coefficient at n={n}")]
    NegativeCoefficient { ell: u32, n: usize },
    #[error("index {index} lies past the table's truncation order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed table: {0}")]
    Parse(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
