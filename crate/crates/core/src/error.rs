use thiserror::Error;

/// Errors raised by the tableau, crystal and sieving machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("enumeration exceeded the cardinality cap of {cap} tableaux")]
    CapExceeded { cap: usize },

    #[error("weight {0:?} is not in the root lattice (coordinates do not sum to zero)")]
    NotInRootLattice(Vec<i64>),

    #[error("size mismatch: |{left}| != |{right}|")]
    SizeMismatch { left: String, right: String },

    #[error("partition {partition} has more than {n} parts")]
    TooManyParts { partition: String, n: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("no tableaux with content {0:?}")]
    EmptyContentClass(Vec<u32>),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("generator is not a bijection of the carrier: {0}")]
    NotABijection(String),

    #[error("declared order {declared} is wrong (actual order {actual})")]
    WrongOrder { declared: u64, actual: u64 },

    #[error("class order {class_order} does not divide the group order {order}")]
    OrderNotDivisible { order: u64, class_order: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
