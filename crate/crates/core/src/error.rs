use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclic order {0} is invalid (every order must be at least 2)")]
    InvalidOrder(u64),
    #[error("table dimensions do not match {0} generators")]
    DimensionMismatch(usize),
    #[error("multiplication is not well defined on generators ({i}, {j})")]
    IllDefined { i: usize, j: usize },
    #[error("multiplication is not associative on generators ({i}, {j}, {l})")]
    NonAssociative { i: usize, j: usize, l: usize },
    #[error("declared identity is not a two-sided identity")]
    NotIdentity,
    #[error("ring has no identity element")]
    NotUnital,
    #[error("ring of order {order} exceeds the size cap {cap}")]
    SizeCap { order: u64, cap: u64 },
    #[error("operation needs a two-sided ideal")]
    WrongSide,
    #[error("map is not a ring automorphism: {0}")]
    NotAutomorphism(String),
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("prime {p} does not divide the group order {n}")]
    NotDividing { p: u64, n: u64 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subring is not the fixed ring of the given subgroup")]
    NotFixedRing,
    #[error("element is not fixed by the subgroup")]
    NotInFixedRing,
    #[error("group order {0} is not a power of a prime")]
    NotPGroup(u64),
    #[error("module is not a p-group for p = {0}")]
    NotPModule(u64),
    #[error("|G| = {0} is not invertible on the ring")]
    NotInvertible(u64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{name}: {source}")]
    Validation {
        name: String,
        #[source]
        source: Box<Error>,
    },
    #[error("unrecognised input: {0}")]
    Unknown(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
