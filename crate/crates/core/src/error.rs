use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("element does not belong to the {0} family")]
    FamilyMismatch(&'static str),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("exponent too large: result would leave the representable range ({0})")]
    ExponentTooLarge(String),
    #[error("closure exceeded the order cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("permutations of different degrees ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("group is not solvable")]
    NotSolvable,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("group order {0} is not a prime power")]
    NotPGroup(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no finite presentation available for {0}")]
    NoPresentation(String),
    #[error("refused: {0}")]
    Refused(String),
}
