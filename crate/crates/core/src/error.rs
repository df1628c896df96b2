use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty multiplication table")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry {value} in row {row} is out of range")]
    OutOfRange { row: usize, value: usize },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("product is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("member set is not a subgroup")]
    NotASubgroup,
    #[error("invalid permutation action: {0}")]
    BadAction(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("cyclic factor orders must be positive")]
    ZeroFactor,
    #[error("matrix has the wrong shape for a module with {rank} factors")]
    Shape { rank: usize },
    #[error("matrix entry ({row}, {col}) does not define a map between the cyclic factors")]
    IllDefined { row: usize, col: usize },
    #[error("matrix for element {element} is not invertible on the module")]
    NotAutomorphism { element: usize },
    #[error("generator data is inconsistent at element {element}")]
    Inconsistent { element: usize },
    #[error("generators do not reach element {element}")]
    Incomplete { element: usize },
    #[error("action is not a homomorphism at ({a}, {b})")]
    NotHomomorphism { a: usize, b: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("cochain is not a cocycle; first failure at {witness:?}")]
    NotACocycle { witness: Vec<usize> },
    #[error("target cochain is not closed; first failure at {witness:?}")]
    TargetNotClosed { witness: Vec<usize> },
    #[error("cochain is not normalised at {witness:?}")]
    NotNormalised { witness: Vec<usize> },
    #[error("cochain values are not valued in the working coefficient ring")]
    Unrepresentable,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoGroupError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("Postnikov class is not normalised at {witness:?}")]
    NotNormalised { witness: Vec<usize> },
    #[error("Postnikov class is not a twisted 3-cocycle; first failure at {witness:?}")]
    NotACocycle { witness: Vec<usize> },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("cocycles of the two representations differ")]
    CocycleRepresentativeMismatch,
    #[error("representation matrices fail the projective product rule at ({g}, {h})")]
    NotProjective { g: usize, h: usize },
    #[error("irreducible decomposition failed: {0}")]
    Decomposition(String),
    #[error("permutation action is not transitive")]
    NotTransitive,
    #[error("source and target of the composed intertwiners do not match")]
    SourceTargetMismatch,
    #[error("flavour mismatch: {0}")]
    FlavourMismatch(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("invalid 2-representation data: {0}")]
    Invalid(String),
    #[error("intertwiners are not composable: {0}")]
    NotChainable(String),
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed specification: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    TwoGroup(#[from] TwoGroupError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}
