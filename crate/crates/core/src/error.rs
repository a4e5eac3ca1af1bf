use thiserror::Error;

use crate::exactalg::UPoly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("degenerate elimination: variable {0} does not occur in either input")]
    DegenerateElimination(usize),

    #[error("divisibility violation: {0}")]
    NotDivisible(String),

    #[error("factorization required: modulus {0} is reducible")]
    FactorizationRequired(String),

    /// A computation over `Q[t]/(q)` met a zero divisor. The carried polynomial is a
    /// nontrivial monic factor of `q`; callers split the block and retry.
    #[error("zero divisor modulo the shape polynomial (factor {0})")]
    ZeroDivisor(UPoly),

    #[error("division by zero")]
    DivisionByZero,

    #[error("curves share a common component")]
    SharedComponent,

    #[error("infinite intersection multiplicity: curves share a component through the point")]
    InfiniteMultiplicity,

    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),

    #[error("conic is singular: {0}")]
    SingularConic(String),

    #[error("wrong degree: expected {expected}, found {found}")]
    WrongDegree { expected: String, found: usize },

    #[error("unsupported degeneration: {0}")]
    UnsupportedDegeneration(String),

    #[error("adjoint is not unique: solution space has dimension {0}")]
    NonUniqueAdjoint(usize),

    #[error("invalid polycon: {0}")]
    InvalidPolycon(String),

    #[error("component {0} has no residual-free arc between its vertices")]
    NoResidualFreeArc(usize),

    #[error("component {0} has two residual-free arcs and no certificate picks one")]
    AmbiguousArc(usize),

    #[error("component {0} is already a line")]
    ComponentIsLine(usize),

    #[error("adjacent vertices of component {0} coincide")]
    AdjacentVerticesEqual(usize),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("algorithm failure: {0}")]
    AlgorithmFailure(String),

    #[error("inconsistent system: {0}")]
    Inconsistency(String),

    #[error("rank-0 point: the entries of M have a common zero")]
    RankZeroPoint,

    #[error("condition (2) violated for pair {pair:?}: {reason}; try a shear basis change T = (1 0 0; g 1 0; 0 0 1)")]
    VertexNotIdentifiable { pair: (usize, usize), reason: String },

    #[error("deformation leaves the chart: {0}")]
    LeavesChart(String),

    #[error("genericity failure: {0}")]
    Genericity(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }
}
