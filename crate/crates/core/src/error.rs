use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different fields (p = {left} vs p = {right}; 0 means Q)")]
    FieldMismatch { left: u64, right: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("unrecognised field '{0}' (expected Q or Fp:<p>)")]
    InvalidField(String),
    #[error("cannot parse scalar '{0}'")]
    InvalidScalar(String),

    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("unknown arrow '{0}'")]
    UnknownArrow(String),
    #[error("duplicate name '{0}'")]
    DuplicateName(String),
    #[error("arrows do not compose: {0}")]
    NotComposable(String),

    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("relation terms are not parallel: {0}")]
    NonParallelRelation(String),
    #[error("completion exceeded the budget of {budget} rules")]
    CompletionBudgetExceeded { budget: usize },
    #[error("no finiteness certificate at degree cap {cap}: {witness} survives")]
    NoFiniteCertificate { cap: usize, witness: String },
    #[error("truncated dimensions did not stabilise between degree {low} and {high}")]
    StabilizationFailure { low: usize, high: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("complex is not a complex: d∘d ≠ 0 at degree {0}")]
    NotAComplex(i32),
    #[error("map does not commute with differentials at degree {0}")]
    NotAChainMap(i32),
    #[error("representation violates relation {0}")]
    RelationViolated(String),
    #[error("tilting condition (1) fails: Hom(T{from}, T{to}[{shift}]) has dimension {dim}")]
    Condition1Failure {
        from: usize,
        to: usize,
        shift: i32,
        dim: usize,
    },
    #[error("tilting condition (2) fails: P{0} is not generated")]
    Condition2Failure(usize),
    #[error("search budget of {0} candidates exhausted")]
    SearchBudgetExceeded(usize),
}

impl Error {
    /// True for the errors that signal an exhausted computational budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::CompletionBudgetExceeded { .. } | Error::SearchBudgetExceeded(_)
        )
    }
}
