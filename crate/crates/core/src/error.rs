use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("generator sets differ; operands must share one declared generator set")]
    GeneratorMismatch,

    #[error("rational relation {relation:?} among generators embeds to {norm:.3e}; generators are not Q-independent at the probed denominators")]
    RationalRelation { relation: Vec<i64>, norm: f64 },

    #[error("independence probe over {combinations} coefficient vectors exceeds budget {budget}")]
    ProbeBudget { combinations: u128, budget: u128 },

    #[error("window would hold {requested} elements, exceeding the cap of {cap}")]
    WindowCapExceeded { requested: u128, cap: usize },

    #[error("pole of coefficient function at xi = {at:?}: {what}")]
    Pole { at: Vec<f64>, what: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("derivative order {requested} exceeds the symbolic capability {max}")]
    DerivativeOrder { requested: u32, max: u32 },

    #[error("symbol class parameters rejected: {0}")]
    ClassParams(String),

    #[error("operation requires order m <= 0, got m = {m}")]
    OrderPositive { m: f64 },

    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("quadrature needs {needed} nodes, over the budget of {budget}")]
    NodeBudget { needed: u128, budget: u128 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("eigensolver failed to converge on a {n}x{n} matrix")]
    EigensolverFailure { n: usize },

    #[error("vector field would hold {requested} components, exceeding the cap of {cap}")]
    ComponentCapExceeded { requested: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
