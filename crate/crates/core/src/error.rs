use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("the bare sphere case supports only the series operations")]
    SphereCase,

    #[error("action fails validation: {0}")]
    InvalidAction(String),

    #[error("unknown marked point `{0}`")]
    UnknownPoint(String),

    #[error("degree {degree} out of range for {n} strands")]
    DegreeOutOfRange { degree: usize, n: usize },

    #[error("elements belong to different presentations")]
    MixedPresentations,

    #[error(
        "size budget exceeded in degree {degree}: {columns} columns (budget {max_columns}), \
         {rows} rows (budget {max_rows}); raise the budget or lower the degree"
    )]
    BudgetExceeded {
        degree: usize,
        columns: u128,
        rows: u128,
        max_columns: usize,
        max_rows: usize,
    },

    #[error(
        "no linear defining polynomial: the action of `{0}` is not cyclic, \
         and its mixing components meet in pairs of fixed points"
    )]
    NonCyclicFactors(String),

    #[error("basis verification failed: {0}")]
    BasisFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("import rejected: {0}")]
    Import(String),

    #[error("inhomogeneous element where a single degree is required")]
    Inhomogeneous,
}

pub type Result<T> = std::result::Result<T, Error>;
