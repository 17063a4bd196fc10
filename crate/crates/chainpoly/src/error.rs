use thiserror::Error;

/// Crate-wide error type.
///
/// The CLI maps these onto process exit codes: `Parse` → 2, `SizeCap` → 3,
/// `Hypothesis` → 4, everything else → 1.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("subset width {got} does not match ground set size {expected}")]
    WidthMismatch { expected: usize, got: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// An operation would exceed the configured work budget. `required` is
    /// the budget the operation would need to run.
    #[error("work cap exceeded: requires a budget of {required} against cap {cap} (see --max-visits / CHAINPOLY_MAX_VISITS)")]
    SizeCap { required: u128, cap: u64 },

    /// A stated hypothesis (no loop, no coloop, simplicity) does not hold.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Two independently computed sides of a mandatory identity disagreed.
    #[error("cross-check failed in {context}: left = {left}, right = {right}")]
    CrossCheck {
        context: String,
        left: String,
        right: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
