use thiserror::Error;

/// Errors shared across the library.
///
/// Domain errors are ordinary values here: callers are expected to match on
/// them (the CLI maps every variant to exit code 1).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynError {
    /// The map was evaluated at its pole z = 0.
    #[error("pole hit: map evaluated at z = 0")]
    PoleHit,

    /// The requested operation is not defined for this family.
    #[error("unsupported for this family: {0}")]
    Unsupported(&'static str),

    /// No cycle of period <= maxPeriod was found within tolerance.
    #[error("no cycle detected within the requested period bound and tolerance")]
    NoCycle,

    /// The orbit left the escape guard while samples were still needed.
    #[error("orbit escaped during sampling at index {0}")]
    EscapedDuringSample(usize),

    /// A bracketing search found no sign change over the given interval.
    #[error("no sign change over the bracket")]
    NoSignChange,

    /// A bracketing search could not be set up at all.
    #[error("bracket failure: {0}")]
    BracketFailure(&'static str),

    /// The supplied points do not close up into a cycle of the map.
    #[error("not a cycle: max residual {residual}")]
    NotACycle { residual: f64 },

    /// The derivative along the critical orbit vanished exactly.
    #[error("derivative vanished along the orbit")]
    DerivativeVanished,

    /// An indicator set had empirical measure zero on the sampled cloud.
    #[error("degenerate set: empirical measure is zero")]
    DegenerateSet,

    /// No escaped/bounded interface cells were found in the rendered grid.
    #[error("no Julia pixels detected in the rendered grid")]
    NoJuliaPixels,

    /// The critical orbit neither escaped nor settled within the budget, so
    /// no classification is claimed.
    #[error("inconclusive: critical orbit neither escaped nor settled within the iteration budget")]
    Inconclusive,

    /// Evaluation requested at a critical point where the quantity is singular.
    #[error("critical point: quantity undefined at x = 0")]
    CriticalPoint,

    /// A stated precondition was violated by the arguments.
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
}

pub type Result<T> = std::result::Result<T, DynError>;
