use thiserror::Error;

pub type Result<T, E = SineGapError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SineGapError {
    /// An argument lies outside the domain of the function.
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    /// The requested asymptotic formula does not apply at this point.
    #[error("regime error: {0}")]
    Regime(String),

    /// Eigenvalue deficits at this `s` fall below what the active precision
    /// backend resolves.
    #[error(
        "precision ceiling: s = {s} with 1 - gamma = {gamma_complement:e} is outside the \
         {backend} envelope (s <= {s_max} when 1 - gamma < {complement_floor:e})"
    )]
    PrecisionCeiling {
        s: f64,
        gamma_complement: f64,
        backend: &'static str,
        s_max: f64,
        complement_floor: f64,
    },

    #[error("convergence failure in {func}: {msg}")]
    Convergence { func: &'static str, msg: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("precision backend '{0}' is not available in this build")]
    BackendUnavailable(&'static str),
}

impl SineGapError {
    pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Self {
        SineGapError::Domain {
            func,
            msg: msg.into(),
        }
    }

    /// Short machine-readable tag, used by the CLI and the C interface.
    pub fn kind(&self) -> &'static str {
        match self {
            SineGapError::Domain { .. } => "domain",
            SineGapError::Regime(_) => "regime",
            SineGapError::PrecisionCeiling { .. } => "precision_ceiling",
            SineGapError::Convergence { .. } => "convergence",
            SineGapError::InvalidConfig(_) => "invalid_config",
            SineGapError::BackendUnavailable(_) => "backend_unavailable",
        }
    }
}
