use thiserror::Error;

/// Every failure names the operation (`module::op`) that raised it.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{op}: invalid argument: {msg}")]
    InvalidArgument { op: &'static str, msg: String },
    #[error("{op}: invariant `{invariant}` violated (residual {residual:.3e})")]
    Validation {
        op: &'static str,
        invariant: &'static str,
        residual: f64,
    },
    #[error("{op}: degenerate setup: {msg}")]
    DegenerateSetup { op: &'static str, msg: String },
    #[error("{op}: unsupported input: {msg}")]
    Unsupported { op: &'static str, msg: String },
    #[error("{op}: not applicable: {msg}")]
    NotApplicable { op: &'static str, msg: String },
    #[error("{op}: index {index} is not a complex tangent direction")]
    NotComplexTangent { op: &'static str, index: usize },
    #[error("{op}: element is not regular: {msg}")]
    NonRegular { op: &'static str, msg: String },
    #[error("{op}: ill-conditioned decomposition: {msg}")]
    IllConditioned { op: &'static str, msg: String },
    #[error("{op}: degenerate weight: {msg}")]
    DegenerateWeight { op: &'static str, msg: String },
    #[error("{op}: basis construction failed: {msg}")]
    BasisConstruction { op: &'static str, msg: String },
    #[error("{op}: near-singular coefficient |a e^(-2i lambda(eta)) - 1| = {value:.3e}")]
    NearSingular { op: &'static str, value: f64 },
    #[error("{op}: inconclusive cone verdict: {msg}")]
    Inconclusive { op: &'static str, msg: String },
    #[error("{op}: singular point: {msg}")]
    SingularPoint { op: &'static str, msg: String },
    #[error("{op}: unstable oracle: {msg}")]
    UnstableOracle { op: &'static str, msg: String },
}

impl Error {
    pub fn op(&self) -> &'static str {
        match self {
            Error::InvalidArgument { op, .. }
            | Error::Validation { op, .. }
            | Error::DegenerateSetup { op, .. }
            | Error::Unsupported { op, .. }
            | Error::NotApplicable { op, .. }
            | Error::NotComplexTangent { op, .. }
            | Error::NonRegular { op, .. }
            | Error::IllConditioned { op, .. }
            | Error::DegenerateWeight { op, .. }
            | Error::BasisConstruction { op, .. }
            | Error::NearSingular { op, .. }
            | Error::Inconclusive { op, .. }
            | Error::SingularPoint { op, .. }
            | Error::UnstableOracle { op, .. } => op,
        }
    }

    pub fn module(&self) -> &'static str {
        self.op().split("::").next().unwrap_or("")
    }

    /// True for failures caused by numerical degeneracy rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::IllConditioned { .. }
                | Error::DegenerateWeight { .. }
                | Error::BasisConstruction { .. }
                | Error::NearSingular { .. }
                | Error::Inconclusive { .. }
                | Error::SingularPoint { .. }
                | Error::UnstableOracle { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(op: &'static str, msg: impl Into<String>) -> Error {
    Error::InvalidArgument { op, msg: msg.into() }
}

pub(crate) fn check(op: &'static str, invariant: &'static str, residual: f64, tol: f64) -> Result<()> {
    if residual.is_finite() && residual <= tol {
        Ok(())
    } else {
        Err(Error::Validation { op, invariant, residual })
    }
}
