use alloc::string::String;

use crate::model::Bath;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(&'static str),

    #[error("operator is not Hermitian (max |A - A†| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("trace is {trace}, expected 1")]
    TraceNotUnit { trace: f64 },

    #[error("state has negative eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("bath {bath:?} is off resonance: transition gap {gap} but bath qubit energy {energy}")]
    OffResonant { bath: Bath, gap: f64, energy: f64 },

    #[error("degenerate generator: null space has dimension {nullity} (expected 1); {dump}")]
    DegenerateGenerator { nullity: usize, dump: String },

    #[error("steady state keeps coherences (max off-diagonal {max_coherence:e})")]
    CoherentSteadyState { max_coherence: f64 },

    #[error("state is not stationary (residual {residual:e})")]
    NotStationary { residual: f64 },

    #[error("integration failed at t = {time} with step {dt:e}: {reason}")]
    IntegrationFailed { time: f64, dt: f64, reason: String },

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("no interior maximum in bracket; best value {value:e} at boundary point {x}")]
    NoInteriorMaximum { x: f64, value: f64 },
}
