use thiserror::Error;

/// Errors raised by the Gaussian, channel, protocol and Fock-space routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("squeezing parameter chi = {0} outside [0, 1)")]
    SqueezingOutOfRange(f64),

    #[error("malformed covariance matrix: {0}")]
    MalformedCovariance(String),

    #[error("unphysical state: smallest symplectic eigenvalue {nu_minus} < 1")]
    UnphysicalState { nu_minus: f64 },

    #[error("unphysical channel (tau = {tau}, v = {v}): v < |1 - tau|")]
    UnphysicalChannel { tau: f64, v: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("state is not of the tmsv-through-channel form: {0}")]
    NotDecomposable(String),

    #[error("the identity channel cannot be simulated with finite energy")]
    IdentityChannel,

    #[error("spectrum ({nu_minus}, {nu_plus}) incompatible with channel (tau = {tau}, v = {v})")]
    IncompatibleSpectrum {
        nu_minus: f64,
        nu_plus: f64,
        tau: f64,
        v: f64,
    },

    #[error("NLA gain {gain} exceeds the maximum attainable gain {g_max}")]
    GainTooLarge { gain: f64, g_max: f64 },

    #[error("Fock cutoff {cutoff} too small (tail mass {tail:.3e}); try cutoff >= {suggested}")]
    CutoffTooSmall {
        cutoff: usize,
        tail: f64,
        suggested: usize,
    },

    #[error("state is not normalized or not pure (deviation {0:.3e})")]
    NotPure(f64),

    #[error("state is not zero-mean (first moment {0:.3e})")]
    NonZeroMean(f64),

    #[error("second moments are not in standard form (deviation {0:.3e})")]
    NotStandardForm(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
