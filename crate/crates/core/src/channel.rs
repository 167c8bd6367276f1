//! Phase-insensitive single-mode Gaussian channels `sigma -> tau sigma + v`.

use crate::error::{Error, Result};
use crate::gaussian::{TwoModeCovariance, DEFAULT_TOL};

/// A phase-insensitive Gaussian channel with transmissivity (or gain) `tau`
/// and added noise `v` in vacuum units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub tau: f64,
    pub v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelClass {
    Identity,
    PureLoss,
    ThermalLoss { eps: f64 },
    PureAmplifier,
    ThermalAmplifier { eps: f64 },
    AdditiveNoise,
    Unphysical,
}

impl ChannelClass {
    pub fn name(&self) -> &'static str {
        match self {
            ChannelClass::Identity => "identity",
            ChannelClass::PureLoss => "pure-loss",
            ChannelClass::ThermalLoss { .. } => "thermal-loss",
            ChannelClass::PureAmplifier => "pure-amplifier",
            ChannelClass::ThermalAmplifier { .. } => "thermal-amplifier",
            ChannelClass::AdditiveNoise => "additive-noise",
            ChannelClass::Unphysical => "unphysical",
        }
    }
}

impl Channel {
    pub fn new(tau: f64, v: f64) -> Result<Self> {
        if !(tau >= 0.0 && tau.is_finite() && v >= 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "channel needs finite tau >= 0 and v >= 0, got ({tau}, {v})"
            )));
        }
        Ok(Channel { tau, v })
    }

    /// `v = |1 - tau| eps`.
    pub fn from_eps(tau: f64, eps: f64) -> Result<Self> {
        if !(eps >= 0.0) {
            return Err(Error::InvalidParameter(format!("eps = {eps} must be >= 0")));
        }
        Channel::new(tau, (1.0 - tau).abs() * eps)
    }

    /// Loss channel `L(tau, eps)` with `0 <= tau < 1`, `eps >= 1`.
    pub fn loss(tau: f64, eps: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&tau) || !(eps >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "loss channel needs 0 <= tau < 1 and eps >= 1, got ({tau}, {eps})"
            )));
        }
        Channel::from_eps(tau, eps)
    }

    /// Amplifier channel `A(tau, eps)` with `tau > 1`, `eps >= 1`.
    pub fn amplifier(tau: f64, eps: f64) -> Result<Self> {
        if !(tau > 1.0) || !(eps >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "amplifier channel needs tau > 1 and eps >= 1, got ({tau}, {eps})"
            )));
        }
        Channel::from_eps(tau, eps)
    }

    pub fn identity() -> Self {
        Channel { tau: 1.0, v: 0.0 }
    }

    pub fn additive_noise(v: f64) -> Result<Self> {
        Channel::new(1.0, v)
    }

    /// Excess noise `v / |1 - tau|`; undefined when `tau = 1`.
    pub fn eps(&self) -> Option<f64> {
        let d = (1.0 - self.tau).abs();
        if d <= DEFAULT_TOL {
            None
        } else {
            Some(self.v / d)
        }
    }

    pub fn is_physical(&self, tol: f64) -> bool {
        self.v >= (1.0 - self.tau).abs() - tol
    }

    pub(crate) fn check_physical(&self, tol: f64) -> Result<()> {
        if self.is_physical(tol) {
            Ok(())
        } else {
            Err(Error::UnphysicalChannel {
                tau: self.tau,
                v: self.v,
            })
        }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.tau - 1.0).abs() <= tol && self.v <= tol
    }

    pub fn classify(&self, tol: f64) -> ChannelClass {
        let gap = (1.0 - self.tau).abs();
        if self.v < gap - tol {
            return ChannelClass::Unphysical;
        }
        if gap <= tol {
            return if self.v <= tol {
                ChannelClass::Identity
            } else {
                ChannelClass::AdditiveNoise
            };
        }
        let pure = (self.v - gap).abs() <= tol;
        let eps = self.v / gap;
        match (self.tau < 1.0, pure) {
            (true, true) => ChannelClass::PureLoss,
            (true, false) => ChannelClass::ThermalLoss { eps },
            (false, true) => ChannelClass::PureAmplifier,
            (false, false) => ChannelClass::ThermalAmplifier { eps },
        }
    }

    /// `v >= 1 + |tau|` (within the default tolerance).
    pub fn is_entanglement_breaking(&self) -> bool {
        self.is_entanglement_breaking_tol(DEFAULT_TOL)
    }

    pub fn is_entanglement_breaking_tol(&self, tol: f64) -> bool {
        self.v >= 1.0 + self.tau.abs() - tol
    }

    /// Channel obtained by applying `self` first and `second` afterwards.
    pub fn compose(&self, second: &Channel) -> Channel {
        Channel {
            tau: self.tau * second.tau,
            v: second.tau * self.v + second.v,
        }
    }

    /// Sends the second mode of `sigma` through the channel.
    pub fn apply_to_mode2(&self, sigma: &TwoModeCovariance) -> Result<TwoModeCovariance> {
        self.check_physical(DEFAULT_TOL)?;
        sigma.check_physical(DEFAULT_TOL)?;
        Ok(self.apply_unchecked(sigma))
    }

    pub(crate) fn apply_unchecked(&self, sigma: &TwoModeCovariance) -> TwoModeCovariance {
        let st = self.tau.sqrt();
        TwoModeCovariance::new(
            sigma.a,
            self.tau * sigma.b + self.v,
            st * sigma.c1,
            st * sigma.c2,
        )
    }

    /// Single-mode action on a quadrature variance.
    pub fn apply_to_variance(&self, var: f64) -> f64 {
        self.tau * var + self.v
    }
}
