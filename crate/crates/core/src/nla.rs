//! Error correction of loss channels with noiseless linear amplification.
//!
//! A TMSV resource with squeezing `chi` has one arm sent through a loss
//! channel `(tau, eps)` and is then distilled by an NLA of gain `g`. On
//! success the state is again a TMSV through a loss channel with effective
//! parameters `(chi_e, tau_e, eps_e)`. Teleporting through that resource
//! with classical gain `lambda` simulates a new channel whose decoherence is
//! compared against direct transmission.

use rayon::prelude::*;

use crate::channel::Channel;
use crate::entanglement::{eof_choi, eof_tmsv_through_channel};
use crate::error::{Error, Result};
use crate::fock::{self, FockState};
use crate::gaussian::{Squeezing, TwoModeCovariance, DEFAULT_TOL};
use crate::optimize::grid_then_golden;
use crate::teleport::{simulated_channel, simulated_noise, TeleportGain};

/// Grid points used before the golden-section refinement over `lambda`.
pub const LAMBDA_GRID_POINTS: usize = 128;
/// Bracket width at which the `lambda` refinement stops.
pub const LAMBDA_XTOL: f64 = 1e-10;

/// Amplitude gain of the NLA, `g >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NlaGain {
    g: f64,
    xi: Option<f64>,
}

impl NlaGain {
    pub fn new(g: f64) -> Result<Self> {
        if !(g >= 1.0) || !g.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "NLA gain g = {g} must be finite and >= 1"
            )));
        }
        Ok(NlaGain { g, xi: None })
    }

    /// Gain set by a tunable beam splitter of reflectivity `xi`:
    /// `g = sqrt((1 - xi) / xi)`, which needs `xi <= 1/2` for `g >= 1`.
    pub fn from_xi(xi: f64) -> Result<Self> {
        if !(xi > 0.0 && xi <= 1.0) {
            return Err(Error::InvalidParameter(format!("xi = {xi} outside (0, 1]")));
        }
        let g = ((1.0 - xi) / xi).sqrt();
        let mut gain = NlaGain::new(g)?;
        gain.xi = Some(xi);
        Ok(gain)
    }

    pub fn value(self) -> f64 {
        self.g
    }

    pub fn xi(self) -> Option<f64> {
        self.xi
    }
}

/// TMSV squeezing and loss channel describing the distilled resource.
///
/// `chi_e = 1` is allowed and marks the Choi limit reached at `g = g_chi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveParams {
    pub chi_e: f64,
    pub tau_e: f64,
    pub eps_e: f64,
}

impl EffectiveParams {
    pub fn new(chi_e: f64, tau_e: f64, eps_e: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&chi_e) || !(tau_e >= 0.0) || !tau_e.is_finite() || !eps_e.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "effective parameters ({chi_e}, {tau_e}, {eps_e}) out of range"
            )));
        }
        Ok(EffectiveParams { chi_e, tau_e, eps_e })
    }

    pub fn is_choi_limit(&self) -> bool {
        self.chi_e >= 1.0 - 1e-12
    }

    /// `(tau_e, |1 - tau_e| eps_e)`.
    pub fn channel(&self) -> Channel {
        Channel {
            tau: self.tau_e,
            v: (1.0 - self.tau_e).abs() * self.eps_e,
        }
    }

    /// Covariance `(a_e, b_e, c_e)` of the distilled resource; unavailable in
    /// the Choi limit.
    pub fn resource(&self) -> Result<TwoModeCovariance> {
        if self.is_choi_limit() {
            return Err(Error::Unsupported(
                "the Choi-limit resource has infinite energy".into(),
            ));
        }
        let tmsv = TwoModeCovariance::tmsv(Squeezing::new(self.chi_e)?);
        Ok(self.channel().apply_unchecked(&tmsv))
    }
}

/// Raw closed forms for `(chi_e, tau_e, eps_e)`; no domain checks.
pub fn effective_triple(chi: f64, tau: f64, eps: f64, g: f64) -> (f64, f64, f64) {
    let g2 = g * g;
    let chi_e = chi
        * ((2.0 + (g2 - 1.0) * (eps * (tau - 1.0) + tau + 1.0))
            / (2.0 + (eps - 1.0) * (tau - 1.0) * (g2 - 1.0)))
            .sqrt();
    let m = tau + 1.0 + eps * (tau - 1.0);
    let tau_e = 4.0 * g2 * tau
        / (eps + 1.0 + (eps - 1.0) * ((tau - 1.0) * g2 - tau))
        / ((eps + 1.0) * (1.0 - tau) + m * g2);
    let eps_e = (tau + 1.0 + eps * (2.0 + eps * (1.0 - tau)) + (eps - 1.0) * m * g2 * g2)
        / ((eps + 1.0 - (eps - 1.0) * g2).powi(2) - tau * (eps * eps - 1.0) * (g2 - 1.0).powi(2));
    (chi_e, tau_e, eps_e)
}

/// Upper limits on the NLA gain from `chi_e <= 1` and `eps_e >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainBounds {
    pub g_chi: f64,
    pub g_eps: f64,
    pub g_max: f64,
}

fn loss_parameters(g: &Channel) -> Result<(f64, f64)> {
    if !(g.tau > 0.0 && g.tau < 1.0) {
        return Err(Error::Unsupported(format!(
            "effective NLA parameters are defined for loss channels only, got tau = {}",
            g.tau
        )));
    }
    g.check_physical(DEFAULT_TOL)?;
    Ok((g.tau, (g.v / (1.0 - g.tau)).max(1.0)))
}

fn checked_sqrt_ratio(num: f64, den: f64) -> f64 {
    if den <= 0.0 {
        f64::INFINITY
    } else {
        (num / den).max(0.0).sqrt()
    }
}

pub fn gain_bounds(chi: Squeezing, g: &Channel) -> Result<GainBounds> {
    let (tau, eps) = loss_parameters(g)?;
    let x2 = chi.chi().powi(2);
    let g_chi = checked_sqrt_ratio(
        tau * (1.0 - eps) + (eps + 1.0) * (1.0 + (tau - 1.0) * x2),
        tau - 1.0 + eps * (tau - 1.0) * (x2 - 1.0) + (tau + 1.0) * x2,
    );
    let g_eps = if eps - 1.0 <= DEFAULT_TOL {
        f64::INFINITY
    } else {
        checked_sqrt_ratio(
            (1.0 - eps * eps) * (1.0 - tau) + 2.0 * ((eps * eps - 1.0) * tau).sqrt(),
            (eps - 1.0) * (tau + 1.0 + eps * (tau - 1.0)),
        )
    };
    Ok(GainBounds {
        g_chi,
        g_eps,
        g_max: g_chi.min(g_eps),
    })
}

/// Effective parameters after loss and a successful NLA.
pub fn effective_params(chi: Squeezing, g: &Channel, gain: NlaGain) -> Result<EffectiveParams> {
    let (tau, eps) = loss_parameters(g)?;
    let bounds = gain_bounds(chi, g)?;
    if gain.value() > bounds.g_max * (1.0 + 1e-12) {
        return Err(Error::GainTooLarge {
            gain: gain.value(),
            g_max: bounds.g_max,
        });
    }
    let (chi_e, tau_e, eps_e) = effective_triple(chi.chi(), tau, eps, gain.value());
    EffectiveParams::new(chi_e.min(1.0), tau_e, eps_e.max(1.0))
}

/// `g_max > 1/chi` on a loss channel that is not entanglement breaking.
pub fn correctable(chi: Squeezing, g: &Channel) -> bool {
    let x = chi.chi();
    if !(x > 0.0) || g.is_entanglement_breaking() {
        return false;
    }
    match gain_bounds(chi, g) {
        Ok(b) => b.g_max > 1.0 / x,
        Err(_) => false,
    }
}

/// Signed `theta`; the simulated channel has `v = (1 - lambda) theta`.
pub fn theta(eff: &EffectiveParams, lam: TeleportGain) -> Result<f64> {
    let l = lam.value();
    if !(l > 0.0) || (l - 1.0).abs() <= DEFAULT_TOL {
        return Err(Error::InvalidParameter(format!(
            "theta is defined for lambda > 0, lambda != 1; got {l}"
        )));
    }
    let (x, t, e) = (eff.chi_e, eff.tau_e, eff.eps_e);
    let x2 = x * x;
    let num = e * (t - 1.0) * (x2 - 1.0) + x2 * (t + l) - 4.0 * x * (t * l).sqrt() + t + l;
    Ok(num / ((l - 1.0) * (x2 - 1.0)))
}

/// Excess noise `eps_c` of the simulated channel: `theta` below unit gain,
/// `-theta` above it.
pub fn simulated_eps(eff: &EffectiveParams, lam: TeleportGain) -> Result<f64> {
    let th = theta(eff, lam)?;
    Ok(if lam.value() < 1.0 { th } else { -th })
}

/// Channel simulated by the effective resource at gain `lam`. At `lambda = 1`
/// the additive noise comes from the resource entries directly.
pub fn simulated_channel_eff(eff: &EffectiveParams, lam: TeleportGain) -> Result<Channel> {
    if eff.is_choi_limit() {
        if (lam.value() - eff.tau_e).abs() <= DEFAULT_TOL {
            return Ok(eff.channel());
        }
        return Err(Error::Unsupported(
            "the Choi-limit resource only simulates at lambda = tau_e".into(),
        ));
    }
    simulated_channel(&eff.resource()?, lam)
}

/// Largest `lambda` at which the simulated channel is still not
/// entanglement breaking (`v(lambda) = 1 + lambda`).
pub fn lambda_max(eff: &EffectiveParams) -> Result<f64> {
    if eff.is_choi_limit() {
        return Ok(eff.tau_e);
    }
    let (x, t) = (eff.chi_e, eff.tau_e);
    if !(x > 0.0 && t > 0.0) {
        return Err(Error::Unsupported(
            "a product resource simulates only entanglement-breaking channels".into(),
        ));
    }
    let ve = (1.0 - t).abs() * eff.eps_e;
    // (a_e - 1) s^2 - 2 c_e s + (b_e - 1) = 0 with s = sqrt(lambda)
    let k = t * (1.0 + x * x) + (ve - 1.0) * (1.0 - x * x);
    let disc = t - k / 2.0;
    if disc < 0.0 {
        return Err(Error::Unsupported(
            "every teleportation gain yields an entanglement-breaking channel".into(),
        ));
    }
    let s = (t.sqrt() + disc.sqrt()) / x;
    Ok(s * s)
}

/// The same ceiling read off any balanced resource.
pub fn lambda_max_for_resource(rho: &TwoModeCovariance) -> Option<f64> {
    let (a, b, c) = (rho.a, rho.b, rho.c1);
    if !(a > 1.0) || !(c > 0.0) {
        return None;
    }
    let disc = c * c - (a - 1.0) * (b - 1.0);
    if disc < 0.0 {
        return None;
    }
    let s = (c + disc.sqrt()) / (a - 1.0);
    Some(s * s)
}

/// Closed-form gain at which the simulated amplifier becomes pure
/// (`v(lambda) = lambda - 1`); `None` when the expression is complex.
pub fn amplifier_saturation_gain(eff: &EffectiveParams) -> Option<f64> {
    let (x, t, e) = (eff.chi_e, eff.tau_e, eff.eps_e);
    let rad = 2.0 * t * (e + 1.0) * (1.0 - t) * (x * x - 1.0);
    if rad < 0.0 || x == 0.0 {
        return None;
    }
    Some((e + 1.0) * (1.0 - t) / 2.0 + (3.0 * t - e * (1.0 - t) - 1.0 - 2.0 * rad.sqrt()) / (2.0 * x * x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PureChannelKind {
    Loss,
    Amplifier,
}

/// `lambda = tau_e chi_e^2` (loss) or `tau_e / chi_e^2` (amplifier).
pub fn pure_sim_tau(chi_e: Squeezing, tau_e: f64, kind: PureChannelKind) -> f64 {
    let x2 = chi_e.chi().powi(2);
    match kind {
        PureChannelKind::Loss => tau_e * x2,
        PureChannelKind::Amplifier => tau_e / x2,
    }
}

/// Best teleportation gain and the entanglement it leaves on `tmsv(zeta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaOptimum {
    pub lambda: f64,
    pub eof: f64,
    pub channel: Channel,
}

fn least_noisy(rho: &TwoModeCovariance) -> Result<LambdaOptimum> {
    // v(lambda) - lambda is minimized at sqrt(lambda) = c / (a - 1)
    let lambda = if rho.a > 1.0 && rho.c1 > 0.0 {
        (rho.c1 / (rho.a - 1.0)).powi(2)
    } else {
        0.0
    };
    Ok(LambdaOptimum {
        lambda,
        eof: 0.0,
        channel: simulated_channel(rho, TeleportGain::new(lambda)?)?,
    })
}

fn optimize_over(rho: &TwoModeCovariance, zeta: Squeezing, lam_hi: Option<f64>) -> Result<LambdaOptimum> {
    let Some(hi) = lam_hi.filter(|&h| h > 0.0) else {
        return least_noisy(rho);
    };
    let eof_at = |l: f64| -> f64 {
        TeleportGain::new(l)
            .and_then(|lam| simulated_channel(rho, lam))
            .and_then(|ch| eof_tmsv_through_channel(zeta, &ch))
            .unwrap_or(0.0)
    };
    let (lambda, eof) = grid_then_golden(eof_at, 0.0, hi, LAMBDA_GRID_POINTS, LAMBDA_XTOL);
    if !(eof > 0.0) {
        return least_noisy(rho);
    }
    Ok(LambdaOptimum {
        lambda,
        eof,
        channel: simulated_channel(rho, TeleportGain::new(lambda)?)?,
    })
}

/// Maximizes the output EOF over `lambda` for any balanced resource.
pub fn optimize_lambda_for_resource(rho: &TwoModeCovariance, zeta: Squeezing) -> Result<LambdaOptimum> {
    rho.check_physical(DEFAULT_TOL)?;
    optimize_over(rho, zeta, lambda_max_for_resource(rho))
}

/// Maximizes the output EOF over `lambda in (0, lambda_max]`.
pub fn optimize_lambda(eff: &EffectiveParams, zeta: Squeezing) -> Result<LambdaOptimum> {
    if eff.is_choi_limit() {
        let channel = eff.channel();
        return Ok(LambdaOptimum {
            lambda: eff.tau_e,
            eof: eof_tmsv_through_channel(zeta, &channel)?,
            channel,
        });
    }
    let rho = eff.resource()?;
    optimize_over(&rho, zeta, lambda_max(eff).ok())
}

/// Entanglement of the distilled resource.
pub fn resource_eof(eff: &EffectiveParams) -> Result<f64> {
    if eff.is_choi_limit() {
        return eof_choi(&eff.channel());
    }
    eof_tmsv_through_channel(Squeezing::new(eff.chi_e)?, &eff.channel())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub gain: f64,
    pub eff: EffectiveParams,
    pub resource_eof: f64,
    pub output: LambdaOptimum,
}

/// Ideal-NLA correction curve; points are evaluated in parallel and returned
/// in the order of `gains`.
pub fn correction_curve(g: &Channel, chi: Squeezing, zeta: Squeezing, gains: &[NlaGain]) -> Result<Vec<CurvePoint>> {
    gains
        .par_iter()
        .map(|&gain| {
            let eff = effective_params(chi, g, gain)?;
            Ok(CurvePoint {
                gain: gain.value(),
                eff,
                resource_eof: resource_eof(&eff)?,
                output: optimize_lambda(&eff, zeta)?,
            })
        })
        .collect()
}

/// Truncation used by the scissor pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockCutoffs {
    pub system: usize,
    pub ancilla: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScissorPoint {
    pub gain: f64,
    pub success_weight: f64,
    /// Second moments of the (non-Gaussian) post-scissor resource.
    pub resource: TwoModeCovariance,
    pub output: LambdaOptimum,
}

/// Correction curve with a single quantum scissor in place of the ideal
/// NLA. The non-Gaussian resource enters only through its second moments.
pub fn scissor_correction_curve(
    g: &Channel,
    chi: Squeezing,
    zeta: Squeezing,
    gains: &[NlaGain],
    cutoffs: FockCutoffs,
) -> Result<Vec<ScissorPoint>> {
    let psi = fock::tmsv_fock(chi, cutoffs.system)?;
    let lossy = fock::apply_loss_fock(&psi, g, cutoffs.ancilla)?;
    gains
        .par_iter()
        .map(|&gain| {
            let (out, success_weight) = fock::apply_scissor_t1(&lossy, gain)?;
            let resource = fock::covariance_from_fock(&out)?;
            debug_assert!((out.trace() - 1.0).abs() < 1e-9);
            Ok(ScissorPoint {
                gain: gain.value(),
                success_weight,
                resource,
                output: optimize_lambda_for_resource(&resource, zeta)?,
            })
        })
        .collect()
}

/// First abscissa where `ys` reaches `threshold`, linearly interpolated
/// between the bracketing samples.
pub fn first_crossing(xs: &[f64], ys: &[f64], threshold: f64) -> Option<f64> {
    let i = ys.iter().position(|&y| y >= threshold)?;
    if i == 0 {
        return Some(xs[0]);
    }
    let (x0, x1, y0, y1) = (xs[i - 1], xs[i], ys[i - 1], ys[i]);
    Some(x0 + (threshold - y0) * (x1 - x0) / (y1 - y0))
}

/// Noise of the channel the effective resource simulates, read off its
/// covariance entries.
pub fn effective_noise(eff: &EffectiveParams, lam: TeleportGain) -> Result<f64> {
    let rho = eff.resource()?;
    Ok(simulated_noise(rho.a, rho.b, rho.c1, lam.value()))
}
