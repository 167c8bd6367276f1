//! Entanglement of formation through the minimum preparatory squeezing `r_o`,
//! and logarithmic negativity.
//!
//! The closed forms here cover the family the protocol produces: one arm of a
//! two-mode squeezed vacuum sent through a phase-insensitive channel. Any
//! balanced state with `a > 1` and `c != 0` can be written that way (see
//! [`decompose_tmsv_channel`]), which is what makes [`eof_state`] work on
//! resource and output states alike. The channel is assumed to act on the
//! second mode; swap modes before calling if it does not.

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::gaussian::{Squeezing, TwoModeCovariance, DEFAULT_TOL};

/// Minimum two-mode squeezing and the corresponding EOF in ebits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EofResult {
    pub r_o: f64,
    pub eof: f64,
}

impl EofResult {
    pub fn from_ro(r_o: f64) -> Self {
        EofResult {
            r_o,
            eof: eof_from_ro(r_o),
        }
    }
}

/// `cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r`, zero at `r = 0`.
pub fn eof_from_ro(r_o: f64) -> f64 {
    if r_o <= 0.0 {
        return 0.0;
    }
    let x = r_o.sinh().powi(2);
    (1.0 + x) * (1.0 + x).log2() - x * x.log2()
}

/// `sqrt(v^2 - (1 - tau)^2)`, rejecting channels whose radicand is negative.
fn noise_radical(g: &Channel) -> Result<f64> {
    let d = (1.0 - g.tau).abs();
    let rad = (g.v + d) * (g.v - d);
    if rad < -DEFAULT_TOL {
        return Err(Error::UnphysicalChannel { tau: g.tau, v: g.v });
    }
    Ok(rad.max(0.0).sqrt())
}

/// Minimum squeezing `r_o` of a TMSV with squeezing `r` whose second arm
/// went through `g`. Clamped at zero for entanglement-breaking channels.
pub fn ro_tmsv_through_channel(r: f64, g: &Channel) -> Result<f64> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("squeezing r = {r} must be finite and >= 0")));
    }
    g.check_physical(DEFAULT_TOL)?;
    let w = noise_radical(g)?;
    if g.is_entanglement_breaking() || r == 0.0 {
        return Ok(0.0);
    }
    let (tau, v) = (g.tau, g.v);
    let (s2, c2, c4) = ((2.0 * r).sinh(), (2.0 * r).cosh(), (4.0 * r).cosh());
    let numerator = 3.0 + (2.0 * v * v - (1.0 - tau).powi(2)) * c4 + tau * (3.0 * tau + 2.0)
        + 4.0 * v * (1.0 + tau) * c2
        - 4.0 * w * s2 * (v * c2 + 1.0 + tau);
    let denominator = 2.0 * (v - 2.0 * tau.sqrt() * s2 + (1.0 + tau) * c2).powi(2);
    let ratio = numerator / denominator;
    if !(ratio > 1.0) {
        return Ok(0.0);
    }
    Ok(0.25 * ratio.ln())
}

/// Minimum squeezing of the channel's Choi state.
///
/// Uses `r = 1/2 ln((1 + sqrt(tau))^2 / (v + sqrt(v^2 - (1 - tau)^2)))`, which
/// is the `tau != 1` expression with its radical rationalized and reduces to
/// `1/4 ln(4 / v^2)` at `tau = 1`.
pub fn ro_choi(g: &Channel) -> Result<f64> {
    g.check_physical(DEFAULT_TOL)?;
    if g.is_identity(DEFAULT_TOL) {
        return Err(Error::IdentityChannel);
    }
    if g.is_entanglement_breaking() {
        return Ok(0.0);
    }
    let w = noise_radical(g)?;
    let r = 0.5 * ((1.0 + g.tau.sqrt()).powi(2) / (g.v + w)).ln();
    Ok(r.max(0.0))
}

/// Inverts `tmsv(r)` followed by a channel on mode 2: returns `(r, channel)`
/// with `cosh 2r = a`, `tau = c^2 / (a^2 - 1)`, `v = b - tau a`.
pub fn decompose_tmsv_channel(sigma: &TwoModeCovariance) -> Result<(f64, Channel)> {
    if !sigma.is_balanced(DEFAULT_TOL) {
        return Err(Error::NotDecomposable(format!(
            "c2 = {} is not -c1 = {}",
            sigma.c2, -sigma.c1
        )));
    }
    if !(sigma.a > 1.0) {
        return Err(Error::NotDecomposable(format!("a = {} must exceed 1", sigma.a)));
    }
    let c = sigma.c1.abs();
    if c == 0.0 {
        return Err(Error::NotDecomposable("no correlations (c = 0)".into()));
    }
    let r = sigma.a.acosh() / 2.0;
    let tau = c * c / (sigma.a * sigma.a - 1.0);
    let v = sigma.b - tau * sigma.a;
    let tol = DEFAULT_TOL * (1.0 + sigma.b.abs());
    if v < (1.0 - tau).abs() - tol {
        return Err(Error::NotDecomposable(format!(
            "implied channel (tau = {tau}, v = {v}) is unphysical"
        )));
    }
    Ok((r, Channel { tau, v: v.max(0.0) }))
}

/// Minimum squeezing `r_o` of a state in the tmsv-through-channel family.
pub fn ro_state(sigma: &TwoModeCovariance) -> Result<f64> {
    sigma.check_physical(DEFAULT_TOL)?;
    if sigma.c1.abs() <= DEFAULT_TOL && sigma.c2.abs() <= DEFAULT_TOL {
        // product state
        return Ok(0.0);
    }
    let (r, g) = decompose_tmsv_channel(sigma).map_err(|e| {
        Error::Unsupported(format!(
            "EOF is only available for tmsv-through-channel states ({e})"
        ))
    })?;
    ro_tmsv_through_channel(r, &g)
}

pub fn state_eof(sigma: &TwoModeCovariance) -> Result<EofResult> {
    ro_state(sigma).map(EofResult::from_ro)
}

/// Entanglement of formation (ebits) of a balanced tmsv-through-channel state.
pub fn eof_state(sigma: &TwoModeCovariance) -> Result<f64> {
    ro_state(sigma).map(eof_from_ro)
}

/// EOF of `tmsv(zeta)` after `g` acts on its second arm.
pub fn eof_tmsv_through_channel(zeta: Squeezing, g: &Channel) -> Result<f64> {
    ro_tmsv_through_channel(zeta.r(), g).map(eof_from_ro)
}

/// EOF of the channel's Choi state.
pub fn eof_choi(g: &Channel) -> Result<f64> {
    ro_choi(g).map(eof_from_ro)
}

/// `max(0, -log2 nu~_-)` with `nu~_-` from the partially transposed matrix.
pub fn log_negativity(sigma: &TwoModeCovariance) -> Result<f64> {
    sigma.check_physical(DEFAULT_TOL)?;
    let nu = sigma
        .partial_transpose()
        .symplectic_eigenvalues_invariants()?
        .nu_minus;
    if nu >= 1.0 {
        return Ok(0.0);
    }
    Ok(-nu.log2())
}
