//! Channel simulation by continuous-variable teleportation.
//!
//! A balanced resource `(a, b, c)` used with classical gain `lambda`
//! induces the channel `tau = lambda`, `v = a lambda - 2 c sqrt(lambda) + b`
//! on the teleported mode.

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::gaussian::{Squeezing, SymplecticSpectrum, TwoModeCovariance, DEFAULT_TOL};

/// Gain of the classical channel, `lambda >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TeleportGain(f64);

impl TeleportGain {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "teleportation gain lambda = {lambda} must be finite and >= 0"
            )));
        }
        Ok(TeleportGain(lambda))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The two resource branches `rho_plus`, `rho_minus` (both with `a >= b`)
/// that simulate a channel at `lambda = tau` with a given spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourcePair {
    pub rho_plus: TwoModeCovariance,
    pub rho_minus: TwoModeCovariance,
    pub spectrum_used: SymplecticSpectrum,
}

/// Noise of the simulated channel for resource entries `(a, b, c)`.
pub(crate) fn simulated_noise(a: f64, b: f64, c: f64, lambda: f64) -> f64 {
    a * lambda - 2.0 * c * lambda.sqrt() + b
}

/// The channel a balanced, physical resource simulates at gain `lam`.
pub fn simulated_channel(rho: &TwoModeCovariance, lam: TeleportGain) -> Result<Channel> {
    if !rho.is_balanced(DEFAULT_TOL) {
        return Err(Error::InvalidParameter(
            "teleportation resource must have c2 = -c1".into(),
        ));
    }
    rho.check_physical(DEFAULT_TOL)?;
    let lambda = lam.value();
    let v = simulated_noise(rho.a, rho.b, rho.c1, lambda);
    Ok(Channel {
        tau: lambda,
        v: v.max(0.0),
    })
}

/// Every balanced resource with symplectic spectrum `spectrum` that
/// simulates `g` at `lambda = tau`.
pub fn resource_family(g: &Channel, spectrum: SymplecticSpectrum) -> Result<ResourcePair> {
    g.check_physical(DEFAULT_TOL)?;
    if (g.tau - 1.0).abs() <= DEFAULT_TOL {
        return Err(Error::Unsupported(
            "resource family is singular at tau = 1 (additive noise)".into(),
        ));
    }
    if g.tau <= 0.0 {
        return Err(Error::Unsupported("resource family requires tau > 0".into()));
    }
    let (tau, v) = (g.tau, g.v);
    let (nm, np) = (spectrum.nu_minus, spectrum.nu_plus);
    let f1 = tau * nm - nm + v;
    let f2 = np - tau * np + v;
    let incompatible = Error::IncompatibleSpectrum {
        nu_minus: nm,
        nu_plus: np,
        tau,
        v,
    };
    if f1 < -DEFAULT_TOL || f2 < -DEFAULT_TOL {
        return Err(incompatible);
    }
    let root = (tau * f1.max(0.0) * f2.max(0.0)).sqrt();
    let den = (tau - 1.0).powi(2);
    let spread = (1.0 - tau) * (np - nm);
    let member = |sign: f64| {
        let a = (spread + (1.0 + tau) * v + sign * 2.0 * root) / den;
        let b = (tau * spread + (1.0 + tau) * v + sign * 2.0 * root) / den;
        let c = (tau * spread + 2.0 * tau * v + sign * (1.0 + tau) * root) / (tau.sqrt() * den);
        TwoModeCovariance::balanced(a, b, c)
    };
    let pair = ResourcePair {
        rho_plus: member(1.0),
        rho_minus: member(-1.0),
        spectrum_used: spectrum,
    };
    if !pair.rho_minus.is_physical(1e-7) || !pair.rho_plus.is_physical(1e-7) {
        return Err(incompatible);
    }
    Ok(pair)
}

/// Optimal squeezing `chi_opt` for simulating `g`, clamped to zero at and
/// above the entanglement-breaking line.
pub fn optimal_chi(g: &Channel) -> Result<f64> {
    g.check_physical(DEFAULT_TOL)?;
    if g.is_identity(DEFAULT_TOL) {
        return Err(Error::IdentityChannel);
    }
    let (tau, v) = (g.tau, g.v);
    let d = (1.0 - tau).abs();
    let rad = ((v + d) * (v - d)).max(0.0);
    let chi = (2.0 * tau.sqrt() - rad.sqrt()) / (tau + v + 1.0);
    Ok(chi.max(0.0))
}

/// Minimum-energy pure resource `tmsv(chi_opt)` simulating `g`.
pub fn optimal_resource(g: &Channel) -> Result<(Squeezing, TwoModeCovariance)> {
    let chi = Squeezing::new(optimal_chi(g)?)?;
    Ok((chi, TwoModeCovariance::tmsv(chi)))
}

/// Output of teleporting mode 2 of `sigma_in` with resource `rho` at gain `lam`.
pub fn teleport_output(
    sigma_in: &TwoModeCovariance,
    rho: &TwoModeCovariance,
    lam: TeleportGain,
) -> Result<TwoModeCovariance> {
    simulated_channel(rho, lam)?.apply_to_mode2(sigma_in)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::{eof_choi, eof_state};
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_gain_measure_and_prepare() {
        let rho = TwoModeCovariance::balanced(3.0, 2.0, 1.5);
        let g = simulated_channel(&rho, TeleportGain::new(0.0).unwrap()).unwrap();
        assert_eq!((g.tau, g.v), (0.0, 2.0));
        assert!(TeleportGain::new(-0.1).is_err());
    }

    #[test]
    fn tmsv_resource_gives_pure_loss() {
        for &x in &[0.3, 0.5, 0.9] {
            let rho = TwoModeCovariance::tmsv(Squeezing::new(x).unwrap());
            let g = simulated_channel(&rho, TeleportGain::new(x * x).unwrap()).unwrap();
            assert_abs_diff_eq!(g.tau, x * x, epsilon = 1e-15);
            assert_abs_diff_eq!(g.v, 1.0 - x * x, epsilon = 1e-12);
        }
    }

    #[test]
    fn unit_gain_never_reaches_identity() {
        for &x in &[0.5, 0.9, 0.99] {
            let rho = TwoModeCovariance::tmsv(Squeezing::new(x).unwrap());
            let g = simulated_channel(&rho, TeleportGain::new(1.0).unwrap()).unwrap();
            assert!(g.v > 0.0);
        }
    }

    #[test]
    fn optimal_resource_reproduces_target() {
        let target = Channel::new(0.5, 0.525).unwrap();
        let (_, rho) = optimal_resource(&target).unwrap();
        let g = simulated_channel(&rho, TeleportGain::new(0.5).unwrap()).unwrap();
        assert_abs_diff_eq!(g.v, 0.525, epsilon = 1e-12);
        assert_abs_diff_eq!(
            eof_state(&rho).unwrap(),
            eof_choi(&target).unwrap(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn optimal_chi_closed_forms() {
        for i in 1..10 {
            let tau = i as f64 / 10.0;
            let chi = optimal_chi(&Channel::new(tau, 1.0 - tau).unwrap()).unwrap();
            assert_abs_diff_eq!(chi, tau.sqrt(), epsilon = 1e-12);
            let amp = 1.0 + tau;
            let chi = optimal_chi(&Channel::new(amp, amp - 1.0).unwrap()).unwrap();
            assert_abs_diff_eq!(chi, 1.0 / amp.sqrt(), epsilon = 1e-12);
            let eb = optimal_chi(&Channel::new(tau, 1.0 + tau).unwrap()).unwrap();
            assert_abs_diff_eq!(eb, 0.0, epsilon = 1e-12);
        }
        assert_eq!(optimal_chi(&Channel::identity()), Err(Error::IdentityChannel));
        assert_eq!(
            optimal_resource(&Channel::new(0.5, 2.0).unwrap()).unwrap().1,
            TwoModeCovariance::vacuum()
        );
    }

    #[test]
    fn family_with_pure_spectrum_contains_optimum() {
        let g = Channel::new(0.5, 0.6).unwrap();
        let pair = resource_family(&g, SymplecticSpectrum::pure()).unwrap();
        let (_, opt) = optimal_resource(&g).unwrap();
        assert_abs_diff_eq!(pair.rho_minus.a, opt.a, epsilon = 1e-10);
        assert_abs_diff_eq!(pair.rho_minus.b, opt.b, epsilon = 1e-10);
        assert_abs_diff_eq!(pair.rho_minus.c1, opt.c1, epsilon = 1e-10);
        for rho in [pair.rho_plus, pair.rho_minus] {
            let sim = simulated_channel(&rho, TeleportGain::new(0.5).unwrap()).unwrap();
            assert_abs_diff_eq!(sim.v, 0.6, epsilon = 1e-9);
            assert!(rho.a >= rho.b);
        }
    }

    #[test]
    fn family_with_mixed_spectrum() {
        let g = Channel::new(0.5, 0.6).unwrap();
        let spec = SymplecticSpectrum::new(1.0, 1.5).unwrap();
        let pair = resource_family(&g, spec).unwrap();
        for rho in [pair.rho_plus, pair.rho_minus] {
            let s = rho.symplectic_eigenvalues().unwrap();
            assert_abs_diff_eq!(s.nu_minus, 1.0, epsilon = 1e-9);
            assert_abs_diff_eq!(s.nu_plus, 1.5, epsilon = 1e-9);
        }
    }

    #[test]
    fn family_rejections() {
        assert!(matches!(
            resource_family(&Channel::new(1.0, 0.5).unwrap(), SymplecticSpectrum::pure()),
            Err(Error::Unsupported(_))
        ));
        // (1 - tau) nu_minus > v
        assert!(matches!(
            resource_family(
                &Channel::new(0.5, 0.6).unwrap(),
                SymplecticSpectrum::new(2.0, 2.0).unwrap()
            ),
            Err(Error::IncompatibleSpectrum { .. })
        ));
    }

    #[test]
    fn teleport_output_is_two_step_composition() {
        let sigma = TwoModeCovariance::tmsv(Squeezing::new(0.5).unwrap());
        let out = teleport_output(&sigma, &sigma, TeleportGain::new(0.25).unwrap()).unwrap();
        let expected = Channel::new(0.25, 0.75).unwrap().apply_to_mode2(&sigma).unwrap();
        assert_abs_diff_eq!(out.b, expected.b, epsilon = 1e-12);
        assert_abs_diff_eq!(out.c1, expected.c1, epsilon = 1e-12);
    }
}
