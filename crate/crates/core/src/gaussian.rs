//! Two-mode Gaussian states in standard form.
//!
//! A zero-mean two-mode state is described by the covariance matrix
//!
//! ```text
//! | a  0  c1 0  |
//! | 0  a  0  c2 |
//! | c1 0  b  0  |
//! | 0  c2 0  b  |
//! ```
//!
//! in units where the vacuum quadrature variance is 1 (`x = a + a†`).
//! Resource states used for teleportation are *balanced*: `c2 = -c1`.

use crate::error::{Error, Result};

/// Default tolerance for physicality and classification checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Two-mode squeezing parameter, stored as `chi = tanh r`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Squeezing(f64);

impl Squeezing {
    pub fn new(chi: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&chi) {
            return Err(Error::SqueezingOutOfRange(chi));
        }
        Ok(Squeezing(chi))
    }

    /// From the squeezing parameter `r >= 0`.
    pub fn from_r(r: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!("squeezing r = {r} must be finite and >= 0")));
        }
        Squeezing::new(r.tanh())
    }

    pub fn chi(self) -> f64 {
        self.0
    }

    pub fn r(self) -> f64 {
        self.0.atanh()
    }
}

/// Symplectic spectrum `nu_minus <= nu_plus` of a two-mode covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticSpectrum {
    pub nu_minus: f64,
    pub nu_plus: f64,
}

impl SymplecticSpectrum {
    pub fn new(nu_minus: f64, nu_plus: f64) -> Result<Self> {
        if !(nu_minus >= 0.0 && nu_plus >= nu_minus) {
            return Err(Error::InvalidParameter(format!(
                "symplectic spectrum must satisfy 0 <= nu_minus <= nu_plus, got ({nu_minus}, {nu_plus})"
            )));
        }
        Ok(SymplecticSpectrum { nu_minus, nu_plus })
    }

    /// Both eigenvalues equal to one.
    pub fn pure() -> Self {
        SymplecticSpectrum {
            nu_minus: 1.0,
            nu_plus: 1.0,
        }
    }

    pub fn is_physical(&self, tol: f64) -> bool {
        self.nu_minus >= 1.0 - tol
    }
}

/// Second moments of a zero-mean two-mode Gaussian state in standard form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeCovariance {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

impl TwoModeCovariance {
    pub fn new(a: f64, b: f64, c1: f64, c2: f64) -> Self {
        TwoModeCovariance { a, b, c1, c2 }
    }

    /// Resource form with `c2 = -c1`.
    pub fn balanced(a: f64, b: f64, c: f64) -> Self {
        TwoModeCovariance { a, b, c1: c, c2: -c }
    }

    pub fn vacuum() -> Self {
        TwoModeCovariance::new(1.0, 1.0, 0.0, 0.0)
    }

    /// Two-mode squeezed vacuum.
    pub fn tmsv(chi: Squeezing) -> Self {
        let x = chi.chi();
        let d = 1.0 - x * x;
        let a = (1.0 + x * x) / d;
        TwoModeCovariance::balanced(a, a, 2.0 * x / d)
    }

    pub fn is_balanced(&self, tol: f64) -> bool {
        (self.c1 + self.c2).abs() <= tol * (1.0 + self.c1.abs())
    }

    /// Mean photon number per mode, `(tr(sigma) - 4) / 8`.
    pub fn mean_energy_per_mode(&self) -> f64 {
        (2.0 * self.a + 2.0 * self.b - 4.0) / 8.0
    }

    /// Partial transpose with respect to the second mode (flips the sign of `c2`).
    pub fn partial_transpose(&self) -> Self {
        TwoModeCovariance::new(self.a, self.b, self.c1, -self.c2)
    }

    pub fn swap_modes(&self) -> Self {
        TwoModeCovariance::new(self.b, self.a, self.c1, self.c2)
    }

    pub fn scaled(&self, s: f64) -> Self {
        TwoModeCovariance::new(self.a * s, self.b * s, self.c1 * s, self.c2 * s)
    }

    pub fn det(&self) -> f64 {
        (self.a * self.b - self.c1 * self.c1) * (self.a * self.b - self.c2 * self.c2)
    }

    /// The local-symplectic invariant `det A + det B + 2 det C`.
    pub fn seralian(&self) -> f64 {
        self.a * self.a + self.b * self.b + 2.0 * self.c1 * self.c2
    }

    /// Full 4x4 matrix in `(x1, p1, x2, p2)` ordering.
    pub fn to_matrix(&self) -> nalgebra::Matrix4<f64> {
        let (a, b, c1, c2) = (self.a, self.b, self.c1, self.c2);
        nalgebra::Matrix4::new(
            a, 0.0, c1, 0.0, //
            0.0, a, 0.0, c2, //
            c1, 0.0, b, 0.0, //
            0.0, c2, 0.0, b,
        )
    }

    /// Symplectic eigenvalues. Balanced states use the closed form in
    /// `(a, b, c)`; everything else goes through the two invariants.
    pub fn symplectic_eigenvalues(&self) -> Result<SymplecticSpectrum> {
        if self.c1 + self.c2 == 0.0 || self.is_balanced(1e-14) {
            self.symplectic_eigenvalues_balanced()
        } else {
            self.symplectic_eigenvalues_invariants()
        }
    }

    /// `nu± = (sqrt((a+b)^2 - 4c^2) ± |a-b|) / 2`, valid for `c2 = -c1`.
    pub fn symplectic_eigenvalues_balanced(&self) -> Result<SymplecticSpectrum> {
        let c = self.c1;
        let disc = (self.a + self.b).powi(2) - 4.0 * c * c;
        if disc < -DEFAULT_TOL {
            return Err(Error::MalformedCovariance(format!(
                "negative discriminant {disc:.3e} in symplectic spectrum"
            )));
        }
        let root = disc.max(0.0).sqrt();
        let diff = (self.a - self.b).abs();
        Ok(SymplecticSpectrum {
            nu_minus: (root - diff) / 2.0,
            nu_plus: (root + diff) / 2.0,
        })
    }

    /// `nu±^2 = (Delta ± sqrt(Delta^2 - 4 det sigma)) / 2`.
    pub fn symplectic_eigenvalues_invariants(&self) -> Result<SymplecticSpectrum> {
        let delta = self.seralian();
        let det = self.det();
        let scale = 1.0 + delta * delta;
        let disc = delta * delta - 4.0 * det;
        if disc < -DEFAULT_TOL * scale {
            return Err(Error::MalformedCovariance(format!(
                "negative discriminant {disc:.3e} in symplectic spectrum"
            )));
        }
        let root = disc.max(0.0).sqrt();
        let lo = (delta - root) / 2.0;
        let hi = (delta + root) / 2.0;
        if lo < -DEFAULT_TOL * scale {
            return Err(Error::MalformedCovariance(format!(
                "negative squared symplectic eigenvalue {lo:.3e}"
            )));
        }
        Ok(SymplecticSpectrum {
            nu_minus: lo.max(0.0).sqrt(),
            nu_plus: hi.sqrt(),
        })
    }

    /// `nu_minus >= 1 - tol`.
    pub fn is_physical(&self, tol: f64) -> bool {
        match self.symplectic_eigenvalues() {
            Ok(s) => s.nu_minus >= 1.0 - tol && self.a > 0.0 && self.b > 0.0,
            Err(_) => false,
        }
    }

    pub(crate) fn check_physical(&self, tol: f64) -> Result<()> {
        let s = self.symplectic_eigenvalues()?;
        if s.nu_minus < 1.0 - tol || self.a <= 0.0 || self.b <= 0.0 {
            return Err(Error::UnphysicalState { nu_minus: s.nu_minus });
        }
        Ok(())
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        match self.symplectic_eigenvalues() {
            Ok(s) => (s.nu_minus - 1.0).abs() <= tol && (s.nu_plus - 1.0).abs() <= tol,
            Err(_) => false,
        }
    }
}
