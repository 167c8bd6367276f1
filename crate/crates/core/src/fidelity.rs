//! Gaussian fidelities and the scan showing that fidelity can favour an
//! entanglement-breaking channel.

use rayon::prelude::*;

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::gaussian::{Squeezing, TwoModeCovariance};

/// Zero-mean single-mode Gaussian state with diagonal covariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleModeGaussian {
    pub v_x: f64,
    pub v_p: f64,
}

impl SingleModeGaussian {
    pub fn new(v_x: f64, v_p: f64) -> Result<Self> {
        if !(v_x > 0.0 && v_p > 0.0) || v_x * v_p < 1.0 - 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "variances ({v_x}, {v_p}) violate the uncertainty relation"
            )));
        }
        Ok(SingleModeGaussian { v_x, v_p })
    }

    pub fn vacuum() -> Self {
        SingleModeGaussian { v_x: 1.0, v_p: 1.0 }
    }

    pub fn det(&self) -> f64 {
        self.v_x * self.v_p
    }
}

/// `v_x = e^{2r}`, `v_p = e^{-2r}` with `r = artanh(zeta)`.
pub fn squeezed_vacuum(zeta: Squeezing) -> SingleModeGaussian {
    let r = zeta.r();
    SingleModeGaussian {
        v_x: (2.0 * r).exp(),
        v_p: (-2.0 * r).exp(),
    }
}

pub fn apply_channel_1mode(s: &SingleModeGaussian, g: &Channel) -> SingleModeGaussian {
    SingleModeGaussian {
        v_x: g.apply_to_variance(s.v_x),
        v_p: g.apply_to_variance(s.v_p),
    }
}

/// Fidelity of two zero-mean single-mode Gaussian states.
pub fn gaussian_fidelity_1mode(s1: &SingleModeGaussian, s2: &SingleModeGaussian) -> f64 {
    let big = (s1.v_x + s2.v_x) * (s1.v_p + s2.v_p);
    let small = ((s1.det() - 1.0) * (s2.det() - 1.0)).max(0.0);
    (2.0 / ((big + small).sqrt() - small.sqrt())).min(1.0)
}

/// Fidelity between a pure two-mode Gaussian state and any zero-mean
/// two-mode Gaussian state, `4 / sqrt(det(sigma_pure + sigma))`.
pub fn fidelity_pure_two_mode(pure: &TwoModeCovariance, other: &TwoModeCovariance) -> Result<f64> {
    if !pure.is_pure(1e-9) {
        return Err(Error::InvalidParameter("reference state must be pure".into()));
    }
    let (a, b) = (pure.a + other.a, pure.b + other.b);
    let (c1, c2) = (pure.c1 + other.c1, pure.c2 + other.c2);
    let det = (a * b - c1 * c1) * (a * b - c2 * c2);
    Ok((4.0 / det.abs().sqrt()).min(1.0))
}

/// What "the state" sent through the channels is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FidelityReading {
    /// One arm of `tmsv(zeta)` goes through the channel.
    #[default]
    TwoModeArm,
    /// A single-mode squeezed vacuum goes through the channel.
    SingleMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    /// `F1 < F2` and the composite channel breaks entanglement.
    I,
    /// Entanglement breaking only.
    II,
    /// Neither.
    III,
    /// `F1 < F2` only.
    IV,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::I => "I",
            Region::II => "II",
            Region::III => "III",
            Region::IV => "IV",
        }
    }

    fn classify(f1_below_f2: bool, breaking: bool) -> Self {
        match (f1_below_f2, breaking) {
            (true, true) => Region::I,
            (false, true) => Region::II,
            (false, false) => Region::III,
            (true, false) => Region::IV,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanCell {
    pub tau1: f64,
    pub tau2: f64,
    pub f1: f64,
    pub f2: f64,
    pub entanglement_breaking: bool,
    pub region: Region,
}

/// Lattice of `(tau1, tau2)` cell centres.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub tau1: Vec<f64>,
    pub tau2: Vec<f64>,
}

impl ScanGrid {
    /// `n1` cell centres in `(lo1, hi1)` by `n2` in `(lo2, hi2)`.
    pub fn centres(n1: usize, (lo1, hi1): (f64, f64), n2: usize, (lo2, hi2): (f64, f64)) -> Self {
        let axis = |n: usize, lo: f64, hi: f64| -> Vec<f64> {
            (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect()
        };
        ScanGrid {
            tau1: axis(n1, lo1, hi1),
            tau2: axis(n2, lo2, hi2),
        }
    }
}

/// Compares `L(tau1, eps1)` alone against the amplifier `A(tau2, eps2)`
/// followed by `L(tau1, eps1)`. Cells are ordered row-major in `tau1`.
pub fn amplified_loss_scan(
    zeta: Squeezing,
    eps1: f64,
    eps2: f64,
    grid: &ScanGrid,
    reading: FidelityReading,
) -> Result<Vec<ScanCell>> {
    if !(eps1 >= 1.0 && eps2 >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "excess noises must be >= 1, got ({eps1}, {eps2})"
        )));
    }
    let cells: Vec<(f64, f64)> = grid
        .tau1
        .iter()
        .flat_map(|&t1| grid.tau2.iter().map(move |&t2| (t1, t2)))
        .collect();
    cells
        .par_iter()
        .map(|&(tau1, tau2)| {
            let loss = Channel::from_eps(tau1, eps1)?;
            let amp = Channel::from_eps(tau2, eps2)?;
            let composite = amp.compose(&loss);
            let (f1, f2) = match reading {
                FidelityReading::TwoModeArm => {
                    let input = TwoModeCovariance::tmsv(zeta);
                    (
                        fidelity_pure_two_mode(&input, &loss.apply_unchecked(&input))?,
                        fidelity_pure_two_mode(&input, &composite.apply_unchecked(&input))?,
                    )
                }
                FidelityReading::SingleMode => {
                    let input = squeezed_vacuum(zeta);
                    (
                        gaussian_fidelity_1mode(&input, &apply_channel_1mode(&input, &loss)),
                        gaussian_fidelity_1mode(&input, &apply_channel_1mode(&input, &composite)),
                    )
                }
            };
            let breaking = composite.is_entanglement_breaking();
            Ok(ScanCell {
                tau1,
                tau2,
                f1,
                f2,
                entanglement_breaking: breaking,
                region: Region::classify(f1 < f2, breaking),
            })
        })
        .collect()
}
