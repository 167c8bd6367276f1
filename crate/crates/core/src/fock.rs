//! Truncated number-basis simulation of two-mode states.
//!
//! This is the brute-force counterpart of the covariance-matrix routines:
//! states are stored as amplitude matrices `psi[(n1, n2)]` up to a per-mode
//! photon-number cutoff, and mixed states as ensembles of unnormalized pure
//! components `rho = sum_k |phi_k><phi_k|` (one component per Kraus branch).
//! Every operation here acts on the second mode.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::gaussian::{Squeezing, TwoModeCovariance, DEFAULT_TOL};
use crate::nla::NlaGain;

/// Tail mass tolerated beyond a truncation.
pub const TAIL_TOL: f64 = 1e-10;

/// Tolerance on first moments and standard-form violations.
const MOMENT_TOL: f64 = 1e-8;

type Amplitudes = DMatrix<Complex64>;

/// Common view of pure and mixed truncated states.
pub trait FockState: Sized {
    /// Highest photon number kept per mode.
    fn cutoff(&self) -> usize;

    /// Unnormalized pure components whose projectors sum to the state.
    fn components(&self) -> &[Amplitudes];

    /// Applies `f` to every component.
    fn map_components(&self, f: impl Fn(&Amplitudes) -> Amplitudes) -> Self;

    fn trace(&self) -> f64 {
        self.components().iter().map(|c| c.norm_squared()).sum()
    }

    /// The state rescaled to unit trace.
    fn normalized(&self) -> Self {
        let s = 1.0 / self.trace().sqrt();
        self.map_components(|c| c * Complex64::new(s, 0.0))
    }
}

/// Pure two-mode state in the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockStateVector {
    amps: [Amplitudes; 1],
}

impl FockStateVector {
    /// Amplitudes indexed by `(n1, n2)`; the matrix must be square.
    pub fn from_amplitudes(amps: Amplitudes) -> Result<Self> {
        if amps.nrows() != amps.ncols() || amps.nrows() < 2 {
            return Err(Error::InvalidParameter(format!(
                "amplitude matrix must be square with cutoff >= 1, got {}x{}",
                amps.nrows(),
                amps.ncols()
            )));
        }
        Ok(FockStateVector { amps: [amps] })
    }

    pub fn vacuum(cutoff: usize) -> Self {
        let mut amps = Amplitudes::zeros(cutoff + 1, cutoff + 1);
        amps[(0, 0)] = Complex64::new(1.0, 0.0);
        FockStateVector { amps: [amps] }
    }

    pub fn amplitudes(&self) -> &Amplitudes {
        &self.amps[0]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps[0].norm_squared()
    }

    /// `|<self|other>|^2` summed over the components of `other`.
    pub fn overlap_with<S: FockState>(&self, other: &S) -> Result<f64> {
        if other.cutoff() != self.cutoff() {
            return Err(Error::InvalidParameter("cutoff mismatch".into()));
        }
        Ok(other
            .components()
            .iter()
            .map(|c| self.amps[0].dotc(c).norm_sqr())
            .sum())
    }
}

impl FockState for FockStateVector {
    fn cutoff(&self) -> usize {
        self.amps[0].nrows() - 1
    }

    fn components(&self) -> &[Amplitudes] {
        &self.amps
    }

    fn map_components(&self, f: impl Fn(&Amplitudes) -> Amplitudes) -> Self {
        FockStateVector {
            amps: [f(&self.amps[0])],
        }
    }
}

/// Mixed two-mode state stored as an ensemble of pure components.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensityMatrix {
    cutoff: usize,
    components: Vec<Amplitudes>,
}

impl FockDensityMatrix {
    pub fn from_components(cutoff: usize, components: Vec<Amplitudes>) -> Result<Self> {
        if components.is_empty()
            || components
                .iter()
                .any(|c| c.nrows() != cutoff + 1 || c.ncols() != cutoff + 1)
        {
            return Err(Error::InvalidParameter(
                "components must be non-empty and (cutoff+1)x(cutoff+1)".into(),
            ));
        }
        Ok(FockDensityMatrix { cutoff, components })
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Dense matrix over the basis `|n1, n2>` with index `n1 (cutoff+1) + n2`.
    /// Memory grows as `cutoff^4`.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let d = self.cutoff + 1;
        let mut rho = DMatrix::zeros(d * d, d * d);
        for c in &self.components {
            let v = nalgebra::DVector::from_iterator(
                d * d,
                (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| c[(i, j)]),
            );
            rho += &v * v.adjoint();
        }
        rho
    }
}

impl From<FockStateVector> for FockDensityMatrix {
    fn from(psi: FockStateVector) -> Self {
        let cutoff = psi.cutoff();
        let [amps] = psi.amps;
        FockDensityMatrix {
            cutoff,
            components: vec![amps],
        }
    }
}

impl FockState for FockDensityMatrix {
    fn cutoff(&self) -> usize {
        self.cutoff
    }

    fn components(&self) -> &[Amplitudes] {
        &self.components
    }

    fn map_components(&self, f: impl Fn(&Amplitudes) -> Amplitudes) -> Self {
        FockDensityMatrix {
            cutoff: self.cutoff,
            components: self.components.iter().map(f).collect(),
        }
    }
}

fn suggest_cutoff(current: usize, tail: f64, ratio: f64) -> usize {
    if !(ratio > 0.0 && ratio < 1.0) || !(tail > 0.0) {
        return 2 * current.max(1);
    }
    let extra = ((TAIL_TOL / tail).ln() / ratio.ln()).ceil().max(1.0) as usize;
    current + extra
}

/// `sqrt(1 - chi^2) sum_n chi^n |n, n>`.
pub fn tmsv_fock(chi: Squeezing, cutoff: usize) -> Result<FockStateVector> {
    let x = chi.chi();
    if cutoff < 1 {
        return Err(Error::InvalidParameter("cutoff must be >= 1".into()));
    }
    let tail = x.powi(2 * (cutoff as i32 + 1));
    if tail > TAIL_TOL {
        let suggested = (TAIL_TOL.ln() / (2.0 * x.ln())).ceil() as usize;
        return Err(Error::CutoffTooSmall {
            cutoff,
            tail,
            suggested,
        });
    }
    let norm = (1.0 - x * x).sqrt();
    let mut amps = Amplitudes::zeros(cutoff + 1, cutoff + 1);
    let mut w = norm;
    for n in 0..=cutoff {
        amps[(n, n)] = Complex64::new(w, 0.0);
        w *= x;
    }
    Ok(FockStateVector { amps: [amps] })
}

/// Probability mass on the outermost shell (`n1 = cutoff` or `n2 = cutoff`),
/// plus the ratio to the shell below it.
fn boundary_shell<S: FockState>(state: &S) -> (f64, f64) {
    let n = state.cutoff();
    let total = state.trace();
    let shell = |k: usize| -> f64 {
        state
            .components()
            .iter()
            .map(|c| {
                let mut s = 0.0;
                for i in 0..=k {
                    s += c[(k, i)].norm_sqr();
                    if i != k {
                        s += c[(i, k)].norm_sqr();
                    }
                }
                s
            })
            .sum::<f64>()
            / total
    };
    let outer = shell(n);
    let inner = shell(n - 1);
    (outer, if inner > 0.0 { outer / inner } else { 0.0 })
}

fn check_tail<S: FockState>(state: &S) -> Result<()> {
    let (tail, ratio) = boundary_shell(state);
    if tail > TAIL_TOL {
        return Err(Error::CutoffTooSmall {
            cutoff: state.cutoff(),
            tail,
            suggested: suggest_cutoff(state.cutoff(), tail, ratio),
        });
    }
    Ok(())
}

/// Multiplies mode-2 amplitudes by `weights[n2]` (zero past the end), returns
/// the renormalized state and the squared norm before renormalization.
fn apply_mode2_diagonal<S: FockState>(state: &S, weights: &[f64]) -> Result<(S, f64)> {
    let before = state.trace();
    let scaled = state.map_components(|c| {
        let mut out = c.clone();
        for (j, mut col) in out.column_iter_mut().enumerate() {
            let w = weights.get(j).copied().unwrap_or(0.0);
            col *= Complex64::new(w, 0.0);
        }
        out
    });
    let after = scaled.trace();
    if !(after > 0.0) {
        return Err(Error::InvalidParameter(
            "operation annihilated the state".into(),
        ));
    }
    Ok((scaled.normalized(), after / before))
}

/// Ideal noiseless linear amplification `g^n` on mode 2.
pub fn apply_ideal_nla<S: FockState>(state: &S, gain: NlaGain) -> Result<(S, f64)> {
    let g = gain.value();
    let weights: Vec<f64> = (0..=state.cutoff()).map(|n| g.powi(n as i32)).collect();
    let (out, weight) = apply_mode2_diagonal(state, &weights)?;
    check_tail(&out)?;
    Ok((out, weight))
}

/// Single quantum scissor: keeps `|0>` and `g|1>` on mode 2, divided by
/// `sqrt(1 + g^2)`.
pub fn apply_scissor_t1<S: FockState>(state: &S, gain: NlaGain) -> Result<(S, f64)> {
    let g = gain.value();
    let norm = (1.0 + g * g).sqrt();
    apply_mode2_diagonal(state, &[1.0 / norm, g / norm])
}

/// Diagonal of the truncation operator for `n_scissors` scissors:
/// `(1 + g^2)^(-N/2) N! / ((N - n)! N^n)` for `n <= N`.
pub fn truncation_weights(n_scissors: usize, gain: NlaGain) -> Result<Vec<f64>> {
    if n_scissors < 1 {
        return Err(Error::InvalidParameter("need at least one scissor".into()));
    }
    let g = gain.value();
    let big_n = n_scissors as f64;
    let prefactor = (1.0 / (1.0 + g * g)).powf(big_n / 2.0);
    let mut weights = Vec::with_capacity(n_scissors + 1);
    let mut falling = 1.0;
    for n in 0..=n_scissors {
        weights.push(prefactor * falling);
        falling *= (big_n - n as f64) / big_n;
    }
    Ok(weights)
}

/// `T_N = Pi_N g^n` on mode 2.
pub fn apply_scissors_tn<S: FockState>(state: &S, n_scissors: usize, gain: NlaGain) -> Result<(S, f64)> {
    let g = gain.value();
    let weights: Vec<f64> = truncation_weights(n_scissors, gain)?
        .into_iter()
        .enumerate()
        .map(|(n, w)| w * g.powi(n as i32))
        .collect();
    apply_mode2_diagonal(state, &weights)
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// `<k, l| B |n, m>` for a beam splitter with amplitude transmissivity `t`
/// and reflectivity `s` (system mode first, ancilla second); zero unless
/// `k + l = n + m`.
fn beam_splitter_amplitude(n: usize, m: usize, k: usize, l: usize, t: f64, s: f64, lnf: &[f64]) -> f64 {
    if k + l != n + m {
        return 0.0;
    }
    let ln_norm = 0.5 * (lnf[k] + lnf[l] - lnf[n] - lnf[m]);
    let mut sum = 0.0;
    // i photons of the system stay, j photons of the ancilla cross over: i + j = k
    let i_lo = k.saturating_sub(m);
    let i_hi = n.min(k);
    for i in i_lo..=i_hi {
        let j = k - i;
        let ln_binom = lnf[n] - lnf[i] - lnf[n - i] + lnf[m] - lnf[j] - lnf[m - j];
        let pow = t.powi((i + m - j) as i32) * s.powi((n - i + j) as i32);
        let sign = if (n - i) % 2 == 1 { -1.0 } else { 1.0 };
        sum += sign * (ln_binom + ln_norm).exp() * pow;
    }
    sum
}

/// Sends mode 2 through a (pure or thermal) loss channel by coupling it to a
/// thermal ancilla with mean occupation `(eps - 1) / 2` on a beam splitter of
/// transmissivity `tau`, then tracing the ancilla out.
pub fn apply_loss_fock<S: FockState>(state: &S, g: &Channel, ancilla_cutoff: usize) -> Result<FockDensityMatrix> {
    g.check_physical(DEFAULT_TOL)?;
    if !(g.tau > 0.0 && g.tau <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "loss channel needs 0 < tau <= 1, got {}",
            g.tau
        )));
    }
    let eps = g.eps().unwrap_or(1.0).max(1.0);
    if (g.tau - 1.0).abs() <= DEFAULT_TOL && g.v > DEFAULT_TOL {
        return Err(Error::Unsupported(
            "additive noise has no beam-splitter loss model".into(),
        ));
    }
    let nbar = (eps - 1.0) / 2.0;
    let q = nbar / (1.0 + nbar);
    let max_m = if nbar <= 1e-300 { 0 } else { ancilla_cutoff };
    let tail = if max_m == 0 && nbar <= 1e-300 { 0.0 } else { q.powi(max_m as i32 + 1) };
    if tail > TAIL_TOL {
        let suggested = ((TAIL_TOL.ln() / q.ln()).ceil() as usize).saturating_sub(1);
        return Err(Error::CutoffTooSmall {
            cutoff: ancilla_cutoff,
            tail,
            suggested,
        });
    }

    let n_max = state.cutoff();
    let d = n_max + 1;
    let lnf = ln_factorials(2 * n_max + max_m + 2);
    let (t, s) = (g.tau.sqrt(), (1.0 - g.tau).max(0.0).sqrt());
    let before = state.trace();
    let mut components = Vec::new();
    let mut dropped = 0.0;

    for m in 0..=max_m {
        let p_m = q.powi(m as i32) / (1.0 + nbar);
        let sp = p_m.sqrt();
        for l in 0..=(n_max + m) {
            // K[k <- n] is nonzero only on k = n + m - l
            let kraus: Vec<(usize, usize, f64)> = (0..d)
                .filter_map(|n| {
                    let k = (n + m).checked_sub(l)?;
                    let amp = sp * beam_splitter_amplitude(n, m, k, l, t, s, &lnf);
                    (amp != 0.0).then_some((n, k, amp))
                })
                .collect();
            if kraus.is_empty() {
                continue;
            }
            for comp in state.components() {
                let mut out = Amplitudes::zeros(d, d);
                let mut any = false;
                for &(n, k, amp) in &kraus {
                    for i in 0..d {
                        let x = comp[(i, n)];
                        if x == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        if k < d {
                            out[(i, k)] += x * amp;
                            any = true;
                        } else {
                            dropped += (x * amp).norm_sqr();
                        }
                    }
                }
                if any {
                    components.push(out);
                }
            }
        }
    }
    let rho = FockDensityMatrix::from_components(n_max, components)?;
    let kept = rho.trace();
    if dropped / before > TAIL_TOL {
        return Err(Error::CutoffTooSmall {
            cutoff: n_max,
            tail: dropped / before,
            suggested: 2 * n_max,
        });
    }
    if !(kept > 0.0) {
        return Err(Error::InvalidParameter("loss annihilated the state".into()));
    }
    Ok(rho.normalized())
}

/// Second moments of `x = a + a†`, `p = i(a† - a)` in standard form.
pub fn covariance_from_fock<S: FockState>(state: &S) -> Result<TwoModeCovariance> {
    let d = state.cutoff() + 1;
    let total = state.trace();
    let zero = Complex64::new(0.0, 0.0);
    let (mut n1, mut n2) = (0.0, 0.0);
    let (mut m1, mut m2) = (zero, zero);
    let (mut a1a2, mut a1da2) = (zero, zero);
    let (mut a1sq, mut a2sq) = (zero, zero);
    let sq: Vec<f64> = (0..=d).map(|k| (k as f64).sqrt()).collect();

    for c in state.components() {
        for i in 0..d {
            for j in 0..d {
                let x = c[(i, j)];
                if x == zero {
                    continue;
                }
                let p = x.norm_sqr();
                n1 += p * i as f64;
                n2 += p * j as f64;
                if i >= 1 {
                    m1 += c[(i - 1, j)].conj() * x * sq[i];
                }
                if j >= 1 {
                    m2 += c[(i, j - 1)].conj() * x * sq[j];
                }
                if i >= 1 && j >= 1 {
                    a1a2 += c[(i - 1, j - 1)].conj() * x * (sq[i] * sq[j]);
                }
                if j >= 1 && i + 1 < d {
                    a1da2 += c[(i + 1, j - 1)].conj() * x * (sq[i + 1] * sq[j]);
                }
                if i >= 2 {
                    a1sq += c[(i - 2, j)].conj() * x * (sq[i] * sq[i - 1]);
                }
                if j >= 2 {
                    a2sq += c[(i, j - 2)].conj() * x * (sq[j] * sq[j - 1]);
                }
            }
        }
    }
    let inv = 1.0 / total;
    let first = (m1.norm().max(m2.norm())) * inv;
    if first > MOMENT_TOL {
        return Err(Error::NonZeroMean(first));
    }
    let (w, z) = (a1a2 * inv, a1da2 * inv);
    // <a_j^2> feeds Vx - Vp and {x, p}; Im parts of w and z feed x1 p2 and p1 x2
    let off = (2.0 * a1sq.norm() * inv)
        .max(2.0 * a2sq.norm() * inv)
        .max(2.0 * (w.im + z.im).abs())
        .max(2.0 * (w.im - z.im).abs());
    if off > MOMENT_TOL {
        return Err(Error::NotStandardForm(off));
    }
    Ok(TwoModeCovariance::new(
        1.0 + 2.0 * n1 * inv,
        1.0 + 2.0 * n2 * inv,
        2.0 * (w.re + z.re),
        2.0 * (z.re - w.re),
    ))
}

/// Von Neumann entropy (bits) of the reduced state of mode 1.
pub fn entropy_of_entanglement(psi: &FockStateVector) -> Result<f64> {
    let dev = (psi.norm_sqr() - 1.0).abs();
    if dev > 1e-8 {
        return Err(Error::NotPure(dev));
    }
    let sv = psi.amplitudes().clone().svd(false, false).singular_values;
    Ok(sv
        .iter()
        .map(|s| s * s)
        .filter(|&p| p > 1e-300)
        .map(|p| -p * p.log2())
        .sum())
}
