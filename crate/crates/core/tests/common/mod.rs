//! Independent reference computations shared by the integration suites.
//! None of these call into the closed forms they are used to check.
#![allow(dead_code)]

use gausslab_core::TwoModeCovariance;
use nalgebra::Matrix4;

/// Nelder-Mead maximization in two variables.
pub fn nelder_mead_max(f: &dyn Fn(f64, f64) -> f64, start: (f64, f64), step: f64) -> ((f64, f64), f64) {
    let mut pts = [
        start,
        (start.0 + step, start.1),
        (start.0, start.1 + step),
    ];
    let mut vals = pts.map(|p| f(p.0, p.1));
    for _ in 0..2000 {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap());
        let (best, mid, worst) = (idx[0], idx[1], idx[2]);
        if (vals[best] - vals[worst]).abs() < 1e-15
            && (pts[best].0 - pts[worst].0).abs() + (pts[best].1 - pts[worst].1).abs() < 1e-12
        {
            break;
        }
        let cx = (pts[best].0 + pts[mid].0) / 2.0;
        let cy = (pts[best].1 + pts[mid].1) / 2.0;
        let along = |t: f64| (cx + t * (pts[worst].0 - cx), cy + t * (pts[worst].1 - cy));
        let refl = along(-1.0);
        let fr = f(refl.0, refl.1);
        if fr > vals[best] {
            let exp = along(-2.0);
            let fe = f(exp.0, exp.1);
            if fe > fr {
                pts[worst] = exp;
                vals[worst] = fe;
            } else {
                pts[worst] = refl;
                vals[worst] = fr;
            }
        } else if fr > vals[mid] {
            pts[worst] = refl;
            vals[worst] = fr;
        } else {
            let con = along(0.5);
            let fc = f(con.0, con.1);
            if fc > vals[worst] {
                pts[worst] = con;
                vals[worst] = fc;
            } else {
                for &i in &[mid, worst] {
                    pts[i] = ((pts[i].0 + pts[best].0) / 2.0, (pts[i].1 + pts[best].1) / 2.0);
                    vals[i] = f(pts[i].0, pts[i].1);
                }
            }
        }
    }
    let i = (0..3).max_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap()).unwrap();
    (pts[i], vals[i])
}

fn min_eig_2x2(p: f64, q: f64, s: f64) -> f64 {
    (p + s) / 2.0 - (((p - s) / 2.0).powi(2) + q * q).sqrt()
}

/// Largest margin by which `sigma` dominates a locally squeezed `tmsv(r)`.
fn domination_margin(sigma: &TwoModeCovariance, r: f64) -> f64 {
    let (a, b, c1, c2) = (sigma.a, sigma.b, sigma.c1, sigma.c2);
    let (big_a, big_c) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    let f = |s1: f64, s2: f64| {
        let x = min_eig_2x2(a - big_a * (2.0 * s1).exp(), c1 - big_c * (s1 + s2).exp(), b - big_a * (2.0 * s2).exp());
        let p = min_eig_2x2(a - big_a * (-2.0 * s1).exp(), c2 + big_c * (-s1 - s2).exp(), b - big_a * (-2.0 * s2).exp());
        x.min(p)
    };
    let mut best = (f64::NEG_INFINITY, (0.0, 0.0));
    for i in -10..=10 {
        for j in -10..=10 {
            let (s1, s2) = (i as f64 * 0.15, j as f64 * 0.15);
            let v = f(s1, s2);
            if v > best.0 {
                best = (v, (s1, s2));
            }
        }
    }
    nelder_mead_max(&f, best.1, 0.05).1.max(best.0)
}

/// Minimum two-mode squeezing from which `sigma` can be prepared by local
/// squeezing and added classical noise.
pub fn ro_oracle(sigma: &TwoModeCovariance) -> f64 {
    if domination_margin(sigma, 0.0) >= -1e-13 {
        return 0.0;
    }
    let step = 0.01;
    let mut hi = step;
    while domination_margin(sigma, hi) < 0.0 {
        hi += step;
        assert!(hi < 5.0, "no feasible squeezing found");
    }
    let mut lo = hi - step;
    for _ in 0..40 {
        let mid = (lo + hi) / 2.0;
        if domination_margin(sigma, mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Symplectic eigenvalues from the spectrum of `Omega sigma`.
pub fn symplectic_oracle(sigma: &TwoModeCovariance) -> (f64, f64) {
    let omega = Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    );
    let eig = (omega * sigma.to_matrix()).complex_eigenvalues();
    let mut nus: Vec<f64> = eig.iter().map(|z| z.im.abs()).collect();
    nus.sort_by(|x, y| x.partial_cmp(y).unwrap());
    (nus[0], nus[3])
}

/// Number-basis amplitudes of a single-mode squeezed vacuum with squeezing
/// `r` (antisqueezed along x for `r > 0`), up to photon number `cutoff`.
pub fn squeezed_vacuum_amplitudes(r: f64, cutoff: usize) -> Vec<f64> {
    let mut amps = vec![0.0; cutoff + 1];
    let t = -r.tanh();
    let mut coef = 1.0 / r.cosh().sqrt();
    for m in 0..=cutoff / 2 {
        amps[2 * m] = coef;
        // ratio of successive terms t^m sqrt((2m)!) / (2^m m!)
        let m = m as f64;
        coef *= t * ((2.0 * m + 1.0) * (2.0 * m + 2.0)).sqrt() / (2.0 * (m + 1.0));
    }
    amps
}
