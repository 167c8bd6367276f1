//! Deterministic scalar maximization: coarse grid, then golden-section refinement.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of `f` on `[lo, hi]`, stopping when
/// the bracket is narrower than `xtol`. Returns `(x_max, f_max)`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // 200 iterations shrink any bracket by 0.618^200 ~ 1e-42
    for _ in 0..200 {
        if (hi - lo).abs() <= xtol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximizes `f` over `(lo, hi]`: evaluates `points` equally spaced samples
/// ending at `hi`, then refines the bracket around the best sample.
pub fn grid_then_golden(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    points: usize,
    xtol: f64,
) -> (f64, f64) {
    assert!(points >= 2 && hi > lo);
    let step = (hi - lo) / points as f64;
    let xs: Vec<f64> = (1..=points).map(|i| lo + step * i as f64).collect();
    let (best_i, best_f) = xs
        .iter()
        .map(|&x| f(x))
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, y)| if y > acc.1 { (i, y) } else { acc });
    let left = if best_i == 0 { lo } else { xs[best_i - 1] };
    let right = xs[(best_i + 1).min(points - 1)];
    let (x, y) = golden_section_max(&f, left, right, xtol);
    if y >= best_f {
        (x, y)
    } else {
        (xs[best_i], best_f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let (x, y) = golden_section_max(|x| -(x - 0.3).powi(2) + 2.0, 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((y - 2.0).abs() < 1e-12);
    }

    #[test]
    fn grid_guards_against_local_maxima() {
        // small bump at 0.2, global peak at 0.8
        let f = |x: f64| (-(x - 0.2).powi(2) / 0.001).exp() * 0.5 + (-(x - 0.8).powi(2) / 0.001).exp();
        let (x, y) = grid_then_golden(f, 0.0, 1.0, 128, 1e-10);
        assert!((x - 0.8).abs() < 1e-5);
        assert!((y - 1.0).abs() < 1e-9);
    }

    #[test]
    fn boundary_maximum() {
        let (x, _) = grid_then_golden(|x| x, 0.0, 2.0, 16, 1e-10);
        assert!((x - 2.0).abs() < 1e-8);
    }
}
