//! Small derivative-free minimisers shared by calibration and synthesis.

/// Result of a one-dimensional bracketed minimisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineMinimum {
    pub x: f64,
    pub f: f64,
    pub iterations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the minimum of `f` on `[a, b]`.
///
/// Stops once the bracket is narrower than `tol` or after `max_iter`
/// iterations. The returned point is the best evaluated point, so the result
/// is never worse than either interior probe.
pub fn golden_section<F>(mut f: F, a: f64, b: f64, tol: f64, max_iter: usize) -> LineMinimum
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while hi - lo > tol && iterations < max_iter {
        iterations += 1;
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        LineMinimum {
            x: x1,
            f: f1,
            iterations,
        }
    } else {
        LineMinimum {
            x: x2,
            f: f2,
            iterations,
        }
    }
}

/// Settings for [`coordinate_descent`].
#[derive(Debug, Clone)]
pub struct CoordinateDescent {
    /// Initial step per coordinate.
    pub steps: Vec<f64>,
    /// Lower and upper bound per coordinate.
    pub bounds: Vec<(f64, f64)>,
    /// Total objective evaluations allowed, including the initial point.
    pub budget: usize,
    /// Step multiplier applied after a sweep without improvement.
    pub shrink: f64,
    /// Stop when every step falls below this.
    pub min_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub evaluations: usize,
}

/// Compass search: probe `x ± step` per coordinate, accept strict
/// improvements, shrink all steps when a full pass fails to improve.
///
/// Deterministic, never increases the objective, and never evaluates outside
/// `bounds`.
pub fn coordinate_descent<F>(mut f: F, x0: &[f64], cfg: &CoordinateDescent) -> DescentResult
where
    F: FnMut(&[f64]) -> f64,
{
    assert_eq!(x0.len(), cfg.steps.len());
    assert_eq!(x0.len(), cfg.bounds.len());
    let mut x: Vec<f64> = x0
        .iter()
        .zip(&cfg.bounds)
        .map(|(&v, &(lo, hi))| v.clamp(lo, hi))
        .collect();
    let mut fx = f(&x);
    let mut evaluations = 1;
    let mut steps = cfg.steps.clone();

    'outer: while evaluations < cfg.budget {
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                if evaluations >= cfg.budget {
                    break 'outer;
                }
                let (lo, hi) = cfg.bounds[i];
                let trial_value = (x[i] + dir * steps[i]).clamp(lo, hi);
                if trial_value == x[i] {
                    continue;
                }
                let mut trial = x.clone();
                trial[i] = trial_value;
                let ft = f(&trial);
                evaluations += 1;
                if ft < fx {
                    x = trial;
                    fx = ft;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            for s in steps.iter_mut() {
                *s *= cfg.shrink;
            }
            if steps.iter().all(|&s| s < cfg.min_step) {
                break;
            }
        }
    }
    DescentResult {
        x,
        f: fx,
        evaluations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_minimum() {
        let m = golden_section(|x| (x - 1.3).powi(2) + 2.0, 0.0, 4.0, 1e-10, 200);
        assert!((m.x - 1.3).abs() < 1e-6);
        assert!((m.f - 2.0).abs() < 1e-12);
    }

    #[test]
    fn golden_handles_kink() {
        let m = golden_section(|x| (x + 0.25).abs(), -1.0, 1.0, 1e-12, 200);
        assert!((m.x + 0.25).abs() < 1e-10);
    }

    #[test]
    fn descent_reaches_bowl_bottom_and_respects_bounds() {
        let cfg = CoordinateDescent {
            steps: vec![1.0, 1.0],
            bounds: vec![(-5.0, 5.0), (0.5, 5.0)],
            budget: 2000,
            shrink: 0.5,
            min_step: 1e-9,
        };
        let r = coordinate_descent(|x| (x[0] - 2.0).powi(2) + x[1] * x[1], &[0.0, 3.0], &cfg);
        assert!((r.x[0] - 2.0).abs() < 1e-6);
        assert!((r.x[1] - 0.5).abs() < 1e-12);
        assert!(r.evaluations <= 2000);
    }

    #[test]
    fn descent_budget_is_honoured() {
        let cfg = CoordinateDescent {
            steps: vec![0.1],
            bounds: vec![(-100.0, 100.0)],
            budget: 7,
            shrink: 0.5,
            min_step: 1e-12,
        };
        let mut calls = 0;
        let r = coordinate_descent(
            |x| {
                calls += 1;
                (x[0] - 50.0).abs()
            },
            &[0.0],
            &cfg,
        );
        assert_eq!(calls, 7);
        assert_eq!(r.evaluations, 7);
    }
}
