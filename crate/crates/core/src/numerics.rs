//! Deterministic numerical kernels: bounded scalar maximization (golden
//! section), two-variable maximization on a budget simplex, bisection,
//! damped fixed-point iteration, and central finite differences.

use crate::error::{Error, Result};

/// Tunables shared by all solvers.
#[derive(Debug, Clone, Copy)]
pub struct SolverSettings {
    /// Convergence tolerance on the argument.
    pub tol: f64,
    /// Iteration cap.
    pub max_iter: usize,
    /// Relaxation factor for fixed-point iteration, in (0, 1].
    pub damping: f64,
    /// Central finite-difference step.
    pub fd_step: f64,
    /// Finite box that fixed-point iterates must stay inside.
    pub box_lo: f64,
    pub box_hi: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            tol: 1e-10,
            max_iter: 500,
            damping: 0.5,
            fd_step: 1e-6,
            box_lo: -1e12,
            box_hi: 1e12,
        }
    }
}

/// Outcome of a solve: argument(s), objective value, and diagnostics.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub args: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
}

impl SolveReport {
    /// Single argument of a scalar solve.
    pub fn x(&self) -> f64 {
        self.args[0]
    }

    /// Argument pair of a two-variable solve.
    pub fn xy(&self) -> (f64, f64) {
        (self.args[0], self.args[1])
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2

fn eval(f: &impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: x })
    }
}

/// Golden-section maximization of `f` on `[lo, hi]`.
///
/// The bracket endpoints are compared against the interior candidate, so a
/// maximizer sitting exactly on a bound is returned exactly (no 1e-10 slop);
/// unimodal objectives get the global maximizer.
pub fn maximize_bounded(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    settings: &SolverSettings,
) -> Result<SolveReport> {
    if !(lo < hi) {
        return Err(Error::domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(&f, x1)?;
    let mut f2 = eval(&f, x2)?;
    let mut iterations = 0;

    while (b - a) > settings.tol && iterations < settings.max_iter {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(&f, x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(&f, x1)?;
        }
        iterations += 1;
    }

    let (mut x_best, mut f_best) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };

    // Function-value comparisons localize the argmax only to ~sqrt(eps), so
    // polish an interior optimum by bisecting the finite-difference slope.
    let h = 1e-6 * (1.0 + x_best.abs());
    if x_best - lo > h && hi - x_best > h {
        let slope = |x: f64| (f(x + h) - f(x - h)) / (2.0 * h);
        let mut pa = (x_best - 64.0 * h).max(lo + h);
        let mut pb = (x_best + 64.0 * h).min(hi - h);
        let mut ga = slope(pa);
        let gb = slope(pb);
        if ga.is_finite() && gb.is_finite() && ga > 0.0 && gb < 0.0 {
            for _ in 0..80 {
                if pb - pa <= settings.tol {
                    break;
                }
                let mid = 0.5 * (pa + pb);
                let gm = slope(mid);
                if !gm.is_finite() {
                    break;
                }
                if gm.signum() == ga.signum() {
                    pa = mid;
                    ga = gm;
                } else {
                    pb = mid;
                }
            }
            let candidate = 0.5 * (pa + pb);
            let fc = eval(&f, candidate)?;
            if fc >= f_best - (1.0 + f_best.abs()) * 1e-12 {
                x_best = candidate;
                f_best = fc;
            }
        }
    }

    // Endpoint snap: if a bound does at least as well, report it exactly.
    let f_hi = eval(&f, hi)?;
    if f_hi >= f_best {
        x_best = hi;
        f_best = f_hi;
    }
    let f_lo = eval(&f, lo)?;
    if f_lo >= f_best {
        x_best = lo;
        f_best = f_lo;
    }

    let residual = b - a;
    Ok(SolveReport {
        args: vec![x_best],
        value: f_best,
        iterations,
        residual,
        converged: residual <= settings.tol,
    })
}

fn clip_simplex(x: f64, y: f64, budget: f64) -> (f64, f64) {
    let x = x.clamp(0.0, budget);
    let y = y.clamp(0.0, budget - x);
    (x, y)
}

/// Maximize `f(x, y)` over the simplex `{x >= 0, y >= 0, x + y <= budget}`.
///
/// A short Nelder-Mead pass (candidates clipped onto the simplex) finds the
/// right basin; alternating bounded one-dimensional maximizations then polish
/// the point until neither coordinate moves by more than `tol`.
pub fn maximize_simplex2(
    f: impl Fn(f64, f64) -> f64,
    budget: f64,
    settings: &SolverSettings,
) -> Result<SolveReport> {
    if !(budget > 0.0) {
        return Err(Error::domain(format!("budget must be positive, got {budget}")));
    }
    let eval2 = |x: f64, y: f64| -> Result<f64> {
        let v = f(x, y);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { at: x })
        }
    };

    // Nelder-Mead stage.
    let mut simplex = [
        (budget / 3.0, budget / 3.0),
        (budget / 2.0, budget / 5.0),
        (budget / 5.0, budget / 2.0),
    ];
    let mut values = [0.0f64; 3];
    for (i, &(x, y)) in simplex.iter().enumerate() {
        values[i] = eval2(x, y)?;
    }
    for _ in 0..120 {
        // Order so that index 0 is best, 2 is worst.
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap());
        simplex = [simplex[order[0]], simplex[order[1]], simplex[order[2]]];
        values = [values[order[0]], values[order[1]], values[order[2]]];

        let spread = (simplex[0].0 - simplex[2].0).abs() + (simplex[0].1 - simplex[2].1).abs();
        if spread < settings.tol {
            break;
        }

        let cx = (simplex[0].0 + simplex[1].0) / 2.0;
        let cy = (simplex[0].1 + simplex[1].1) / 2.0;
        let (wx, wy) = simplex[2];

        let (rx, ry) = clip_simplex(cx + (cx - wx), cy + (cy - wy), budget);
        let fr = eval2(rx, ry)?;
        if fr > values[0] {
            let (ex, ey) = clip_simplex(cx + 2.0 * (cx - wx), cy + 2.0 * (cy - wy), budget);
            let fe = eval2(ex, ey)?;
            if fe > fr {
                simplex[2] = (ex, ey);
                values[2] = fe;
            } else {
                simplex[2] = (rx, ry);
                values[2] = fr;
            }
        } else if fr > values[1] {
            simplex[2] = (rx, ry);
            values[2] = fr;
        } else {
            let (kx, ky) = clip_simplex(cx + 0.5 * (wx - cx), cy + 0.5 * (wy - cy), budget);
            let fk = eval2(kx, ky)?;
            if fk > values[2] {
                simplex[2] = (kx, ky);
                values[2] = fk;
            } else {
                for i in 1..3 {
                    let (sx, sy) = clip_simplex(
                        simplex[0].0 + 0.5 * (simplex[i].0 - simplex[0].0),
                        simplex[0].1 + 0.5 * (simplex[i].1 - simplex[0].1),
                        budget,
                    );
                    simplex[i] = (sx, sy);
                    values[i] = eval2(sx, sy)?;
                }
            }
        }
    }

    let (mut x, mut y) = simplex[0];
    let mut iterations = 0;
    let mut movement = f64::INFINITY;
    while movement > settings.tol && iterations < settings.max_iter {
        let rx = maximize_bounded(|t| f(t, y), 0.0, budget - y, settings)?;
        let new_x = rx.x();
        let ry = maximize_bounded(|t| f(new_x, t), 0.0, budget - new_x, settings)?;
        let new_y = ry.x();
        movement = (new_x - x).abs().max((new_y - y).abs());
        x = new_x;
        y = new_y;
        iterations += 1;
    }

    let value = eval2(x, y)?;
    Ok(SolveReport {
        args: vec![x, y],
        value,
        iterations,
        residual: movement,
        converged: movement <= settings.tol,
    })
}

/// Bisection root of `g` on `[lo, hi]`; requires a sign change.
pub fn bisect_root(
    g: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    settings: &SolverSettings,
) -> Result<f64> {
    let mut a = lo;
    let mut b = hi;
    let fa = eval(&g, a)?;
    let fb = eval(&g, b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo, hi });
    }
    let mut iterations = 0;
    while (b - a).abs() > settings.tol && iterations < settings.max_iter {
        let mid = 0.5 * (a + b);
        let fm = eval(&g, mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
        } else {
            b = mid;
        }
        iterations += 1;
    }
    Ok(0.5 * (a + b))
}

/// Damped iteration `x <- (1 - damping) x + damping map(x)` until the
/// contraction residual `|map(x) - x|` drops below `tol`.
pub fn damped_fixed_point(
    map: impl Fn(f64) -> f64,
    x0: f64,
    settings: &SolverSettings,
) -> Result<SolveReport> {
    let mut x = x0;
    let mut iterations = 0;
    loop {
        let fx = map(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite { at: x });
        }
        let residual = (fx - x).abs();
        if residual <= settings.tol {
            return Ok(SolveReport {
                args: vec![x],
                value: fx,
                iterations,
                residual,
                converged: true,
            });
        }
        if iterations >= settings.max_iter {
            return Ok(SolveReport {
                args: vec![x],
                value: fx,
                iterations,
                residual,
                converged: false,
            });
        }
        x = (1.0 - settings.damping) * x + settings.damping * fx;
        if x < settings.box_lo || x > settings.box_hi {
            return Err(Error::Divergence {
                x,
                lo: settings.box_lo,
                hi: settings.box_hi,
            });
        }
        iterations += 1;
    }
}

/// Central difference (f(x+h) - f(x-h)) / 2h.
pub fn fd_derivative(f: impl Fn(f64) -> f64, x: f64, settings: &SolverSettings) -> Result<f64> {
    let h = settings.fd_step;
    let up = eval(&f, x + h)?;
    let dn = eval(&f, x - h)?;
    Ok((up - dn) / (2.0 * h))
}

/// Central second difference (f(x+h) - 2 f(x) + f(x-h)) / h^2.
pub fn fd_second_derivative(
    f: impl Fn(f64) -> f64,
    x: f64,
    settings: &SolverSettings,
) -> Result<f64> {
    let h = settings.fd_step;
    let up = eval(&f, x + h)?;
    let mid = eval(&f, x)?;
    let dn = eval(&f, x - h)?;
    Ok((up - 2.0 * mid + dn) / (h * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> SolverSettings {
        SolverSettings::default()
    }

    #[test]
    fn parabola_vertex() {
        let r = maximize_bounded(|x| -(x - 2.0) * (x - 2.0), 0.0, 5.0, &settings()).unwrap();
        assert!(r.converged);
        assert!((r.x() - 2.0).abs() < 1e-8);
    }

    #[test]
    fn sine_peak() {
        let r = maximize_bounded(|x| x.sin(), 0.0, std::f64::consts::PI, &settings()).unwrap();
        assert!((r.x() - std::f64::consts::FRAC_PI_2).abs() < 1e-8);
    }

    #[test]
    fn log_utility_foc_root() {
        // ln x + ln(24 - x) - x has its maximum at the root of x^2 - 26x + 24.
        let expected = 13.0 - 145f64.sqrt();
        let r = maximize_bounded(
            |x| x.ln() + (24.0 - x).ln() - x,
            1e-9,
            24.0 - 1e-9,
            &settings(),
        )
        .unwrap();
        assert!((r.x() - expected).abs() < 1e-8, "got {}", r.x());
        assert!((expected * expected - 26.0 * expected + 24.0).abs() < 1e-9);
    }

    #[test]
    fn boundary_maximum_is_exact() {
        let r = maximize_bounded(|x| -x, 0.0, 5.0, &settings()).unwrap();
        assert_eq!(r.x(), 0.0);
    }

    #[test]
    fn non_finite_objective_is_an_error() {
        let err = maximize_bounded(|x| (x - 1.0).ln(), 0.0, 2.0, &settings());
        assert!(matches!(err, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn simplex_symmetric_log_split() {
        let r = maximize_simplex2(
            |x, y| x.max(1e-12).ln() + y.max(1e-12).ln(),
            24.0,
            &settings(),
        )
        .unwrap();
        let (x, y) = r.xy();
        assert!((x - 12.0).abs() < 1e-6, "x = {x}");
        assert!((y - 12.0).abs() < 1e-6, "y = {y}");
    }

    #[test]
    fn simplex_interior_quadratic() {
        let r = maximize_simplex2(
            |x, y| -(x - 1.0).powi(2) - (y - 2.0).powi(2),
            24.0,
            &settings(),
        )
        .unwrap();
        let (x, y) = r.xy();
        assert!((x - 1.0).abs() < 1e-7);
        assert!((y - 2.0).abs() < 1e-7);
    }

    #[test]
    fn bisect_sqrt2() {
        let root = bisect_root(|x| x * x - 2.0, 0.0, 2.0, &settings()).unwrap();
        assert!((root - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn bisect_foc_quadratic() {
        let expected = 13.0 - 145f64.sqrt();
        let root = bisect_root(
            |x| 1.0 / x - 1.0 / (24.0 - x) - 1.0,
            1e-9,
            12.0,
            &settings(),
        )
        .unwrap();
        assert!((root - expected).abs() < 1e-9);
    }

    #[test]
    fn bisect_zero_through_origin() {
        let root = bisect_root(|x| x, -1.0, 1.0, &settings()).unwrap();
        assert!(root.abs() < 1e-9);
    }

    #[test]
    fn bisect_rejects_same_sign_bracket() {
        let err = bisect_root(|x| x * x + 1.0, -1.0, 1.0, &settings());
        assert!(matches!(err, Err(Error::Bracket { .. })));
    }

    #[test]
    fn babylonian_fixed_point() {
        let r = damped_fixed_point(|x| 0.5 * (x + 2.0 / x), 1.0, &settings()).unwrap();
        assert!(r.converged);
        assert!((r.x() - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn cosine_fixed_point() {
        let r = damped_fixed_point(|x| x.cos(), 1.0, &settings()).unwrap();
        assert!(r.converged);
        // Independent oracle: plain iteration of cos to 1e-10.
        let mut y = 1.0f64;
        for _ in 0..200 {
            y = y.cos();
        }
        assert!((r.x() - y).abs() < 1e-8);
        assert!((r.x() - 0.739_085_1).abs() < 1e-6);
    }

    #[test]
    fn identity_map_converges_immediately() {
        let r = damped_fixed_point(|x| x, 3.0, &settings()).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, 0);
        assert_eq!(r.x(), 3.0);
    }

    #[test]
    fn fixed_point_divergence_detected() {
        let mut s = settings();
        s.box_lo = -1e3;
        s.box_hi = 1e3;
        let err = damped_fixed_point(|x| 10.0 * x + 1.0, 1.0, &s);
        assert!(matches!(err, Err(Error::Divergence { .. })));
    }

    #[test]
    fn derivative_of_square() {
        let d = fd_derivative(|x| x * x, 3.0, &settings()).unwrap();
        assert!((d - 6.0).abs() < 1e-8);
    }

    #[test]
    fn derivative_of_log() {
        let d = fd_derivative(|x: f64| x.ln(), 1.0, &settings()).unwrap();
        assert!((d - 1.0).abs() < 1e-8);
    }

    #[test]
    fn second_derivative_of_cubic() {
        let s = SolverSettings { fd_step: 1e-4, ..Default::default() };
        let d = fd_second_derivative(|x| x * x * x, 2.0, &s).unwrap();
        assert!((d - 12.0).abs() < 1e-4);
    }

    #[test]
    fn determinism() {
        let run = || {
            maximize_bounded(|x| x.sin() - 0.1 * x * x, 0.0, 3.0, &settings())
                .unwrap()
                .x()
        };
        assert_eq!(run().to_bits(), run().to_bits());
    }
}
