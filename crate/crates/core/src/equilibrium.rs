//! Symmetric multi-agent allocations: Nash equilibrium of the best-response
//! map, the efficient (symmetric planner / Lindahl) allocation, the
//! three-bundle comparison, and the welfare cost of imperfect awareness.

use crate::choice::{
    self, best_response, naive_bundle, Bundle, EconomyParams, PollutionTech, Preferences,
    BOUNDARY_EPS,
};
use crate::error::{Error, Result};
use crate::numerics::{self, SolveReport, SolverSettings};

/// The three bundles of the awareness comparison at one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct Figure1Result {
    pub naive: Bundle,
    pub nash: Bundle,
    pub efficient: Bundle,
    /// C_naive >= C_nash >= C_efficient.
    pub ordering_ok: bool,
    /// Pollution at the Nash allocation minus pollution at the efficient one.
    pub pollution_gap: f64,
}

/// Symmetric Nash equilibrium: the consumption level that reproduces itself
/// under the best-response map with others at (n-1) times it.
pub fn nash_symmetric(
    awareness: f64,
    prefs: &Preferences,
    tech: &PollutionTech,
    econ: &EconomyParams,
    settings: &SolverSettings,
) -> Result<(Bundle, SolveReport)> {
    econ.validate()?;
    let others_of = |c: f64| (econ.n as f64 - 1.0) * c;
    let response = |c: f64| -> f64 {
        match best_response(awareness, others_of(c).max(0.0), prefs, tech, econ, settings) {
            Ok((b, _)) => b.consumption,
            Err(_) => f64::NAN,
        }
    };
    let start = naive_bundle(prefs, tech, econ)?.consumption;
    let mut fp_settings = *settings;
    fp_settings.box_lo = 0.0;
    fp_settings.box_hi = econ.wage * econ.hours;
    // The inner best response is accurate to ~1e-9, so a tighter contraction
    // residual cannot be met.
    fp_settings.tol = settings.tol.max(1e-8);
    let report = numerics::damped_fixed_point(response, start, &fp_settings)?;
    if !report.converged {
        return Err(Error::NoConvergence {
            max_iter: fp_settings.max_iter,
            residual: report.residual,
        });
    }
    let c = report.value; // best response at the fixed point
    let (bundle, _) = best_response(awareness, others_of(c), prefs, tech, econ, settings)?;
    Ok((bundle, report))
}

/// Efficient symmetric allocation: maximize per-capita welfare
/// alpha ln C + beta ln L - a delta P(nC), so every agent's marginal damage
/// is internalized (the Samuelson condition for this parametric family).
pub fn efficient_symmetric(
    awareness: f64,
    prefs: &Preferences,
    tech: &PollutionTech,
    econ: &EconomyParams,
    settings: &SolverSettings,
) -> Result<(Bundle, SolveReport)> {
    econ.validate()?;
    prefs.validate()?;
    let n = econ.n as f64;
    let report = numerics::maximize_bounded(
        |l| {
            let c = econ.wage * (econ.hours - l);
            let damage = choice::pollution(n * c, tech).expect("non-negative total");
            prefs.alpha * c.ln() + prefs.beta * l.ln() - awareness * prefs.delta * damage
        },
        BOUNDARY_EPS,
        econ.hours - BOUNDARY_EPS,
        settings,
    )?;
    if !report.converged {
        return Err(Error::NoConvergence {
            max_iter: settings.max_iter,
            residual: report.residual,
        });
    }
    let leisure = report.x();
    let own = econ.wage * (econ.hours - leisure);
    let bundle = Bundle::from_leisure(leisure, awareness, (n - 1.0) * own, prefs, tech, econ)?;
    Ok((bundle, report))
}

/// Compute the naive, Nash, and efficient bundles at one awareness level.
pub fn figure1(
    awareness: f64,
    prefs: &Preferences,
    tech: &PollutionTech,
    econ: &EconomyParams,
    settings: &SolverSettings,
) -> Result<Figure1Result> {
    let naive = naive_bundle(prefs, tech, econ)?;
    let (nash, _) = nash_symmetric(awareness, prefs, tech, econ, settings)?;
    let (efficient, _) = efficient_symmetric(awareness, prefs, tech, econ, settings)?;
    let slack = 1e-9;
    let ordering_ok = naive.consumption + slack >= nash.consumption
        && nash.consumption + slack >= efficient.consumption;
    Ok(Figure1Result {
        naive,
        nash,
        efficient,
        ordering_ok,
        pollution_gap: nash.total_pollution - efficient.total_pollution,
    })
}

/// True-welfare loss of equilibrium behaviour under awareness `a` relative to
/// full awareness, others held at the matching symmetric equilibrium.
pub fn welfare_gap(
    awareness: f64,
    prefs: &Preferences,
    tech: &PollutionTech,
    econ: &EconomyParams,
    settings: &SolverSettings,
) -> Result<f64> {
    let (aware, _) = nash_symmetric(1.0, prefs, tech, econ, settings)?;
    let (actual, _) = nash_symmetric(awareness, prefs, tech, econ, settings)?;
    Ok(aware.true_welfare - actual.true_welfare)
}
