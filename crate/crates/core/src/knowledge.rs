//! Knowledge extension of the time-allocation problem: information must be
//! processed into knowledge, consuming leisure hours, before it raises
//! awareness.

use crate::awareness::{awareness_knowledge, knowledge_stock, AwarenessSpec, KnowledgeParams};
use crate::choice::{self, EconomyParams, PollutionTech, Preferences, BOUNDARY_EPS};
use crate::error::{Error, Result};
use crate::numerics::{self, SolveReport, SolverSettings};

/// A solved three-way time allocation.
#[derive(Debug, Clone, Copy)]
pub struct ExtendedBundle {
    pub consumption: f64,
    /// Pure leisure hours.
    pub pure_leisure: f64,
    /// Hours spent processing information into knowledge.
    pub processing: f64,
    pub knowledge: f64,
    pub awareness: f64,
    pub total_pollution: f64,
    pub perceived_utility: f64,
    pub true_welfare: f64,
}

/// Utility with knowledge entering both directly (mu ln(1+K)) and through
/// awareness of pollution damage.
#[allow(clippy::too_many_arguments)]
pub fn extended_utility(
    consumption: f64,
    pure_leisure: f64,
    processing: f64,
    information: f64,
    energy: f64,
    others_consumption: f64,
    prefs: &Preferences,
    tech: &PollutionTech,
    kparams: &KnowledgeParams,
    aspec: &AwarenessSpec,
) -> Result<f64> {
    prefs.validate()?;
    if !(consumption > 0.0) {
        return Err(Error::domain(format!("consumption must be positive, got {consumption}")));
    }
    if !(pure_leisure > 0.0) {
        return Err(Error::domain(format!("pure leisure must be positive, got {pure_leisure}")));
    }
    if !(processing >= 0.0) {
        return Err(Error::domain(format!("processing hours must be non-negative, got {processing}")));
    }
    let k = knowledge_stock(information, processing, kparams)?;
    let a = awareness_knowledge(k, energy, aspec)?;
    let damage = choice::pollution(consumption + others_consumption, tech)?;
    Ok(prefs.alpha * consumption.ln()
        + prefs.beta * pure_leisure.ln()
        + prefs.mu * (1.0 + k).ln()
        - a * prefs.delta * damage)
}

/// Solve the three-way time allocation over (L_L, L_K) on the time simplex,
/// with consumption pinned down by the budget.
#[allow(clippy::too_many_arguments)]
pub fn extended_bundle(
    information: f64,
    energy: f64,
    others_consumption: f64,
    prefs: &Preferences,
    tech: &PollutionTech,
    kparams: &KnowledgeParams,
    aspec: &AwarenessSpec,
    econ: &EconomyParams,
    settings: &SolverSettings,
) -> Result<(ExtendedBundle, SolveReport)> {
    econ.validate()?;
    if !(0.0..=1.0).contains(&information) {
        return Err(Error::domain(format!("information must lie in [0, 1], got {information}")));
    }
    if !(energy >= 0.0) {
        return Err(Error::domain(format!("energy must be non-negative, got {energy}")));
    }
    let budget = econ.hours - BOUNDARY_EPS;
    let objective = |l_l: f64, l_k: f64| {
        // Clamp keeps the log finite on the simplex boundary; the optimum is
        // interior in L_L so the clamp never binds at the solution.
        let l_l = l_l.max(BOUNDARY_EPS);
        let c = econ.wage * (econ.hours - l_l - l_k).max(BOUNDARY_EPS);
        extended_utility(
            c,
            l_l,
            l_k,
            information,
            energy,
            others_consumption,
            prefs,
            tech,
            kparams,
            aspec,
        )
        .expect("interior point inside domain")
    };
    let report = numerics::maximize_simplex2(objective, budget, settings)?;
    if !report.converged {
        return Err(Error::NoConvergence {
            max_iter: settings.max_iter,
            residual: report.residual,
        });
    }
    let (l_l, l_k) = report.xy();
    let consumption = econ.wage * (econ.hours - l_l - l_k);
    let k = knowledge_stock(information, l_k, kparams)?;
    let a = awareness_knowledge(k, energy, aspec)?;
    let damage = choice::pollution(consumption + others_consumption, tech)?;
    let direct = prefs.alpha * consumption.ln()
        + prefs.beta * l_l.ln()
        + prefs.mu * (1.0 + k).ln();
    Ok((
        ExtendedBundle {
            consumption,
            pure_leisure: l_l,
            processing: l_k,
            knowledge: k,
            awareness: a,
            total_pollution: damage,
            perceived_utility: direct - a * prefs.delta * damage,
            true_welfare: direct - prefs.delta * damage,
        },
        report,
    ))
}

/// Map an information grid through knowledge production and awareness at a
/// fixed processing-time budget; exposes the inverted-U in I.
pub fn information_sweep(
    energy: f64,
    processing: f64,
    information_grid: &[f64],
    kparams: &KnowledgeParams,
    aspec: &AwarenessSpec,
) -> Result<Vec<(f64, f64, f64)>> {
    information_grid
        .iter()
        .map(|&i| {
            let k = knowledge_stock(i, processing, kparams)?;
            let a = awareness_knowledge(k, energy, aspec)?;
            Ok((i, k, a))
        })
        .collect()
}
