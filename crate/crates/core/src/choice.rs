//! Single-agent consumption-leisure choice with a pollution externality
//! weighted by the awareness parameter.

use crate::error::{Error, Result};
use crate::numerics::{self, SolveReport, SolverSettings};

/// Interior-solution offset from the time-budget boundaries (log utility
/// rules out corner solutions, but log(0) must never be evaluated).
pub const BOUNDARY_EPS: f64 = 1e-9;

/// Population, wage, and time endowment.
#[derive(Debug, Clone, Copy)]
pub struct EconomyParams {
    /// Number of identical agents.
    pub n: u32,
    /// Hourly wage, consumption units per hour.
    pub wage: f64,
    /// Time endowment in hours.
    pub hours: f64,
}

impl Default for EconomyParams {
    fn default() -> Self {
        EconomyParams { n: 2, wage: 1.0, hours: 24.0 }
    }
}

impl EconomyParams {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::domain("economy.n must be at least 1"));
        }
        if !(self.wage > 0.0) {
            return Err(Error::domain(format!("economy.wage must be positive, got {}", self.wage)));
        }
        if !(self.hours > 0.0) {
            return Err(Error::domain(format!("economy.hours must be positive, got {}", self.hours)));
        }
        Ok(())
    }
}

/// Parameters of the additively separable utility
/// alpha ln C + beta ln L - a delta P(C_total) (+ mu ln(1+K) in the
/// knowledge extension).
#[derive(Debug, Clone, Copy)]
pub struct Preferences {
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub mu: f64,
}

impl Default for Preferences {
    fn default() -> Self {
        Preferences { alpha: 1.0, beta: 1.0, delta: 0.1, mu: 0.0 }
    }
}

impl Preferences {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) {
            return Err(Error::domain(format!("preferences.alpha must be positive, got {}", self.alpha)));
        }
        if !(self.beta > 0.0) {
            return Err(Error::domain(format!("preferences.beta must be positive, got {}", self.beta)));
        }
        if !(self.delta >= 0.0) {
            return Err(Error::domain(format!("preferences.delta must be non-negative, got {}", self.delta)));
        }
        if !(self.mu >= 0.0) {
            return Err(Error::domain(format!("preferences.mu must be non-negative, got {}", self.mu)));
        }
        Ok(())
    }
}

/// Pollution technology P(X) = X^gamma / gamma.
#[derive(Debug, Clone, Copy)]
pub struct PollutionTech {
    pub gamma: f64,
}

impl Default for PollutionTech {
    fn default() -> Self {
        PollutionTech { gamma: 1.0 }
    }
}

impl PollutionTech {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 1.0) {
            return Err(Error::domain(format!("pollution.gamma must be at least 1, got {}", self.gamma)));
        }
        Ok(())
    }
}

/// A solved consumption-leisure allocation with its derived quantities.
#[derive(Debug, Clone, Copy)]
pub struct Bundle {
    pub consumption: f64,
    pub leisure: f64,
    /// Awareness level the chooser applied to the pollution term.
    pub awareness: f64,
    /// Pollution at this allocation (own plus others' consumption).
    pub total_pollution: f64,
    /// Utility as perceived by the chooser.
    pub perceived_utility: f64,
    /// Utility evaluated at full awareness (a = 1).
    pub true_welfare: f64,
}

impl Bundle {
    /// Build a bundle from a leisure choice, exhausting the budget.
    pub fn from_leisure(
        leisure: f64,
        awareness: f64,
        others_consumption: f64,
        prefs: &Preferences,
        tech: &PollutionTech,
        econ: &EconomyParams,
    ) -> Result<Bundle> {
        let consumption = econ.wage * (econ.hours - leisure);
        let total = consumption + others_consumption;
        Ok(Bundle {
            consumption,
            leisure,
            awareness,
            total_pollution: pollution(total, tech)?,
            perceived_utility: perceived_utility(
                consumption,
                leisure,
                awareness,
                others_consumption,
                prefs,
                tech,
            )?,
            true_welfare: true_welfare(consumption, leisure, others_consumption, prefs, tech)?,
        })
    }
}

/// Pollution generated by total consumption.
pub fn pollution(total_consumption: f64, tech: &PollutionTech) -> Result<f64> {
    tech.validate()?;
    if !(total_consumption >= 0.0) {
        return Err(Error::domain(format!(
            "total consumption must be non-negative, got {total_consumption}"
        )));
    }
    Ok(total_consumption.powf(tech.gamma) / tech.gamma)
}

/// alpha ln C + beta ln L - a delta P(C + C_others).
pub fn perceived_utility(
    consumption: f64,
    leisure: f64,
    awareness: f64,
    others_consumption: f64,
    prefs: &Preferences,
    tech: &PollutionTech,
) -> Result<f64> {
    prefs.validate()?;
    if !(consumption > 0.0) {
        return Err(Error::domain(format!("consumption must be positive, got {consumption}")));
    }
    if !(leisure > 0.0) {
        return Err(Error::domain(format!("leisure must be positive, got {leisure}")));
    }
    if !(0.0..=1.0).contains(&awareness) {
        return Err(Error::domain(format!("awareness must lie in [0, 1], got {awareness}")));
    }
    if !(others_consumption >= 0.0) {
        return Err(Error::domain(format!(
            "others' consumption must be non-negative, got {others_consumption}"
        )));
    }
    let damage = pollution(consumption + others_consumption, tech)?;
    Ok(prefs.alpha * consumption.ln() + prefs.beta * leisure.ln()
        - awareness * prefs.delta * damage)
}

/// Utility at full awareness: what the allocation is actually worth.
pub fn true_welfare(
    consumption: f64,
    leisure: f64,
    others_consumption: f64,
    prefs: &Preferences,
    tech: &PollutionTech,
) -> Result<f64> {
    perceived_utility(consumption, leisure, 1.0, others_consumption, prefs, tech)
}

/// Allocation ignoring pollution entirely (a = 0); coincides with the
/// no-externality optimum. Closed form, cross-checked against the solver.
pub fn naive_bundle(
    prefs: &Preferences,
    tech: &PollutionTech,
    econ: &EconomyParams,
) -> Result<Bundle> {
    prefs.validate()?;
    econ.validate()?;
    let leisure = econ.hours * prefs.beta / (prefs.alpha + prefs.beta);

    // Numerical cross-check of the closed form.
    let settings = SolverSettings::default();
    let report = numerics::maximize_bounded(
        |l| prefs.alpha * (econ.wage * (econ.hours - l)).ln() + prefs.beta * l.ln(),
        BOUNDARY_EPS,
        econ.hours - BOUNDARY_EPS,
        &settings,
    )?;
    debug_assert!((report.x() - leisure).abs() < 1e-6);

    let own = econ.wage * (econ.hours - leisure);
    let others = (econ.n as f64 - 1.0) * own;
    Bundle::from_leisure(leisure, 0.0, others, prefs, tech, econ)
}

/// Self-concerned optimum given awareness and the others' consumption.
pub fn best_response(
    awareness: f64,
    others_consumption: f64,
    prefs: &Preferences,
    tech: &PollutionTech,
    econ: &EconomyParams,
    settings: &SolverSettings,
) -> Result<(Bundle, SolveReport)> {
    econ.validate()?;
    if !(0.0..=1.0).contains(&awareness) {
        return Err(Error::domain(format!("awareness must lie in [0, 1], got {awareness}")));
    }
    let report = numerics::maximize_bounded(
        |l| {
            let c = econ.wage * (econ.hours - l);
            perceived_utility(c, l, awareness, others_consumption, prefs, tech)
                .expect("interior point inside domain")
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
    let bundle = Bundle::from_leisure(
        report.x(),
        awareness,
        others_consumption,
        prefs,
        tech,
        econ,
    )?;
    Ok((bundle, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_prefs(delta: f64) -> Preferences {
        Preferences { alpha: 1.0, beta: 1.0, delta, mu: 0.0 }
    }

    fn econ1(n: u32, wage: f64) -> EconomyParams {
        EconomyParams { n, wage, hours: 24.0 }
    }

    #[test]
    fn pollution_anchors() {
        assert_eq!(pollution(5.0, &PollutionTech { gamma: 1.0 }).unwrap(), 5.0);
        assert!((pollution(3.0, &PollutionTech { gamma: 2.0 }).unwrap() - 4.5).abs() < 1e-12);
        assert_eq!(pollution(0.0, &PollutionTech { gamma: 3.0 }).unwrap(), 0.0);
        assert!(pollution(-1.0, &PollutionTech::default()).is_err());
    }

    #[test]
    fn perceived_utility_anchors() {
        let tech = PollutionTech { gamma: 1.0 };
        let u = perceived_utility(12.0, 12.0, 0.0, 99.0, &unit_prefs(1.0), &tech).unwrap();
        assert!((u - 2.0 * 12f64.ln()).abs() < 1e-12);

        let u = perceived_utility(1.0, 1.0, 1.0, 0.0, &unit_prefs(1.0), &tech).unwrap();
        assert!((u + 1.0).abs() < 1e-12);

        let u = perceived_utility(2.0, 3.0, 0.5, 4.0, &unit_prefs(0.1), &tech).unwrap();
        let expected = 2f64.ln() + 3f64.ln() - 0.3;
        assert!((u - expected).abs() < 1e-12);
    }

    #[test]
    fn true_welfare_is_full_awareness_utility() {
        let tech = PollutionTech { gamma: 1.0 };
        let prefs = unit_prefs(0.1);
        let w = true_welfare(2.0, 3.0, 4.0, &prefs, &tech).unwrap();
        let u1 = perceived_utility(2.0, 3.0, 1.0, 4.0, &prefs, &tech).unwrap();
        assert_eq!(w, u1);
        assert!((w - (2f64.ln() + 3f64.ln() - 0.6)).abs() < 1e-12);

        let no_damage = true_welfare(12.0, 12.0, 0.0, &unit_prefs(0.0), &tech).unwrap();
        assert!((no_damage - 2.0 * 12f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn log_boundary_rejected() {
        let tech = PollutionTech::default();
        assert!(perceived_utility(0.0, 1.0, 0.5, 0.0, &unit_prefs(0.1), &tech).is_err());
        assert!(perceived_utility(1.0, 0.0, 0.5, 0.0, &unit_prefs(0.1), &tech).is_err());
    }

    #[test]
    fn naive_bundle_closed_forms() {
        let tech = PollutionTech::default();
        let b = naive_bundle(&unit_prefs(0.1), &tech, &econ1(1, 1.0)).unwrap();
        assert!((b.consumption - 12.0).abs() < 1e-10);
        assert!((b.leisure - 12.0).abs() < 1e-10);

        let prefs = Preferences { alpha: 2.0, beta: 1.0, delta: 0.0, mu: 0.0 };
        let b = naive_bundle(&prefs, &tech, &econ1(1, 1.0)).unwrap();
        assert!((b.consumption - 16.0).abs() < 1e-10);
        assert!((b.leisure - 8.0).abs() < 1e-10);

        // Leisure share of time is wage-independent under log utility.
        let b = naive_bundle(&unit_prefs(0.1), &tech, &econ1(1, 3.0)).unwrap();
        assert!((b.consumption - 36.0).abs() < 1e-10);
        assert!((b.leisure - 12.0).abs() < 1e-10);
    }

    #[test]
    fn budget_exhaustion() {
        let tech = PollutionTech::default();
        let econ = econ1(2, 1.5);
        let settings = SolverSettings::default();
        for &a in &[0.0, 0.3, 1.0] {
            let (b, _) = best_response(a, 7.0, &unit_prefs(0.2), &tech, &econ, &settings).unwrap();
            assert!((b.consumption - econ.wage * (econ.hours - b.leisure)).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_awareness_best_response_is_naive() {
        let tech = PollutionTech::default();
        let econ = econ1(1, 1.0);
        let settings = SolverSettings::default();
        let (b, _) =
            best_response(0.0, 42.0, &unit_prefs(0.7), &tech, &econ, &settings).unwrap();
        assert!((b.consumption - 12.0).abs() < 1e-7);
    }

    #[test]
    fn best_response_quadratic_anchor() {
        // a*delta = 1, gamma = 1: FOC reduces to C^2 - 26C + 24 = 0.
        let tech = PollutionTech { gamma: 1.0 };
        let econ = econ1(1, 1.0);
        let settings = SolverSettings::default();
        let expected = 13.0 - 145f64.sqrt();
        for &others in &[0.0, 5.0, 50.0] {
            let (b, _) =
                best_response(1.0, others, &unit_prefs(1.0), &tech, &econ, &settings).unwrap();
            assert!(
                (b.consumption - expected).abs() < 1e-8,
                "others = {others}, C = {}",
                b.consumption
            );
        }
    }

    #[test]
    fn best_response_matches_grid_oracle() {
        let tech = PollutionTech { gamma: 2.0 };
        let prefs = unit_prefs(0.1);
        let econ = econ1(1, 1.0);
        let settings = SolverSettings::default();
        let (b, _) = best_response(0.5, 10.0, &prefs, &tech, &econ, &settings).unwrap();

        // Refining grid search down to 1e-6 resolution.
        let objective = |l: f64| {
            perceived_utility(24.0 - l, l, 0.5, 10.0, &prefs, &tech).unwrap()
        };
        let mut lo = BOUNDARY_EPS;
        let mut hi = 24.0 - BOUNDARY_EPS;
        let mut best_l = 12.0;
        let mut step = 1e-2;
        while step >= 1e-6 {
            let mut best_v = f64::NEG_INFINITY;
            let mut l = lo;
            while l <= hi {
                let v = objective(l);
                if v > best_v {
                    best_v = v;
                    best_l = l;
                }
                l += step;
            }
            lo = (best_l - 2.0 * step).max(BOUNDARY_EPS);
            hi = (best_l + 2.0 * step).min(24.0 - BOUNDARY_EPS);
            step /= 100.0;
        }
        assert!((b.leisure - best_l).abs() < 1e-4);
    }

    #[test]
    fn consumption_falls_with_awareness() {
        let tech = PollutionTech { gamma: 1.0 };
        let econ = econ1(2, 1.0);
        let settings = SolverSettings::default();
        let mut last_c = f64::INFINITY;
        let mut last_l = -1.0;
        for k in 0..=10 {
            let a = k as f64 / 10.0;
            let (b, _) = best_response(a, 6.0, &unit_prefs(0.5), &tech, &econ, &settings).unwrap();
            assert!(b.consumption < last_c);
            assert!(b.leisure > last_l);
            last_c = b.consumption;
            last_l = b.leisure;
        }
    }

    #[test]
    fn linear_pollution_separability() {
        let tech = PollutionTech { gamma: 1.0 };
        let econ = econ1(3, 1.0);
        let settings = SolverSettings::default();
        let cs: Vec<f64> = [0.0, 5.0, 50.0]
            .iter()
            .map(|&o| {
                best_response(0.6, o, &unit_prefs(0.3), &tech, &econ, &settings)
                    .unwrap()
                    .0
                    .consumption
            })
            .collect();
        assert!((cs[0] - cs[1]).abs() < 1e-7);
        assert!((cs[1] - cs[2]).abs() < 1e-7);
    }
}
