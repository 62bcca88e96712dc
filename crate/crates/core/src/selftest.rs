//! Built-in invariant suite behind the `selftest` CLI command.

use crate::awareness::{self, AwarenessMode, AwarenessSpec, KnowledgeParams};
use crate::choice::{self, EconomyParams, PollutionTech, Preferences};
use crate::equilibrium;
use crate::knowledge;
use crate::numerics::SolverSettings;
use crate::table::{emit_csv, OutputTable};
use crate::trajectory::{self, PathSpec, PeakVerdict, Series};

pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, result: Result<(), String>) -> CheckResult {
    match result {
        Ok(()) => CheckResult { name, passed: true, detail: String::new() },
        Err(detail) => CheckResult { name, passed: false, detail },
    }
}

// Deterministic xorshift so the suite needs no RNG dependency.
struct Rng(u64);

impl Rng {
    fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

fn awareness_anchors() -> Result<(), String> {
    let peak = awareness::awareness_info(0.5, 0.0).map_err(|e| e.to_string())?;
    if (peak - 1.0).abs() > 1e-12 {
        return Err(format!("a(0.5, 0) = {peak}, expected 1"));
    }
    let anchored =
        awareness::awareness_info(0.5, std::f64::consts::E - 1.0).map_err(|e| e.to_string())?;
    if (anchored - 0.2).abs() > 1e-12 {
        return Err(format!("a(0.5, e-1) = {anchored}, expected 0.2"));
    }
    Ok(())
}

fn awareness_signs() -> Result<(), String> {
    let s = SolverSettings::default();
    for gi in 0..21 {
        let i = 0.01 + 0.98 * gi as f64 / 20.0;
        for ge in 0..21 {
            let e = 10.0 * ge as f64 / 20.0;
            let de = crate::numerics::fd_derivative(
                |x| awareness::awareness_info(i, x).unwrap(),
                e.max(s.fd_step),
                &s,
            )
            .map_err(|e| e.to_string())?;
            if de >= 0.0 {
                return Err(format!("da/dE >= 0 at I={i}, E={e}"));
            }
            let di = crate::numerics::fd_derivative(
                |x| awareness::awareness_info(x, e).unwrap(),
                i,
                &s,
            )
            .map_err(|e| e.to_string())?;
            if i < 0.5 - 1e-6 && di <= 0.0 {
                return Err(format!("da/dI <= 0 at I={i} < 0.5"));
            }
            if i > 0.5 + 1e-6 && di >= 0.0 {
                return Err(format!("da/dI >= 0 at I={i} > 0.5"));
            }
        }
    }
    Ok(())
}

fn bundle_anchors() -> Result<(), String> {
    let prefs = Preferences { alpha: 1.0, beta: 1.0, delta: 1.0, mu: 0.0 };
    let tech = PollutionTech { gamma: 1.0 };
    let econ1 = EconomyParams { n: 1, wage: 1.0, hours: 24.0 };
    let settings = SolverSettings::default();

    let naive = choice::naive_bundle(&prefs, &tech, &econ1).map_err(|e| e.to_string())?;
    if (naive.consumption - 12.0).abs() > 1e-10 {
        return Err(format!("naive C = {}, expected 12", naive.consumption));
    }

    let (br, _) = choice::best_response(1.0, 5.0, &prefs, &tech, &econ1, &settings)
        .map_err(|e| e.to_string())?;
    let expected = 13.0 - 145f64.sqrt();
    if (br.consumption - expected).abs() > 1e-9 {
        return Err(format!("best-response C = {}, expected {expected}", br.consumption));
    }

    let econ2 = EconomyParams { n: 2, ..econ1 };
    let (eff, _) = equilibrium::efficient_symmetric(1.0, &prefs, &tech, &econ2, &settings)
        .map_err(|e| e.to_string())?;
    let expected = (25.0 - 577f64.sqrt()) / 2.0;
    if (eff.consumption - expected).abs() > 1e-9 {
        return Err(format!("efficient C = {}, expected {expected}", eff.consumption));
    }
    Ok(())
}

fn figure1_ordering() -> Result<(), String> {
    let settings = SolverSettings::default();
    let mut rng = Rng(0x5eed_1234);
    for draw in 0..15 {
        let a = rng.in_range(0.05, 1.0);
        let delta = rng.in_range(0.01, 1.0);
        let gamma = if rng.next_f64() < 0.5 { 1.0 } else { 2.0 };
        let n = 2 + (rng.next_f64() * 4.0) as u32;
        let prefs = Preferences { alpha: 1.0, beta: 1.0, delta, mu: 0.0 };
        let tech = PollutionTech { gamma };
        let econ = EconomyParams { n, wage: 1.0, hours: 24.0 };
        let fig = equilibrium::figure1(a, &prefs, &tech, &econ, &settings)
            .map_err(|e| e.to_string())?;
        if !(fig.naive.consumption > fig.nash.consumption + 1e-6
            && fig.nash.consumption > fig.efficient.consumption + 1e-6)
        {
            return Err(format!(
                "draw {draw}: ordering broken (a={a}, delta={delta}, gamma={gamma}, n={n})"
            ));
        }
        if fig.pollution_gap < -1e-9 {
            return Err(format!("draw {draw}: P_nash < P_efficient"));
        }
    }
    Ok(())
}

fn comparative_statics() -> Result<(), String> {
    let settings = SolverSettings::default();
    let prefs = Preferences { alpha: 1.0, beta: 1.0, delta: 0.3, mu: 0.0 };
    let tech = PollutionTech { gamma: 1.0 };
    let econ = EconomyParams { n: 2, wage: 1.0, hours: 24.0 };
    let mut last_c = f64::INFINITY;
    let mut last_l = -1.0;
    for k in 0..=10 {
        let a = k as f64 / 10.0;
        let (b, _) = equilibrium::nash_symmetric(a, &prefs, &tech, &econ, &settings)
            .map_err(|e| e.to_string())?;
        if b.consumption >= last_c || b.leisure <= last_l {
            return Err(format!("monotonicity broken at a = {a}"));
        }
        last_c = b.consumption;
        last_l = b.leisure;
    }
    Ok(())
}

fn welfare_gap_properties() -> Result<(), String> {
    let settings = SolverSettings::default();
    let prefs = Preferences { alpha: 1.0, beta: 1.0, delta: 0.5, mu: 0.0 };
    let tech = PollutionTech { gamma: 1.0 };
    let econ = EconomyParams { n: 2, wage: 1.0, hours: 24.0 };
    let g1 = equilibrium::welfare_gap(1.0, &prefs, &tech, &econ, &settings)
        .map_err(|e| e.to_string())?;
    if g1 != 0.0 {
        return Err(format!("welfare_gap(1) = {g1}, expected exactly 0"));
    }
    let mut last = f64::INFINITY;
    for k in 0..=10 {
        let a = k as f64 / 10.0;
        let gap = equilibrium::welfare_gap(a, &prefs, &tech, &econ, &settings)
            .map_err(|e| e.to_string())?;
        if gap < -1e-12 || gap > last + 1e-9 {
            return Err(format!("welfare_gap not non-negative/monotone at a = {a}"));
        }
        last = gap;
    }
    Ok(())
}

fn knowledge_properties() -> Result<(), String> {
    let settings = SolverSettings::default();
    let tech = PollutionTech { gamma: 1.0 };
    let kparams = KnowledgeParams { b: 0.5 };
    let aspec = AwarenessSpec { mode: AwarenessMode::Knowledge, kappa: 0.25 };
    let econ = EconomyParams { n: 1, wage: 1.0, hours: 24.0 };

    let avoid = Preferences { alpha: 1.0, beta: 1.0, delta: 0.2, mu: 0.0 };
    let (b, _) = knowledge::extended_bundle(
        0.5, 1.0, 0.0, &avoid, &tech, &kparams, &aspec, &econ, &settings,
    )
    .map_err(|e| e.to_string())?;
    if b.processing != 0.0 {
        return Err(format!("information avoidance violated: L_K = {}", b.processing));
    }

    let engaged = Preferences { alpha: 1.0, beta: 1.0, delta: 0.1, mu: 1.0 };
    let solve = |i: f64| {
        knowledge::extended_bundle(i, 1.0, 0.0, &engaged, &tech, &kparams, &aspec, &econ, &settings)
            .map(|(b, _)| b)
            .map_err(|e| e.to_string())
    };
    let lo = solve(0.3)?;
    let hi = solve(0.7)?;
    if (lo.processing - hi.processing).abs() > 1e-9
        || (lo.pure_leisure - hi.pure_leisure).abs() > 1e-9
    {
        return Err("overload symmetry violated between I = 0.3 and I = 0.7".into());
    }
    if lo.pure_leisure + lo.processing > econ.hours
        || (lo.consumption - (econ.hours - lo.pure_leisure - lo.processing)).abs() > 1e-9
    {
        return Err("time budget violated in extended bundle".into());
    }
    Ok(())
}

fn trajectory_shape() -> Result<(), String> {
    let grid = Series::uniform_grid(0.0, 20.0, 101).map_err(|e| e.to_string())?;
    let s = trajectory::awareness_trajectory(
        &PathSpec::Logistic { start: 0.05, end: 0.95, midpoint: 5.0, steepness: 1.0 },
        &PathSpec::Exponential { start: 0.1, rate: 0.3 },
        &grid,
    )
    .map_err(|e| e.to_string())?;
    match trajectory::single_peak(&s.values) {
        PeakVerdict::Unimodal { peak_index } if peak_index > 0 && peak_index + 1 < s.values.len() => {}
        v => return Err(format!("expected interior unimodal peak, got {v:?}")),
    }

    let s = trajectory::awareness_trajectory(
        &PathSpec::Linear { start: 0.0, end: 1.0, t_start: 0.0, t_end: 20.0 },
        &PathSpec::Constant { value: 0.0 },
        &grid,
    )
    .map_err(|e| e.to_string())?;
    if let PeakVerdict::Unimodal { peak_index } = trajectory::single_peak(&s.values) {
        if (s.t[peak_index] - 10.0).abs() > 1e-9 {
            return Err(format!("peak at t = {}, expected 10", s.t[peak_index]));
        }
    } else {
        return Err("linear information ramp should be unimodal".into());
    }
    Ok(())
}

fn csv_round_trip() -> Result<(), String> {
    let mut t = OutputTable::new(&["x", "y"]);
    t.push_row(vec![13.0 - 145f64.sqrt(), 1e-7]).map_err(|e| e.to_string())?;
    let text = emit_csv(&t);
    let line = text.lines().nth(1).ok_or("missing data row")?;
    for (cell, &expected) in line.split(',').zip(&t.rows[0]) {
        let parsed: f64 = cell.parse().map_err(|_| format!("unparsable cell '{cell}'"))?;
        if (parsed - expected).abs() > 1e-9 {
            return Err(format!("round trip drift: {parsed} vs {expected}"));
        }
    }
    Ok(())
}

/// Execute every check; CLI `selftest` renders the result.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        check("awareness anchors", awareness_anchors()),
        check("awareness sign conditions", awareness_signs()),
        check("closed-form bundle anchors", bundle_anchors()),
        check("figure1 bundle ordering", figure1_ordering()),
        check("awareness comparative statics", comparative_statics()),
        check("welfare gap properties", welfare_gap_properties()),
        check("knowledge extension properties", knowledge_properties()),
        check("trajectory inverted-U shape", trajectory_shape()),
        check("csv round trip", csv_round_trip()),
    ]
}

#[cfg(test)]
mod tests {
    #[test]
    fn suite_is_green() {
        let results = super::run_all();
        for r in &results {
            assert!(r.passed, "{} failed: {}", r.name, r.detail);
        }
    }
}
