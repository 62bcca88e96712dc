//! Scenario files: line-oriented `section.key = value` pairs with `#`
//! comments, validated into the typed parameter structs.

use std::collections::HashSet;

use crate::awareness::{AwarenessMode, AwarenessSpec, KnowledgeParams};
use crate::choice::{EconomyParams, PollutionTech, Preferences};
use crate::error::{Error, Result};
use crate::trajectory::PathSpec;

/// One-parameter sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub param: String,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

/// Trajectory request: paths for I and E plus the time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySpec {
    pub information_path: PathSpec,
    pub energy_path: PathSpec,
    pub t_max: f64,
    pub steps: usize,
}

/// A fully validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub economy: EconomyParams,
    pub preferences: Preferences,
    pub pollution: PollutionTech,
    pub awareness: AwarenessSpec,
    /// Fixed information level used when computing a = a(I, E).
    pub information: f64,
    /// Fixed exosomatic energy level.
    pub energy: f64,
    pub knowledge: KnowledgeParams,
    pub sweep: Option<SweepSpec>,
    pub trajectory: Option<TrajectorySpec>,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            economy: EconomyParams::default(),
            preferences: Preferences::default(),
            pollution: PollutionTech::default(),
            awareness: AwarenessSpec::default(),
            information: 0.5,
            energy: 0.0,
            knowledge: KnowledgeParams::default(),
            sweep: None,
            trajectory: None,
        }
    }
}

pub const SWEEPABLE_PARAMS: &[&str] = &[
    "awareness.I",
    "awareness.E",
    "preferences.delta",
    "pollution.gamma",
    "economy.n",
];

#[derive(Default)]
struct PathBuilder {
    kind: Option<String>,
    start: Option<f64>,
    end: Option<f64>,
    rate: Option<f64>,
    midpoint: Option<f64>,
    steepness: Option<f64>,
}

impl PathBuilder {
    fn is_empty(&self) -> bool {
        self.kind.is_none()
            && self.start.is_none()
            && self.end.is_none()
            && self.rate.is_none()
            && self.midpoint.is_none()
            && self.steepness.is_none()
    }

    fn build(&self, name: &str, t_max: f64) -> Result<PathSpec> {
        let kind = self.kind.as_deref().ok_or_else(|| {
            Error::Scenario(format!("trajectory.{name}_kind is required"))
        })?;
        let need = |v: Option<f64>, key: &str| {
            v.ok_or_else(|| Error::Scenario(format!("trajectory.{name}_{key} is required for kind '{kind}'")))
        };
        match kind {
            "constant" => Ok(PathSpec::Constant { value: need(self.start, "start")? }),
            "linear" => Ok(PathSpec::Linear {
                start: need(self.start, "start")?,
                end: need(self.end, "end")?,
                t_start: 0.0,
                t_end: t_max,
            }),
            "exponential" => Ok(PathSpec::Exponential {
                start: need(self.start, "start")?,
                rate: need(self.rate, "rate")?,
            }),
            "logistic" => Ok(PathSpec::Logistic {
                start: need(self.start, "start")?,
                end: need(self.end, "end")?,
                midpoint: need(self.midpoint, "midpoint")?,
                steepness: need(self.steepness, "steepness")?,
            }),
            other => Err(Error::Scenario(format!(
                "trajectory.{name}_kind must be one of constant/linear/exponential/logistic, got '{other}'"
            ))),
        }
    }
}

fn parse_f64(key: &str, value: &str, line: usize) -> Result<f64> {
    value.parse::<f64>().map_err(|_| {
        Error::Scenario(format!("line {line}: cannot parse '{value}' as a number for {key}"))
    })
}

fn parse_usize(key: &str, value: &str, line: usize) -> Result<usize> {
    value.parse::<usize>().map_err(|_| {
        Error::Scenario(format!("line {line}: cannot parse '{value}' as an integer for {key}"))
    })
}

/// Parse and validate a scenario file; unknown keys, duplicates, and
/// invariant violations all fail with the offending line number.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut scenario = Scenario::default();
    let mut seen: HashSet<String> = HashSet::new();

    let mut sweep_param: Option<String> = None;
    let mut sweep_from: Option<f64> = None;
    let mut sweep_to: Option<f64> = None;
    let mut sweep_steps: Option<usize> = None;

    let mut traj_i = PathBuilder::default();
    let mut traj_e = PathBuilder::default();
    let mut traj_t_max: Option<f64> = None;
    let mut traj_steps: Option<usize> = None;
    let mut traj_seen = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Scenario(format!("line {line_no}: expected 'section.key = value'"))
        })?;
        let key = key.trim();
        let value = value.trim();
        if !seen.insert(key.to_string()) {
            return Err(Error::Scenario(format!("line {line_no}: duplicate key '{key}'")));
        }

        match key {
            "economy.n" => {
                let n = parse_usize(key, value, line_no)?;
                if n < 1 {
                    return Err(Error::Scenario(format!(
                        "line {line_no}: economy.n must be at least 1"
                    )));
                }
                scenario.economy.n = n as u32;
            }
            "economy.wage" => scenario.economy.wage = parse_f64(key, value, line_no)?,
            "economy.hours" => scenario.economy.hours = parse_f64(key, value, line_no)?,
            "preferences.alpha" => scenario.preferences.alpha = parse_f64(key, value, line_no)?,
            "preferences.beta" => scenario.preferences.beta = parse_f64(key, value, line_no)?,
            "preferences.delta" => scenario.preferences.delta = parse_f64(key, value, line_no)?,
            "preferences.mu" => scenario.preferences.mu = parse_f64(key, value, line_no)?,
            "pollution.gamma" => scenario.pollution.gamma = parse_f64(key, value, line_no)?,
            "awareness.mode" => {
                scenario.awareness.mode = match value {
                    "information" => AwarenessMode::Information,
                    "knowledge" => AwarenessMode::Knowledge,
                    other => {
                        return Err(Error::Scenario(format!(
                            "line {line_no}: awareness.mode must be 'information' or 'knowledge', got '{other}'"
                        )))
                    }
                };
            }
            "awareness.I" => {
                let v = parse_f64(key, value, line_no)?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::Scenario(format!(
                        "line {line_no}: awareness.I must lie in [0, 1], got {v}"
                    )));
                }
                scenario.information = v;
            }
            "awareness.E" => {
                let v = parse_f64(key, value, line_no)?;
                if !(v >= 0.0) {
                    return Err(Error::Scenario(format!(
                        "line {line_no}: awareness.E must be non-negative, got {v}"
                    )));
                }
                scenario.energy = v;
            }
            "awareness.kappa" => scenario.awareness.kappa = parse_f64(key, value, line_no)?,
            "knowledge.b" => scenario.knowledge.b = parse_f64(key, value, line_no)?,
            "sweep.param" => {
                if !SWEEPABLE_PARAMS.contains(&value) {
                    return Err(Error::Scenario(format!(
                        "line {line_no}: sweep.param must be one of {SWEEPABLE_PARAMS:?}, got '{value}'"
                    )));
                }
                sweep_param = Some(value.to_string());
            }
            "sweep.from" => sweep_from = Some(parse_f64(key, value, line_no)?),
            "sweep.to" => sweep_to = Some(parse_f64(key, value, line_no)?),
            "sweep.steps" => sweep_steps = Some(parse_usize(key, value, line_no)?),
            "trajectory.t_max" => {
                traj_seen = true;
                traj_t_max = Some(parse_f64(key, value, line_no)?);
            }
            "trajectory.steps" => {
                traj_seen = true;
                traj_steps = Some(parse_usize(key, value, line_no)?);
            }
            _ if key.starts_with("trajectory.I_") || key.starts_with("trajectory.E_") => {
                traj_seen = true;
                let (builder, field) = if let Some(rest) = key.strip_prefix("trajectory.I_") {
                    (&mut traj_i, rest)
                } else {
                    (&mut traj_e, key.strip_prefix("trajectory.E_").unwrap())
                };
                match field {
                    "kind" => builder.kind = Some(value.to_string()),
                    "start" => builder.start = Some(parse_f64(key, value, line_no)?),
                    "end" => builder.end = Some(parse_f64(key, value, line_no)?),
                    "rate" => builder.rate = Some(parse_f64(key, value, line_no)?),
                    "midpoint" => builder.midpoint = Some(parse_f64(key, value, line_no)?),
                    "steepness" => builder.steepness = Some(parse_f64(key, value, line_no)?),
                    _ => {
                        return Err(Error::Scenario(format!(
                            "line {line_no}: unknown key '{key}'"
                        )))
                    }
                }
            }
            _ => {
                return Err(Error::Scenario(format!("line {line_no}: unknown key '{key}'")));
            }
        }
    }

    // Cross-field validation.
    scenario.economy.validate().map_err(|e| Error::Scenario(e.to_string()))?;
    scenario.preferences.validate().map_err(|e| Error::Scenario(e.to_string()))?;
    scenario.pollution.validate().map_err(|e| Error::Scenario(e.to_string()))?;
    scenario.awareness.validate().map_err(|e| Error::Scenario(e.to_string()))?;
    scenario.knowledge.validate().map_err(|e| Error::Scenario(e.to_string()))?;

    let any_sweep_key =
        sweep_param.is_some() || sweep_from.is_some() || sweep_to.is_some() || sweep_steps.is_some();
    if any_sweep_key {
        let param = sweep_param
            .ok_or_else(|| Error::Scenario("sweep.param is required for a sweep".into()))?;
        let from = sweep_from
            .ok_or_else(|| Error::Scenario("sweep.from is required for a sweep".into()))?;
        let to =
            sweep_to.ok_or_else(|| Error::Scenario("sweep.to is required for a sweep".into()))?;
        let steps = sweep_steps
            .ok_or_else(|| Error::Scenario("sweep.steps is required for a sweep".into()))?;
        if steps < 2 {
            return Err(Error::Scenario(format!("sweep.steps must be at least 2, got {steps}")));
        }
        scenario.sweep = Some(SweepSpec { param, from, to, steps });
    }

    if traj_seen {
        let t_max = traj_t_max
            .ok_or_else(|| Error::Scenario("trajectory.t_max is required".into()))?;
        let steps = traj_steps
            .ok_or_else(|| Error::Scenario("trajectory.steps is required".into()))?;
        if !(t_max > 0.0) {
            return Err(Error::Scenario(format!("trajectory.t_max must be positive, got {t_max}")));
        }
        if steps < 2 {
            return Err(Error::Scenario(format!(
                "trajectory.steps must be at least 2, got {steps}"
            )));
        }
        if traj_i.is_empty() || traj_e.is_empty() {
            return Err(Error::Scenario(
                "trajectory requires both an I path and an E path".into(),
            ));
        }
        scenario.trajectory = Some(TrajectorySpec {
            information_path: traj_i.build("I", t_max)?,
            energy_path: traj_e.build("E", t_max)?,
            t_max,
            steps,
        });
    }

    Ok(scenario)
}
