//! Command dispatch: turn a scenario plus a command name into CSV or SVG text.

use crate::awareness::awareness_info;
use crate::choice::{best_response, naive_bundle, Bundle};
use crate::equilibrium::{self, Figure1Result};
use crate::error::{Error, Result};
use crate::knowledge::extended_bundle;
use crate::numerics::SolverSettings;
use crate::scenario::Scenario;
use crate::svg::{line_chart, line_chart_with_points, PlotPoint, PlotSeries};
use crate::table::{emit_csv, OutputTable};
use crate::trajectory::{awareness_trajectory, Series};
use crate::{selftest, trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Svg,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(Error::domain(format!("format must be csv or svg, got '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Nash,
    Efficient,
    Figure1,
    Sweep,
    Extended,
    Trajectory,
}

impl std::str::FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "solve" => Ok(Command::Solve),
            "nash" => Ok(Command::Nash),
            "efficient" => Ok(Command::Efficient),
            "figure1" => Ok(Command::Figure1),
            "sweep" => Ok(Command::Sweep),
            "extended" => Ok(Command::Extended),
            "trajectory" => Ok(Command::Trajectory),
            other => Err(Error::domain(format!("unknown command '{other}'"))),
        }
    }
}

fn fixed_awareness(scenario: &Scenario) -> Result<f64> {
    awareness_info(scenario.information, scenario.energy)
}

const BUNDLE_COLS: &[&str] = &["C", "L", "a", "P_total", "U_perceived", "W_true"];

fn bundle_cells(b: &Bundle) -> Vec<f64> {
    vec![
        b.consumption,
        b.leisure,
        b.awareness,
        b.total_pollution,
        b.perceived_utility,
        b.true_welfare,
    ]
}

fn budget_series(scenario: &Scenario) -> PlotSeries {
    let econ = &scenario.economy;
    PlotSeries::new("budget", vec![0.0, econ.hours], vec![econ.wage * econ.hours, 0.0])
}

fn bundle_chart(
    scenario: &Scenario,
    points: Vec<PlotPoint>,
    title: &str,
) -> Result<String> {
    line_chart_with_points(&[budget_series(scenario)], &points, title, "leisure (hours)", "consumption")
}

/// Run one command against a parsed scenario, producing the output text.
pub fn run(command: Command, scenario: &Scenario, format: OutputFormat) -> Result<String> {
    let settings = SolverSettings::default();
    match command {
        Command::Solve => {
            let a = fixed_awareness(scenario)?;
            let naive = naive_bundle(&scenario.preferences, &scenario.pollution, &scenario.economy)?;
            let others = (scenario.economy.n as f64 - 1.0) * naive.consumption;
            let (br, _) = best_response(
                a,
                others,
                &scenario.preferences,
                &scenario.pollution,
                &scenario.economy,
                &settings,
            )?;
            match format {
                OutputFormat::Csv => {
                    let header: Vec<String> = BUNDLE_COLS
                        .iter()
                        .map(|c| format!("{c}_naive"))
                        .chain(BUNDLE_COLS.iter().map(|c| format!("{c}_best_response")))
                        .collect();
                    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
                    let mut t = OutputTable::new(&header_refs);
                    let mut row = bundle_cells(&naive);
                    row.extend(bundle_cells(&br));
                    t.push_row(row)?;
                    Ok(emit_csv(&t))
                }
                OutputFormat::Svg => bundle_chart(
                    scenario,
                    vec![
                        PlotPoint::new("naive", naive.leisure, naive.consumption),
                        PlotPoint::new("best_response", br.leisure, br.consumption),
                    ],
                    "Naive and self-concerned bundles",
                ),
            }
        }
        Command::Nash => {
            let a = fixed_awareness(scenario)?;
            let (b, report) = equilibrium::nash_symmetric(
                a,
                &scenario.preferences,
                &scenario.pollution,
                &scenario.economy,
                &settings,
            )?;
            match format {
                OutputFormat::Csv => {
                    let mut t = OutputTable::new(&[
                        "C", "L", "a", "P_total", "U_perceived", "W_true", "iterations", "residual",
                    ]);
                    let mut row = bundle_cells(&b);
                    row.push(report.iterations as f64);
                    row.push(report.residual);
                    t.push_row(row)?;
                    Ok(emit_csv(&t))
                }
                OutputFormat::Svg => bundle_chart(
                    scenario,
                    vec![PlotPoint::new("nash", b.leisure, b.consumption)],
                    "Symmetric Nash bundle",
                ),
            }
        }
        Command::Efficient => {
            let a = fixed_awareness(scenario)?;
            let (b, report) = equilibrium::efficient_symmetric(
                a,
                &scenario.preferences,
                &scenario.pollution,
                &scenario.economy,
                &settings,
            )?;
            match format {
                OutputFormat::Csv => {
                    let mut t = OutputTable::new(&[
                        "C", "L", "a", "P_total", "U_perceived", "W_true", "iterations", "residual",
                    ]);
                    let mut row = bundle_cells(&b);
                    row.push(report.iterations as f64);
                    row.push(report.residual);
                    t.push_row(row)?;
                    Ok(emit_csv(&t))
                }
                OutputFormat::Svg => bundle_chart(
                    scenario,
                    vec![PlotPoint::new("efficient", b.leisure, b.consumption)],
                    "Efficient (Lindahl) bundle",
                ),
            }
        }
        Command::Figure1 => {
            let a = fixed_awareness(scenario)?;
            let fig = equilibrium::figure1(
                a,
                &scenario.preferences,
                &scenario.pollution,
                &scenario.economy,
                &settings,
            )?;
            match format {
                OutputFormat::Csv => Ok(emit_csv(&figure1_table(a, &fig)?)),
                OutputFormat::Svg => bundle_chart(
                    scenario,
                    vec![
                        PlotPoint::new("naive", fig.naive.leisure, fig.naive.consumption),
                        PlotPoint::new("self_concerned", fig.nash.leisure, fig.nash.consumption),
                        PlotPoint::new("efficient", fig.efficient.leisure, fig.efficient.consumption),
                    ],
                    "Optimal bundles along the budget line",
                ),
            }
        }
        Command::Sweep => run_sweep(scenario, format, &settings),
        Command::Extended => {
            let (b, report) = extended_bundle(
                scenario.information,
                scenario.energy,
                0.0,
                &scenario.preferences,
                &scenario.pollution,
                &scenario.knowledge,
                &knowledge_mode(scenario),
                &scenario.economy,
                &settings,
            )?;
            match format {
                OutputFormat::Csv => {
                    let mut t = OutputTable::new(&[
                        "C", "L_L", "L_K", "K", "a", "P_total", "U_perceived", "W_true",
                        "iterations",
                    ]);
                    t.push_row(vec![
                        b.consumption,
                        b.pure_leisure,
                        b.processing,
                        b.knowledge,
                        b.awareness,
                        b.total_pollution,
                        b.perceived_utility,
                        b.true_welfare,
                        report.iterations as f64,
                    ])?;
                    Ok(emit_csv(&t))
                }
                OutputFormat::Svg => bundle_chart(
                    scenario,
                    vec![PlotPoint::new(
                        "extended",
                        b.pure_leisure + b.processing,
                        b.consumption,
                    )],
                    "Knowledge-extended bundle",
                ),
            }
        }
        Command::Trajectory => {
            let spec = scenario.trajectory.as_ref().ok_or_else(|| {
                Error::Scenario("the trajectory command needs a trajectory.* block".into())
            })?;
            let grid = Series::uniform_grid(0.0, spec.t_max, spec.steps)?;
            let series = awareness_trajectory(&spec.information_path, &spec.energy_path, &grid)?;
            match format {
                OutputFormat::Csv => {
                    let mut t = OutputTable::new(&["t", "I", "E", "a"]);
                    for (&tt, &a) in series.t.iter().zip(&series.values) {
                        t.push_row(vec![
                            tt,
                            trajectory::path_eval(&spec.information_path, tt),
                            trajectory::path_eval(&spec.energy_path, tt),
                            a,
                        ])?;
                    }
                    Ok(emit_csv(&t))
                }
                OutputFormat::Svg => {
                    let s = PlotSeries::new("awareness", series.t.clone(), series.values.clone());
                    line_chart(&[s], "Awareness over time", "t", "a")
                }
            }
        }
    }
}

fn knowledge_mode(scenario: &Scenario) -> crate::awareness::AwarenessSpec {
    crate::awareness::AwarenessSpec {
        mode: crate::awareness::AwarenessMode::Knowledge,
        kappa: scenario.awareness.kappa,
    }
}

fn figure1_table(a: f64, fig: &Figure1Result) -> Result<OutputTable> {
    let mut t = OutputTable::new(&[
        "a",
        "C_naive",
        "L_naive",
        "C_nash",
        "L_nash",
        "C_efficient",
        "L_efficient",
        "P_nash",
        "P_efficient",
        "pollution_gap",
        "ordering_ok",
    ]);
    t.push_row(vec![
        a,
        fig.naive.consumption,
        fig.naive.leisure,
        fig.nash.consumption,
        fig.nash.leisure,
        fig.efficient.consumption,
        fig.efficient.leisure,
        fig.nash.total_pollution,
        fig.efficient.total_pollution,
        fig.pollution_gap,
        if fig.ordering_ok { 1.0 } else { 0.0 },
    ])?;
    Ok(t)
}

fn run_sweep(scenario: &Scenario, format: OutputFormat, settings: &SolverSettings) -> Result<String> {
    let sweep = scenario
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Scenario("the sweep command needs a sweep.* block".into()))?;

    let mut values: Vec<f64> = (0..sweep.steps)
        .map(|i| sweep.from + (sweep.to - sweep.from) * i as f64 / (sweep.steps - 1) as f64)
        .collect();
    // Output rows are ordered by the swept parameter ascending.
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut t = OutputTable::new(&[
        "param",
        "a",
        "C_naive",
        "C_nash",
        "L_nash",
        "C_efficient",
        "P_nash",
        "P_efficient",
        "welfare_gap",
    ]);
    for &v in &values {
        let mut s = scenario.clone();
        match sweep.param.as_str() {
            "awareness.I" => s.information = v,
            "awareness.E" => s.energy = v,
            "preferences.delta" => s.preferences.delta = v,
            "pollution.gamma" => s.pollution.gamma = v,
            "economy.n" => s.economy.n = v.round().max(1.0) as u32,
            other => return Err(Error::Scenario(format!("unsupported sweep parameter '{other}'"))),
        }
        let a = fixed_awareness(&s)?;
        let fig = equilibrium::figure1(a, &s.preferences, &s.pollution, &s.economy, settings)?;
        let gap = equilibrium::welfare_gap(a, &s.preferences, &s.pollution, &s.economy, settings)?;
        t.push_row(vec![
            v,
            a,
            fig.naive.consumption,
            fig.nash.consumption,
            fig.nash.leisure,
            fig.efficient.consumption,
            fig.nash.total_pollution,
            fig.efficient.total_pollution,
            gap,
        ])?;
    }

    match format {
        OutputFormat::Csv => Ok(emit_csv(&t)),
        OutputFormat::Svg => {
            let xs: Vec<f64> = t.rows.iter().map(|r| r[0]).collect();
            let series = vec![
                PlotSeries::new("C_naive", xs.clone(), t.rows.iter().map(|r| r[2]).collect()),
                PlotSeries::new("C_nash", xs.clone(), t.rows.iter().map(|r| r[3]).collect()),
                PlotSeries::new("C_efficient", xs.clone(), t.rows.iter().map(|r| r[5]).collect()),
                PlotSeries::new("welfare_gap", xs, t.rows.iter().map(|r| r[8]).collect()),
            ];
            line_chart(&series, &format!("Sweep over {}", sweep.param), &sweep.param, "value")
        }
    }
}

/// Run the built-in invariant suite; returns the human-readable report and
/// whether everything passed.
pub fn run_selftest() -> (String, bool) {
    let results = selftest::run_all();
    let mut out = String::new();
    let mut ok = true;
    for r in &results {
        out.push_str(&format!(
            "{} {}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.name
        ));
        if !r.passed {
            ok = false;
            if !r.detail.is_empty() {
                out.push_str(&format!("     {}\n", r.detail));
            }
        }
    }
    out.push_str(&format!(
        "{} of {} checks passed\n",
        results.iter().filter(|r| r.passed).count(),
        results.len()
    ));
    (out, ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    #[test]
    fn figure1_csv_shape() {
        let s = parse_scenario("preferences.delta = 0.2\nawareness.E = 0\n").unwrap();
        let out = run(Command::Figure1, &s, OutputFormat::Csv).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("a,C_naive"));
        let cells: Vec<f64> = lines[1].split(',').map(|c| c.parse().unwrap()).collect();
        // naive > nash > efficient, ordering flag set.
        assert!(cells[1] > cells[3] && cells[3] > cells[5]);
        assert_eq!(cells[10], 1.0);
    }

    #[test]
    fn figure1_svg_marks_three_bundles() {
        let s = parse_scenario("preferences.delta = 0.2\n").unwrap();
        let svg = run(Command::Figure1, &s, OutputFormat::Svg).unwrap();
        assert!(svg.contains("naive"));
        assert!(svg.contains("self_concerned"));
        assert!(svg.contains("efficient"));
        assert_eq!(svg.matches("<polyline").count(), 1); // the budget line
    }

    #[test]
    fn trajectory_requires_block() {
        let s = parse_scenario("").unwrap();
        assert!(run(Command::Trajectory, &s, OutputFormat::Csv).is_err());
    }

    #[test]
    fn sweep_rows_ascending_even_when_reversed() {
        let text = "sweep.param = awareness.I\nsweep.from = 0.5\nsweep.to = 0.1\nsweep.steps = 5\n";
        let s = parse_scenario(text).unwrap();
        let out = run(Command::Sweep, &s, OutputFormat::Csv).unwrap();
        let params: Vec<f64> = out
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(params.len(), 5);
        assert!(params.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn deterministic_byte_output() {
        let text = "preferences.delta = 0.3\nawareness.I = 0.4\nawareness.E = 1\n";
        let s = parse_scenario(text).unwrap();
        for cmd in [Command::Solve, Command::Nash, Command::Figure1] {
            let a = run(cmd, &s, OutputFormat::Csv).unwrap();
            let b = run(cmd, &s, OutputFormat::Csv).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn extended_command_runs() {
        let s = parse_scenario("preferences.mu = 1\nawareness.I = 0.5\nawareness.E = 1\n").unwrap();
        let out = run(Command::Extended, &s, OutputFormat::Csv).unwrap();
        assert!(out.starts_with("C,L_L,L_K"));
        assert_eq!(out.lines().count(), 2);
    }
}
