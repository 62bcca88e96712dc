//! Time paths of information and energy mapped through the awareness
//! function, with unimodality detection for the inverted-U story.

use crate::awareness::awareness_info;
use crate::error::{Error, Result};

/// Parametric time path used for I(t) and E(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathSpec {
    Constant { value: f64 },
    /// Affine interpolation from `start` at `t_start` to `end` at `t_end`.
    Linear { start: f64, end: f64, t_start: f64, t_end: f64 },
    Exponential { start: f64, rate: f64 },
    Logistic { start: f64, end: f64, midpoint: f64, steepness: f64 },
}

/// A uniformly spaced time series.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub t: Vec<f64>,
    pub values: Vec<f64>,
}

impl Series {
    /// Uniform grid of `steps` points from `t0` to `t1` inclusive.
    pub fn uniform_grid(t0: f64, t1: f64, steps: usize) -> Result<Vec<f64>> {
        if steps < 2 || !(t1 > t0) {
            return Err(Error::domain(format!(
                "grid needs at least 2 points and t1 > t0, got steps={steps}, [{t0}, {t1}]"
            )));
        }
        Ok((0..steps)
            .map(|i| t0 + (t1 - t0) * i as f64 / (steps - 1) as f64)
            .collect())
    }
}

/// Classification returned by [`single_peak`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeakVerdict {
    Unimodal { peak_index: usize },
    Monotone,
    Multimodal,
}

/// Evaluate a path at time `t`.
pub fn path_eval(spec: &PathSpec, t: f64) -> f64 {
    match *spec {
        PathSpec::Constant { value } => value,
        PathSpec::Linear { start, end, t_start, t_end } => {
            start + (end - start) * (t - t_start) / (t_end - t_start)
        }
        PathSpec::Exponential { start, rate } => start * (rate * t).exp(),
        PathSpec::Logistic { start, end, midpoint, steepness } => {
            start + (end - start) / (1.0 + (-steepness * (t - midpoint)).exp())
        }
    }
}

/// Map I(t) and E(t) through the awareness function on a shared grid.
///
/// Paths that leave their domain (I outside [0,1], E negative) are an error,
/// never clamped, so a misconfigured scenario surfaces immediately.
pub fn awareness_trajectory(
    information_path: &PathSpec,
    energy_path: &PathSpec,
    t_grid: &[f64],
) -> Result<Series> {
    if t_grid.len() < 2 {
        return Err(Error::domain("time grid needs at least 2 points"));
    }
    if !t_grid.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::domain("time grid must be strictly increasing"));
    }
    let mut values = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let info = path_eval(information_path, t);
        if !(0.0..=1.0).contains(&info) {
            return Err(Error::domain(format!(
                "information path leaves [0, 1] at t = {t} (value {info})"
            )));
        }
        let energy = path_eval(energy_path, t);
        if !(energy >= 0.0) {
            return Err(Error::domain(format!(
                "energy path goes negative at t = {t} (value {energy})"
            )));
        }
        values.push(awareness_info(info, energy)?);
    }
    Ok(Series { t: t_grid.to_vec(), values })
}

/// Classify a sequence as unimodal, monotone, or multimodal by the sign
/// changes of successive differences; ties below 1e-12 count as flat.
pub fn single_peak(values: &[f64]) -> PeakVerdict {
    const TIE: f64 = 1e-12;
    // Signs of the non-flat moves, plateaus merged away.
    let mut signs: Vec<i8> = Vec::new();
    for w in values.windows(2) {
        let d = w[1] - w[0];
        let s = if d.abs() <= TIE {
            0
        } else if d > 0.0 {
            1
        } else {
            -1
        };
        if s != 0 && signs.last() != Some(&s) {
            signs.push(s);
        }
    }
    match signs.as_slice() {
        [] | [1] | [-1] => PeakVerdict::Monotone,
        [1, -1] => {
            // First index of the maximal plateau.
            let peak_index = values
                .iter()
                .enumerate()
                .fold((0usize, f64::NEG_INFINITY), |acc, (i, &v)| {
                    if v > acc.1 {
                        (i, v)
                    } else {
                        acc
                    }
                })
                .0;
            PeakVerdict::Unimodal { peak_index }
        }
        _ => PeakVerdict::Multimodal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_eval_anchors() {
        assert_eq!(path_eval(&PathSpec::Constant { value: 0.3 }, 17.0), 0.3);
        let lin = PathSpec::Linear { start: 0.0, end: 1.0, t_start: 0.0, t_end: 10.0 };
        assert!((path_eval(&lin, 5.0) - 0.5).abs() < 1e-12);
        let logi = PathSpec::Logistic { start: 0.05, end: 0.95, midpoint: 5.0, steepness: 1.0 };
        assert!((path_eval(&logi, 5.0) - 0.5).abs() < 1e-12);
        let exp = PathSpec::Exponential { start: 0.1, rate: 0.3 };
        assert!((path_eval(&exp, 0.0) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn constant_peak_trajectory() {
        let grid = Series::uniform_grid(0.0, 10.0, 11).unwrap();
        let s = awareness_trajectory(
            &PathSpec::Constant { value: 0.5 },
            &PathSpec::Constant { value: 0.0 },
            &grid,
        )
        .unwrap();
        assert!(s.values.iter().all(|&a| (a - 1.0).abs() < 1e-12));
    }

    #[test]
    fn linear_information_peaks_at_midpoint() {
        let grid = Series::uniform_grid(0.0, 10.0, 101).unwrap();
        let s = awareness_trajectory(
            &PathSpec::Linear { start: 0.0, end: 1.0, t_start: 0.0, t_end: 10.0 },
            &PathSpec::Constant { value: 0.0 },
            &grid,
        )
        .unwrap();
        match single_peak(&s.values) {
            PeakVerdict::Unimodal { peak_index } => {
                assert!((s.t[peak_index] - 5.0).abs() < 1e-9);
                assert!((s.values[peak_index] - 1.0).abs() < 1e-12);
            }
            v => panic!("expected unimodal, got {v:?}"),
        }
    }

    #[test]
    fn logistic_info_exponential_energy_is_unimodal() {
        let grid = Series::uniform_grid(0.0, 20.0, 101).unwrap();
        let s = awareness_trajectory(
            &PathSpec::Logistic { start: 0.05, end: 0.95, midpoint: 5.0, steepness: 1.0 },
            &PathSpec::Exponential { start: 0.1, rate: 0.3 },
            &grid,
        )
        .unwrap();
        match single_peak(&s.values) {
            PeakVerdict::Unimodal { peak_index } => {
                assert!(peak_index > 0 && peak_index < s.values.len() - 1);
            }
            v => panic!("expected unimodal, got {v:?}"),
        }
        assert!(s.values.iter().all(|&a| (0.0..=1.0).contains(&a)));
    }

    #[test]
    fn domain_violations_are_errors() {
        let grid = Series::uniform_grid(0.0, 10.0, 11).unwrap();
        let err = awareness_trajectory(
            &PathSpec::Linear { start: 0.0, end: 1.5, t_start: 0.0, t_end: 10.0 },
            &PathSpec::Constant { value: 0.0 },
            &grid,
        );
        assert!(err.is_err());
        let err = awareness_trajectory(
            &PathSpec::Constant { value: 0.5 },
            &PathSpec::Linear { start: 1.0, end: -1.0, t_start: 0.0, t_end: 10.0 },
            &grid,
        );
        assert!(err.is_err());
    }

    #[test]
    fn single_peak_verdicts() {
        assert_eq!(
            single_peak(&[1.0, 2.0, 3.0, 2.0, 1.0]),
            PeakVerdict::Unimodal { peak_index: 2 }
        );
        assert_eq!(single_peak(&[1.0, 2.0, 3.0, 4.0]), PeakVerdict::Monotone);
        assert_eq!(single_peak(&[4.0, 3.0, 2.0]), PeakVerdict::Monotone);
        assert_eq!(single_peak(&[1.0, 3.0, 2.0, 4.0, 1.0]), PeakVerdict::Multimodal);
        assert_eq!(single_peak(&[1.0, 1.0, 1.0]), PeakVerdict::Monotone);
        // Plateau at the top still counts as one peak.
        assert_eq!(
            single_peak(&[1.0, 2.0, 2.0, 1.0]),
            PeakVerdict::Unimodal { peak_index: 1 }
        );
    }
}
