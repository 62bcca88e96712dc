//! Awareness/accuracy as a function of information and exosomatic energy,
//! knowledge production, and the information-overload threshold.

use crate::error::{Error, Result};
use crate::numerics::{self, SolverSettings};

/// Which awareness function is in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AwarenessMode {
    /// a(I, E): awareness driven directly by available information.
    Information,
    /// a(K, E): awareness driven by processed knowledge.
    Knowledge,
}

/// Configuration for the awareness function.
#[derive(Debug, Clone, Copy)]
pub struct AwarenessSpec {
    pub mode: AwarenessMode,
    /// Knowledge-saturation scale; only used in knowledge mode.
    pub kappa: f64,
}

impl Default for AwarenessSpec {
    fn default() -> Self {
        AwarenessSpec {
            mode: AwarenessMode::Information,
            kappa: 0.25,
        }
    }
}

impl AwarenessSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0) {
            return Err(Error::domain(format!(
                "awareness.kappa must be positive, got {}",
                self.kappa
            )));
        }
        Ok(())
    }
}

/// Knowledge-production parameters.
#[derive(Debug, Clone, Copy)]
pub struct KnowledgeParams {
    /// Returns-to-time exponent, strictly inside (0, 1).
    pub b: f64,
}

impl Default for KnowledgeParams {
    fn default() -> Self {
        KnowledgeParams { b: 0.5 }
    }
}

impl KnowledgeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0 && self.b < 1.0) {
            return Err(Error::domain(format!(
                "knowledge.b must lie in (0, 1), got {}",
                self.b
            )));
        }
        Ok(())
    }
}

fn check_information(information: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&information) {
        return Err(Error::domain(format!(
            "information level must lie in [0, 1], got {information}"
        )));
    }
    Ok(())
}

fn check_energy(energy: f64) -> Result<()> {
    if !(energy >= 0.0) {
        return Err(Error::domain(format!(
            "exosomatic energy must be non-negative, got {energy}"
        )));
    }
    Ok(())
}

/// Awareness from information and energy: I(1-I) / (ln(1+E) + 1/4).
///
/// Peaks at exactly 1 when I = 1/2 and E = 0; more information beyond the
/// overload point or more energy use both lower it.
pub fn awareness_info(information: f64, energy: f64) -> Result<f64> {
    check_information(information)?;
    check_energy(energy)?;
    Ok(information * (1.0 - information) / ((1.0 + energy).ln() + 0.25))
}

/// Knowledge produced from information level and processing hours:
/// I(1-I) * L_K^b, with decreasing returns in time (b < 1).
pub fn knowledge_stock(information: f64, processing_hours: f64, params: &KnowledgeParams) -> Result<f64> {
    check_information(information)?;
    params.validate()?;
    if !(processing_hours >= 0.0) {
        return Err(Error::domain(format!(
            "processing hours must be non-negative, got {processing_hours}"
        )));
    }
    if processing_hours == 0.0 {
        return Ok(0.0);
    }
    Ok(information * (1.0 - information) * processing_hours.powf(params.b))
}

/// Awareness from knowledge and energy: (1 - exp(-K/kappa)) / (1 + ln(1+E)).
///
/// Increasing and concave in K, decreasing in E, bounded in [0, 1).
pub fn awareness_knowledge(knowledge: f64, energy: f64, spec: &AwarenessSpec) -> Result<f64> {
    spec.validate()?;
    if spec.mode != AwarenessMode::Knowledge {
        return Err(Error::domain(
            "awareness_knowledge requires awareness.mode = knowledge".to_string(),
        ));
    }
    if !(knowledge >= 0.0) {
        return Err(Error::domain(format!(
            "knowledge stock must be non-negative, got {knowledge}"
        )));
    }
    check_energy(energy)?;
    Ok((1.0 - (-knowledge / spec.kappa).exp()) / (1.0 + (1.0 + energy).ln()))
}

/// Information level beyond which more information lowers awareness.
///
/// Found by maximizing `awareness_info(., E)` numerically so that alternative
/// awareness forms keep working; for the built-in form it is 1/2 for every E.
pub fn overload_threshold(energy: f64) -> Result<f64> {
    check_energy(energy)?;
    let settings = SolverSettings::default();
    let report = numerics::maximize_bounded(
        |i| awareness_info(i, energy).expect("grid point inside domain"),
        0.0,
        1.0,
        &settings,
    )?;
    Ok(report.x())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{fd_derivative, fd_second_derivative, SolverSettings};
    use proptest::prelude::*;

    #[test]
    fn peak_awareness_is_one() {
        assert!((awareness_info(0.5, 0.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_at_information_extremes() {
        assert_eq!(awareness_info(0.0, 5.0).unwrap(), 0.0);
        assert_eq!(awareness_info(1.0, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn e_minus_one_anchor() {
        // ln(e) = 1, so a = 0.25 / 1.25.
        let a = awareness_info(0.5, std::f64::consts::E - 1.0).unwrap();
        assert!((a - 0.2).abs() < 1e-12);
    }

    #[test]
    fn rejects_out_of_range_inputs() {
        assert!(awareness_info(-0.1, 0.0).is_err());
        assert!(awareness_info(1.1, 0.0).is_err());
        assert!(awareness_info(0.5, -1.0).is_err());
    }

    #[test]
    fn knowledge_stock_anchors() {
        let p = KnowledgeParams { b: 0.5 };
        assert!((knowledge_stock(0.5, 4.0, &p).unwrap() - 0.5).abs() < 1e-12);
        assert!((knowledge_stock(0.5, 16.0, &p).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(knowledge_stock(1.0, 10.0, &p).unwrap(), 0.0);
        assert!(knowledge_stock(0.5, -1.0, &p).is_err());
    }

    #[test]
    fn knowledge_stock_concave_in_time() {
        let p = KnowledgeParams { b: 0.5 };
        let s = SolverSettings { fd_step: 1e-4, ..Default::default() };
        for &t in &[0.5, 2.0, 8.0, 20.0] {
            let d2 = fd_second_derivative(
                |x| knowledge_stock(0.4, x, &p).unwrap(),
                t,
                &s,
            )
            .unwrap();
            assert!(d2 < 0.0, "second derivative at {t} was {d2}");
        }
    }

    fn kspec() -> AwarenessSpec {
        AwarenessSpec { mode: AwarenessMode::Knowledge, kappa: 0.25 }
    }

    #[test]
    fn knowledge_awareness_anchors() {
        assert_eq!(awareness_knowledge(0.0, 3.0, &kspec()).unwrap(), 0.0);
        // Direct evaluation of the chosen form at K = kappa, E = 0.
        let a = awareness_knowledge(0.25, 0.0, &kspec()).unwrap();
        let expected = 1.0 - (-1.0f64).exp();
        assert!((a - expected).abs() < 1e-12);
        let near_one = awareness_knowledge(2.5, 0.0, &kspec()).unwrap();
        assert!(near_one < 1.0 && near_one > 1.0 - 1e-4);
    }

    #[test]
    fn knowledge_awareness_requires_knowledge_mode() {
        let info = AwarenessSpec::default();
        assert!(awareness_knowledge(0.5, 0.0, &info).is_err());
    }

    #[test]
    fn knowledge_awareness_monotone() {
        let s = SolverSettings::default();
        for &(k, e) in &[(0.1, 0.5), (0.5, 2.0), (1.5, 0.0), (3.0, 9.0)] {
            let dk = fd_derivative(
                |x| awareness_knowledge(x, e, &kspec()).unwrap(),
                k,
                &s,
            )
            .unwrap();
            assert!(dk > 0.0);
            let de = fd_derivative(
                |x| awareness_knowledge(k, x, &kspec()).unwrap(),
                e.max(1e-3),
                &s,
            )
            .unwrap();
            assert!(de < 0.0);
        }
    }

    #[test]
    fn overload_threshold_is_half() {
        assert!((overload_threshold(0.0).unwrap() - 0.5).abs() < 1e-6);
        assert!((overload_threshold(100.0).unwrap() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn overload_threshold_matches_grid_search() {
        // Brute-force oracle at resolution 1e-5.
        let energy = 1.0;
        let mut best_i = 0.0;
        let mut best_a = -1.0;
        let n = 100_000;
        for j in 0..=n {
            let i = j as f64 / n as f64;
            let a = awareness_info(i, energy).unwrap();
            if a > best_a {
                best_a = a;
                best_i = i;
            }
        }
        let solved = overload_threshold(energy).unwrap();
        assert!((solved - best_i).abs() < 1e-4);
    }

    #[test]
    fn first_order_signs() {
        let s = SolverSettings::default();
        for &e in &[0.0f64, 0.5, 2.0, 10.0] {
            for j in 1..20 {
                let i = j as f64 / 20.0;
                let de = fd_derivative(
                    |x| awareness_info(i, x).unwrap(),
                    e.max(1e-3),
                    &s,
                )
                .unwrap();
                assert!(de < 0.0, "da/dE at ({i}, {e}) was {de}");
                let di = fd_derivative(|x| awareness_info(x, e).unwrap(), i, &s).unwrap();
                if i < 0.5 - 1e-9 {
                    assert!(di > 0.0);
                } else if i > 0.5 + 1e-9 {
                    assert!(di < 0.0);
                }
                let d2i =
                    fd_second_derivative(|x| awareness_info(x, e).unwrap(), i, &s).unwrap();
                assert!(d2i < 0.0);
            }
        }
    }

    #[test]
    fn unimodal_on_grid() {
        for &e in &[0.0, 1.0, 7.5] {
            let grid: Vec<f64> = (0..=100)
                .map(|j| awareness_info(j as f64 / 100.0, e).unwrap())
                .collect();
            for j in 1..=50 {
                assert!(grid[j] > grid[j - 1], "rising branch broken at {j}");
            }
            for j in 51..=100 {
                assert!(grid[j] < grid[j - 1], "falling branch broken at {j}");
            }
        }
    }

    proptest! {
        #[test]
        fn awareness_in_unit_interval(i in 0.0f64..=1.0, e in 0.0f64..1e6) {
            let a = awareness_info(i, e).unwrap();
            prop_assert!((0.0..=1.0).contains(&a));
        }

        #[test]
        fn awareness_decreasing_in_energy(
            i in 0.01f64..0.99,
            e1 in 0.0f64..100.0,
            bump in 0.01f64..100.0,
        ) {
            let lo = awareness_info(i, e1).unwrap();
            let hi = awareness_info(i, e1 + bump).unwrap();
            prop_assert!(hi < lo);
        }

        #[test]
        fn knowledge_awareness_stays_below_one(k in 0.0f64..1e4, e in 0.0f64..1e4) {
            let a = awareness_knowledge(k, e, &kspec()).unwrap();
            prop_assert!((0.0..1.0).contains(&a));
        }
    }
}
