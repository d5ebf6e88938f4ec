// Copyright 2026 The lqw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Desk-scale numerical experiments: each pairs a direct simulation with the
//! corresponding closed form.

use lqw_core::{
    default_grid_size, evolve, evolve_observed, localization_probability_origin, peak_velocities,
    propagate_fourier, InitialCondition, Parity, PositionDistribution, WalkParams, WeakLimitModel,
    DEFAULT_QUADRATURE_NODES,
};

use crate::error::{HarnessError, Result};
use crate::report::{ExperimentConfig, ExperimentReport, Table, Verdict};

/// Tolerances every verdict is judged against.
pub mod tolerance {
    /// Window mean of `P(X_t = 0)` vs the limiting value.
    pub const LOCALIZATION_WINDOW: f64 = 1e-2;
    /// Pairwise agreement of window means across standard starts.
    pub const LOCALIZATION_PAIRWISE: f64 = 2e-2;
    /// Measured travelling peak vs `v T`, in sites.
    pub const PEAK_SITES: f64 = 2.0;
    /// `|n_left + n_right|` for a symmetric walk, in sites.
    pub const PEAK_SYMMETRY: f64 = 1.0;
    /// Direct vs Fourier-grid amplitudes.
    pub const ORACLE: f64 = 1e-10;
    /// Eigen-equation residual of the closed-form eigenpairs.
    pub const EIGEN_RESIDUAL: f64 = 1e-10;
    pub const NORM: f64 = 1e-12;
    pub const COIN_ALGEBRA: f64 = 1e-12;
    /// Closed forms vs momentum quadrature.
    pub const THETA_QUADRATURE: f64 = 1e-8;
    /// Weak-limit closure and spread-coefficient consistency.
    pub const WEAK_LIMIT: f64 = 1e-6;
    /// `|alpha_fit - 2|`.
    pub const SPREAD_EXPONENT: f64 = 0.05;
    /// `|c_fit / c - 1|`.
    pub const SPREAD_COEFFICIENT_RELATIVE: f64 = 0.10;
    /// Sup distance between empirical and limiting CDFs away from the atom.
    pub const SUP_DISTANCE: f64 = 0.05;
    /// Near-origin mass vs `p_hat + int_{|x|<eps} f`.
    pub const NEAR_MASS: f64 = 0.05;
    /// CSV round trip of a probability column.
    pub const CSV_TOTAL: f64 = 1e-9;
}

/// Default exclusion radius around the atom at 0.
pub const DEFAULT_EPSILON: f64 = 0.05;

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(HarnessError::InvalidConfig(msg()))
    }
}

/// Window over which `P(X_t = 0)` is averaged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowSummary {
    pub first: usize,
    pub last: usize,
    pub mean: f64,
    pub reference: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationSeries {
    /// `(t, P(X_t = 0))` for `t = 1..=T`.
    pub points: Vec<(usize, f64)>,
    /// Limiting origin probability along even and odd times.
    pub reference_even: f64,
    pub reference_odd: f64,
    /// Present when `T >= 10`.
    pub window: Option<WindowSummary>,
}

impl LocalizationSeries {
    pub fn reference_at(&self, t: usize) -> f64 {
        match Parity::of(t) {
            Parity::Even => self.reference_even,
            Parity::Odd => self.reference_odd,
        }
    }

    pub fn report(&self, config: ExperimentConfig) -> ExperimentReport {
        let mut table = Table::new(&["t", "probability", "reference"]);
        for &(t, p) in &self.points {
            table.push(vec![t.into(), p.into(), self.reference_at(t).into()]);
        }
        let mut r = ExperimentReport::new(config, table)
            .with_summary("reference_even", self.reference_even)
            .with_summary("reference_odd", self.reference_odd);
        if let Some(w) = self.window {
            r = r
                .with_summary("window_first", w.first as f64)
                .with_summary("window_last", w.last as f64)
                .with_summary("window_mean", w.mean)
                .with_verdict(Verdict::at_most(
                    "window_mean_vs_limit",
                    w.deviation,
                    tolerance::LOCALIZATION_WINDOW,
                ));
        }
        r
    }
}

/// `P(X_t = 0)` for `t = 1..=T` with the analytic limit as reference.
///
/// The probability oscillates without converging pointwise, so convergence is
/// judged on the mean over the last `ceil(T/10)` steps.
pub fn localization_series(
    init: &InitialCondition<f64>,
    params: WalkParams,
    steps: usize,
) -> Result<LocalizationSeries> {
    require(steps >= 1, || {
        "localization series needs at least one step".into()
    })?;
    let reference_even = localization_probability_origin(init, params, Parity::Even)?;
    let reference_odd = localization_probability_origin(init, params, Parity::Odd)?;
    let mut points = Vec::with_capacity(steps);
    evolve_observed(init, params, steps, |s| {
        if s.t() > 0 {
            points.push((s.t(), s.probability_at(0)));
        }
    })?;
    let mut series = LocalizationSeries {
        points,
        reference_even,
        reference_odd,
        window: None,
    };
    if steps >= 10 {
        let len = steps.div_ceil(10);
        let tail = &series.points[steps - len..];
        let n = tail.len() as f64;
        let mean = tail.iter().map(|p| p.1).sum::<f64>() / n;
        let reference = tail.iter().map(|p| series.reference_at(p.0)).sum::<f64>() / n;
        series.window = Some(WindowSummary {
            first: tail[0].0,
            last: steps,
            mean,
            reference,
            deviation: (mean - reference).abs(),
        });
    }
    Ok(series)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionSnapshot {
    pub distribution: PositionDistribution<f64>,
    pub v_left: f64,
    pub v_right: f64,
    /// `v T` rounded to the nearest site.
    pub theory_left: i64,
    pub theory_right: i64,
    /// Argmax of `P(n)` over `n < -T/2` and `n > T/2`.
    pub measured_left: i64,
    pub measured_right: i64,
}

impl DistributionSnapshot {
    pub fn report(&self, config: ExperimentConfig) -> ExperimentReport {
        let mut table = Table::new(&["n", "probability"]);
        for (n, p) in self.distribution.iter() {
            table.push(vec![n.into(), p.into()]);
        }
        let total = self.distribution.total();
        ExperimentReport::new(config, table)
            .with_summary("v_left", self.v_left)
            .with_summary("v_right", self.v_right)
            .with_summary("theory_left", self.theory_left as f64)
            .with_summary("theory_right", self.theory_right as f64)
            .with_summary("measured_left", self.measured_left as f64)
            .with_summary("measured_right", self.measured_right as f64)
            .with_summary("origin_probability", self.distribution.get(0))
            .with_summary("mean", self.distribution.mean())
            .with_summary("variance", self.distribution.variance())
            .with_verdict(Verdict::at_most(
                "total_probability",
                (total - 1.0).abs(),
                tolerance::NORM,
            ))
    }
}

/// Distribution after `T` steps annotated with theoretical and measured
/// travelling-peak positions.
pub fn distribution_snapshot(
    init: &InitialCondition<f64>,
    params: WalkParams,
    steps: usize,
) -> Result<DistributionSnapshot> {
    require(steps >= 10, || {
        format!("distribution snapshot needs T >= 10, got {steps}")
    })?;
    let distribution = evolve(init, params, steps)?.position_distribution();
    let (v_left, v_right) = peak_velocities::<f64>(params);
    let half = steps as f64 / 2.0;
    let t = steps as i64;
    // Ties go to the larger |n|.
    let argmax = |range: &mut dyn Iterator<Item = i64>| {
        range.fold((0i64, f64::NEG_INFINITY), |best, n| {
            let p = distribution.get(n);
            if p >= best.1 {
                (n, p)
            } else {
                best
            }
        })
    };
    let (measured_right, _) = argmax(&mut (0..=t).filter(|&n| n as f64 > half));
    let (measured_left, _) = argmax(&mut (-t..=0).rev().filter(|&n| (n as f64) < -half));
    Ok(DistributionSnapshot {
        v_left,
        v_right,
        theory_left: (v_left * steps as f64).round() as i64,
        theory_right: (v_right * steps as f64).round() as i64,
        measured_left,
        measured_right,
        distribution,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariancePoint {
    pub t: usize,
    pub mean: f64,
    pub variance: f64,
}

/// Exact `E[X_t]` and `sigma^2(t)` for `t = 0..=T`.
pub fn variance_series(
    init: &InitialCondition<f64>,
    params: WalkParams,
    steps: usize,
) -> Result<Vec<VariancePoint>> {
    require(steps >= 10, || {
        format!("variance series needs T >= 10, got {steps}")
    })?;
    let mut out = Vec::with_capacity(steps + 1);
    evolve_observed(init, params, steps, |s| {
        let d = s.position_distribution();
        let mean = d.mean();
        out.push(VariancePoint {
            t: s.t(),
            mean,
            variance: d.raw_moment(2) - mean * mean,
        });
    })?;
    Ok(out)
}

/// `sigma^2 ~ c t^alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub c: f64,
    pub alpha: f64,
    pub points_used: usize,
}

/// Least squares of `ln sigma^2` on `ln t` over `t in [T/2, T]`, `T` being
/// the largest `t` in the series.
pub fn fit_power_law(series: &[(f64, f64)]) -> Result<PowerLawFit> {
    if series.len() < 10 {
        return Err(HarnessError::DegenerateSeries(format!(
            "need at least 10 points, got {}",
            series.len()
        )));
    }
    let t_max = series.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let window: Vec<(f64, f64)> = series
        .iter()
        .copied()
        .filter(|p| p.0 >= t_max / 2.0)
        .collect();
    if !window.iter().all(|p| p.0 > 0.0 && p.1 > 0.0) {
        return Err(HarnessError::DegenerateSeries(
            "fit window needs positive t and positive variance".into(),
        ));
    }
    if window.iter().all(|p| p.1 == window[0].1) {
        return Err(HarnessError::DegenerateSeries(
            "all variances are equal".into(),
        ));
    }
    let n = window.len() as f64;
    let xs: Vec<f64> = window.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = window.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx.is_nan() || sxx <= 0.0 {
        return Err(HarnessError::DegenerateSeries(
            "fit window spans a single time".into(),
        ));
    }
    let alpha = sxy / sxx;
    Ok(PowerLawFit {
        c: (my - alpha * mx).exp(),
        alpha,
        points_used: window.len(),
    })
}

/// Variance series of one walk fitted to `c t^alpha` and compared with the
/// closed-form spread coefficient when the start allows one.
#[derive(Debug, Clone, PartialEq)]
pub struct SpreadFit {
    pub tau: usize,
    pub series: Vec<VariancePoint>,
    pub fit: PowerLawFit,
    pub c_theory: Option<f64>,
}

impl SpreadFit {
    pub fn relative_error(&self) -> Option<f64> {
        self.c_theory.map(|c| (self.fit.c / c - 1.0).abs())
    }

    pub fn verdicts(&self) -> Vec<Verdict> {
        let mut v = vec![Verdict::at_most(
            "spread_exponent",
            (self.fit.alpha - 2.0).abs(),
            tolerance::SPREAD_EXPONENT,
        )];
        if let Some(rel) = self.relative_error() {
            v.push(Verdict::at_most(
                "spread_coefficient_relative",
                rel,
                tolerance::SPREAD_COEFFICIENT_RELATIVE,
            ));
        }
        v
    }

    pub fn report(&self, config: ExperimentConfig) -> ExperimentReport {
        let mut table = Table::new(&["t", "mean", "variance"]);
        for p in &self.series {
            table.push(vec![p.t.into(), p.mean.into(), p.variance.into()]);
        }
        let mut r = ExperimentReport::new(config, table)
            .with_summary("c_fit", self.fit.c)
            .with_summary("alpha_fit", self.fit.alpha)
            .with_summary("fit_points", self.fit.points_used as f64);
        if let Some(c) = self.c_theory {
            r = r.with_summary("c_theory", c);
        }
        for v in self.verdicts() {
            r.add_verdict(v);
        }
        r
    }
}

pub fn spread_fit(
    init: &InitialCondition<f64>,
    params: WalkParams,
    steps: usize,
) -> Result<SpreadFit> {
    let series = variance_series(init, params, steps)?;
    let pairs: Vec<(f64, f64)> = series
        .iter()
        .filter(|p| p.t > 0)
        .map(|p| (p.t as f64, p.variance))
        .collect();
    let fit = fit_power_law(&pairs)?;
    let c_theory = match init {
        InitialCondition::Standard { .. } => {
            Some(WeakLimitModel::new(init, params)?.spread_coefficient())
        }
        InitialCondition::General(_) => None,
    };
    Ok(SpreadFit {
        tau: params.tau(),
        series,
        fit,
        c_theory,
    })
}

/// [`spread_fit`] for several laziness factors. Each walk runs on its own
/// thread; results come back in input order.
pub fn spread_sweep(
    init: &InitialCondition<f64>,
    taus: &[usize],
    steps: usize,
) -> Result<Vec<SpreadFit>> {
    let params: Vec<WalkParams> = taus
        .iter()
        .map(|&t| WalkParams::new(t))
        .collect::<Result<_, _>>()?;
    std::thread::scope(|scope| {
        let handles: Vec<_> = params
            .iter()
            .map(|&p| scope.spawn(move || spread_fit(init, p, steps)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("spread fit worker panicked"))
            .collect()
    })
}

/// Empirical law of `X_T / T` against the weak limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionComparison {
    pub epsilon: f64,
    /// `sup |F_T(x) - F(x)|` over lattice points `x = n/T` with `|x| > epsilon`,
    /// both one-sided limits included.
    pub sup_distance: f64,
    /// `P(|X_T / T| < epsilon)`.
    pub near_mass_empirical: f64,
    /// `p_hat + int_{-epsilon}^{epsilon} f`.
    pub near_mass_limit: f64,
}

impl DistributionComparison {
    pub fn near_mass_deviation(&self) -> f64 {
        (self.near_mass_empirical - self.near_mass_limit).abs()
    }

    pub fn verdicts(&self) -> [Verdict; 2] {
        [
            Verdict::at_most("sup_distance", self.sup_distance, tolerance::SUP_DISTANCE),
            Verdict::at_most(
                "near_origin_mass",
                self.near_mass_deviation(),
                tolerance::NEAR_MASS,
            ),
        ]
    }
}

pub fn empirical_vs_weak_limit(
    init: &InitialCondition<f64>,
    params: WalkParams,
    steps: usize,
    epsilon: f64,
) -> Result<DistributionComparison> {
    let model = WeakLimitModel::new(init, params)?;
    require(steps >= 100, || {
        format!("distribution comparison needs T >= 100, got {steps}")
    })?;
    require(epsilon > 0.0 && epsilon < model.omega(), || {
        format!("epsilon must lie in (0, {}), got {epsilon}", model.omega())
    })?;
    let dist = evolve(init, params, steps)?.position_distribution();
    let t = steps as f64;
    let mut below = 0.0; // P(X <= n - 1)
    let mut sup: f64 = 0.0;
    let mut near = 0.0;
    for (n, p) in dist.iter() {
        let x = n as f64 / t;
        if x.abs() < epsilon {
            near += p;
        }
        if x.abs() > epsilon {
            // The limit law is continuous away from 0, so both one-sided
            // empirical values are compared with the same F(x).
            let f = model.cdf(x);
            sup = sup.max((below - f).abs()).max((below + p - f).abs());
        }
        below += p;
    }
    let near_limit = model.p_hat() + model.continuous_cdf(epsilon) - model.continuous_cdf(-epsilon);
    Ok(DistributionComparison {
        epsilon,
        sup_distance: sup,
        near_mass_empirical: near,
        near_mass_limit: near_limit,
    })
}

/// `max |psi_direct - psi_fourier|` over all sites and coin components.
pub fn compare_direct_vs_fourier(
    init: &InitialCondition<f64>,
    params: WalkParams,
    steps: usize,
) -> Result<f64> {
    compare_direct_vs_fourier_on_grid(init, params, steps, default_grid_size(steps))
}

/// [`compare_direct_vs_fourier`] with an explicit number of momentum points.
pub fn compare_direct_vs_fourier_on_grid(
    init: &InitialCondition<f64>,
    params: WalkParams,
    steps: usize,
    grid: usize,
) -> Result<f64> {
    let fourier = propagate_fourier(init, params, steps, grid)?;
    let direct = evolve(init, params, steps)?;
    Ok(direct.max_deviation(&fourier))
}

/// Tabulated weak-limit density with its atom and closure check.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTable {
    pub omega: f64,
    pub p_hat: f64,
    pub continuous_mass: f64,
    pub spread_coefficient: f64,
    /// `(x, f(x))` on the midpoints of `points` equal cells of `(-omega, omega)`.
    pub rows: Vec<(f64, f64)>,
}

impl DensityTable {
    pub fn closure_deviation(&self) -> f64 {
        (self.p_hat + self.continuous_mass - 1.0).abs()
    }

    pub fn report(&self, config: ExperimentConfig) -> ExperimentReport {
        let mut table = Table::new(&["x", "density"]);
        for &(x, f) in &self.rows {
            table.push(vec![x.into(), f.into()]);
        }
        ExperimentReport::new(config, table)
            .with_summary("omega", self.omega)
            .with_summary("p_hat", self.p_hat)
            .with_summary("continuous_mass", self.continuous_mass)
            .with_summary("spread_coefficient", self.spread_coefficient)
            .with_verdict(Verdict::at_most(
                "closure",
                self.closure_deviation(),
                tolerance::WEAK_LIMIT,
            ))
    }
}

pub fn density_table(
    init: &InitialCondition<f64>,
    params: WalkParams,
    points: usize,
    quadrature_nodes: Option<usize>,
) -> Result<DensityTable> {
    require(points >= 1, || {
        "density table needs at least one point".into()
    })?;
    let model = WeakLimitModel::with_nodes(
        init,
        params,
        quadrature_nodes.unwrap_or(DEFAULT_QUADRATURE_NODES),
    )?;
    let w = model.omega();
    let rows = (0..points)
        .map(|i| {
            let x = -w + 2.0 * w * (i as f64 + 0.5) / points as f64;
            model.density(x).map(|f| (x, f))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DensityTable {
        omega: w,
        p_hat: model.p_hat(),
        continuous_mass: model.continuous_moment(0)?,
        spread_coefficient: model.spread_coefficient(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lqw_core::C64;

    fn params(tau: usize) -> WalkParams {
        WalkParams::new(tau).unwrap()
    }

    #[test]
    fn single_step_series_has_no_verdict() {
        let s = localization_series(&InitialCondition::symmetric(), params(1), 1).unwrap();
        assert_eq!(s.points.len(), 1);
        assert!(s.window.is_none());
        let cfg = ExperimentConfig::new("localize", 1, &InitialCondition::symmetric(), 1);
        assert!(s.report(cfg).verdicts.is_empty());
    }

    #[test]
    fn window_covers_last_tenth() {
        let s = localization_series(&InitialCondition::symmetric(), params(2), 95).unwrap();
        let w = s.window.unwrap();
        assert_eq!((w.first, w.last), (86, 95));
    }

    #[test]
    fn synthetic_power_law_recovered() {
        let series: Vec<(f64, f64)> = (1..=100)
            .map(|t| (t as f64, 0.5 * (t as f64).powi(2)))
            .collect();
        let fit = fit_power_law(&series).unwrap();
        assert!((fit.c - 0.5).abs() < 1e-10);
        assert!((fit.alpha - 2.0).abs() < 1e-10);
        assert_eq!(fit.points_used, 51);
    }

    #[test]
    fn degenerate_series_rejected() {
        let flat: Vec<(f64, f64)> = (1..=20).map(|t| (t as f64, 3.0)).collect();
        assert!(matches!(
            fit_power_law(&flat),
            Err(HarnessError::DegenerateSeries(_))
        ));
        let short: Vec<(f64, f64)> = (1..=5).map(|t| (t as f64, t as f64)).collect();
        assert!(matches!(
            fit_power_law(&short),
            Err(HarnessError::DegenerateSeries(_))
        ));
    }

    #[test]
    fn variance_starts_at_zero_and_respects_light_cone() {
        let init = InitialCondition::standard(C64::new(0.6, 0.0), C64::new(0.0, 0.8)).unwrap();
        let s = variance_series(&init, params(3), 40).unwrap();
        assert_eq!(s[0].variance, 0.0);
        for p in &s {
            assert!(p.variance <= (p.t * p.t) as f64 + 1e-9);
        }
    }

    #[test]
    fn direct_vs_fourier_zero_steps_is_exact() {
        assert_eq!(
            compare_direct_vs_fourier(&InitialCondition::symmetric(), params(4), 0).unwrap(),
            0.0
        );
    }

    #[test]
    fn invalid_configs() {
        let init = InitialCondition::symmetric();
        assert!(distribution_snapshot(&init, params(1), 9).is_err());
        assert!(variance_series(&init, params(1), 5).is_err());
        assert!(localization_series(&init, params(1), 0).is_err());
        assert!(empirical_vs_weak_limit(&init, params(1), 50, 0.05).is_err());
        assert!(empirical_vs_weak_limit(&init, params(1), 200, 0.9).is_err());
        let general = InitialCondition::basis(2, params(1)).unwrap();
        assert!(matches!(
            empirical_vs_weak_limit(&general, params(1), 200, 0.05),
            Err(HarnessError::Core(
                lqw_core::LqwError::UnsupportedInitialState
            ))
        ));
    }

    #[test]
    fn density_table_closes() {
        let t = density_table(&InitialCondition::symmetric(), params(2), 11, None).unwrap();
        assert_eq!(t.rows.len(), 11);
        assert!(t.rows[5].0.abs() < 1e-15);
        assert!(t.closure_deviation() < 1e-6);
    }
}
