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

//! Self-consistency suite behind `lqw verify`.

use lqw_core::{
    default_grid_size, eigen_system, evolve_observed, f3_by_projector_quadrature, f3_matrix,
    grover_coin, momentum_operator, peak_velocities, CMatrix, GaussLegendre, InitialCondition,
    ThetaConstants, WalkParams, WeakLimitModel,
};

use crate::error::Result;
use crate::experiments::{compare_direct_vs_fourier_on_grid, localization_series, tolerance};
use crate::report::{ExperimentConfig, ExperimentReport, Table, Verdict};

/// Momentum samples used for the operator checks. Midpoints avoid `k = 0`,
/// where the `e^{±i theta}` pair degenerates; `k = pi` is added separately.
const MOMENTUM_SAMPLES: usize = 64;

/// Longest walk compared against the Fourier oracle.
pub const ORACLE_STEPS_CAP: usize = 100;

/// Knobs of the verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub steps: usize,
    pub quadrature_nodes: usize,
    /// Fourier grid for the oracle comparison; defaults to
    /// [`default_grid_size`] of the compared walk length.
    pub grid: Option<usize>,
}

impl VerifyOptions {
    pub fn new(steps: usize) -> Self {
        Self {
            steps,
            quadrature_nodes: lqw_core::DEFAULT_QUADRATURE_NODES,
            grid: None,
        }
    }
}

pub fn verification_verdicts(params: WalkParams, options: VerifyOptions) -> Result<Vec<Verdict>> {
    let VerifyOptions {
        steps,
        quadrature_nodes,
        grid,
    } = options;
    let init = InitialCondition::<f64>::symmetric();
    let mut out = Vec::new();

    let mut norm_defect: f64 = 0.0;
    let mut cone_defect: f64 = 0.0;
    let mut variance_excess: f64 = 0.0;
    let mut symmetry_defect: f64 = 0.0;
    evolve_observed(&init, params, steps, |s| {
        let t = s.t() as i64;
        norm_defect = norm_defect.max((s.norm_sqr() - 1.0).abs());
        let support = s.support();
        if *support.start() != -t || *support.end() != t {
            cone_defect = f64::INFINITY;
        }
        let d = s.position_distribution();
        variance_excess = variance_excess.max(d.variance() - (t * t) as f64);
        for n in 1..=t {
            symmetry_defect = symmetry_defect.max((d.get(n) - d.get(-n)).abs());
        }
    })?;
    out.push(Verdict::at_most(
        "norm_conservation",
        norm_defect,
        tolerance::NORM,
    ));
    out.push(Verdict::at_most("light_cone", cone_defect, 0.0));
    out.push(Verdict::at_most(
        "variance_below_t_squared",
        variance_excess.max(0.0),
        1e-9,
    ));
    out.push(Verdict::at_most(
        "mirror_symmetry",
        symmetry_defect,
        tolerance::NORM,
    ));

    let g = grover_coin::<f64>(params);
    let id = CMatrix::<f64>::identity(params.delta());
    out.push(Verdict::at_most(
        "coin_involution",
        g.matmul(&g).max_abs_diff(&id),
        tolerance::COIN_ALGEBRA,
    ));
    out.push(Verdict::at_most(
        "coin_unitarity",
        g.unitarity_defect(),
        tolerance::COIN_ALGEBRA,
    ));

    let ks = (0..MOMENTUM_SAMPLES)
        .map(|j| {
            -std::f64::consts::PI
                + std::f64::consts::TAU * (j as f64 + 0.5) / MOMENTUM_SAMPLES as f64
        })
        .chain(std::iter::once(std::f64::consts::PI));
    let mut unitarity: f64 = 0.0;
    let mut residual: f64 = 0.0;
    for k in ks {
        unitarity = unitarity.max(momentum_operator::<f64>(params, k).unitarity_defect());
        residual = residual.max(eigen_system::<f64>(params, k)?.max_residual(params));
    }
    out.push(Verdict::at_most(
        "momentum_operator_unitarity",
        unitarity,
        tolerance::COIN_ALGEBRA,
    ));
    out.push(Verdict::at_most(
        "eigen_residual",
        residual,
        tolerance::EIGEN_RESIDUAL,
    ));

    let oracle_steps = steps.min(ORACLE_STEPS_CAP);
    let grid = grid.unwrap_or_else(|| default_grid_size(oracle_steps));
    let oracle = compare_direct_vs_fourier_on_grid(&init, params, oracle_steps, grid)?;
    out.push(Verdict::at_most(
        "direct_vs_fourier",
        oracle,
        tolerance::ORACLE,
    ));

    let rule = GaussLegendre::<f64>::new(quadrature_nodes);
    let closed = ThetaConstants::<f64>::new(params);
    let quad = ThetaConstants::from_momentum_quadrature(params, &rule);
    let theta_dev = (closed.theta1 - quad.theta1)
        .abs()
        .max((closed.theta2 - quad.theta2).abs())
        .max((closed.theta3 - quad.theta3).abs());
    out.push(Verdict::at_most(
        "theta_constants",
        theta_dev,
        tolerance::THETA_QUADRATURE,
    ));
    let f3_dev = f3_matrix::<f64>(params)
        .to_complex()
        .max_abs_diff(&f3_by_projector_quadrature(params, &rule));
    out.push(Verdict::at_most(
        "stationary_projector_average",
        f3_dev,
        tolerance::THETA_QUADRATURE,
    ));

    let model = WeakLimitModel::with_nodes(&init, params, quadrature_nodes)?;
    let closure = (model.p_hat() + model.continuous_moment(0)? - 1.0).abs();
    out.push(Verdict::at_most(
        "weak_limit_closure",
        closure,
        tolerance::WEAK_LIMIT,
    ));
    let spread = (model.spread_coefficient() - model.spread_coefficient_by_moments()?).abs();
    out.push(Verdict::at_most(
        "spread_coefficient_consistency",
        spread,
        tolerance::WEAK_LIMIT,
    ));
    let (_, v_right) = peak_velocities::<f64>(params);
    out.push(Verdict::at_most(
        "peak_velocity_is_support_edge",
        (v_right - model.omega()).abs(),
        0.0,
    ));

    if steps >= 10 {
        let w = localization_series(&init, params, steps)?
            .window
            .expect("window exists for T >= 10");
        out.push(Verdict::at_most(
            "localization_window",
            w.deviation,
            tolerance::LOCALIZATION_WINDOW,
        ));
    }
    Ok(out)
}

/// Runs [`verification_verdicts`] and tabulates them.
pub fn run_verification(params: WalkParams, options: VerifyOptions) -> Result<ExperimentReport> {
    let verdicts = verification_verdicts(params, options)?;
    let mut config = ExperimentConfig::new(
        "verify",
        params.tau(),
        &InitialCondition::symmetric(),
        options.steps,
    );
    config.quadrature_nodes = Some(options.quadrature_nodes);
    config.grid = options.grid;
    let mut table = Table::new(&["check", "measured", "tolerance", "passed"]);
    for v in &verdicts {
        table.push(vec![
            v.name.clone().into(),
            v.measured.into(),
            v.tolerance.into(),
            v.passed.into(),
        ]);
    }
    let mut report = ExperimentReport::new(config, table);
    for v in verdicts {
        report.add_verdict(v);
    }
    Ok(report)
}
