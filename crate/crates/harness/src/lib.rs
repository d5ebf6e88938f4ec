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

//! Experiments and verdicts for the lazy quantum walk: each run pairs a
//! direct simulation with the corresponding closed form and reports the
//! deviation against a fixed tolerance.

pub mod error;
pub mod experiments;
pub mod report;
pub mod verify;

pub use error::{HarnessError, Result};
pub use experiments::{
    compare_direct_vs_fourier, compare_direct_vs_fourier_on_grid, density_table,
    distribution_snapshot, empirical_vs_weak_limit, fit_power_law, localization_series, spread_fit,
    spread_sweep, tolerance, variance_series, DensityTable, DistributionComparison,
    DistributionSnapshot, LocalizationSeries, PowerLawFit, SpreadFit, VariancePoint, WindowSummary,
    DEFAULT_EPSILON,
};
pub use report::{
    Cell, ComplexValue, ExperimentConfig, ExperimentReport, InitialStateEcho, Table, Verdict,
    SCHEMA_VERSION,
};
pub use verify::{run_verification, verification_verdicts, VerifyOptions, ORACLE_STEPS_CAP};
