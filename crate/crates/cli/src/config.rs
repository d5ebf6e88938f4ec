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

//! Command-line surface and its validation into a [`CliConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lqw_core::{InitialCondition, WalkParams, DEFAULT_QUADRATURE_NODES};

use crate::complex::parse_complex;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "lqw",
    version,
    about = "Lazy quantum walks on the line: simulation and asymptotics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Position distribution after T steps with travelling-peak annotations.
    Simulate(#[command(flatten)] CommonArgs),
    /// P(X_t = 0) for t = 1..T against its limiting value.
    Localize(#[command(flatten)] CommonArgs),
    /// Tabulated weak-limit density with atom mass and support edge.
    Density(#[command(flatten)] CommonArgs),
    /// Variance series with a c t^alpha fit.
    Variance(#[command(flatten)] CommonArgs),
    /// Full self-consistency suite.
    Verify(#[command(flatten)] CommonArgs),
}

impl Command {
    fn args(&self) -> &CommonArgs {
        match self {
            Command::Simulate(a)
            | Command::Localize(a)
            | Command::Density(a)
            | Command::Variance(a)
            | Command::Verify(a) => a,
        }
    }

    pub fn kind(&self) -> Experiment {
        match self {
            Command::Simulate(_) => Experiment::Simulate,
            Command::Localize(_) => Experiment::Localize,
            Command::Density(_) => Experiment::Density,
            Command::Variance(_) => Experiment::Variance,
            Command::Verify(_) => Experiment::Verify,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct CommonArgs {
    /// Number of self-loops per site (tau > 0).
    #[arg(long)]
    pub tau: usize,
    /// Amplitude on the left-moving coin state.
    #[arg(long, default_value = "1/sqrt(2)", allow_hyphen_values = true)]
    pub alpha: String,
    /// Amplitude on the right-moving coin state.
    #[arg(long, default_value = "i/sqrt(2)", allow_hyphen_values = true)]
    pub beta: String,
    /// Number of walk steps T (not used by `density`).
    #[arg(long)]
    pub steps: Option<usize>,
    /// Momentum grid size for the Fourier cross-check (`verify`).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Gauss-Legendre node count for weak-limit integrals.
    #[arg(long, env = "LQW_QUAD_NODES")]
    pub nodes: Option<usize>,
    /// Number of density samples (`density`).
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    /// Output directory for `<subcommand>.csv` and `<subcommand>.json`.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Write only one of the two artifacts.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Simulate,
    Localize,
    Density,
    Variance,
    Verify,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Simulate => "simulate",
            Experiment::Localize => "localize",
            Experiment::Density => "density",
            Experiment::Variance => "variance",
            Experiment::Verify => "verify",
        }
    }
}

/// Validated invocation: every field is in range and the initial state is
/// normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub experiment: Experiment,
    pub params: WalkParams,
    pub init: InitialCondition<f64>,
    pub steps: usize,
    pub grid: Option<usize>,
    pub quadrature_nodes: usize,
    pub points: usize,
    pub out: PathBuf,
    pub write_csv: bool,
    pub write_json: bool,
}

impl CliConfig {
    pub fn from_command(command: &Command) -> Result<Self, CliError> {
        let a = command.args();
        let experiment = command.kind();
        let params = WalkParams::new(a.tau).map_err(|e| CliError::Usage(e.to_string()))?;
        let alpha =
            parse_complex(&a.alpha).map_err(|e| CliError::Usage(format!("--alpha: {e}")))?;
        let beta = parse_complex(&a.beta).map_err(|e| CliError::Usage(format!("--beta: {e}")))?;
        let init =
            InitialCondition::standard(alpha, beta).map_err(|e| CliError::Usage(e.to_string()))?;
        let steps = match (experiment, a.steps) {
            (Experiment::Density, s) => s.unwrap_or(0),
            (_, Some(s)) => s,
            (_, None) => {
                return Err(CliError::Usage(format!(
                    "{} requires --steps",
                    experiment.name()
                )))
            }
        };
        let min_steps = match experiment {
            Experiment::Density => 0,
            Experiment::Localize | Experiment::Verify => 1,
            Experiment::Simulate | Experiment::Variance => 10,
        };
        if steps < min_steps {
            return Err(CliError::Usage(format!(
                "{} requires --steps >= {min_steps}, got {steps}",
                experiment.name()
            )));
        }
        let quadrature_nodes = a.nodes.unwrap_or(DEFAULT_QUADRATURE_NODES);
        if quadrature_nodes < 2 {
            return Err(CliError::Usage(format!(
                "--nodes must be at least 2, got {quadrature_nodes}"
            )));
        }
        if let Some(g) = a.grid {
            let required = 2 * steps.min(lqw_harness::ORACLE_STEPS_CAP) + 1;
            if g < required {
                return Err(CliError::Usage(format!(
                    "--grid {g} is too small, need at least {required}"
                )));
            }
        }
        if a.points == 0 {
            return Err(CliError::Usage("--points must be positive".into()));
        }
        Ok(Self {
            experiment,
            params,
            init,
            steps,
            grid: a.grid,
            quadrature_nodes,
            points: a.points,
            out: a.out.clone(),
            write_csv: a.format != Some(Format::Json),
            write_json: a.format != Some(Format::Csv),
        })
    }
}
