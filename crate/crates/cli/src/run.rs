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

//! Dispatch of a validated [`CliConfig`] and artifact serialization.

use std::fs;
use std::path::{Path, PathBuf};

use lqw_harness::{
    density_table, distribution_snapshot, localization_series, run_verification, spread_fit,
    ExperimentConfig, ExperimentReport, Table, VerifyOptions,
};

use crate::config::{CliConfig, Experiment};
use crate::error::CliError;

/// Process exit status for each outcome.
pub mod exit_code {
    pub const PASS: i32 = 0;
    pub const TOLERANCE_FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
}

#[derive(Debug)]
pub struct Outcome {
    pub report: ExperimentReport,
    pub written: Vec<PathBuf>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.all_passed {
            exit_code::PASS
        } else {
            exit_code::TOLERANCE_FAILURE
        }
    }
}

pub fn execute(config: &CliConfig) -> Result<ExperimentReport, CliError> {
    let name = config.experiment.name();
    let mut echo = ExperimentConfig::new(name, config.params.tau(), &config.init, config.steps);
    let report = match config.experiment {
        Experiment::Simulate => {
            distribution_snapshot(&config.init, config.params, config.steps)?.report(echo)
        }
        Experiment::Localize => {
            localization_series(&config.init, config.params, config.steps)?.report(echo)
        }
        Experiment::Variance => spread_fit(&config.init, config.params, config.steps)?.report(echo),
        Experiment::Density => {
            echo.quadrature_nodes = Some(config.quadrature_nodes);
            echo.points = Some(config.points);
            density_table(
                &config.init,
                config.params,
                config.points,
                Some(config.quadrature_nodes),
            )?
            .report(echo)
        }
        Experiment::Verify => run_verification(
            config.params,
            VerifyOptions {
                steps: config.steps,
                quadrature_nodes: config.quadrature_nodes,
                grid: config.grid,
            },
        )?,
    };
    Ok(report)
}

pub fn csv_bytes(table: &Table) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|c| c.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Io {
        path: PathBuf::from("<memory>"),
        source: e.into_error(),
    })
}

pub fn json_bytes(report: &ExperimentReport) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(report)?;
    out.push(b'\n');
    Ok(out)
}

/// Writes through a sibling temporary file so a failed write never leaves a
/// truncated artifact behind.
fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension("partial");
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    fs::write(&tmp, bytes).map_err(io)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

/// Runs the experiment and, only once everything has been computed and
/// encoded, writes `<out>/<subcommand>.csv` and `<out>/<subcommand>.json`.
pub fn run(config: &CliConfig) -> Result<Outcome, CliError> {
    let report = execute(config)?;
    let name = config.experiment.name();
    let mut artifacts = Vec::new();
    if config.write_csv {
        artifacts.push((
            config.out.join(format!("{name}.csv")),
            csv_bytes(&report.table)?,
        ));
    }
    if config.write_json {
        artifacts.push((
            config.out.join(format!("{name}.json")),
            json_bytes(&report)?,
        ));
    }
    fs::create_dir_all(&config.out).map_err(|source| CliError::Io {
        path: config.out.clone(),
        source,
    })?;
    let mut written = Vec::new();
    for (path, bytes) in artifacts {
        write_atomically(&path, &bytes)?;
        written.push(path);
    }
    Ok(Outcome { report, written })
}
