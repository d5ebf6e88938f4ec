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

//! Report types shared by every experiment.

use std::collections::BTreeMap;
use std::fmt;

use lqw_core::{InitialCondition, C64};
use serde::Serialize;

/// Version of the JSON layout produced by [`ExperimentReport`].
pub const SCHEMA_VERSION: u32 = 1;

/// Pass/fail judgement of one measured deviation against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Verdict {
    /// Passes when `measured <= tolerance` (NaN fails).
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            passed: measured <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexValue {
    fn from(c: C64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialStateEcho {
    Standard {
        alpha: ComplexValue,
        beta: ComplexValue,
    },
    General {
        coin: Vec<ComplexValue>,
    },
}

impl From<&InitialCondition<f64>> for InitialStateEcho {
    fn from(init: &InitialCondition<f64>) -> Self {
        match init {
            InitialCondition::Standard { alpha, beta } => Self::Standard {
                alpha: (*alpha).into(),
                beta: (*beta).into(),
            },
            InitialCondition::General(coin) => Self::General {
                coin: coin.iter().map(|&c| c.into()).collect(),
            },
        }
    }
}

/// Echo of the configuration an experiment ran with.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub tau: usize,
    pub initial_state: InitialStateEcho,
    pub steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(
        experiment: impl Into<String>,
        tau: usize,
        init: &InitialCondition<f64>,
        steps: usize,
    ) -> Self {
        Self {
            experiment: experiment.into(),
            tau,
            initial_state: init.into(),
            steps,
            grid: None,
            quadrature_nodes: None,
            epsilon: None,
            points: None,
        }
    }
}

/// Table cell; integers stay integers in both CSV and JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl fmt::Display for Cell {
    /// Floats use the shortest representation that parses back to the same
    /// value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => write!(f, "{v:?}"),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Text(v) => f.write_str(v),
        }
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything an experiment produced: config echo, tabular payload, scalar
/// summary values and verdicts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub summary: BTreeMap<String, f64>,
    pub verdicts: Vec<Verdict>,
    pub all_passed: bool,
    pub table: Table,
}

impl ExperimentReport {
    pub fn new(config: ExperimentConfig, table: Table) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            config,
            summary: BTreeMap::new(),
            verdicts: Vec::new(),
            all_passed: true,
            table,
        }
    }

    pub fn with_summary(mut self, key: &str, value: f64) -> Self {
        self.summary.insert(key.to_string(), value);
        self
    }

    pub fn add_verdict(&mut self, verdict: Verdict) {
        self.all_passed &= verdict.passed;
        self.verdicts.push(verdict);
    }

    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.add_verdict(verdict);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_fold_into_all_passed() {
        let init = InitialCondition::<f64>::symmetric();
        let mut r =
            ExperimentReport::new(ExperimentConfig::new("x", 1, &init, 3), Table::new(&["a"]));
        assert!(r.all_passed);
        r.add_verdict(Verdict::at_most("ok", 0.5, 1.0));
        assert!(r.all_passed);
        r.add_verdict(Verdict::at_most("nan", f64::NAN, 1.0));
        assert!(!r.all_passed);
        assert_eq!(r.verdicts[1].tolerance, 1.0);
    }
}
