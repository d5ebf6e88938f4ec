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

//! Library side of the `lqw` binary: argument model, complex-literal parser
//! and experiment dispatch.

pub mod complex;
pub mod config;
pub mod error;
pub mod run;

pub use complex::{format_complex, parse_complex, ParseComplexError};
pub use config::{Cli, CliConfig, Command, CommonArgs, Experiment, Format};
pub use error::CliError;
pub use run::{csv_bytes, execute, exit_code, json_bytes, run, Outcome};
