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

use std::process::ExitCode;

use clap::Parser;
use lqw_cli::{exit_code, run, Cli, CliConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let outcome = CliConfig::from_command(&cli.command).and_then(|config| run(&config));
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code::USAGE as u8);
        }
    };
    for v in &outcome.report.verdicts {
        let tag = if v.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {}: {:e} (tolerance {:e})",
            v.name, v.measured, v.tolerance
        );
    }
    for path in &outcome.written {
        println!("wrote {}", path.display());
    }
    ExitCode::from(outcome.exit_code() as u8)
}
