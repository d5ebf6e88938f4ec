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

use thiserror::Error;

pub type Result<T, E = LqwError> = std::result::Result<T, E>;

/// Errors raised by the walk, spectral and analytic routines.
///
/// Numeric payloads are stored as `f64` so the error type is independent of
/// the scalar the caller computes in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LqwError {
    #[error("laziness factor must be positive (tau > 0), got tau = {tau}")]
    InvalidLaziness { tau: usize },

    #[error("initial coin state is not normalized: squared norm {norm_sqr} differs from 1 by more than {tolerance:e}")]
    NotNormalized { norm_sqr: f64, tolerance: f64 },

    #[error("coin vector has {found} components, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("momentum k = {k} lies outside (-pi, pi]")]
    MomentumOutOfRange { k: f64 },

    #[error("momentum k = {k} is degenerate: the +/-theta branches merge with the omega = pi eigenspace")]
    DegenerateMomentum { k: f64 },

    #[error("Fourier grid of {grid} points cannot resolve {required} sites (need grid >= 2t+1)")]
    GridTooSmall { grid: usize, required: usize },

    #[error("phase derivative is singular at k = {k}; use the peak-velocity limit instead")]
    SingularPoint { k: f64 },

    #[error("x = {x} is outside the open support (-{omega}, {omega}) of the weak-limit density")]
    OutsideSupport { x: f64, omega: f64 },

    #[error("weak-limit quantities are only defined for initial states alpha|1> + beta|2>")]
    UnsupportedInitialState,

    #[error("quadrature did not converge: estimate {estimate}, refinement change {change} exceeds {tolerance}")]
    QuadratureNonConvergence {
        estimate: f64,
        change: f64,
        tolerance: f64,
    },
}
