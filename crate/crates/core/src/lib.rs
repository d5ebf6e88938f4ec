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

//! Lackadaisical quantum walks on the integer line.
//!
//! Each vertex carries `tau` self-loops in addition to its two edges, so the
//! coin space has `delta = tau + 2` dimensions and the coin is the Grover
//! reflection. The crate provides
//!
//! * [`walk`]: exact position-space evolution,
//! * [`spectral`]: the momentum-space step operator, its closed-form
//!   eigen-system and a Fourier-grid propagator that reproduces [`walk`]
//!   independently,
//! * [`analytics`]: long-time closed forms (origin localization, peak
//!   velocities, weak-limit density, spread coefficient),
//! * [`quadrature`]: the Gauss-Legendre rules backing the analytic integrals.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`.

pub mod analytics;
pub mod error;
pub mod matrix;
pub mod quadrature;
pub mod scalar;
pub mod spectral;
pub mod walk;

pub use num_complex::Complex;

pub use analytics::{
    f3_by_projector_quadrature, f3_matrix, limit_moment, limiting_origin_state,
    localization_probability_origin, origin_localization_closed_form, peak_velocities,
    phase_derivative, pi_projector, spread_coefficient, total_localization, weak_limit_density,
    Branch, Parity, ThetaConstants, WeakLimitModel,
};
pub use error::{LqwError, Result};
pub use matrix::{CMatrix, SquareMatrix};
pub use quadrature::{GaussLegendre, DEFAULT_QUADRATURE_NODES};
pub use scalar::Real;
pub use spectral::{
    default_grid_size, eigen_system, momentum_operator, pi_eigenspace_basis, propagate_fourier,
    stationary_eigenvector, EigenSystem, MomentumPoint,
};
pub use walk::{
    apply_step, evolve, evolve_observed, grover_coin, initial_state, position_distribution,
    CoinState, InitialCondition, PositionDistribution, WalkParams, WalkerState,
};

pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;

pub type CoinState64 = CoinState<f64>;
pub type InitialCondition64 = InitialCondition<f64>;
pub type WalkerState64 = WalkerState<f64>;
pub type PositionDistribution64 = PositionDistribution<f64>;
pub type EigenSystem64 = EigenSystem<f64>;
pub type ThetaConstants64 = ThetaConstants<f64>;
pub type WeakLimitModel64 = WeakLimitModel<f64>;
pub type CMatrix64 = CMatrix<f64>;

pub type CoinState32 = CoinState<f32>;
pub type InitialCondition32 = InitialCondition<f32>;
pub type WalkerState32 = WalkerState<f32>;
pub type WeakLimitModel32 = WeakLimitModel<f32>;
