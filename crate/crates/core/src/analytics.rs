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

//! Closed-form long-time asymptotics of the walk.
//!
//! Everything here is driven by the stationary (phase 0) eigenvector of
//! `U_k`: its momentum average `F_3` fixes the limiting amplitude at the
//! origin, and together with the `+/-theta` branches it fixes the weak limit
//! of `X_t / t`.

use std::sync::OnceLock;

use num_complex::Complex;

use crate::error::{LqwError, Result};
use crate::matrix::{CMatrix, SquareMatrix};
use crate::quadrature::{GaussLegendre, DEFAULT_QUADRATURE_NODES};
use crate::scalar::Real;
use crate::spectral::{pi_eigenspace_basis, stationary_eigenvector};
use crate::walk::{CoinState, InitialCondition, WalkParams};

/// The three momentum integrals of the stationary projector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaConstants<T> {
    /// `int N_3`, also `int N_3 kappa_1` and `int N_3 kappa_2`.
    pub theta1: T,
    /// `int N_3 kappa_1 kappa_2`.
    pub theta2: T,
    /// `int N_3 kappa_1^2`.
    pub theta3: T,
}

impl<T: Real> ThetaConstants<T> {
    pub fn new(params: WalkParams) -> Self {
        let tau = params.tau_as::<T>();
        let two = T::lit(2.0);
        let four = T::lit(4.0);
        let s = (two * tau + four).sqrt();
        Self {
            theta1: T::one() / tau - s / (tau * (tau + two)),
            theta2: s / (two * tau + four),
            theta3: two / tau - (tau + four) * s / (two * tau * (tau + two)),
        }
    }

    /// Evaluates the defining integrals `int_{-pi}^{pi} dk/2pi (...)` with
    /// `kappa_1 = 2/(1+e^{-ik})`, `kappa_2 = 2/(1+e^{ik})` and
    /// `N_3 = 1/(|kappa_1|^2 + |kappa_2|^2 + tau)` taken literally.
    ///
    /// Returns the real parts; the imaginary parts vanish by symmetry.
    pub fn from_momentum_quadrature(params: WalkParams, rule: &GaussLegendre<T>) -> Self {
        let tau = params.tau_as::<T>();
        let one = Complex::new(T::one(), T::zero());
        let two = Complex::new(T::lit(2.0), T::zero());
        let integrals = |select: fn(T, Complex<T>, Complex<T>) -> Complex<T>| {
            rule.integrate(-T::PI(), T::PI(), |k| {
                let k1 = two / (one + Complex::from_polar(T::one(), -k));
                let k2 = two / (one + Complex::from_polar(T::one(), k));
                let n3 = T::one() / (k1.norm_sqr() + k2.norm_sqr() + tau);
                select(n3, k1, k2).re
            }) / T::TAU()
        };
        Self {
            theta1: integrals(|n, _, _| Complex::new(n, T::zero())),
            theta2: integrals(|n, a, b| a * b * n),
            theta3: integrals(|n, a, _| a * a * n),
        }
    }
}

/// `F_3 = int dk/2pi |lambda_3><lambda_3|` in closed form.
pub fn f3_matrix<T: Real>(params: WalkParams) -> SquareMatrix<T> {
    let th = ThetaConstants::<T>::new(params);
    SquareMatrix::from_fn(params.delta(), |r, c| match (r, c) {
        (0, 0) | (1, 1) => th.theta2,
        (0, 1) | (1, 0) => th.theta3,
        _ => th.theta1,
    })
}

/// `F_3` as the quadrature of the stationary projector built from the
/// eigenvectors of `U_k`.
pub fn f3_by_projector_quadrature<T: Real>(
    params: WalkParams,
    rule: &GaussLegendre<T>,
) -> CMatrix<T> {
    let d = params.delta();
    let mut acc = CMatrix::<T>::zeros(d);
    let half = T::PI();
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let v = stationary_eigenvector(params, half * x);
        for r in 0..d {
            for c in 0..d {
                acc[(r, c)] += v[r] * v[c].conj() * w;
            }
        }
    }
    // dk = pi du; the 1/2pi prefactor leaves 1/2.
    let scale = T::lit(0.5);
    acc.map(|e| e * scale)
}

/// `sum_{j >= 4} F_j`: the projector onto the `k`-independent phase-`pi`
/// eigenspace.
pub fn pi_projector<T: Real>(params: WalkParams) -> CMatrix<T> {
    let d = params.delta();
    let mut acc = CMatrix::<T>::zeros(d);
    for v in pi_eigenspace_basis::<T>(params) {
        for r in 0..d {
            for c in 0..d {
                acc[(r, c)] += v[r] * v[c].conj();
            }
        }
    }
    acc
}

/// Parity of the step count. The phase-`pi` contribution at the origin
/// alternates sign with `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(t: usize) -> Self {
        if t.is_multiple_of(2) {
            Self::Even
        } else {
            Self::Odd
        }
    }

    fn sign<T: Real>(self) -> T {
        match self {
            Self::Even => T::one(),
            Self::Odd => -T::one(),
        }
    }
}

/// Limit of the coin amplitudes at the origin along times of the given
/// parity: `[F_3 + (+/-1) sum_{j>=4} F_j] psi~(0)`.
pub fn limiting_origin_state<T: Real>(
    init: &InitialCondition<T>,
    params: WalkParams,
    parity: Parity,
) -> Result<CoinState<T>> {
    init.check_normalized()?;
    let a = init.coin_vector(params)?;
    let f3 = f3_matrix::<T>(params).to_complex();
    let pi = pi_projector::<T>(params);
    let s = parity.sign::<T>();
    let d = params.delta();
    let map = CMatrix::from_fn(d, |r, c| f3[(r, c)] + pi[(r, c)] * s);
    CoinState::new(map.mul_vec(a.amplitudes()), params)
}

/// Limiting `P(X_t = 0)` along times of the given parity.
pub fn localization_probability_origin<T: Real>(
    init: &InitialCondition<T>,
    params: WalkParams,
    parity: Parity,
) -> Result<T> {
    Ok(limiting_origin_state(init, params, parity)?.norm_sqr())
}

/// `2 (tau + 4 - 2 sqrt(2 tau + 4)) / tau^2`, the origin localization
/// probability shared by every `alpha|1> + beta|2>` start.
pub fn origin_localization_closed_form<T: Real>(params: WalkParams) -> T {
    let tau = params.tau_as::<T>();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    two * (tau + four - two * (two * tau + four).sqrt()) / (tau * tau)
}

/// `(v_left, v_right) = (-sqrt(tau/(tau+2)), sqrt(tau/(tau+2)))`.
pub fn peak_velocities<T: Real>(params: WalkParams) -> (T, T) {
    let tau = params.tau_as::<T>();
    let v = (tau / (tau + T::lit(2.0))).sqrt();
    (-v, v)
}

/// The two moving eigenphase branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `omega_1 = theta`; carries the left-travelling peak.
    Theta,
    /// `omega_2 = -theta`; carries the right-travelling peak.
    MinusTheta,
}

/// `d omega / dk` on the chosen branch.
///
/// `d theta/dk = -tau sin k / sqrt(tau (1 - cos k)(tau cos k + tau + 4))`,
/// whose `k -> 0+` limit is the left peak velocity.
pub fn phase_derivative<T: Real>(params: WalkParams, k: T, branch: Branch) -> Result<T> {
    if !(k > -T::PI() && k <= T::PI()) {
        return Err(LqwError::MomentumOutOfRange {
            k: k.to_f64().unwrap_or(f64::NAN),
        });
    }
    if k.is_zero() {
        return Err(LqwError::SingularPoint { k: 0.0 });
    }
    let tau = params.tau_as::<T>();
    let sh = (k / T::lit(2.0)).sin();
    let one_minus_cos = T::lit(2.0) * sh * sh;
    let mag = tau * k.sin() / (tau * one_minus_cos * (tau * k.cos() + tau + T::lit(4.0))).sqrt();
    Ok(match branch {
        Branch::Theta => -mag,
        Branch::MinusTheta => mag,
    })
}

/// Weak limit of `X_t / t` for a start `alpha|1> + beta|2>`: an atom of mass
/// `p_hat` at 0 plus the density `f` on `(-omega, omega)`.
#[derive(Debug, Clone)]
pub struct WeakLimitModel<T> {
    params: WalkParams,
    alpha: Complex<T>,
    beta: Complex<T>,
    re_ab: T,
    drift: T,
    omega: T,
    p_hat: T,
    nodes: usize,
    rules: OnceLock<(GaussLegendre<T>, GaussLegendre<T>)>,
}

impl<T: Real> WeakLimitModel<T> {
    pub fn new(init: &InitialCondition<T>, params: WalkParams) -> Result<Self> {
        Self::with_nodes(init, params, DEFAULT_QUADRATURE_NODES)
    }

    /// Same as [`WeakLimitModel::new`] with an explicit quadrature order
    /// (at least 2).
    pub fn with_nodes(
        init: &InitialCondition<T>,
        params: WalkParams,
        nodes: usize,
    ) -> Result<Self> {
        let (alpha, beta) = match init {
            InitialCondition::Standard { alpha, beta } => (*alpha, *beta),
            InitialCondition::General(_) => return Err(LqwError::UnsupportedInitialState),
        };
        init.check_normalized()?;
        let re_ab = (alpha.conj() * beta).re;
        let th = ThetaConstants::<T>::new(params);
        Ok(Self {
            params,
            alpha,
            beta,
            re_ab,
            drift: beta.norm_sqr() - alpha.norm_sqr(),
            omega: peak_velocities::<T>(params).1,
            p_hat: th.theta2 + T::lit(2.0) * th.theta3 * re_ab,
            nodes: nodes.max(2),
            rules: OnceLock::new(),
        })
    }

    pub fn params(&self) -> WalkParams {
        self.params
    }

    pub fn alpha(&self) -> Complex<T> {
        self.alpha
    }

    pub fn beta(&self) -> Complex<T> {
        self.beta
    }

    /// Support bound; equal to the right peak velocity.
    pub fn omega(&self) -> T {
        self.omega
    }

    /// Total localized mass `Theta_2 + 2 Theta_3 Re(conj(alpha) beta)`.
    pub fn p_hat(&self) -> T {
        self.p_hat
    }

    pub fn quadrature_nodes(&self) -> usize {
        self.nodes
    }

    fn rules(&self) -> &(GaussLegendre<T>, GaussLegendre<T>) {
        self.rules.get_or_init(|| {
            (
                GaussLegendre::new(self.nodes),
                GaussLegendre::new(self.nodes.div_ceil(2)),
            )
        })
    }

    fn numerator(&self, x: T) -> T {
        let two = T::lit(2.0);
        let tau = self.params.tau_as::<T>();
        T::one()
            + two * self.re_ab
            + two * self.drift * x
            + (T::one() - two * self.re_ab * (tau + T::lit(4.0)) / tau) * x * x
    }

    /// `f(x)` for `|x| < omega`.
    pub fn density(&self, x: T) -> Result<T> {
        if x.is_nan() || x.abs() >= self.omega {
            return Err(LqwError::OutsideSupport {
                x: x.to_f64().unwrap_or(f64::NAN),
                omega: self.omega.to_f64().unwrap_or(f64::NAN),
            });
        }
        let tau = self.params.tau_as::<T>();
        let two = T::lit(2.0);
        let root = (two * tau - two * (tau + two) * x * x).sqrt();
        Ok(self.numerator(x) / (T::PI() * (T::one() - x * x) * root))
    }

    /// `f(omega sin u) * omega cos u`, with the `cos u` cancelled analytically
    /// against `sqrt(2 tau - 2 (tau + 2) x^2) = sqrt(2 tau) cos u`.
    fn angular_density(&self, u: T) -> (T, T) {
        let x = self.omega * u.sin();
        let tau = self.params.tau_as::<T>();
        let g = self.numerator(x) * self.omega
            / (T::PI() * (T::one() - x * x) * (T::lit(2.0) * tau).sqrt());
        (x, g)
    }

    /// `int_{-omega}^{omega} x^r f(x) dx`, checked against a half-order rule.
    pub fn continuous_moment(&self, r: u32) -> Result<T> {
        let (fine, coarse) = self.rules();
        let integrand = |u: T| {
            let (x, g) = self.angular_density(u);
            x.powi(r as i32) * g
        };
        let est = fine.integrate_arcsine(integrand);
        let check = coarse.integrate_arcsine(integrand);
        let change = (est - check).abs();
        let tol = T::quadrature_tolerance() * est.abs().max(T::one());
        if change.is_nan() || change > tol {
            return Err(LqwError::QuadratureNonConvergence {
                estimate: est.to_f64().unwrap_or(f64::NAN),
                change: change.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(est)
    }

    /// `lim E[(X_t/t)^r]`: the atom contributes `p_hat` to `r = 0` only.
    pub fn moment(&self, r: u32) -> Result<T> {
        let c = self.continuous_moment(r)?;
        Ok(if r == 0 { c + self.p_hat } else { c })
    }

    /// Closed-form spread coefficient `c(tau, alpha, beta)` with
    /// `sigma^2 ~ c t^2`.
    pub fn spread_coefficient(&self) -> T {
        let tau = self.params.tau_as::<T>();
        let two = T::lit(2.0);
        let four = T::lit(4.0);
        let s = (two * tau + four).sqrt();
        let q = (two * tau + four) * (two * tau + four);
        let base = T::one() - (T::lit(5.0) * tau + T::lit(8.0)) * s / q;
        let cross =
            two * (tau * tau + T::lit(12.0) * tau + T::lit(16.0)) * s / (tau * q) - four / tau;
        let shift = (T::one() - s / (tau + two)) * self.drift;
        base + cross * self.re_ab - shift * shift
    }

    /// `int x^2 f - (int x f)^2` by quadrature.
    pub fn spread_coefficient_by_moments(&self) -> Result<T> {
        let m1 = self.continuous_moment(1)?;
        let m2 = self.continuous_moment(2)?;
        Ok(m2 - m1 * m1)
    }

    /// Continuous mass on `(-omega, min(x, omega))`.
    pub fn continuous_cdf(&self, x: T) -> T {
        if x <= -self.omega {
            return T::zero();
        }
        let hp = T::FRAC_PI_2();
        let upper = if x >= self.omega {
            hp
        } else {
            (x / self.omega).asin()
        };
        let (fine, _) = self.rules();
        fine.integrate(-hp, upper, |u| self.angular_density(u).1)
    }

    /// Limiting `P(X_t / t <= x)`, atom included for `x >= 0`.
    pub fn cdf(&self, x: T) -> T {
        let atom = if x >= T::zero() {
            self.p_hat
        } else {
            T::zero()
        };
        self.continuous_cdf(x) + atom
    }
}

/// `f(x)` for the given start; see [`WeakLimitModel::density`].
pub fn weak_limit_density<T: Real>(
    init: &InitialCondition<T>,
    params: WalkParams,
    x: T,
) -> Result<T> {
    WeakLimitModel::new(init, params)?.density(x)
}

/// Sum over all sites of the limiting localization probabilities.
pub fn total_localization<T: Real>(init: &InitialCondition<T>, params: WalkParams) -> Result<T> {
    Ok(WeakLimitModel::new(init, params)?.p_hat())
}

pub fn limit_moment<T: Real>(init: &InitialCondition<T>, params: WalkParams, r: u32) -> Result<T> {
    WeakLimitModel::new(init, params)?.moment(r)
}

pub fn spread_coefficient<T: Real>(init: &InitialCondition<T>, params: WalkParams) -> Result<T> {
    Ok(WeakLimitModel::new(init, params)?.spread_coefficient())
}
