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

//! Momentum-space picture of the walk.
//!
//! With `psi~(t, k) = sum_n e^{-ikn} psi(t, n)` a single step becomes the
//! `delta x delta` matrix `U_k`: the Grover coin with its left-moving row
//! multiplied by `e^{ik}` and its right-moving row by `e^{-ik}`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{LqwError, Result};
use crate::matrix::CMatrix;
use crate::scalar::Real;
use crate::walk::{initial_state, InitialCondition, WalkParams, WalkerState};

/// A momentum `k` in `(-pi, pi]` together with `kappa = e^{ik}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPoint<T> {
    k: T,
    kappa: Complex<T>,
}

impl<T: Real> MomentumPoint<T> {
    pub fn new(k: T) -> Result<Self> {
        check_momentum(k)?;
        Ok(Self {
            k,
            kappa: Complex::from_polar(T::one(), k),
        })
    }

    pub fn k(&self) -> T {
        self.k
    }

    pub fn kappa(&self) -> Complex<T> {
        self.kappa
    }
}

fn check_momentum<T: Real>(k: T) -> Result<()> {
    if !(k > -T::PI() && k <= T::PI()) {
        return Err(LqwError::MomentumOutOfRange {
            k: k.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// `U_k`. Periodic in `k`, so any real momentum is accepted.
pub fn momentum_operator<T: Real>(params: WalkParams, k: T) -> CMatrix<T> {
    operator_from_kappa(params, Complex::from_polar(T::one(), k))
}

fn operator_from_kappa<T: Real>(params: WalkParams, kappa: Complex<T>) -> CMatrix<T> {
    let d = params.delta();
    let dt = T::from_usize_lossy(d);
    let diag = -params.tau_as::<T>() / dt;
    let off = T::lit(2.0) / dt;
    // |kappa| = 1, so 1/kappa is the conjugate.
    let inv = kappa.conj();
    CMatrix::from_fn(d, |r, c| {
        let g = Complex::new(if r == c { diag } else { off }, T::zero());
        match r {
            0 => g * kappa,
            1 => g * inv,
            _ => g,
        }
    })
}

/// `theta(k)` on the branch `[0, pi]` (`sin theta >= 0`).
pub fn theta<T: Real>(params: WalkParams, k: T) -> T {
    let tau = params.tau_as::<T>();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let ck = k.cos();
    let cos_t = -(tau * ck + two) / (tau + two);
    let sin_t = (tau * (T::one() - ck) * (tau + four + tau * ck))
        .max(T::zero())
        .sqrt()
        / (tau + two);
    sin_t.atan2(cos_t)
}

/// Closed-form eigen-decomposition of `U_k`.
///
/// Index 0 carries phase `theta`, index 1 `-theta`, index 2 phase `0`, and
/// indices `3..delta` span the `tau - 1` dimensional eigenspace of phase `pi`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem<T> {
    pub k: T,
    pub theta: T,
    /// Eigenphases `omega_j`, one per eigenvector.
    pub omegas: Vec<T>,
    /// Unit eigenvectors in the same order as `omegas`.
    pub eigenvectors: Vec<Vec<Complex<T>>>,
    /// `N_j` such that `v_j = sqrt(N_j) * r_j`, where `r_j` has components
    /// `1/(1 + e^{i(omega_j - k)})`, `1/(1 + e^{i(omega_j + k)})` and
    /// `1/(1 + e^{i omega_j})` for the three non-degenerate phases, and is the
    /// unnormalized `-e_3 + e_j` pattern for the `pi` eigenspace.
    ///
    /// At `k = pi` the phase-0 vector `r_2` is unbounded; its entry is 0 and
    /// the stored eigenvector is the limit `(i, -i, 0, ..., 0)/sqrt(2)`.
    pub normalizations: Vec<T>,
}

impl<T: Real> EigenSystem<T> {
    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn eigenvalue(&self, j: usize) -> Complex<T> {
        Complex::from_polar(T::one(), self.omegas[j])
    }

    /// `max_j ||U_k v_j - e^{i omega_j} v_j||`.
    pub fn max_residual(&self, params: WalkParams) -> T {
        let u = momentum_operator(params, self.k);
        (0..self.len())
            .map(|j| {
                let v = &self.eigenvectors[j];
                let uv = u.mul_vec(v);
                let lambda = self.eigenvalue(j);
                uv.iter()
                    .zip(v)
                    .map(|(a, &b)| (a - lambda * b).norm_sqr())
                    .sum::<T>()
                    .sqrt()
            })
            .fold(T::zero(), T::max)
    }
}

/// Eigen-system of `U_k` for `k` in `(-pi, pi]`, `k != 0`.
pub fn eigen_system<T: Real>(params: WalkParams, k: T) -> Result<EigenSystem<T>> {
    check_momentum(k)?;
    if k.is_zero() {
        return Err(LqwError::DegenerateMomentum { k: 0.0 });
    }
    let d = params.delta();
    let th = theta(params, k);
    let mut omegas = Vec::with_capacity(d);
    let mut eigenvectors = Vec::with_capacity(d);
    let mut normalizations = Vec::with_capacity(d);

    for omega in [th, -th] {
        let raw = moving_pattern(params, omega, k);
        let n = T::one() / raw.iter().map(|c| c.norm_sqr()).sum::<T>();
        let s = n.sqrt();
        omegas.push(omega);
        eigenvectors.push(raw.into_iter().map(|c| c * s).collect());
        normalizations.push(n);
    }

    omegas.push(T::zero());
    eigenvectors.push(stationary_eigenvector(params, k));
    normalizations.push(stationary_normalization(params, k));

    for v in pi_eigenspace_basis(params) {
        omegas.push(T::PI());
        eigenvectors.push(v);
        normalizations.push(T::lit(0.5));
    }

    Ok(EigenSystem {
        k,
        theta: th,
        omegas,
        eigenvectors,
        normalizations,
    })
}

fn moving_pattern<T: Real>(params: WalkParams, omega: T, k: T) -> Vec<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let comp = |phase: T| one / (one + Complex::from_polar(T::one(), phase));
    let mut raw = Vec::with_capacity(params.delta());
    raw.push(comp(omega - k));
    raw.push(comp(omega + k));
    let loop_c = comp(omega);
    raw.extend(std::iter::repeat_n(loop_c, params.tau()));
    raw
}

/// Unit eigenvector of `U_k` with eigenvalue 1, valid for every `k` including
/// `0` and `pi`.
///
/// Proportional to `(kappa_1, kappa_2, 1, ..., 1)` with
/// `kappa_1 = 2/(1 + e^{-ik})`, `kappa_2 = 2/(1 + e^{ik})`; scaling by
/// `cos(k/2)` gives `(e^{ik/2}, e^{-ik/2}, cos(k/2), ...)`, which stays bounded
/// at `k = pi`.
pub fn stationary_eigenvector<T: Real>(params: WalkParams, k: T) -> Vec<Complex<T>> {
    let half = k / T::lit(2.0);
    let ch = half.cos();
    let norm = (T::lit(2.0) + params.tau_as::<T>() * ch * ch).sqrt();
    let mut v = Vec::with_capacity(params.delta());
    v.push(Complex::from_polar(T::one() / norm, half));
    v.push(Complex::from_polar(T::one() / norm, -half));
    v.extend(std::iter::repeat_n(
        Complex::new(ch / norm, T::zero()),
        params.tau(),
    ));
    v
}

/// `N_3 = 4 (1 + cos k) / (tau + 4 + tau cos k)`, relative to the `1/(1 + e^{i..})` pattern.
fn stationary_normalization<T: Real>(params: WalkParams, k: T) -> T {
    let tau = params.tau_as::<T>();
    let ck = k.cos();
    T::lit(4.0) * (T::one() + ck) / (tau + T::lit(4.0) + tau * ck)
}

/// Orthonormal basis of the `k`-independent eigenspace with eigenvalue `-1`.
///
/// Starts from the vectors `(-e_3 + e_j)/sqrt(2)`, `j = 4..delta` (1-based),
/// and orthonormalizes them with Gram-Schmidt. Empty when `tau = 1`.
pub fn pi_eigenspace_basis<T: Real>(params: WalkParams) -> Vec<Vec<Complex<T>>> {
    let d = params.delta();
    let mut basis: Vec<Vec<Complex<T>>> = Vec::with_capacity(d.saturating_sub(3));
    for j in 3..d {
        let mut v = vec![Complex::zero(); d];
        v[2] = Complex::new(-T::one(), T::zero());
        v[j] = Complex::new(T::one(), T::zero());
        for b in &basis {
            let proj: Complex<T> = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= proj * bi;
            }
        }
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
        basis.push(v.into_iter().map(|c| c / norm).collect());
    }
    basis
}

/// Smallest power-of-two grid that resolves `2t + 1` sites with margin.
pub fn default_grid_size(t: usize) -> usize {
    (2 * t + 2).next_power_of_two()
}

/// Evolves in momentum space on the grid `k_m = -pi + 2 pi m / grid` and
/// transforms back to positions.
///
/// The state at time `t` occupies `2t + 1` sites, so the discrete inverse
/// transform is exact once `grid >= 2t + 1`.
pub fn propagate_fourier<T: Real>(
    init: &InitialCondition<T>,
    params: WalkParams,
    t: usize,
    grid: usize,
) -> Result<WalkerState<T>> {
    let sites = 2 * t + 1;
    if grid < sites {
        return Err(LqwError::GridTooSmall {
            grid,
            required: sites,
        });
    }
    // Single site at the origin: its transform is the coin vector at every k.
    let start = initial_state(init, params)?;
    let coin = start.site(0).expect("origin is in support").to_vec();
    let d = params.delta();

    let gt = T::from_usize_lossy(grid);
    let roots: Vec<Complex<T>> = (0..grid)
        .map(|r| Complex::from_polar(T::one(), T::TAU() * T::from_usize_lossy(r) / gt))
        .collect();

    let mut out = vec![Complex::zero(); sites * d];
    let mut cur = vec![Complex::zero(); d];
    let mut next = vec![Complex::zero(); d];
    for m in 0..grid {
        // e^{i k_m} = -e^{2 pi i m / grid}
        let u = operator_from_kappa(params, -roots[m]);
        cur.copy_from_slice(&coin);
        for _ in 0..t {
            u.mul_vec_into(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        for (i, site) in out.chunks_exact_mut(d).enumerate() {
            let n = i as i64 - t as i64;
            // e^{i k_m n} = (-1)^n e^{2 pi i (m n mod grid) / grid}
            let mut w = roots[((m as i64 * n).rem_euclid(grid as i64)) as usize];
            if n.rem_euclid(2) == 1 {
                w = -w;
            }
            for (o, &c) in site.iter_mut().zip(&cur) {
                *o += w * c;
            }
        }
    }
    let inv = T::one() / gt;
    for a in &mut out {
        *a = a.scale(inv);
    }
    Ok(WalkerState::from_parts(t, params, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{apply_step, evolve, grover_coin};
    use std::f64::consts::PI;

    type C = Complex<f64>;

    fn params(tau: usize) -> WalkParams {
        WalkParams::new(tau).unwrap()
    }

    #[test]
    fn operator_at_zero_is_the_coin() {
        for tau in [1, 4] {
            let p = params(tau);
            assert!(momentum_operator::<f64>(p, 0.0).max_abs_diff(&grover_coin(p)) < 1e-15);
        }
    }

    #[test]
    fn operator_entry_quarter_turn() {
        let u = momentum_operator::<f64>(params(1), PI / 2.0);
        assert!((u[(0, 0)] - C::new(0.0, -1.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn operator_is_unitary() {
        for tau in [1, 2, 7] {
            for k in [-3.0, -0.4, 0.0, 1.1, PI] {
                assert!(momentum_operator::<f64>(params(tau), k).unitarity_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn theta_at_pi_for_tau_two() {
        let es = eigen_system::<f64>(params(2), PI).unwrap();
        assert!((es.theta - PI / 2.0).abs() < 1e-15);
        assert!(es.theta.cos().abs() < 1e-15);
    }

    #[test]
    fn eigen_equation_holds() {
        for tau in [1, 2, 3, 6] {
            let p = params(tau);
            let es = eigen_system::<f64>(p, PI / 3.0).unwrap();
            assert_eq!(es.len(), tau + 2);
            assert!(es.max_residual(p) < 1e-10);
            for v in &es.eigenvectors {
                let n: f64 = v.iter().map(|c| c.norm_sqr()).sum();
                assert!((n - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stationary_vector_limit_at_pi() {
        let p = params(1);
        let es = eigen_system::<f64>(p, PI).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = &es.eigenvectors[2];
        assert!((v[0] - C::new(0.0, h)).norm() < 1e-15);
        assert!((v[1] - C::new(0.0, -h)).norm() < 1e-15);
        assert!(v[2].norm() < 1e-15);
        assert_eq!(es.normalizations[2], 0.0);
        assert!(es.max_residual(p) < 1e-12);
        // Approaching pi from below converges to the same vector.
        let near = eigen_system::<f64>(p, PI - 1e-7).unwrap();
        assert!(near.eigenvectors[2]
            .iter()
            .zip(v)
            .all(|(a, b)| (a - b).norm() < 1e-6));
    }

    #[test]
    fn stationary_vector_matches_closed_pattern() {
        // Away from k = pi the bounded form agrees with sqrt(N_3) * 1/(1 + e^{i(0 -+ k)}).
        let p = params(3);
        let k = 0.9;
        let es = eigen_system::<f64>(p, k).unwrap();
        let raw = moving_pattern(p, 0.0, k);
        let s = es.normalizations[2].sqrt();
        for (a, b) in es.eigenvectors[2].iter().zip(&raw) {
            assert!((a - b * s).norm() < 1e-14);
        }
    }

    #[test]
    fn degenerate_and_out_of_range_momenta() {
        assert_eq!(
            eigen_system::<f64>(params(2), 0.0),
            Err(LqwError::DegenerateMomentum { k: 0.0 })
        );
        assert!(matches!(
            eigen_system::<f64>(params(2), -PI),
            Err(LqwError::MomentumOutOfRange { .. })
        ));
        assert!(MomentumPoint::new(4.0f64).is_err());
        let m = MomentumPoint::new(PI / 2.0).unwrap();
        assert!((m.kappa().norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pi_basis_is_orthonormal() {
        let basis = pi_eigenspace_basis::<f64>(params(5));
        assert_eq!(basis.len(), 4);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let ip: C = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - C::new(want, 0.0)).norm() < 1e-14);
            }
        }
        assert!(pi_eigenspace_basis::<f64>(params(1)).is_empty());
    }

    #[test]
    fn fourier_one_step_matches_direct() {
        let p = params(1);
        let init = InitialCondition::standard(C::new(1.0, 0.0), C::new(0.0, 0.0)).unwrap();
        let direct = apply_step(&initial_state(&init, p).unwrap(), p);
        let fourier = propagate_fourier(&init, p, 1, 8).unwrap();
        assert!(direct.max_deviation(&fourier) < 1e-12);
    }

    #[test]
    fn fourier_zero_steps_is_initial_state() {
        let p = params(3);
        let init = InitialCondition::<f64>::symmetric();
        let f = propagate_fourier(&init, p, 0, 1).unwrap();
        assert!(f.max_deviation(&initial_state(&init, p).unwrap()) < 1e-15);
    }

    #[test]
    fn fourier_tau_ten_fifty_steps() {
        let p = params(10);
        let init = InitialCondition::<f64>::symmetric();
        let f = propagate_fourier(&init, p, 50, 128).unwrap();
        assert!(f.max_deviation(&evolve(&init, p, 50).unwrap()) < 1e-10);
    }

    #[test]
    fn grid_too_small() {
        let init = InitialCondition::<f64>::symmetric();
        assert_eq!(
            propagate_fourier(&init, params(1), 5, 10),
            Err(LqwError::GridTooSmall {
                grid: 10,
                required: 11
            })
        );
        assert_eq!(default_grid_size(5), 16);
        assert_eq!(default_grid_size(50), 128);
    }
}
