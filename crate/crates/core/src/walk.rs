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

//! Position-space evolution of the lackadaisical walk on the line.
//!
//! Coin basis order is fixed: component 0 moves left, component 1 moves
//! right, components `2..delta` are the `tau` self-loops. All downstream
//! formats index coin components in this order.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{LqwError, Result};
use crate::matrix::CMatrix;
use crate::scalar::Real;

/// Laziness factor `tau` (self-loops per vertex) and the derived coin
/// dimension `delta = tau + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WalkParams {
    tau: usize,
}

impl WalkParams {
    pub fn new(tau: usize) -> Result<Self> {
        if tau == 0 {
            return Err(LqwError::InvalidLaziness { tau });
        }
        Ok(Self { tau })
    }

    #[inline]
    pub fn tau(&self) -> usize {
        self.tau
    }

    /// Coin dimension, always `tau + 2`.
    #[inline]
    pub fn delta(&self) -> usize {
        self.tau + 2
    }

    pub(crate) fn tau_as<T: Real>(&self) -> T {
        T::from_usize_lossy(self.tau)
    }
}

/// Amplitudes of the walker at a single site.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinState<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> CoinState<T> {
    pub fn new(amplitudes: Vec<Complex<T>>, params: WalkParams) -> Result<Self> {
        if amplitudes.len() != params.delta() {
            return Err(LqwError::DimensionMismatch {
                expected: params.delta(),
                found: amplitudes.len(),
            });
        }
        Ok(Self { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn into_vec(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }
}

/// Coin state of a walker that starts at the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition<T> {
    /// `alpha|1> + beta|2>`: superposition of the two moving directions only.
    Standard { alpha: Complex<T>, beta: Complex<T> },
    /// Arbitrary normalized coin vector of length `delta`.
    General(Vec<Complex<T>>),
}

impl<T: Real> InitialCondition<T> {
    pub fn standard(alpha: Complex<T>, beta: Complex<T>) -> Result<Self> {
        let init = Self::Standard { alpha, beta };
        init.check_normalized()?;
        Ok(init)
    }

    pub fn general(coin: Vec<Complex<T>>) -> Result<Self> {
        let init = Self::General(coin);
        init.check_normalized()?;
        Ok(init)
    }

    /// `alpha = 1/sqrt(2)`, `beta = i/sqrt(2)`; yields a walk symmetric about the origin.
    pub fn symmetric() -> Self {
        let h = T::FRAC_1_SQRT_2();
        Self::Standard {
            alpha: Complex::new(h, T::zero()),
            beta: Complex::new(T::zero(), h),
        }
    }

    /// The walker starts in coin basis state `index` (0-based).
    pub fn basis(index: usize, params: WalkParams) -> Result<Self> {
        if index >= params.delta() {
            return Err(LqwError::DimensionMismatch {
                expected: params.delta(),
                found: index + 1,
            });
        }
        let mut coin = vec![Complex::zero(); params.delta()];
        coin[index] = Complex::new(T::one(), T::zero());
        Ok(Self::General(coin))
    }

    pub fn norm_sqr(&self) -> T {
        match self {
            Self::Standard { alpha, beta } => alpha.norm_sqr() + beta.norm_sqr(),
            Self::General(coin) => coin.iter().map(|a| a.norm_sqr()).sum(),
        }
    }

    pub fn check_normalized(&self) -> Result<()> {
        let n = self.norm_sqr();
        let tol = T::unit_tolerance();
        if (n - T::one()).abs() > tol || !n.is_finite() {
            return Err(LqwError::NotNormalized {
                norm_sqr: n.to_f64().unwrap_or(f64::NAN),
                tolerance: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    /// Full coin vector at the origin for the given coin dimension.
    pub fn coin_vector(&self, params: WalkParams) -> Result<CoinState<T>> {
        match self {
            Self::Standard { alpha, beta } => {
                let mut v = vec![Complex::zero(); params.delta()];
                v[0] = *alpha;
                v[1] = *beta;
                CoinState::new(v, params)
            }
            Self::General(coin) => CoinState::new(coin.clone(), params),
        }
    }

    /// `Re(conj(alpha) * beta)` for the standard class, `None` otherwise.
    pub fn re_alpha_conj_beta(&self) -> Option<T> {
        match self {
            Self::Standard { alpha, beta } => Some((alpha.conj() * beta).re),
            Self::General(_) => None,
        }
    }
}

/// Full wavefunction after `t` steps, stored densely on `[-t, t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState<T> {
    t: usize,
    params: WalkParams,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> WalkerState<T> {
    /// Caller guarantees `amplitudes.len() == (2t + 1) * delta`.
    pub(crate) fn from_parts(t: usize, params: WalkParams, amplitudes: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(amplitudes.len(), (2 * t + 1) * params.delta());
        Self {
            t,
            params,
            amplitudes,
        }
    }

    #[inline]
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn params(&self) -> WalkParams {
        self.params
    }

    /// Index of position 0 in the site array.
    #[inline]
    pub fn origin_offset(&self) -> usize {
        self.t
    }

    pub fn support(&self) -> RangeInclusive<i64> {
        let t = self.t as i64;
        -t..=t
    }

    /// Flat amplitude buffer, site-major over `[-t, t]`, coin-minor.
    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    /// Coin amplitudes at position `n`, `None` outside the light cone.
    pub fn site(&self, n: i64) -> Option<&[Complex<T>]> {
        if !self.support().contains(&n) {
            return None;
        }
        let d = self.params.delta();
        let i = (n + self.t as i64) as usize;
        Some(&self.amplitudes[i * d..(i + 1) * d])
    }

    pub fn sites(&self) -> impl Iterator<Item = (i64, &[Complex<T>])> + '_ {
        let t = self.t as i64;
        self.amplitudes
            .chunks_exact(self.params.delta())
            .enumerate()
            .map(move |(i, c)| (i as i64 - t, c))
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `P(X_t = n)`; exactly zero outside `[-t, t]`.
    pub fn probability_at(&self, n: i64) -> T {
        self.site(n)
            .map(|c| c.iter().map(|a| a.norm_sqr()).sum())
            .unwrap_or_else(T::zero)
    }

    pub fn position_distribution(&self) -> PositionDistribution<T> {
        position_distribution(self)
    }

    /// Largest amplitude difference against another state, treating
    /// amplitudes outside either support as zero.
    pub fn max_deviation(&self, other: &Self) -> T {
        assert_eq!(self.params, other.params, "states of different walks");
        let t = self.t.max(other.t) as i64;
        let d = self.params.delta();
        let zero = vec![Complex::zero(); d];
        let mut worst = T::zero();
        for n in -t..=t {
            let a = self.site(n).unwrap_or(&zero);
            let b = other.site(n).unwrap_or(&zero);
            for (x, y) in a.iter().zip(b) {
                worst = worst.max((x - y).norm());
            }
        }
        worst
    }
}

/// `P(X_t = n)` for every `n` in `[-t, t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution<T> {
    t: usize,
    probabilities: Vec<T>,
}

impl<T: Real> PositionDistribution<T> {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn get(&self, n: i64) -> T {
        let t = self.t as i64;
        if n < -t || n > t {
            return T::zero();
        }
        self.probabilities[(n + t) as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        let t = self.t as i64;
        self.probabilities
            .iter()
            .enumerate()
            .map(move |(i, &p)| (i as i64 - t, p))
    }

    /// Probabilities ordered from `n = -t` to `n = t`.
    pub fn probabilities(&self) -> &[T] {
        &self.probabilities
    }

    pub fn to_map(&self) -> BTreeMap<i64, T> {
        self.iter().collect()
    }

    pub fn total(&self) -> T {
        self.probabilities.iter().copied().sum()
    }

    /// `E[X_t^r]`.
    pub fn raw_moment(&self, r: u32) -> T {
        self.iter()
            .map(|(n, p)| T::from_i64_lossy(n).powi(r as i32) * p)
            .sum()
    }

    pub fn mean(&self) -> T {
        self.raw_moment(1)
    }

    /// `E[X_t^2] - E[X_t]^2`.
    pub fn variance(&self) -> T {
        let m = self.mean();
        self.raw_moment(2) - m * m
    }
}

/// Grover coin `2|s><s| - I` on the `delta`-dimensional coin space: `-tau/delta`
/// on the diagonal and `2/delta` elsewhere.
pub fn grover_coin<T: Real>(params: WalkParams) -> CMatrix<T> {
    let d = params.delta();
    let dt = T::from_usize_lossy(d);
    let diag = Complex::new(-params.tau_as::<T>() / dt, T::zero());
    let off = Complex::new(T::lit(2.0) / dt, T::zero());
    CMatrix::from_fn(d, |r, c| if r == c { diag } else { off })
}

/// Walker localized at the origin with the given coin state, `t = 0`.
pub fn initial_state<T: Real>(
    init: &InitialCondition<T>,
    params: WalkParams,
) -> Result<WalkerState<T>> {
    init.check_normalized()?;
    let coin = init.coin_vector(params)?;
    Ok(WalkerState::from_parts(0, params, coin.into_vec()))
}

/// One application of `U = S (I (x) G)`.
pub fn apply_step<T: Real>(state: &WalkerState<T>, params: WalkParams) -> WalkerState<T> {
    assert_eq!(
        state.params, params,
        "state was prepared for a different walk"
    );
    let mut next = Vec::new();
    step_into(&state.amplitudes, state.t, params.delta(), &mut next);
    WalkerState::from_parts(state.t + 1, params, next)
}

/// `U^t` applied to the initial state.
pub fn evolve<T: Real>(
    init: &InitialCondition<T>,
    params: WalkParams,
    t: usize,
) -> Result<WalkerState<T>> {
    evolve_observed(init, params, t, |_| {})
}

/// Evolves for `t` steps, handing every intermediate state (including `t = 0`
/// and the final one) to `observe`.
pub fn evolve_observed<T: Real>(
    init: &InitialCondition<T>,
    params: WalkParams,
    t: usize,
    mut observe: impl FnMut(&WalkerState<T>),
) -> Result<WalkerState<T>> {
    let mut state = initial_state(init, params)?;
    observe(&state);
    let d = params.delta();
    // Double buffer sized for the final support so no step reallocates.
    let mut scratch = Vec::with_capacity((2 * t + 1) * d);
    state
        .amplitudes
        .reserve((2 * t + 1) * d - state.amplitudes.len());
    for _ in 0..t {
        step_into(&state.amplitudes, state.t, d, &mut scratch);
        std::mem::swap(&mut state.amplitudes, &mut scratch);
        state.t += 1;
        observe(&state);
    }
    Ok(state)
}

pub fn position_distribution<T: Real>(state: &WalkerState<T>) -> PositionDistribution<T> {
    let probabilities = state
        .amplitudes
        .chunks_exact(state.params.delta())
        .map(|c| c.iter().map(|a| a.norm_sqr()).sum())
        .collect();
    PositionDistribution {
        t: state.t,
        probabilities,
    }
}

/// Step kernel. `src` covers `[-t, t]`; `dst` is resized to cover `[-t-1, t+1]`.
///
/// Uses `G psi = (2/delta) (sum_j psi_j) - psi`, so each site costs `O(delta)`.
fn step_into<T: Real>(src: &[Complex<T>], t: usize, d: usize, dst: &mut Vec<Complex<T>>) {
    let sites = 2 * t + 1;
    debug_assert_eq!(src.len(), sites * d);
    dst.clear();
    dst.resize((sites + 2) * d, Complex::zero());
    let scale = T::lit(2.0) / T::from_usize_lossy(d);
    for (i, psi) in src.chunks_exact(d).enumerate() {
        let sum: Complex<T> = psi.iter().copied().fold(Complex::zero(), |a, b| a + b);
        let mean = sum * scale;
        // Source site i (position i - t) maps to destination index i + 1.
        dst[i * d] = mean - psi[0];
        dst[(i + 2) * d + 1] = mean - psi[1];
        let stay = &mut dst[(i + 1) * d + 2..(i + 2) * d];
        for (o, &p) in stay.iter_mut().zip(&psi[2..]) {
            *o = mean - p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn params(tau: usize) -> WalkParams {
        WalkParams::new(tau).unwrap()
    }

    #[test]
    fn tau_zero_rejected() {
        assert_eq!(
            WalkParams::new(0),
            Err(LqwError::InvalidLaziness { tau: 0 })
        );
        assert_eq!(params(3).delta(), 5);
    }

    #[test]
    fn grover_coin_tau_one() {
        let g = grover_coin::<f64>(params(1));
        for r in 0..3 {
            for col in 0..3 {
                let want = if r == col { -1.0 / 3.0 } else { 2.0 / 3.0 };
                assert!((g[(r, col)] - c(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn grover_coin_is_an_involution() {
        let g = grover_coin::<f64>(params(2));
        assert!(g.matmul(&g).max_abs_diff(&CMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn grover_coin_tau_ten_row_sum() {
        let g = grover_coin::<f64>(params(10));
        let row = g.row(0);
        assert!((row[0].re + 10.0 / 12.0).abs() < 1e-15);
        assert!(row[1..].iter().all(|e| (e.re - 2.0 / 12.0).abs() < 1e-15));
        let sum: f64 = row.iter().map(|e| e.re).sum();
        assert!((sum - 1.0).abs() < 1e-14);
    }

    #[test]
    fn initial_states() {
        let s = initial_state(
            &InitialCondition::standard(c(1.0, 0.0), c(0.0, 0.0)).unwrap(),
            params(1),
        )
        .unwrap();
        assert_eq!(s.t(), 0);
        assert_eq!(s.site(0).unwrap(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);

        let s = initial_state(&InitialCondition::<f64>::symmetric(), params(10)).unwrap();
        assert_eq!(s.site(0).unwrap().len(), 12);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);

        let init = InitialCondition::<f64>::basis(2, params(3)).unwrap();
        let s = initial_state(&init, params(3)).unwrap();
        assert_eq!(s.site(0).unwrap()[2], c(1.0, 0.0));
    }

    #[test]
    fn unnormalized_init_rejected() {
        let half = InitialCondition::standard(c(0.5, 0.0), c(0.0, 0.5));
        assert!(matches!(half, Err(LqwError::NotNormalized { .. })));
        // Bypassing the constructor still fails at preparation time.
        let raw = InitialCondition::Standard {
            alpha: c(0.5, 0.0),
            beta: c(0.0, 0.5),
        };
        assert!(initial_state(&raw, params(1)).is_err());
        let short = InitialCondition::General(vec![c(1.0, 0.0)]);
        assert!(matches!(
            initial_state(&short, params(1)),
            Err(LqwError::DimensionMismatch {
                expected: 3,
                found: 1
            })
        ));
    }

    #[test]
    fn one_step_tau_one() {
        let p = params(1);
        let s0 = initial_state(
            &InitialCondition::standard(c(1.0, 0.0), c(0.0, 0.0)).unwrap(),
            p,
        )
        .unwrap();
        let s1 = apply_step(&s0, p);
        let close = |a: &[C], b: &[C]| a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-15);
        assert!(close(
            s1.site(-1).unwrap(),
            &[c(-1.0 / 3.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        ));
        assert!(close(
            s1.site(1).unwrap(),
            &[c(0.0, 0.0), c(2.0 / 3.0, 0.0), c(0.0, 0.0)]
        ));
        assert!(close(
            s1.site(0).unwrap(),
            &[c(0.0, 0.0), c(0.0, 0.0), c(2.0 / 3.0, 0.0)]
        ));
        let dist = s1.position_distribution().to_map();
        assert!((dist[&-1] - 1.0 / 9.0).abs() < 1e-15);
        assert!((dist[&0] - 4.0 / 9.0).abs() < 1e-15);
        assert!((dist[&1] - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn one_step_tau_two_matches_hand_expansion() {
        let p = params(2);
        let (alpha, beta) = (c(0.6, 0.0), c(0.0, 0.8));
        let s = apply_step(
            &initial_state(&InitialCondition::standard(alpha, beta).unwrap(), p).unwrap(),
            p,
        );
        let q = c(0.25, 0.0);
        assert!((s.site(-1).unwrap()[0] - (alpha * -2.0 + beta * 2.0) * q).norm() < 1e-15);
        assert!((s.site(1).unwrap()[1] - (alpha * 2.0 - beta * 2.0) * q).norm() < 1e-15);
        for j in 2..4 {
            assert!((s.site(0).unwrap()[j] - (alpha * 2.0 + beta * 2.0) * q).norm() < 1e-15);
        }
    }

    #[test]
    fn evolve_zero_steps_is_initial_state() {
        let p = params(4);
        let init = InitialCondition::<f64>::symmetric();
        assert_eq!(
            evolve(&init, p, 0).unwrap(),
            initial_state(&init, p).unwrap()
        );
    }

    #[test]
    fn evolve_matches_repeated_steps() {
        let p = params(3);
        let init = InitialCondition::<f64>::symmetric();
        let mut s = initial_state(&init, p).unwrap();
        for _ in 0..25 {
            s = apply_step(&s, p);
        }
        assert_eq!(evolve(&init, p, 25).unwrap(), s);
    }

    #[test]
    fn t_zero_distribution() {
        let s = initial_state(&InitialCondition::<f64>::symmetric(), params(2)).unwrap();
        let d = s.position_distribution();
        assert_eq!(d.to_map().len(), 1);
        assert!((d.get(0) - 1.0).abs() < 1e-15);
        assert_eq!(d.variance(), 0.0);
    }

    #[test]
    fn symmetric_walk_stays_symmetric() {
        let p = params(1);
        let s = evolve(&InitialCondition::<f64>::symmetric(), p, 50).unwrap();
        let d = s.position_distribution();
        for n in 0..=50 {
            assert!((d.get(n) - d.get(-n)).abs() < 1e-12, "asymmetry at n = {n}");
        }
    }

    #[test]
    fn both_parities_populated() {
        let p = params(1);
        let init = InitialCondition::standard(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        evolve_observed(&init, p, 30, |s| {
            if s.t() >= 2 {
                let d = s.position_distribution();
                let even: f64 = d.iter().filter(|(n, _)| n % 2 == 0).map(|x| x.1).sum();
                let odd: f64 = d.iter().filter(|(n, _)| n % 2 != 0).map(|x| x.1).sum();
                assert!(even > 1e-6 && odd > 1e-6, "t = {}", s.t());
            }
        })
        .unwrap();
    }

    #[test]
    fn right_peak_tau_ten() {
        let p = params(10);
        let d = evolve(&InitialCondition::<f64>::symmetric(), p, 50)
            .unwrap()
            .position_distribution();
        let (peak, _) = d
            .iter()
            .filter(|(n, _)| *n > 25)
            .fold(
                (0, 0.0),
                |acc, (n, pr)| if pr >= acc.1 { (n, pr) } else { acc },
            );
        assert!((peak - 46).abs() <= 2, "peak at {peak}");
    }

    #[test]
    fn single_precision_walk_runs() {
        let p = params(2);
        let s = evolve(&InitialCondition::<f32>::symmetric(), p, 40).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-4);
    }
}
