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

//! Dense square matrices for coin-sized operators.
//!
//! Coin spaces are small (`tau + 2` dimensions), so a flat row-major buffer
//! is all that is needed.

use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<E> {
    dim: usize,
    data: Vec<E>,
}

/// Complex square matrix.
pub type CMatrix<T> = SquareMatrix<Complex<T>>;

impl<E: Copy> SquareMatrix<E> {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn map<F: Copy>(&self, f: impl Fn(E) -> F) -> SquareMatrix<F> {
        SquareMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)])
    }
}

impl<E: Copy + Zero> SquareMatrix<E> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![E::zero(); dim * dim],
        }
    }
}

impl<E> Index<(usize, usize)> for SquareMatrix<E> {
    type Output = E;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &E {
        &self.data[r * self.dim + c]
    }
}

impl<E> IndexMut<(usize, usize)> for SquareMatrix<E> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut E {
        &mut self.data[r * self.dim + c]
    }
}

impl<T: Real> SquareMatrix<T> {
    /// Largest entrywise `|a - b|`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    pub fn to_complex(&self) -> CMatrix<T> {
        self.map(|e| Complex::new(e, T::zero()))
    }
}

impl<T: Real> SquareMatrix<Complex<T>> {
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| {
            if r == c {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::zero()
            }
        })
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut out = vec![Complex::zero(); self.dim];
        self.mul_vec_into(v, &mut out);
        out
    }

    /// `out = self * v`; `out` must not alias `v`.
    pub fn mul_vec_into(&self, v: &[Complex<T>], out: &mut [Complex<T>]) {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        assert_eq!(out.len(), self.dim, "output length mismatch");
        for (r, o) in out.iter_mut().enumerate() {
            *o = self
                .row(r)
                .iter()
                .zip(v)
                .fold(Complex::zero(), |acc, (&a, &x)| acc + a * x);
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        Self::from_fn(n, |r, c| {
            (0..n).fold(Complex::zero(), |acc, k| acc + self[(r, k)] * other[(k, c)])
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).norm()))
    }

    /// `max |(A^dagger A - I)_{rc}|`; zero for an exactly unitary matrix.
    pub fn unitarity_defect(&self) -> T {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.dim))
    }

    /// Numerical rank by Gaussian elimination with partial pivoting.
    pub fn rank(&self, tol: T) -> usize {
        let n = self.dim;
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..n {
            if rank == n {
                break;
            }
            let (pivot, best) =
                (rank..n)
                    .map(|r| (r, a[(r, col)].norm()))
                    .fold(
                        (rank, T::zero()),
                        |acc, x| if x.1 > acc.1 { x } else { acc },
                    );
            if best <= tol {
                continue;
            }
            for c in 0..n {
                let tmp = a[(rank, c)];
                a[(rank, c)] = a[(pivot, c)];
                a[(pivot, c)] = tmp;
            }
            let p = a[(rank, col)];
            for r in (rank + 1)..n {
                let factor = a[(r, col)] / p;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = factor * a[(rank, c)];
                    a[(r, c)] -= sub;
                }
            }
            rank += 1;
        }
        rank
    }
}
