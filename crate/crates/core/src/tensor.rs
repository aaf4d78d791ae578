//! Antisymmetric rank-2 tensors stored by their six independent entries.

use crate::algebra::{pair_index, PAIRS};
use crate::scalar::Real;

/// Antisymmetric 4x4 tensor; entries in the order 01, 02, 03, 12, 13, 23.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Antisym<T>(pub [T; 6]);

impl<T: Real> Antisym<T> {
    pub fn zero() -> Self {
        Self([T::zero(); 6])
    }

    pub fn get(&self, a: usize, b: usize) -> T {
        match pair_index(a, b) {
            Some((n, false)) => self.0[n],
            Some((n, true)) => -self.0[n],
            None => T::zero(),
        }
    }

    /// Keeps the (a, b) entry with a < b from a full matrix.
    pub fn from_upper_triangle(m: &[[T; 4]; 4]) -> Self {
        Self(PAIRS.map(|(a, b)| m[a][b]))
    }

    pub fn to_matrix(&self) -> [[T; 4]; 4] {
        std::array::from_fn(|a| std::array::from_fn(|b| self.get(a, b)))
    }

    /// Lowers (or raises) both indices.
    pub fn lowered(&self) -> Self {
        // a 0k entry flips sign, a jk entry keeps it
        Self([
            -self.0[0], -self.0[1], -self.0[2], self.0[3], self.0[4], self.0[5],
        ])
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }
}
