//! Four-component Dirac spinors.

use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::linalg::CMat4;
use crate::scalar::Real;

/// Spinor value at a space-time point, in the chiral representation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spinor<T>(pub [Complex<T>; 4]);

impl<T: Real> Spinor<T> {
    pub fn new(c: [Complex<T>; 4]) -> Self {
        Self(c)
    }

    pub fn zero() -> Self {
        Self([Complex::zero(); 4])
    }

    /// The reference column (1, 0, 1, 0) on which the polar form is built.
    pub fn seed() -> Self {
        let one = Complex::new(T::one(), T::zero());
        Self([one, Complex::zero(), one, Complex::zero()])
    }

    /// Builds a spinor from interleaved `re0, im0, ..., re3, im3` values.
    pub fn from_interleaved(v: [T; 8]) -> Self {
        Self([
            Complex::new(v[0], v[1]),
            Complex::new(v[2], v[3]),
            Complex::new(v[4], v[5]),
            Complex::new(v[6], v[7]),
        ])
    }

    pub fn to_interleaved(&self) -> [T; 8] {
        let c = &self.0;
        [
            c[0].re, c[0].im, c[1].re, c[1].im, c[2].re, c[2].im, c[3].re, c[3].im,
        ]
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        Self(self.0.map(|z| z * k))
    }

    pub fn scale_real(&self, k: T) -> Self {
        Self(self.0.map(|z| z.scale(k)))
    }

    /// Euclidean norm sqrt(psi^dagger psi).
    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> T {
        self.0.iter().fold(T::zero(), |s, z| s + z.norm_sqr())
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// Index of the component with the largest modulus.
    pub fn dominant_component(&self) -> usize {
        let mut best = 0;
        for k in 1..4 {
            if self.0[k].norm_sqr() > self.0[best].norm_sqr() {
                best = k;
            }
        }
        best
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<T: Real> Index<usize> for Spinor<T> {
    type Output = Complex<T>;
    fn index(&self, i: usize) -> &Complex<T> {
        &self.0[i]
    }
}

impl<T: Real> Add for Spinor<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl<T: Real> Sub for Spinor<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl<T: Real> Neg for Spinor<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|z| -z))
    }
}

impl<T: Real> Mul<Spinor<T>> for CMat4<T> {
    type Output = Spinor<T>;
    fn mul(self, v: Spinor<T>) -> Spinor<T> {
        Spinor(std::array::from_fn(|i| {
            (0..4).fold(Complex::zero(), |s, j| s + self.0[i][j] * v.0[j])
        }))
    }
}

impl<T: Real> Mul<&Spinor<T>> for &CMat4<T> {
    type Output = Spinor<T>;
    fn mul(self, v: &Spinor<T>) -> Spinor<T> {
        *self * *v
    }
}

/// Row spinor, e.g. the Dirac adjoint psi^dagger gamma^0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RowSpinor<T>(pub [Complex<T>; 4]);

impl<T: Real> RowSpinor<T> {
    /// Row times column.
    pub fn dot(&self, v: &Spinor<T>) -> Complex<T> {
        (0..4).fold(Complex::zero(), |s, i| s + self.0[i] * v.0[i])
    }

    /// Row times matrix times column.
    pub fn sandwich(&self, m: &CMat4<T>, v: &Spinor<T>) -> Complex<T> {
        self.dot(&(m * v))
    }
}
