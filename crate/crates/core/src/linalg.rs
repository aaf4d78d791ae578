//! Fixed-size 4x4 real and complex matrices.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{lit, Real};

/// Complex 4x4 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat4<T>(pub [[Complex<T>; 4]; 4]);

/// Real 4x4 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RMat4<T>(pub [[T; 4]; 4]);

impl<T: Real> CMat4<T> {
    pub fn zero() -> Self {
        Self([[Complex::zero(); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = Complex::one();
        }
        m
    }

    pub fn from_diag(d: [Complex<T>; 4]) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = d[i];
        }
        m
    }

    /// Assembles a block matrix from four 2x2 blocks.
    pub fn from_blocks(
        tl: [[Complex<T>; 2]; 2],
        tr: [[Complex<T>; 2]; 2],
        bl: [[Complex<T>; 2]; 2],
        br: [[Complex<T>; 2]; 2],
    ) -> Self {
        let mut m = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = tl[i][j];
                m.0[i][j + 2] = tr[i][j];
                m.0[i + 2][j] = bl[i][j];
                m.0[i + 2][j + 2] = br[i][j];
            }
        }
        m
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= k);
        m
    }

    pub fn scale_real(&self, k: T) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = z.scale(k));
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<T> {
        (0..4).fold(Complex::zero(), |s, i| s + self.0[i][i])
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.0.iter().flatten().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> T {
        (0..4)
            .map(|j| (0..4).fold(T::zero(), |s, i| s + self.0[i][j].norm()))
            .fold(T::zero(), |m, v| m.max(v))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.0;
        let mut inv = Self::identity().0;
        for col in 0..4 {
            let pivot = (col..4).max_by(|&x, &y| {
                a[x][col]
                    .norm()
                    .partial_cmp(&a[y][col].norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })?;
            if a[pivot][col].norm() <= T::min_positive_value() {
                return None;
            }
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inv();
            for j in 0..4 {
                a[col][j] *= p;
                inv[col][j] *= p;
            }
            for row in 0..4 {
                if row != col {
                    let f = a[row][col];
                    if f.is_zero() {
                        continue;
                    }
                    for j in 0..4 {
                        a[row][j] -= f * a[col][j];
                        inv[row][j] -= f * inv[col][j];
                    }
                }
            }
        }
        Some(Self(inv))
    }

    /// Matrix exponential by scaling and squaring of a Taylor series.
    pub fn exp(&self) -> Self {
        expm(self)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }
}

impl<T: Real> RMat4<T> {
    pub fn zero() -> Self {
        Self([[T::zero(); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = T::one();
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn scale(&self, k: T) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= k);
        m
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().flatten().fold(T::zero(), |m, z| m.max(z.abs()))
    }

    pub fn norm1(&self) -> T {
        (0..4)
            .map(|j| (0..4).fold(T::zero(), |s, i| s + self.0[i][j].abs()))
            .fold(T::zero(), |m, v| m.max(v))
    }

    pub fn column(&self, j: usize) -> [T; 4] {
        [self.0[0][j], self.0[1][j], self.0[2][j], self.0[3][j]]
    }

    pub fn apply(&self, v: &[T; 4]) -> [T; 4] {
        let mut out = [T::zero(); 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).fold(T::zero(), |s, j| s + self.0[i][j] * v[j]);
        }
        out
    }

    /// Inverse of a Lorentz matrix, eta * L^T * eta.
    pub fn lorentz_inverse(&self) -> Self {
        let mut m = self.transpose();
        for i in 0..4 {
            for j in 0..4 {
                if (i == 0) != (j == 0) {
                    m.0[i][j] = -m.0[i][j];
                }
            }
        }
        m
    }

    pub fn exp(&self) -> Self {
        expm(self)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }
}

macro_rules! impl_matrix_ops {
    ($name:ident, $elem:ty) => {
        impl<T: Real> Add for $name<T> {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                let mut m = self;
                for i in 0..4 {
                    for j in 0..4 {
                        m.0[i][j] += rhs.0[i][j];
                    }
                }
                m
            }
        }

        impl<T: Real> Sub for $name<T> {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                let mut m = self;
                for i in 0..4 {
                    for j in 0..4 {
                        m.0[i][j] -= rhs.0[i][j];
                    }
                }
                m
            }
        }

        impl<T: Real> Neg for $name<T> {
            type Output = Self;
            fn neg(self) -> Self {
                let mut m = self;
                m.0.iter_mut().flatten().for_each(|z| *z = -*z);
                m
            }
        }

        impl<T: Real> Mul for $name<T> {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                let mut m = Self::zero();
                for i in 0..4 {
                    for k in 0..4 {
                        let a = self.0[i][k];
                        for j in 0..4 {
                            m.0[i][j] += a * rhs.0[k][j];
                        }
                    }
                }
                m
            }
        }

        impl<T: Real> Index<(usize, usize)> for $name<T> {
            type Output = $elem;
            fn index(&self, (i, j): (usize, usize)) -> &$elem {
                &self.0[i][j]
            }
        }

        impl<T: Real> IndexMut<(usize, usize)> for $name<T> {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut $elem {
                &mut self.0[i][j]
            }
        }

        impl<T: Real> SquareMatrix for $name<T> {
            type Scalar = T;
            fn identity() -> Self {
                $name::identity()
            }
            fn scale_by(&self, k: T) -> Self {
                let mut m = *self;
                m.0.iter_mut().flatten().for_each(|z| *z *= k);
                m
            }
            fn norm1(&self) -> T {
                $name::norm1(self)
            }
        }
    };
}

pub(crate) trait SquareMatrix: Copy + Add<Output = Self> + Mul<Output = Self> {
    type Scalar: Real;
    fn identity() -> Self;
    fn scale_by(&self, k: Self::Scalar) -> Self;
    fn norm1(&self) -> Self::Scalar;
}

impl_matrix_ops!(CMat4, Complex<T>);
impl_matrix_ops!(RMat4, T);

/// Scaling and squaring: reduce the norm below 1/2, sum the Taylor series
/// until terms drop under machine precision, then square back.
pub(crate) fn expm<T: Real, M: SquareMatrix<Scalar = T>>(a: &M) -> M {
    let half: T = lit(0.5);
    let norm = a.norm1();
    let mut squarings = 0u32;
    let mut scaled = *a;
    if norm > half {
        squarings = (norm / half).log2().ceil().to_u32().unwrap_or(0);
        scaled = a.scale_by(lit::<T>(2.0).powi(-(squarings as i32)));
    }
    let tiny = T::epsilon() * lit::<T>(1e-3);
    let mut sum = M::identity();
    let mut term = M::identity();
    for k in 1..40 {
        term = (term * scaled).scale_by(T::one() / T::from_u32(k).unwrap());
        sum = sum + term;
        if term.norm1() <= tiny {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}
