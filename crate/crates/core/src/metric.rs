//! Minkowski metric diag(+1, -1, -1, -1) and the Levi-Civita symbol.
//!
//! Four-vectors are plain `[T; 4]` arrays. Whether the components are
//! contravariant or covariant is a property of the call site; since the
//! metric is diagonal with entries of unit magnitude, lowering and raising
//! are the same operation.

use crate::scalar::Real;

pub type FourVector<T> = [T; 4];

/// Diagonal entry of the metric.
#[inline]
pub fn eta<T: Real>(a: usize) -> T {
    if a == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Full metric as a 4x4 array.
pub fn eta_matrix<T: Real>() -> [[T; 4]; 4] {
    let mut m = [[T::zero(); 4]; 4];
    for (a, row) in m.iter_mut().enumerate() {
        row[a] = eta(a);
    }
    m
}

/// Lowers (or raises) the index of a four-vector.
#[inline]
pub fn lower<T: Real>(v: &FourVector<T>) -> FourVector<T> {
    [v[0], -v[1], -v[2], -v[3]]
}

/// Lorentz inner product of two vectors given with the same index position.
#[inline]
pub fn dot<T: Real>(a: &FourVector<T>, b: &FourVector<T>) -> T {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

/// Contraction of a covariant with a contravariant vector.
#[inline]
pub fn contract<T: Real>(a: &FourVector<T>, b: &FourVector<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Levi-Civita symbol with lowered indices, eps_{0123} = +1.
pub fn levi_civita(a: usize, b: usize, c: usize, d: usize) -> i8 {
    if a == b || a == c || a == d || b == c || b == d || c == d {
        return 0;
    }
    let p = [a, b, c, d];
    let mut sign = 1i8;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Levi-Civita symbol with all four indices raised: eps^{0123} = -1.
#[inline]
pub fn levi_civita_upper(a: usize, b: usize, c: usize, d: usize) -> i8 {
    -levi_civita(a, b, c, d)
}

/// Scalar form of the symbol in the working precision.
#[inline]
pub fn eps<T: Real>(a: usize, b: usize, c: usize, d: usize) -> T {
    T::from_i8(levi_civita(a, b, c, d)).unwrap()
}

#[inline]
pub fn eps_upper<T: Real>(a: usize, b: usize, c: usize, d: usize) -> T {
    T::from_i8(levi_civita_upper(a, b, c, d)).unwrap()
}

/// Euclidean norm of the four components (not Lorentz invariant).
pub fn euclidean_norm4<T: Real>(a: &FourVector<T>) -> T {
    a.iter().fold(T::zero(), |s, x| s + *x * *x).sqrt()
}
