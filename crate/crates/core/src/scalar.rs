//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating point scalar (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssign
        + Default
        + Debug
        + Display
        + LowerExp
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(v: f64) -> T {
    T::from_f64(v).expect("literal representable in scalar type")
}

#[inline]
pub fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn re<T: Real>(v: T) -> Complex<T> {
    Complex::new(v, T::zero())
}

#[inline]
pub fn imag_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// Wraps an angle into (-pi, pi].
pub fn wrap_angle<T: Real>(a: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut w = a % two_pi;
    if w > T::PI() {
        w -= two_pi;
    } else if w <= -T::PI() {
        w += two_pi;
    }
    w
}
