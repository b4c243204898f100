//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! Everything generic is written against [`Real`], which is implemented for
//! `f32` and `f64`. The tolerances quoted throughout the crate are tuned for
//! `f64`; `f32` instantiations work but naturally resolve far less.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub use num_complex::Complex;

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static
{
    /// Base step of first-order central differences.
    const FD_STEP: f64;
    /// Base step of second-order central differences.
    const FD2_STEP: f64;
    /// Smallest absolute tolerance worth requesting from an iterative routine.
    const TOL_FLOOR: f64;

    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// A requested tolerance, raised to [`Self::TOL_FLOOR`].
    #[inline]
    fn tol(x: f64) -> Self {
        Self::lit(x.max(Self::TOL_FLOOR))
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const FD_STEP: f64 = 1e-5;
    const FD2_STEP: f64 = 1e-3;
    const TOL_FLOOR: f64 = 0.0;
}

impl Real for f32 {
    const FD_STEP: f64 = 1e-2;
    const FD2_STEP: f64 = 5e-2;
    const TOL_FLOOR: f64 = 1e-5;
}

/// `1 / sqrt(exp(x) - 1)` without overflow for large `x`.
#[inline]
pub fn inv_sqrt_expm1<T: Real>(x: T) -> T {
    if x > T::lit(40.0) {
        (-x * T::lit(0.5)).exp()
    } else {
        x.exp_m1().sqrt().recip()
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut t = theta % two_pi;
    if t <= -T::PI() {
        t = t + two_pi;
    } else if t > T::PI() {
        t = t - two_pi;
    }
    t
}

/// Distance between two angles on the unit circle, `|e^{ia} - e^{ib}|`.
pub fn angle_gap<T: Real>(a: T, b: T) -> T {
    let d = a - b;
    Complex::new(d.cos() - T::one(), d.sin()).norm()
}

pub(crate) fn cnorm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Real inner product `Re sum u_i conj(v_i)` on `C^n = R^{2n}`.
pub(crate) fn re_inner<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> T {
    u.iter().zip(v).map(|(a, b)| (a * b.conj()).re).sum()
}
