//! Central differences with one Richardson step over `{h, h/2}`.

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative<T> {
    pub value: T,
    /// `|R - D(h/2)|`, the correction applied by the extrapolation.
    pub error: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    First,
    Second,
}

/// Base step for an evaluation point `s`.
pub fn base_step<T: Real>(s: T, order: Order) -> T {
    let h = T::lit(match order {
        Order::First => T::FD_STEP,
        Order::Second => T::FD2_STEP,
    });
    h.max(h * s.abs())
}

pub fn derivative<T: Real, F: Fn(T) -> T>(f: F, s: T, order: Order) -> Derivative<T> {
    derivative_with_step(f, s, order, base_step(s, order))
}

pub fn derivative_with_step<T: Real, F: Fn(T) -> T>(f: F, s: T, order: Order, h: T) -> Derivative<T> {
    let half = T::lit(0.5);
    let d = |h: T| match order {
        Order::First => (f(s + h) - f(s - h)) / (h + h),
        Order::Second => (f(s + h) - (f(s) + f(s)) + f(s - h)) / (h * h),
    };
    let coarse = d(h);
    let fine = d(h * half);
    let value = (T::lit(4.0) * fine - coarse) / T::lit(3.0);
    Derivative { value, error: (value - fine).abs() }
}

/// First derivative of every component of a vector-valued `f`, sharing the
/// four stencil evaluations.
pub fn derivative_vec<T: Real, F: Fn(T) -> Vec<T>>(f: F, s: T, h: T) -> Vec<Derivative<T>> {
    let half = h * T::lit(0.5);
    let (p1, m1, p2, m2) = (f(s + h), f(s - h), f(s + half), f(s - half));
    (0..p1.len())
        .map(|i| {
            let coarse = (p1[i] - m1[i]) / (h + h);
            let fine = (p2[i] - m2[i]) / (half + half);
            let value = (T::lit(4.0) * fine - coarse) / T::lit(3.0);
            Derivative { value, error: (value - fine).abs() }
        })
        .collect()
}
