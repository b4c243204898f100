//! Asymptotic phases `phibar_j` of the sphere self-similar family, the
//! resulting bounds on the Lagrangian angle, and inversion of
//! `Phi : a -> phibar`.
//!
//! `phibar_j = int_0^inf t / ((1/a_j + t^2) sqrt(E prod_k (1 + a_k t^2) e^{alpha t^2} - 1)) dt`.

use std::cell::Cell;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{integrate_semi_infinite, newton_solve, NewtonOptions};
use crate::params::{Family, FamilyParams};
use crate::scalar::{inv_sqrt_expm1, Real};

pub const PHI_BAR_TOL: f64 = 1e-10;
/// Quadrature tolerance used inside the Newton iteration.
const INNER_TOL: f64 = 1e-13;
pub const INVERT_TOL: f64 = 1e-8;
const MAX_NEWTON_ITER: usize = 60;
const RESTART_SCALES: [f64; 3] = [0.1, 10.0, 100.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillationBounds<T> {
    pub lower_1: T,
    pub upper_1: T,
    pub lower_2: T,
    pub upper_2: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inversion<T> {
    pub a: Vec<T>,
    /// `max_j |phibar_j(a) - target_j|`.
    pub residual: T,
    pub iterations: usize,
    /// Starting point scale that converged (1 for the first attempt).
    pub start_scale: T,
}

/// `arctan(1 / sqrt(E - 1))`, the limit of `arg f` as `s -> 0+`.
pub fn angle_cap<T: Real>(e: T) -> T {
    (e - T::one()).sqrt().recip().atan()
}

fn check_inputs<T: Real>(a: &[T], e: T, alpha: T) -> Result<()> {
    if a.is_empty() {
        return Err(Error::InvalidInput("a must have at least one entry".into()));
    }
    if a.iter().any(|x| !(*x > T::zero() && x.is_finite())) {
        return Err(Error::InvalidInput("every a_j must be positive and finite".into()));
    }
    if !(e > T::one() && e.is_finite()) {
        return Err(Error::InvalidInput("E must exceed 1".into()));
    }
    if !(alpha >= T::zero() && alpha.is_finite()) {
        return Err(Error::InvalidInput("alpha must be finite and non-negative".into()));
    }
    Ok(())
}

fn phi_bar_tol<T: Real>(a: &[T], e: T, alpha: T, tol: T) -> Result<Vec<T>> {
    check_inputs(a, e, alpha)?;
    let log_p = |t: T| {
        let t2 = t * t;
        a.iter().fold(e.ln() + alpha * t2, |acc, ak| acc + (*ak * t2).ln_1p())
    };
    (0..a.len())
        .map(|j| {
            let aj = a[j].recip();
            let q = integrate_semi_infinite(|t| t * inv_sqrt_expm1(log_p(t)) / (aj + t * t), T::zero(), tol)?;
            Ok(q.value)
        })
        .collect()
}

/// `phibar_j` for `n = a.len()`.
pub fn phi_bar<T: Real>(a: &[T], e: T, alpha: T) -> Result<Vec<T>> {
    phi_bar_tol(a, e, alpha, T::tol(PHI_BAR_TOL))
}

/// Bounds `lower_1 < theta_1 < upper_1` on `s > 0` and
/// `lower_2 < theta_2 < upper_2` on `s < 0`.
pub fn oscillation_bounds<T: Real>(params: &FamilyParams<T>) -> Result<OscillationBounds<T>> {
    if params.family != Family::SphereSelfSimilar {
        return Err(Error::WrongFamily { expected: Family::SphereSelfSimilar, found: params.family });
    }
    if !(params.alpha > T::zero()) {
        return Err(Error::WrongParameters("oscillation bounds need alpha > 0".into()));
    }
    let violations = params.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidParams(violations));
    }
    let pb = phi_bar(&params.a, params.e, params.alpha)?;
    Ok(bounds_from(params.psi.iter().copied().sum(), pb.iter().copied().sum(), params.e))
}

pub(crate) fn bounds_from<T: Real>(psi_sum: T, phi_bar_sum: T, e: T) -> OscillationBounds<T> {
    let cap = angle_cap(e);
    OscillationBounds {
        lower_1: psi_sum + phi_bar_sum,
        upper_1: psi_sum + cap,
        lower_2: psi_sum + T::PI() - cap,
        upper_2: psi_sum + T::PI() - phi_bar_sum,
    }
}

/// Solves `phibar(a) = target` by damped Newton from `a = 1`, restarting
/// from `a = 0.1, 10, 100` on failure.
pub fn invert_phi<T: Real>(target: &[T], e: T, alpha: T) -> Result<Inversion<T>> {
    check_inputs(&vec![T::one(); target.len()], e, alpha)?;
    let cap = angle_cap(e);
    let sum: T = target.iter().copied().sum();
    if target.iter().any(|t| !(*t > T::zero() && *t < cap)) || !(sum < cap) {
        return Err(Error::TargetOutsideImage);
    }
    let lo = Cell::new(T::infinity());
    let hi = Cell::new(T::zero());
    let residual = |a: &[T]| -> Result<Vec<T>> {
        for x in a {
            lo.set(lo.get().min(*x));
            hi.set(hi.get().max(*x));
        }
        let pb = phi_bar_tol(a, e, alpha, T::tol(INNER_TOL))?;
        Ok(pb.iter().zip(target).map(|(p, t)| *p - *t).collect())
    };
    let opts = NewtonOptions::new(T::tol(INVERT_TOL), MAX_NEWTON_ITER).positive();
    let mut last = Error::NoConvergence { iterations: 0, residual: f64::INFINITY };
    for scale in std::iter::once(1.0).chain(RESTART_SCALES) {
        let x0 = vec![T::lit(scale); target.len()];
        match newton_solve(residual, &x0, &opts) {
            Ok(out) => {
                return Ok(Inversion {
                    a: out.x,
                    residual: out.residual,
                    iterations: out.iterations,
                    start_scale: T::lit(scale),
                })
            }
            Err(err) => last = err,
        }
    }
    if lo.get() < T::lit(1e-8) || hi.get() > T::lit(1e8) {
        return Err(Error::TargetOutsideImage);
    }
    Err(last)
}
