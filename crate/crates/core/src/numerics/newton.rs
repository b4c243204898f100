//! Damped Newton iteration with a finite-difference Jacobian.

use crate::error::{Error, Result};
use crate::numerics::linalg::{condition_1, Lu};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions<T> {
    pub tol: T,
    pub max_iter: usize,
    /// Keep iterates in the open positive orthant.
    pub positive: bool,
    /// Relative forward-difference step for the Jacobian.
    pub fd_rel_step: T,
    pub max_condition: T,
}

impl<T: Real> NewtonOptions<T> {
    pub fn new(tol: T, max_iter: usize) -> Self {
        Self { tol, max_iter, positive: false, fd_rel_step: T::lit(1e-6), max_condition: T::lit(1e12) }
    }

    pub fn positive(mut self) -> Self {
        self.positive = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOutcome<T> {
    pub x: Vec<T>,
    pub residual: T,
    pub iterations: usize,
}

fn inf_norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

pub fn newton_solve<T, G>(g: G, x0: &[T], opts: &NewtonOptions<T>) -> Result<NewtonOutcome<T>>
where
    T: Real,
    G: Fn(&[T]) -> Result<Vec<T>>,
{
    let m = x0.len();
    let mut x = x0.to_vec();
    let mut gx = g(&x)?;
    let mut res = inf_norm(&gx);
    for iter in 0..opts.max_iter {
        if res <= opts.tol {
            return Ok(NewtonOutcome { x, residual: res, iterations: iter });
        }
        let mut jac = vec![vec![T::zero(); m]; m];
        for k in 0..m {
            let h = opts.fd_rel_step * x[k].abs().max(T::one());
            let mut xp = x.clone();
            xp[k] = x[k] + h;
            if opts.positive && xp[k] <= T::zero() {
                xp[k] = x[k] - h;
            }
            let step = xp[k] - x[k];
            let gp = g(&xp)?;
            for i in 0..m {
                jac[i][k] = (gp[i] - gx[i]) / step;
            }
        }
        let cond = condition_1(&jac);
        if !(cond <= opts.max_condition) {
            return Err(Error::SingularJacobian { condition: cond.to_f64_lossy() });
        }
        let rhs: Vec<T> = gx.iter().map(|v| -*v).collect();
        let dx = Lu::new(jac).solve(&rhs).ok_or(Error::SingularJacobian { condition: f64::INFINITY })?;

        let mut lambda = T::one();
        if opts.positive {
            for k in 0..m {
                if dx[k] < T::zero() {
                    lambda = lambda.min(T::lit(0.9) * x[k] / -dx[k]);
                }
            }
        }
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<T> = x.iter().zip(&dx).map(|(xi, di)| *xi + lambda * *di).collect();
            if let Ok(gt) = g(&trial) {
                let rt = inf_norm(&gt);
                if rt < res {
                    accepted = Some((trial, gt, rt));
                    break;
                }
            }
            lambda = lambda * T::lit(0.5);
        }
        match accepted {
            Some((xn, gn, rn)) => {
                x = xn;
                gx = gn;
                res = rn;
            }
            None => {
                return Err(Error::NoConvergence { iterations: iter + 1, residual: res.to_f64_lossy() });
            }
        }
    }
    if res <= opts.tol {
        Ok(NewtonOutcome { x, residual: res, iterations: opts.max_iter })
    } else {
        Err(Error::NoConvergence { iterations: opts.max_iter, residual: res.to_f64_lossy() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_scalar() {
        let out = newton_solve(|x: &[f64]| Ok(vec![x[0] - 2.0]), &[1.0], &NewtonOptions::new(1e-12, 50)).unwrap();
        assert!((out.x[0] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn hand_solvable_system() {
        let g = |x: &[f64]| Ok(vec![x[0] * x[0] - 1.0, x[1] - x[0]]);
        let out = newton_solve(g, &[2.0, 2.0], &NewtonOptions::new(1e-12, 50)).unwrap();
        assert!((out.x[0] - 1.0).abs() < 1e-9 && (out.x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn positivity_projection_keeps_orthant() {
        // Full Newton from 10 would jump to about -4.9; the projection keeps x > 0.
        let g = |x: &[f64]| {
            assert!(x[0] > 0.0);
            Ok(vec![x[0].ln()])
        };
        let out = newton_solve(g, &[10.0], &NewtonOptions::new(1e-12, 100).positive()).unwrap();
        assert!((out.x[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn singular_jacobian_reported() {
        let g = |x: &[f64]| Ok(vec![x[0] + x[1] - 1.0, 2.0 * x[0] + 2.0 * x[1] - 2.0 + 1e-3]);
        let err = newton_solve(g, &[0.0, 0.0], &NewtonOptions::new(1e-12, 20)).unwrap_err();
        assert!(matches!(err, Error::SingularJacobian { .. }));
    }

    #[test]
    fn no_convergence_for_rootless_map() {
        let g = |x: &[f64]| Ok(vec![x[0] * x[0] + 1.0]);
        let err = newton_solve(g, &[0.5], &NewtonOptions::new(1e-12, 30)).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. } | Error::SingularJacobian { .. }));
    }
}
