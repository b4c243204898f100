//! Numerical kernels: quadrature, finite differences, bracketing, Newton.

pub mod diff;
pub mod linalg;
pub mod newton;
pub mod quadrature;
pub mod roots;

pub use diff::{derivative, derivative_vec, derivative_with_step, Derivative, Order};
pub use newton::{newton_solve, NewtonOptions, NewtonOutcome};
pub use quadrature::{integrate, integrate_semi_infinite, integrate_with, QuadratureOptions, QuadratureResult};
