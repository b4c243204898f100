//! Profile curves `omega_j(s) = r_j(s) e^{i phi_j(s)}` of each family and
//! the ODE residuals they must satisfy.
//!
//! For a generator `g` (`f` for self-similar families, `beta'` for
//! translators) the profile solves `omega_j' = lambda_j g / conj(omega_j)`.
//! Its modulus is closed form, `r_j^2 = alpha_j + lambda_j u` with
//! `u = 2 int_0^s Re g`, and its phase is the quadrature
//! `phi_j = psi_j + int_0^s lambda_j Im g / (alpha_j + lambda_j u)`.
//!
//! A [`ProfileCurve`] precomputes the phase at a fixed set of checkpoints
//! when it is built and is immutable afterwards, so it can be shared across
//! threads. Queries integrate only from the nearest checkpoint.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{derivative_vec, diff, integrate, Order};
use crate::params::{domain_interval, quadric_log_p, DomainInterval, Family, FamilyParams};
use crate::scalar::{inv_sqrt_expm1, Real};

/// Number of uniform checkpoint intervals.
pub const CHECKPOINTS: usize = 128;
/// Checkpoints cover the domain clipped to `|s| <= CACHE_SPAN`.
pub const CACHE_SPAN: f64 = 10.0;
/// Phase accuracy promised by [`ProfileCurve::evaluate`].
pub const PHASE_TOL: f64 = 1e-10;
const SEGMENT_TOL: f64 = 1e-12;
const LOCAL_TOL: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
enum Generator<T> {
    /// `B + i |B| / sqrt(P - 1)`, `P = E prod(1 + 2 a_k B lambda_k s) e^{2 B alpha s}`.
    Quadric {
        b: T,
    },
    /// `s + i |s| / sqrt(P - 1)`, `P = E prod(1 + a_k s^2) e^{alpha s^2}`.
    Sphere,
    Constant(Complex<T>),
}

#[derive(Debug, Clone)]
struct Checkpoint<T> {
    s: T,
    /// `phi_j - psi_j` at `s`.
    phase: Vec<T>,
    /// `int_0^s Im g`.
    beta_im: T,
    error: T,
}

/// Evaluated profile data at one parameter value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfilePoint<T> {
    pub s: T,
    pub r: Vec<T>,
    pub phi: Vec<T>,
    pub omega: Vec<Complex<T>>,
    /// `f(s)` for self-similar families, `beta'(s)` for translators.
    pub generator: Complex<T>,
    pub u: T,
    /// `beta(s)` for translator families.
    pub beta: Option<Complex<T>>,
    /// Accumulated quadrature error bound of the phases.
    pub phase_error: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeResidual<T> {
    /// `max_j |omega_j'(FD) - lambda_j g / conj(omega_j)|`.
    pub profile: T,
    /// `|sum_j lambda_j Im g / (alpha_j + lambda_j u) + (arg g)' + alpha Im g|`.
    pub angle: T,
}

#[derive(Debug, Clone)]
pub struct ProfileCurve<T> {
    params: FamilyParams<T>,
    generator: Generator<T>,
    lambda: Vec<T>,
    alpha_j: Vec<T>,
    domain: DomainInterval<T>,
    beta0: Option<Complex<T>>,
    checkpoints: Vec<Checkpoint<T>>,
    phase_drift: Option<(usize, T)>,
}

impl<T: Real> ProfileCurve<T> {
    pub fn new(params: &FamilyParams<T>) -> Result<Self> {
        let violations = params.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidParams(violations));
        }
        let domain = domain_interval(params)?;
        let generator =
            if params.family.is_sphere() { Generator::Sphere } else { Generator::Quadric { b: params.b() } };
        let beta0 = match params.family {
            Family::QuadricTranslator => Some(params.k()),
            Family::SphereTranslator => Some(Complex::new(T::zero(), T::zero())),
            _ => None,
        };
        let alpha_j = params.a.iter().map(|a| a.recip()).collect();
        Self::build(params.clone(), generator, alpha_j, domain, beta0)
    }

    /// A profile driven by a constant generator `g`, e.g. the `g = i`
    /// circles `omega_j = sqrt(alpha_j) e^{i (psi_j + lambda_j s / alpha_j)}`.
    /// Uses `lambda`, `C`, `alpha` and `psi` from `params`; `a`, `E` and `B`
    /// are ignored.
    pub fn with_constant_generator(params: &FamilyParams<T>, g: Complex<T>, alpha_j: Vec<T>) -> Result<Self> {
        if g == Complex::new(T::zero(), T::zero()) {
            return Err(Error::InvalidInput("generator must be nonzero".into()));
        }
        let lambda = params.lambda();
        if lambda.len() != alpha_j.len() || params.psi.len() != alpha_j.len() || params.family.is_translator() {
            return Err(Error::InvalidInput(
                "constant generator needs a self-similar family with matching lengths".into(),
            ));
        }
        if alpha_j.iter().any(|&x| !(x > T::zero())) {
            return Err(Error::InvalidInput("alpha_j must be positive".into()));
        }
        // r_j^2 = alpha_j + 2 lambda_j Re(g) s > 0.
        let two = T::lit(2.0);
        let mut domain = DomainInterval { s_min: T::neg_infinity(), s_max: T::infinity() };
        for (l, aj) in lambda.iter().zip(&alpha_j) {
            let slope = two * *l * g.re;
            if slope > T::zero() {
                domain.s_min = domain.s_min.max(-*aj / slope);
            } else if slope < T::zero() {
                domain.s_max = domain.s_max.min(-*aj / slope);
            }
        }
        Self::build(params.clone(), Generator::Constant(g), alpha_j, domain, None)
    }

    fn build(
        params: FamilyParams<T>,
        generator: Generator<T>,
        alpha_j: Vec<T>,
        domain: DomainInterval<T>,
        beta0: Option<Complex<T>>,
    ) -> Result<Self> {
        let lambda = params.lambda();
        let mut curve = ProfileCurve {
            params,
            generator,
            lambda,
            alpha_j,
            domain,
            beta0,
            checkpoints: Vec::new(),
            phase_drift: None,
        };
        curve.checkpoints = curve.build_checkpoints()?;
        Ok(curve)
    }

    fn build_checkpoints(&self) -> Result<Vec<Checkpoint<T>>> {
        let span = T::lit(CACHE_SPAN);
        let margin = |e: T| T::lit(1e-6) * (T::one() + e.abs());
        let lo = if self.domain.s_min.is_finite() { self.domain.s_min + margin(self.domain.s_min) } else { -span };
        let hi = if self.domain.s_max.is_finite() { self.domain.s_max - margin(self.domain.s_max) } else { span };
        let (lo, hi) = (lo.max(-span), hi.min(span));
        let mut nodes: Vec<T> = (0..=CHECKPOINTS)
            .map(|i| lo + (hi - lo) * T::lit(i as f64 / CHECKPOINTS as f64))
            .filter(|s| *s != T::zero())
            .collect();
        nodes.push(T::zero());
        nodes.sort_by(|a, b| a.partial_cmp(b).expect("finite checkpoints"));
        let zero_at = nodes.iter().position(|s| *s == T::zero()).expect("origin node");
        let m = self.lambda.len();
        let origin = Checkpoint { s: T::zero(), phase: vec![T::zero(); m], beta_im: T::zero(), error: T::zero() };
        let mut out: Vec<Option<Checkpoint<T>>> = vec![None; nodes.len()];
        out[zero_at] = Some(origin.clone());
        let tol = T::tol(SEGMENT_TOL);
        let mut prev = origin.clone();
        for idx in zero_at + 1..nodes.len() {
            prev = self.extend(&prev, nodes[idx], tol)?;
            out[idx] = Some(prev.clone());
        }
        prev = origin;
        for idx in (0..zero_at).rev() {
            prev = self.extend(&prev, nodes[idx], tol)?;
            out[idx] = Some(prev.clone());
        }
        Ok(out.into_iter().map(|c| c.expect("every node filled")).collect())
    }

    fn extend(&self, from: &Checkpoint<T>, to: T, tol: T) -> Result<Checkpoint<T>> {
        let mut phase = from.phase.clone();
        let mut error = from.error;
        for (j, p) in phase.iter_mut().enumerate() {
            let q = integrate(|t| self.phase_rate(j, t), from.s, to, tol)?;
            *p = *p + q.value;
            error = error.max(from.error + q.error_bound);
        }
        let mut beta_im = from.beta_im;
        if self.beta0.is_some() {
            let q = integrate(|t| self.generator_at(t).im, from.s, to, tol)?;
            beta_im = beta_im + q.value;
            error = error.max(from.error + q.error_bound);
        }
        Ok(Checkpoint { s: to, phase, beta_im, error })
    }

    /// Injects a phase error `phi_j += rate * s` (test hook for checking that
    /// the verification suite detects broken profiles).
    #[doc(hidden)]
    pub fn with_phase_drift(mut self, j: usize, rate: T) -> Self {
        self.phase_drift = Some((j, rate));
        self
    }

    pub fn params(&self) -> &FamilyParams<T> {
        &self.params
    }

    pub fn family(&self) -> Family {
        self.params.family
    }

    pub fn domain(&self) -> DomainInterval<T> {
        self.domain
    }

    pub fn lambda(&self) -> &[T] {
        &self.lambda
    }

    /// Initial values `r_j(0)^2`.
    pub fn alpha_j(&self) -> &[T] {
        &self.alpha_j
    }

    /// The soliton constant `alpha`.
    pub fn alpha(&self) -> T {
        self.params.alpha
    }

    pub fn is_translator(&self) -> bool {
        self.params.family.is_translator()
    }

    fn is_sphere(&self) -> bool {
        matches!(self.generator, Generator::Sphere)
    }

    /// `log P(s)` for the quadric and sphere generators.
    pub(crate) fn log_p(&self, s: T) -> T {
        let p = &self.params;
        match self.generator {
            Generator::Quadric { b } => quadric_log_p(p.e, &p.a, &self.lambda, b, p.alpha, s),
            Generator::Sphere => {
                let s2 = s * s;
                p.a.iter().fold(p.e.ln() + p.alpha * s2, |acc, a| acc + (*a * s2).ln_1p())
            }
            Generator::Constant(_) => T::infinity(),
        }
    }

    /// Generator without domain checks.
    pub(crate) fn generator_at(&self, s: T) -> Complex<T> {
        match self.generator {
            Generator::Quadric { b } => Complex::new(b, b.abs() * inv_sqrt_expm1(self.log_p(s))),
            Generator::Sphere => Complex::new(s, s.abs() * inv_sqrt_expm1(self.log_p(s))),
            Generator::Constant(g) => g,
        }
    }

    /// `u(s) = 2 int_0^s Re g`.
    pub fn u(&self, s: T) -> T {
        match self.generator {
            Generator::Quadric { b } => T::lit(2.0) * b * s,
            Generator::Sphere => s * s,
            Generator::Constant(g) => T::lit(2.0) * g.re * s,
        }
    }

    /// `u(s)` by direct quadrature of `2 Re g`, independent of [`Self::u`].
    pub fn u_by_quadrature(&self, s: T) -> Result<(T, T)> {
        let q = integrate(|t| T::lit(2.0) * self.generator_at(t).re, T::zero(), s, T::tol(1e-13))?;
        Ok((q.value, q.error_bound))
    }

    fn phase_rate(&self, j: usize, t: T) -> T {
        let g = self.generator_at(t);
        self.lambda[j] * g.im / (self.alpha_j[j] + self.lambda[j] * self.u(t))
    }

    fn check(&self, s: T) -> Result<()> {
        if !self.domain.strictly_contains(s) || !s.is_finite() {
            return Err(Error::OutOfDomain {
                s: s.to_f64_lossy(),
                lo: self.domain.s_min.to_f64_lossy(),
                hi: self.domain.s_max.to_f64_lossy(),
            });
        }
        if self.is_sphere() && s == T::zero() {
            return Err(Error::SphereAtZero);
        }
        Ok(())
    }

    /// Generator `f(s)` or `beta'(s)`.
    pub fn generator(&self, s: T) -> Result<Complex<T>> {
        self.check(s)?;
        Ok(self.generator_at(s))
    }

    fn nearest_checkpoint(&self, s: T) -> &Checkpoint<T> {
        let cps = &self.checkpoints;
        let idx = cps.partition_point(|c| c.s < s);
        match (idx.checked_sub(1).map(|i| &cps[i]), cps.get(idx)) {
            (Some(a), Some(b)) => {
                if (s - a.s).abs() <= (b.s - s).abs() {
                    a
                } else {
                    b
                }
            }
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("checkpoint list always holds the origin"),
        }
    }

    pub fn evaluate(&self, s: T) -> Result<ProfilePoint<T>> {
        self.check(s)?;
        let cp = self.extend(self.nearest_checkpoint(s), s, T::tol(SEGMENT_TOL))?;
        Ok(self.assemble(&cp))
    }

    /// Evaluates at `s` by integrating from an already evaluated `anchor`.
    /// Phase differences between the two points are then accurate to
    /// roundoff, which is what finite-difference stencils need.
    pub fn evaluate_from(&self, anchor: &ProfilePoint<T>, s: T) -> Result<ProfilePoint<T>> {
        self.check(s)?;
        let drift = self.drift(anchor.s);
        let phase = anchor
            .phi
            .iter()
            .zip(&self.params.psi)
            .enumerate()
            .map(|(j, (p, psi))| *p - *psi - if j == drift.0 { drift.1 } else { T::zero() })
            .collect();
        let beta_im = match (anchor.beta, self.beta0) {
            (Some(b), Some(b0)) => b.im - b0.im,
            _ => T::zero(),
        };
        let from = Checkpoint { s: anchor.s, phase, beta_im, error: anchor.phase_error };
        let cp = self.extend(&from, s, T::tol(LOCAL_TOL))?;
        Ok(self.assemble(&cp))
    }

    fn drift(&self, s: T) -> (usize, T) {
        match self.phase_drift {
            Some((j, rate)) => (j, rate * s),
            None => (usize::MAX, T::zero()),
        }
    }

    fn assemble(&self, cp: &Checkpoint<T>) -> ProfilePoint<T> {
        let s = cp.s;
        let u = self.u(s);
        let drift = self.drift(s);
        let r: Vec<T> = self.alpha_j.iter().zip(&self.lambda).map(|(aj, l)| (*aj + *l * u).sqrt()).collect();
        let phi: Vec<T> = cp
            .phase
            .iter()
            .zip(&self.params.psi)
            .enumerate()
            .map(|(j, (p, psi))| *psi + *p + if j == drift.0 { drift.1 } else { T::zero() })
            .collect();
        let omega = r.iter().zip(&phi).map(|(r, p)| Complex::from_polar(*r, *p)).collect();
        let beta = self.beta0.map(|b0| {
            let re = match self.generator {
                Generator::Quadric { b } => b * s,
                Generator::Sphere => T::lit(0.5) * s * s,
                Generator::Constant(g) => g.re * s,
            };
            Complex::new(re + b0.re, cp.beta_im + b0.im)
        });
        ProfilePoint { s, r, phi, omega, generator: self.generator_at(s), u, beta, phase_error: cp.error }
    }

    /// Residuals of the profile ODE and of the angle condition at `s`.
    pub fn ode_residual(&self, s: T) -> Result<OdeResidual<T>> {
        let anchor = self.evaluate(s)?;
        let h = diff::base_step(s, Order::First);
        for probe in [s - h, s + h] {
            self.check(probe)?;
        }
        let omega_parts = |t: T| -> Vec<T> {
            match self.evaluate_from(&anchor, t) {
                Ok(p) => p.omega.iter().flat_map(|w| [w.re, w.im]).collect(),
                Err(_) => vec![T::nan(); 2 * anchor.omega.len()],
            }
        };
        let d = derivative_vec(omega_parts, s, h);
        let g = anchor.generator;
        let profile = (0..anchor.omega.len())
            .map(|j| {
                let fd = Complex::new(d[2 * j].value, d[2 * j + 1].value);
                let rhs = g * self.lambda[j] / anchor.omega[j].conj();
                (fd - rhs).norm()
            })
            .fold(T::zero(), T::max);

        let g0 = self.generator_at(s);
        let arg_rate = diff::derivative_with_step(|t| (self.generator_at(t) / g0).arg(), s, Order::First, h).value;
        let sum: T =
            (0..self.lambda.len()).map(|j| self.lambda[j] * g.im / (self.alpha_j[j] + self.lambda[j] * anchor.u)).sum();
        let angle = (sum + arg_rate + self.params.alpha * g.im).abs();
        Ok(OdeResidual { profile, angle })
    }
}

/// The generator of `params` at `s`.
pub fn generator<T: Real>(s: T, params: &FamilyParams<T>) -> Result<Complex<T>> {
    ProfileCurve::new(params)?.generator(s)
}
