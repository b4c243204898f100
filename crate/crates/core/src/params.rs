//! Family parameters, their validation, and the admissible `s`-interval.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::roots::first_exit;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Quadric self-similar family, `C H = alpha F^perp`.
    QuadricSelfSimilar,
    /// Sphere self-similar family over `R - {0}`, `H = alpha F^perp`.
    SphereSelfSimilar,
    /// Quadric translating soliton with `T = (0, ..., 0, alpha)`.
    QuadricTranslator,
    /// Sphere-like translating soliton over `R - {0}`.
    SphereTranslator,
}

impl Family {
    pub const ALL: [Family; 4] =
        [Family::QuadricSelfSimilar, Family::SphereSelfSimilar, Family::QuadricTranslator, Family::SphereTranslator];

    pub fn is_translator(self) -> bool {
        matches!(self, Family::QuadricTranslator | Family::SphereTranslator)
    }

    pub fn is_sphere(self) -> bool {
        matches!(self, Family::SphereSelfSimilar | Family::SphereTranslator)
    }

    /// Number of profile curves `omega_j` for ambient dimension `n`.
    pub fn profile_count(self, n: usize) -> usize {
        if self.is_translator() {
            n.saturating_sub(1)
        } else {
            n
        }
    }
}

/// Constants defining one family instance. Field names match the JSON
/// config keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams<T> {
    pub family: Family,
    pub n: usize,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<T>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<T>>,
    #[serde(rename = "E")]
    pub e: T,
    pub a: Vec<T>,
    pub alpha: T,
    pub psi: Vec<T>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Complex<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub field: String,
    pub reason: String,
}

impl Violation {
    fn new(field: &str, reason: impl Into<String>) -> Self {
        Self { field: field.to_string(), reason: reason.into() }
    }
}

impl<T: Real> FamilyParams<T> {
    pub fn m(&self) -> usize {
        self.family.profile_count(self.n)
    }

    /// `lambda_j`, identically one for sphere families.
    pub fn lambda(&self) -> Vec<T> {
        match (&self.lambda, self.family.is_sphere()) {
            (Some(l), false) => l.clone(),
            _ => vec![T::one(); self.m()],
        }
    }

    pub fn b(&self) -> T {
        self.b.unwrap_or_else(T::zero)
    }

    /// Quadric level; one for the sphere self-similar family.
    pub fn c(&self) -> T {
        match self.family {
            Family::SphereSelfSimilar => T::one(),
            _ => self.c.unwrap_or_else(T::zero),
        }
    }

    pub fn k(&self) -> Complex<T> {
        self.k.unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Constant translating vector `T = (0, ..., 0, alpha)`.
    pub fn translating_vector(&self) -> Vec<Complex<T>> {
        let mut t = vec![Complex::new(T::zero(), T::zero()); self.n];
        if let Some(last) = t.last_mut() {
            *last = Complex::new(self.alpha, T::zero());
        }
        t
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(self)
    }

    pub fn domain_interval(&self) -> Result<DomainInterval<T>> {
        domain_interval(self)
    }
}

pub fn validate<T: Real>(p: &FamilyParams<T>) -> Vec<Violation> {
    let mut out = Vec::new();
    let fam = p.family;
    if p.n == 0 {
        out.push(Violation::new("n", "n must be positive"));
    }
    if fam.is_translator() && p.n < 2 {
        out.push(Violation::new("n", "translator families need n >= 2"));
    }
    let m = p.m();
    if !(p.e > T::one()) {
        out.push(Violation::new("E", "E must exceed 1"));
    }
    if !p.alpha.is_finite() {
        out.push(Violation::new("alpha", "alpha must be finite"));
    }
    if fam.is_sphere() && p.alpha < T::zero() {
        out.push(Violation::new("alpha", "alpha >= 0 required for sphere families"));
    }
    if p.a.len() != m {
        out.push(Violation::new("a", format!("expected {m} entries, found {}", p.a.len())));
    }
    if p.a.iter().any(|&x| !(x > T::zero()) || !x.is_finite()) {
        out.push(Violation::new("a", "every a_j must be positive"));
    }
    if p.psi.len() != m {
        out.push(Violation::new("psi", format!("expected {m} entries, found {}", p.psi.len())));
    }
    if p.psi.iter().any(|x| !x.is_finite()) {
        out.push(Violation::new("psi", "every psi_j must be finite"));
    }
    match (&p.lambda, fam.is_sphere()) {
        (None, false) => out.push(Violation::new("lambda", "required for quadric families")),
        (Some(l), false) => {
            if l.len() != m {
                out.push(Violation::new("lambda", format!("expected {m} entries, found {}", l.len())));
            }
            if l.iter().any(|&x| x == T::zero() || !x.is_finite()) {
                out.push(Violation::new("lambda", "every lambda_j must be nonzero"));
            }
        }
        (Some(l), true) => {
            if l.len() != m || l.iter().any(|&x| x != T::one()) {
                out.push(Violation::new("lambda", "sphere families need lambda identically 1"));
            }
        }
        (None, true) => {}
    }
    let quadric = !fam.is_sphere();
    match p.b {
        Some(b) if quadric && (b == T::zero() || !b.is_finite()) => out.push(Violation::new("B", "B must be nonzero")),
        None if quadric => out.push(Violation::new("B", "required for quadric families")),
        Some(_) if !quadric => out.push(Violation::new("B", "not used by sphere families")),
        _ => {}
    }
    let needs_c = fam == Family::QuadricSelfSimilar;
    match p.c {
        Some(c) if needs_c && (c == T::zero() || !c.is_finite()) => out.push(Violation::new("C", "C must be nonzero")),
        None if needs_c => out.push(Violation::new("C", "required for QuadricSelfSimilar")),
        Some(_) if !needs_c => out.push(Violation::new("C", "only used by QuadricSelfSimilar")),
        _ => {}
    }
    if p.k.is_some() && fam != Family::QuadricTranslator {
        out.push(Violation::new("K", "only used by QuadricTranslator"));
    }
    out
}

/// Open interval `(s_min, s_max)` containing 0; endpoints may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainInterval<T> {
    pub s_min: T,
    pub s_max: T,
}

impl<T: Real> DomainInterval<T> {
    pub fn contains(&self, s: T) -> bool {
        s > self.s_min && s < self.s_max
    }

    /// Distance-from-endpoint test with margin `1e-6 (1 + |endpoint|)`.
    pub fn strictly_contains(&self, s: T) -> bool {
        let margin = |e: T| T::lit(1e-6) * (T::one() + e.abs());
        let lo_ok = !self.s_min.is_finite() || s >= self.s_min + margin(self.s_min);
        let hi_ok = !self.s_max.is_finite() || s <= self.s_max - margin(self.s_max);
        lo_ok && hi_ok
    }

    /// The interval clipped to `[-limit, limit]`.
    pub fn truncated(&self, limit: T) -> (T, T) {
        (self.s_min.max(-limit), self.s_max.min(limit))
    }
}

pub(crate) const SEARCH_LIMIT: f64 = 1e9;
/// Bisection runs down to adjacent floats.
pub(crate) const ENDPOINT_TOL: f64 = 0.0;

/// `log(E prod_k (1 + 2 a_k B lambda_k s) e^{2 B alpha s})`, `-inf` once a
/// factor is non-positive.
pub(crate) fn quadric_log_p<T: Real>(e: T, a: &[T], lambda: &[T], b: T, alpha: T, s: T) -> T {
    let two = T::lit(2.0);
    let mut acc = e.ln() + two * b * alpha * s;
    for (ak, lk) in a.iter().zip(lambda) {
        let x = two * *ak * b * *lk * s;
        if x <= -T::one() {
            return T::neg_infinity();
        }
        acc = acc + x.ln_1p();
    }
    acc
}

/// Both positivity conditions of the quadric families at `s`.
pub(crate) fn quadric_conditions_hold<T: Real>(p: &FamilyParams<T>, s: T) -> bool {
    let lambda = p.lambda();
    let two = T::lit(2.0);
    let b = p.b();
    let linear = p.a.iter().zip(&lambda).all(|(a, l)| a.recip() + two * *l * b * s > T::zero());
    linear && quadric_log_p(p.e, &p.a, &lambda, b, p.alpha, s) > T::zero()
}

pub fn domain_interval<T: Real>(p: &FamilyParams<T>) -> Result<DomainInterval<T>> {
    if p.family.is_sphere() {
        return Ok(DomainInterval { s_min: T::neg_infinity(), s_max: T::infinity() });
    }
    if !quadric_conditions_hold(p, T::zero()) {
        return Err(Error::ConditionViolatedAtZero);
    }
    let inside = |s: T| quadric_conditions_hold(p, s);
    let limit = T::lit(SEARCH_LIMIT);
    let tol = T::lit(ENDPOINT_TOL);
    let s_max = first_exit(inside, T::zero(), T::one(), limit, tol).unwrap_or_else(T::infinity);
    let s_min = first_exit(inside, T::zero(), -T::one(), limit, tol).unwrap_or_else(T::neg_infinity);
    Ok(DomainInterval { s_min, s_max })
}
