//! Immersions of the quadric and translator ansätze, their frames, and the
//! geometric identities checked on them.
//!
//! Self-similar families live on `{ sum_j lambda_j x_j^2 = C }`; a
//! [`ChartPoint`] stores `x_1 .. x_{n-1}` and the sheet of `x_n`.
//! Translator families use the global chart `x_1 .. x_{n-1}`.
//!
//! Conventions: `<u, v> = Re sum u_i conj(v_i)`, `omega(u, v) = Im sum
//! conj(u_i) v_i`, and `J` is multiplication by `i`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::linalg::{complex_det, Lu, Matrix};
use crate::numerics::{derivative_with_step, diff, Order};
use crate::profile::{ProfileCurve, ProfilePoint};
use crate::scalar::{angle_gap, cnorm, re_inner, Real};

/// Frames with `det g` below this are rejected.
pub const MIN_DET_G: f64 = 1e-14;
/// Smallest admissible `|x_n|` on the self-similar chart.
pub const MIN_XN: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartPoint<T> {
    pub x: Vec<T>,
    pub s: T,
    /// Sheet `x_n > 0`; ignored by translator families.
    pub upper: bool,
}

impl<T: Real> ChartPoint<T> {
    pub fn new(x: Vec<T>, s: T) -> Self {
        ChartPoint { x, s, upper: true }
    }

    pub fn lower(mut self) -> Self {
        self.upper = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryFrame<T> {
    pub point: ChartPoint<T>,
    /// Quadric coordinates with `x_n` filled in (self-similar families).
    pub coords: Vec<T>,
    pub position: Vec<Complex<T>>,
    /// `d/dx_1, .., d/dx_{n-1}, d/ds`.
    pub tangents: Vec<Vec<Complex<T>>>,
    pub metric: Matrix<T>,
    pub det_g: T,
    pub det_jc: Complex<T>,
    /// Sign of the real factor relating `det_jc` to `e^{i theta}`; negative
    /// exactly when `lambda_n x_n < 0`.
    pub orientation: T,
    /// `sum phi_j + arg(generator)`, not reduced.
    pub theta: T,
    pub profile: ProfilePoint<T>,
}

impl<T: Real> GeometryFrame<T> {
    pub fn ds(&self) -> &[Complex<T>] {
        self.tangents.last().expect("frame has a d/ds tangent")
    }

    pub fn g_ss(&self) -> T {
        let k = self.metric.len() - 1;
        self.metric[k][k]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleComparison<T> {
    pub theta_det: T,
    pub theta_closed: T,
    pub orientation: T,
    /// `|e^{i (theta_det - theta_closed')} - 1|` with `theta_closed'`
    /// shifted by `pi` on negatively oriented frames.
    pub gap: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanCurvature<T> {
    /// `theta' / <ds, ds> J ds` with `theta'` by finite differences.
    pub angle: Vec<Complex<T>>,
    /// Trace of the second fundamental form by finite differences.
    pub oracle: Vec<Complex<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FdScheme {
    Central,
    Richardson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Shrinker,
    Expander,
    Cone,
}

/// Quadric coordinates of a chart point.
pub fn coordinates<T: Real>(point: &ChartPoint<T>, curve: &ProfileCurve<T>) -> Result<Vec<T>> {
    let lambda = curve.lambda();
    let free = if curve.is_translator() { lambda.len() } else { lambda.len() - 1 };
    if point.x.len() != free {
        return Err(Error::ChartInvalid(format!("expected {free} chart coordinates, got {}", point.x.len())));
    }
    if point.x.iter().any(|x| !x.is_finite()) {
        return Err(Error::ChartInvalid("non-finite chart coordinate".into()));
    }
    if curve.is_translator() {
        return Ok(point.x.clone());
    }
    let rest: T = point.x.iter().zip(lambda).map(|(x, l)| *l * *x * *x).sum();
    let q = (curve.params().c() - rest) / lambda[free];
    if !(q > T::zero()) {
        return Err(Error::ChartInvalid("(C - sum lambda_j x_j^2) / lambda_n must be positive".into()));
    }
    let xn = if point.upper { q.sqrt() } else { -q.sqrt() };
    if xn.abs() < T::lit(MIN_XN) {
        return Err(Error::ChartInvalid(format!("|x_n| = {:e} is below {MIN_XN:e}", xn.abs())));
    }
    let mut x = point.x.clone();
    x.push(xn);
    Ok(x)
}

fn immerse_with<T: Real>(curve: &ProfileCurve<T>, coords: &[T], pt: &ProfilePoint<T>) -> Vec<Complex<T>> {
    let mut f: Vec<Complex<T>> = coords.iter().zip(&pt.omega).map(|(x, w)| w * *x).collect();
    if let Some(beta) = pt.beta {
        let q: T = coords.iter().zip(curve.lambda()).map(|(x, l)| *l * *x * *x).sum();
        f.push(beta - q * T::lit(0.5));
    }
    f
}

pub fn immerse<T: Real>(point: &ChartPoint<T>, curve: &ProfileCurve<T>) -> Result<Vec<Complex<T>>> {
    let coords = coordinates(point, curve)?;
    let pt = curve.evaluate(point.s)?;
    Ok(immerse_with(curve, &coords, &pt))
}

pub fn frame<T: Real>(point: &ChartPoint<T>, curve: &ProfileCurve<T>) -> Result<GeometryFrame<T>> {
    let coords = coordinates(point, curve)?;
    let pt = curve.evaluate(point.s)?;
    build_frame(point, curve, coords, pt)
}

/// Frame from an already evaluated profile point at `point.s`.
pub fn frame_with_profile<T: Real>(
    point: &ChartPoint<T>,
    curve: &ProfileCurve<T>,
    profile: ProfilePoint<T>,
) -> Result<GeometryFrame<T>> {
    let coords = coordinates(point, curve)?;
    build_frame(point, curve, coords, profile)
}

fn build_frame<T: Real>(
    point: &ChartPoint<T>,
    curve: &ProfileCurve<T>,
    coords: Vec<T>,
    pt: ProfilePoint<T>,
) -> Result<GeometryFrame<T>> {
    let lambda = curve.lambda();
    let m = lambda.len();
    let g = pt.generator;
    let zero = Complex::new(T::zero(), T::zero());
    let omega_dot: Vec<Complex<T>> = (0..m).map(|j| g * lambda[j] / pt.omega[j].conj()).collect();
    let mut tangents = Vec::with_capacity(m + 1);
    let orientation;
    if curve.is_translator() {
        let n = m + 1;
        for j in 0..m {
            let mut v = vec![zero; n];
            v[j] = pt.omega[j];
            v[m] = Complex::new(-lambda[j] * coords[j], T::zero());
            tangents.push(v);
        }
        let mut ds: Vec<Complex<T>> = (0..m).map(|j| omega_dot[j] * coords[j]).collect();
        ds.push(g);
        tangents.push(ds);
        orientation = T::one();
    } else {
        let last = m - 1;
        let ln_xn = lambda[last] * coords[last];
        for j in 0..last {
            let mut v = vec![zero; m];
            v[j] = pt.omega[j];
            v[last] = pt.omega[last] * (-(lambda[j] * coords[j]) / ln_xn);
            tangents.push(v);
        }
        tangents.push((0..m).map(|j| omega_dot[j] * coords[j]).collect());
        orientation = ln_xn.signum();
    }
    let metric = gram(&tangents);
    let det_g = Lu::new(metric.clone()).det();
    if !(det_g >= T::lit(MIN_DET_G)) {
        return Err(Error::DegenerateFrame { det: det_g.to_f64_lossy() });
    }
    let det_jc = complex_det(tangents.clone());
    let position = immerse_with(curve, &coords, &pt);
    Ok(GeometryFrame {
        point: point.clone(),
        coords,
        position,
        tangents,
        metric,
        det_g,
        det_jc,
        orientation,
        theta: theta_of(&pt),
        profile: pt,
    })
}

/// `sum phi_j + arg(generator)` at an evaluated profile point.
pub fn theta_of<T: Real>(pt: &ProfilePoint<T>) -> T {
    pt.phi.iter().copied().sum::<T>() + pt.generator.arg()
}

fn gram<T: Real>(tangents: &[Vec<Complex<T>>]) -> Matrix<T> {
    tangents.iter().map(|u| tangents.iter().map(|v| re_inner(u, v)).collect()).collect()
}

/// Largest normalised symplectic pairing `|Im sum conj(u_i) v_i| / (|u| |v|)`
/// over pairs of frame tangents; zero for one-dimensional frames.
pub fn symplectic_residual<T: Real>(frame: &GeometryFrame<T>) -> T {
    let t = &frame.tangents;
    let mut worst = T::zero();
    for a in 0..t.len() {
        for b in a + 1..t.len() {
            let w: T = t[a].iter().zip(&t[b]).map(|(u, v)| (u.conj() * v).im).sum();
            worst = worst.max(w.abs() / (cnorm(&t[a]) * cnorm(&t[b])));
        }
    }
    worst
}

pub fn lagrangian_angle<T: Real>(frame: &GeometryFrame<T>) -> AngleComparison<T> {
    let theta_det = frame.det_jc.arg();
    let shift = if frame.orientation < T::zero() { T::PI() } else { T::zero() };
    AngleComparison {
        theta_det,
        theta_closed: frame.theta,
        orientation: frame.orientation,
        gap: angle_gap(theta_det, frame.theta + shift),
    }
}

/// `|det Jc|^2 / det g - 1`.
pub fn volume_residual<T: Real>(frame: &GeometryFrame<T>) -> T {
    (frame.det_jc.norm_sqr() / frame.det_g - T::one()).abs()
}

/// Closed form of `<ds, ds>`: `sum lambda_j^2 x_j^2 |g|^2 / |omega_j|^2`,
/// plus `|beta'|^2` for translators.
pub fn g_ss_closed<T: Real>(frame: &GeometryFrame<T>, curve: &ProfileCurve<T>) -> T {
    let g2 = frame.profile.generator.norm_sqr();
    let sum: T = curve
        .lambda()
        .iter()
        .zip(&frame.coords)
        .zip(&frame.profile.r)
        .map(|((l, x), r)| *l * *l * *x * *x * g2 / (*r * *r))
        .sum();
    if curve.is_translator() {
        sum + g2
    } else {
        sum
    }
}

/// The translator metric entry with the position term
/// `|-1/2 sum lambda_j x_j^2 + beta|^2` in place of `|beta'|^2`.
pub fn g_ss_position_form<T: Real>(frame: &GeometryFrame<T>, curve: &ProfileCurve<T>) -> Option<T> {
    curve.is_translator().then(|| {
        let g2 = frame.profile.generator.norm_sqr();
        let last = frame.position.last().expect("translator has n >= 2");
        g_ss_closed(frame, curve) - g2 + last.norm_sqr()
    })
}

/// Distance from `s` to the nearest point where frames degenerate.
pub(crate) fn singular_distance<T: Real>(curve: &ProfileCurve<T>, s: T) -> T {
    let d = curve.domain();
    let mut dist = T::infinity();
    if d.s_min.is_finite() {
        dist = dist.min(s - d.s_min);
    }
    if d.s_max.is_finite() {
        dist = dist.min(d.s_max - s);
    }
    if curve.params().family.is_sphere() {
        dist = dist.min(s.abs());
    }
    dist
}

/// `theta'(s)` by central differences with one Richardson step.
pub fn theta_dot<T: Real>(curve: &ProfileCurve<T>, anchor: &ProfilePoint<T>) -> Result<T> {
    let s = anchor.s;
    let h = diff::base_step(s, Order::First).min(singular_distance(curve, s) / T::lit(20.0));
    let g0 = anchor.generator;
    let rel = |t: T| match curve.evaluate_from(anchor, t) {
        Ok(p) => {
            let dphi: T = p.phi.iter().zip(&anchor.phi).map(|(a, b)| *a - *b).sum();
            dphi + (p.generator / g0).arg()
        }
        Err(_) => T::nan(),
    };
    let d = derivative_with_step(rel, s, Order::First, h);
    if d.value.is_finite() {
        Ok(d.value)
    } else {
        Err(Error::NonFinite { at: s.to_f64_lossy() })
    }
}

fn j_scaled<T: Real>(v: &[Complex<T>], c: T) -> Vec<Complex<T>> {
    v.iter().map(|z| Complex::new(-z.im, z.re) * c).collect()
}

/// `H = theta' / <ds, ds> J ds`.
pub fn mean_curvature_angle<T: Real>(frame: &GeometryFrame<T>, curve: &ProfileCurve<T>) -> Result<Vec<Complex<T>>> {
    let td = theta_dot(curve, &frame.profile)?;
    Ok(j_scaled(frame.ds(), td / frame.g_ss()))
}

pub fn mean_curvature<T: Real>(frame: &GeometryFrame<T>, curve: &ProfileCurve<T>) -> Result<MeanCurvature<T>> {
    Ok(MeanCurvature {
        angle: mean_curvature_angle(frame, curve)?,
        oracle: mean_curvature_oracle(frame, curve, FdScheme::Richardson)?,
    })
}

/// `-(C Im f / <ds, ds>) J ds`, the normal part of `F` claimed for the
/// self-similar ansatz.
pub fn f_perp_closed<T: Real>(frame: &GeometryFrame<T>, curve: &ProfileCurve<T>) -> Vec<Complex<T>> {
    let c = curve.params().c();
    j_scaled(frame.ds(), -c * frame.profile.generator.im / frame.g_ss())
}

/// `-(alpha Im beta' / <ds, ds>) J ds`, the normal part of `T` claimed for
/// the translator ansatz.
pub fn t_perp_closed<T: Real>(frame: &GeometryFrame<T>, curve: &ProfileCurve<T>) -> Vec<Complex<T>> {
    j_scaled(frame.ds(), -curve.alpha() * frame.profile.generator.im / frame.g_ss())
}

fn project_normal<T: Real>(
    v: &[Complex<T>],
    tangents: &[Vec<Complex<T>>],
    metric: &Matrix<T>,
) -> Result<Vec<Complex<T>>> {
    let lu = Lu::new(metric.clone());
    let rhs: Vec<T> = tangents.iter().map(|e| re_inner(v, e)).collect();
    let coef = lu.solve(&rhs).ok_or_else(|| Error::DegenerateFrame { det: lu.det().to_f64_lossy() })?;
    let mut out = v.to_vec();
    for (c, e) in coef.iter().zip(tangents) {
        for (o, z) in out.iter_mut().zip(e) {
            *o = *o - *z * *c;
        }
    }
    Ok(out)
}

/// Real-orthogonal projection of `v` onto the normal space of the frame.
pub fn normal_projection<T: Real>(v: &[Complex<T>], frame: &GeometryFrame<T>) -> Result<Vec<Complex<T>>> {
    if v.len() != frame.position.len() {
        return Err(Error::InvalidInput(format!(
            "vector has {} components, frame has {}",
            v.len(),
            frame.position.len()
        )));
    }
    project_normal(v, &frame.tangents, &frame.metric)
}

/// Immersion restricted to a neighbourhood of a frame, in a chart that
/// solves the quadric for its best conditioned coordinate.
struct LocalChart<'a, T> {
    curve: &'a ProfileCurve<T>,
    lambda: &'a [T],
    c: T,
    eliminated: Option<(usize, T)>,
    y0: Vec<T>,
    /// Profile at `s0 + k delta`, `k = -k_max ..= k_max`.
    profiles: Vec<ProfilePoint<T>>,
    k_max: i32,
    delta: T,
}

type Stencil<T> = (Vec<Vec<Complex<T>>>, Vec<Vec<Vec<Complex<T>>>>);

impl<'a, T: Real> LocalChart<'a, T> {
    fn new(frame: &GeometryFrame<T>, curve: &'a ProfileCurve<T>, delta: T, k_max: i32) -> Result<Self> {
        let lambda = curve.lambda();
        let (eliminated, y0) = if curve.is_translator() {
            (None, frame.coords.clone())
        } else {
            let (k, _) = frame
                .coords
                .iter()
                .zip(lambda)
                .map(|(x, l)| (*l * *x * *x).abs())
                .enumerate()
                .fold((0, -T::one()), |best, (i, v)| if v > best.1 { (i, v) } else { best });
            let mut y = frame.coords.clone();
            let xk = y.remove(k);
            (Some((k, xk.signum())), y)
        };
        let mut profiles = Vec::with_capacity((2 * k_max + 1) as usize);
        for k in -k_max..=k_max {
            profiles.push(if k == 0 {
                frame.profile.clone()
            } else {
                curve.evaluate_from(&frame.profile, frame.profile.s + delta * T::lit(k as f64))?
            });
        }
        Ok(LocalChart { curve, lambda, c: curve.params().c(), eliminated, y0, profiles, k_max, delta })
    }

    fn coords(&self, y: &[T]) -> Vec<T> {
        match self.eliminated {
            None => y.to_vec(),
            Some((k, sign)) => {
                let rest: T =
                    y.iter().enumerate().map(|(i, v)| self.lambda[if i < k { i } else { i + 1 }] * *v * *v).sum();
                let mut x = y.to_vec();
                x.insert(k, sign * ((self.c - rest) / self.lambda[k]).sqrt());
                x
            }
        }
    }

    fn eval(&self, y: &[T], ks: i32) -> Vec<Complex<T>> {
        immerse_with(self.curve, &self.coords(y), &self.profiles[(ks + self.k_max) as usize])
    }

    /// Tangents and Hessian by central differences with `x`-step `hx` and
    /// `s`-step `q delta`.
    fn stencil(&self, hx: T, q: i32) -> Stencil<T> {
        let d = self.y0.len() + 1;
        let at = |moves: &[(usize, i32)]| {
            let mut y = self.y0.clone();
            let mut ks = 0;
            for &(a, sign) in moves {
                if a + 1 == d {
                    ks += sign * q;
                } else {
                    y[a] = y[a] + hx * T::lit(sign as f64);
                }
            }
            self.eval(&y, ks)
        };
        let step = |a: usize| if a + 1 == d { self.delta * T::lit(q as f64) } else { hx };
        let f0 = at(&[]);
        let n = f0.len();
        let zero = Complex::new(T::zero(), T::zero());
        let mut tangents = vec![vec![zero; n]; d];
        let mut hess = vec![vec![vec![zero; n]; d]; d];
        for a in 0..d {
            let (fp, fm) = (at(&[(a, 1)]), at(&[(a, -1)]));
            let h = step(a);
            for i in 0..n {
                tangents[a][i] = (fp[i] - fm[i]) / (h + h);
                hess[a][a][i] = (fp[i] - f0[i] - f0[i] + fm[i]) / (h * h);
            }
            for b in a + 1..d {
                let (pp, pm) = (at(&[(a, 1), (b, 1)]), at(&[(a, 1), (b, -1)]));
                let (mp, mm) = (at(&[(a, -1), (b, 1)]), at(&[(a, -1), (b, -1)]));
                let hb = step(b);
                for i in 0..n {
                    let v = (pp[i] - pm[i] - mp[i] + mm[i]) / (T::lit(4.0) * h * hb);
                    hess[a][b][i] = v;
                    hess[b][a][i] = v;
                }
            }
        }
        (tangents, hess)
    }

    fn mean_curvature(&self, hx: T, q: i32) -> Result<Vec<Complex<T>>> {
        let (tangents, hess) = self.stencil(hx, q);
        let metric = gram(&tangents);
        let inv = Lu::new(metric.clone())
            .inverse()
            .ok_or_else(|| Error::DegenerateFrame { det: Lu::new(metric.clone()).det().to_f64_lossy() })?;
        let n = tangents[0].len();
        let mut trace = vec![Complex::new(T::zero(), T::zero()); n];
        for (a, row) in inv.iter().enumerate() {
            for (b, gab) in row.iter().enumerate() {
                for i in 0..n {
                    trace[i] = trace[i] + hess[a][b][i] * *gab;
                }
            }
        }
        let h = project_normal(&trace, &tangents, &metric)?;
        if h.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { at: self.profiles[self.k_max as usize].s.to_f64_lossy() });
        }
        Ok(h)
    }
}

fn steps<T: Real>(frame: &GeometryFrame<T>, curve: &ProfileCurve<T>, rel_x: f64, rel_s: f64, guard: f64) -> (T, T) {
    let s = frame.point.s;
    let scale = frame.coords.iter().fold(T::one(), |m, x| m.max(x.abs()));
    let hx = T::lit(rel_x) * scale;
    let hs = (T::lit(rel_s) * T::one().max(s.abs())).min(singular_distance(curve, s) / T::lit(guard));
    (hx, hs)
}

fn combine<T: Real>(a: &[Complex<T>], wa: T, b: &[Complex<T>], wb: T) -> Vec<Complex<T>> {
    a.iter().zip(b).map(|(x, y)| *x * wa + *y * wb).collect()
}

/// `H = sum g^{ab} (d_a d_b F)^perp` using only finite differences of the
/// immersion: tangents, metric and second derivatives are all numerical.
pub fn mean_curvature_oracle<T: Real>(
    frame: &GeometryFrame<T>,
    curve: &ProfileCurve<T>,
    scheme: FdScheme,
) -> Result<Vec<Complex<T>>> {
    let (hx, hs) = steps(frame, curve, 1e-3, 1e-3, 20.0);
    match scheme {
        FdScheme::Central => LocalChart::new(frame, curve, hs, 1)?.mean_curvature(hx, 1),
        FdScheme::Richardson => {
            let chart = LocalChart::new(frame, curve, hs * T::lit(0.5), 2)?;
            let coarse = chart.mean_curvature(hx, 2)?;
            let fine = chart.mean_curvature(hx * T::lit(0.5), 1)?;
            let third = T::lit(1.0 / 3.0);
            Ok(combine(&fine, T::lit(4.0) * third, &coarse, -third))
        }
    }
}

/// Successive differences `|H(h) - H(h/2)|` and `|H(h/2) - H(h/4)|` of the
/// plain central oracle at a coarse base step; their ratio is `2^p` for a
/// scheme of order `p`.
pub fn oracle_step_differences<T: Real>(frame: &GeometryFrame<T>, curve: &ProfileCurve<T>) -> Result<(T, T)> {
    let (hx, hs) = steps(frame, curve, 2e-2, 2e-2, 5.0);
    let chart = LocalChart::new(frame, curve, hs * T::lit(0.25), 4)?;
    let h0 = chart.mean_curvature(hx, 4)?;
    let h1 = chart.mean_curvature(hx * T::lit(0.5), 2)?;
    let h2 = chart.mean_curvature(hx * T::lit(0.25), 1)?;
    let d1 = cnorm(&combine(&h0, T::one(), &h1, -T::one()));
    let d2 = cnorm(&combine(&h1, T::one(), &h2, -T::one()));
    Ok((d1, d2))
}

/// Relative residual of `C H = alpha F^perp` (self-similar) or
/// `H = T^perp` (translators) for a given mean curvature vector.
pub fn soliton_residual_with<T: Real>(
    frame: &GeometryFrame<T>,
    curve: &ProfileCurve<T>,
    h: &[Complex<T>],
) -> Result<T> {
    let p = curve.params();
    let (lhs, rhs) = if curve.is_translator() {
        (h.to_vec(), normal_projection(&p.translating_vector(), frame)?)
    } else {
        let fp = normal_projection(&frame.position, frame)?;
        (h.iter().map(|z| *z * p.c()).collect(), fp.iter().map(|z| *z * p.alpha).collect())
    };
    let diff = cnorm(&combine(&lhs, T::one(), &rhs, -T::one()));
    Ok(diff / (T::one() + cnorm(&lhs) + cnorm(&rhs)))
}

/// Soliton residual at a chart point using the oracle mean curvature.
pub fn soliton_residual<T: Real>(point: &ChartPoint<T>, curve: &ProfileCurve<T>) -> Result<T> {
    let fr = frame(point, curve)?;
    let h = mean_curvature_oracle(&fr, curve, FdScheme::Richardson)?;
    soliton_residual_with(&fr, curve, &h)
}

/// Type of `L_{2 alpha t}` by the sign of `t`.
pub fn classify<T: Real>(t: T, alpha: T) -> Result<Classification> {
    if alpha == T::zero() {
        return Err(Error::AlphaZero);
    }
    if !t.is_finite() || !alpha.is_finite() {
        return Err(Error::InvalidInput("t and alpha must be finite".into()));
    }
    Ok(if t < T::zero() {
        Classification::Shrinker
    } else if t > T::zero() {
        Classification::Expander
    } else {
        Classification::Cone
    })
}
