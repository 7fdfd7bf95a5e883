//! Shared numerical engines.
//!
//! * Composite Gauss–Legendre panel quadrature on finite and truncated
//!   semi-infinite intervals, with convergence judged by halving every panel.
//! * Bracketed root refinement (Brent's method with a bisection fallback).
//! * Sign-change scanning on uniform grids.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Tuning for the panel quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Integration cut `T`; the semi-infinite integral is taken over `[0, T]`.
    pub truncation_upper: f64,
    /// Upper bound on every panel width.
    pub panel_width_cap: f64,
    /// Gauss–Legendre nodes per panel.
    pub nodes_per_panel: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            truncation_upper: 4.5,
            panel_width_cap: 0.25,
            nodes_per_panel: 16,
            rel_tol: 1e-10,
            abs_tol: 1e-15,
        }
    }
}

impl QuadratureConfig {
    /// Default configuration for integrands carrying a `cos(w t)` factor:
    /// each panel spans at most half an oscillation period.
    pub fn for_frequency(w: f64) -> Self {
        Self {
            panel_width_cap: oscillation_cap(w),
            ..Self::default()
        }
    }

    pub fn with_truncation(mut self, upper: f64) -> Self {
        self.truncation_upper = upper;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.truncation_upper > 0.0 && self.truncation_upper.is_finite()) {
            return Err(Error::Precondition(format!(
                "truncation_upper must be positive, got {}",
                self.truncation_upper
            )));
        }
        if !(self.panel_width_cap > 0.0) {
            return Err(Error::Precondition(format!(
                "panel_width_cap must be positive, got {}",
                self.panel_width_cap
            )));
        }
        if self.nodes_per_panel < 8 {
            return Err(Error::Precondition(format!(
                "nodes_per_panel must be at least 8, got {}",
                self.nodes_per_panel
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-6) {
            return Err(Error::Precondition(format!(
                "rel_tol must lie in (0, 1e-6], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::Precondition("abs_tol must be non-negative".into()));
        }
        Ok(())
    }
}

/// Panel width cap for an integrand oscillating like `cos(w t)`.
pub fn oscillation_cap(w: f64) -> f64 {
    0.25f64.min(PI / w.abs().max(1.0))
}

const MAX_HALVINGS: usize = 8;

/// Values the panel rule can accumulate: real or complex.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn scalar(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn scalar(self) -> f64 {
        self
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn scalar(self) -> f64 {
        self.re
    }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule to `[lo, hi]`.
    pub fn apply<V: QuadValue, F: Fn(f64) -> V>(&self, f: &F, lo: f64, hi: f64) -> V {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = V::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * *w;
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Panel breakpoints covering `[lo, hi]`, each panel no wider than the cap
/// nor half the local period implied by `rate`.
fn panel_breaks<R: Fn(f64) -> f64>(lo: f64, hi: f64, cap: f64, rate: &R) -> Vec<f64> {
    let mut breaks = vec![lo];
    let mut x = lo;
    while x < hi {
        let w0 = cap.min(PI / rate(x).abs().max(1e-300));
        let w = w0.min(PI / rate((x + w0).min(hi)).abs().max(1e-300));
        let next = x + w;
        if next >= hi || hi - next < 1e-12 * (hi - lo) {
            breaks.push(hi);
            break;
        }
        breaks.push(next);
        x = next;
    }
    breaks
}

fn sum_panels<V: QuadValue, F: Fn(f64) -> V>(rule: &GaussLegendre, f: &F, breaks: &[f64], split: usize) -> V {
    let mut acc = V::zero();
    for pair in breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let h = (b - a) / split as f64;
        for s in 0..split {
            let lo = a + h * s as f64;
            let hi = if s + 1 == split { b } else { lo + h };
            acc = acc + rule.apply(f, lo, hi);
        }
    }
    acc
}

/// Composite panel quadrature of `f` over `[lo, hi]`.
///
/// Panels are no wider than `cfg.panel_width_cap` and, where `rate(x)`
/// reports a local angular frequency, no wider than half the local
/// period. The estimate is accepted once halving every panel moves it by less
/// than `max(rel_tol * |result|, abs_tol)`.
pub fn integrate_with_rate<V, F, R>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig, rate: R) -> Result<V>
where
    V: QuadValue,
    F: Fn(f64) -> V,
    R: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(hi > lo) {
        return if hi == lo {
            Ok(V::zero())
        } else {
            Err(Error::Precondition(format!("empty interval [{lo}, {hi}]")))
        };
    }
    let rule = GaussLegendre::new(cfg.nodes_per_panel);
    let breaks = panel_breaks(lo, hi, cfg.panel_width_cap, &rate);
    let mut split = 1usize;
    let mut previous = sum_panels(&rule, &f, &breaks, split);
    for _ in 0..MAX_HALVINGS {
        split *= 2;
        let current = sum_panels(&rule, &f, &breaks, split);
        let change = (current - previous).magnitude();
        if !change.is_finite() {
            return Err(Error::NoConvergence {
                previous: previous.scalar(),
                last: current.scalar(),
            });
        }
        if change <= (cfg.rel_tol * current.magnitude()).max(cfg.abs_tol) {
            return Ok(current);
        }
        previous = current;
    }
    let last = sum_panels(&rule, &f, &breaks, split * 2);
    Err(Error::NoConvergence {
        previous: previous.scalar(),
        last: last.scalar(),
    })
}

/// Integral of `f` over `[lo, hi]` with uniform panels capped by the config.
pub fn integrate_interval<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<f64> {
    integrate_with_rate(f, lo, hi, cfg, |_| 0.0)
}

/// `∫_0^∞ f(t) dt`, truncated at `cfg.truncation_upper`.
///
/// The integrand must decay fast enough (doubly exponentially for the kernels
/// in this crate) that the tail beyond the cut is below `cfg.abs_tol`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, cfg: &QuadratureConfig) -> Result<f64> {
    integrate_interval(f, 0.0, cfg.truncation_upper, cfg)
}

/// Vector-valued panel quadrature: `f(x, out)` writes `dim` integrand values
/// at `x`. Every component must pass the halving test before returning.
pub fn integrate_vector<F, R>(f: F, dim: usize, lo: f64, hi: f64, cfg: &QuadratureConfig, rate: R) -> Result<Vec<f64>>
where
    F: Fn(f64, &mut [f64]),
    R: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(hi > lo) {
        return Err(Error::Precondition(format!("empty interval [{lo}, {hi}]")));
    }
    let rule = GaussLegendre::new(cfg.nodes_per_panel);
    let breaks = panel_breaks(lo, hi, cfg.panel_width_cap, &rate);
    let mut buf = vec![0.0; dim];
    let mut pass = |split: usize| -> Vec<f64> {
        let mut acc = vec![0.0; dim];
        for pair in breaks.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let h = (b - a) / split as f64;
            for s in 0..split {
                let p_lo = a + h * s as f64;
                let half = 0.5 * h;
                let mid = p_lo + half;
                for (x, w) in rule.nodes().iter().zip(rule.weights()) {
                    f(mid + half * x, &mut buf);
                    let wh = w * half;
                    for (a, v) in acc.iter_mut().zip(&buf) {
                        *a += wh * v;
                    }
                }
            }
        }
        acc
    };
    let mut split = 1usize;
    let mut previous = pass(split);
    for _ in 0..MAX_HALVINGS {
        split *= 2;
        let current = pass(split);
        let mut settled = true;
        for (c, p) in current.iter().zip(&previous) {
            let change = (c - p).abs();
            if !change.is_finite() {
                return Err(Error::NoConvergence { previous: *p, last: *c });
            }
            if change > (cfg.rel_tol * c.abs()).max(cfg.abs_tol) {
                settled = false;
            }
        }
        if settled {
            return Ok(current);
        }
        previous = current;
    }
    let last = pass(split * 2);
    let (i, _) = last
        .iter()
        .zip(&previous)
        .map(|(l, p)| (l - p).abs())
        .enumerate()
        .fold((0, 0.0), |acc, (i, d)| if d > acc.1 { (i, d) } else { acc });
    Err(Error::NoConvergence {
        previous: previous[i],
        last: last[i],
    })
}

/// Dynamic range (as a natural-log budget) the shifted contour is allowed to
/// lose to cancellation in a Fourier integral.
pub const CANCELLATION_BUDGET: f64 = 12.0;

/// Height `η` of the horizontal contour `Im t = η` used for the cosine
/// transform at frequency `w`.
///
/// On the real axis the transform of a kernel analytic in `|Im t| < π/2`
/// decays like `exp(-π|w|/2)`, so direct summation loses all significance
/// once `|w|` exceeds a few dozen. Shifting to `η = π/2 - κ/|w|` pulls out
/// the factor `exp(-|w| η)` exactly and leaves an integral whose cancellation
/// is bounded by `exp(κ)`. Small frequencies stay on the real axis.
pub fn contour_height(w: f64) -> f64 {
    let w = w.abs();
    if w * FRAC_PI_2 <= CANCELLATION_BUDGET {
        0.0
    } else {
        FRAC_PI_2 - CANCELLATION_BUDGET / w
    }
}

/// Smallest `T ≥ floor` with `log_decay(T) ≥ target`, where `log_decay` is
/// increasing for large arguments.
pub fn truncation_point<G: Fn(f64) -> f64>(log_decay: G, target: f64, floor: f64) -> f64 {
    if log_decay(floor) >= target {
        return floor;
    }
    let mut hi = floor.max(1.0);
    while log_decay(hi) < target {
        hi *= 1.5;
        if hi > 1e3 {
            return hi;
        }
    }
    let mut lo = floor;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if log_decay(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `2 ∫_0^∞ f(t) cos(w t) dt` for `f` even, real on the real axis and
/// analytic in the strip `|Im t| < π/2`, evaluated along `Im t = eta`:
///
/// `2 exp(-w η) ∫_0^T Re[f(x + iη) exp(iwx)] dx`.
///
/// `rate(x)` bounds the local angular frequency of the shifted integrand and
/// sets the panel widths.
pub fn cosine_transform<F, R>(f: F, w: f64, eta: f64, upper: f64, cfg: &QuadratureConfig, rate: R) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
    R: Fn(f64) -> f64,
{
    let w = w.abs();
    let integrand = |x: f64| {
        let phase = Complex64::new(0.0, w * x).exp();
        (f(Complex64::new(x, eta)) * phase).re
    };
    let inner = integrate_with_rate(integrand, 0.0, upper, cfg, rate)?;
    Ok(2.0 * (-w * eta).exp() * inner)
}

/// A sign-change bracket. Degenerate brackets (`lo == hi`) mark grid points
/// where the function is exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Checks the bracket invariant and builds it.
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let b = Self { lo, hi, f_lo, f_hi };
        b.validate()?;
        Ok(b)
    }

    /// Evaluates `f` at both ends and builds the bracket.
    pub fn from_fn<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, f(lo), f(hi))
    }

    pub fn degenerate(x: f64) -> Self {
        Self {
            lo: x,
            hi: x,
            f_lo: 0.0,
            f_hi: 0.0,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi && self.f_lo == 0.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    fn validate(&self) -> Result<()> {
        if self.is_degenerate() {
            return Ok(());
        }
        if !(self.lo < self.hi) {
            return Err(Error::Precondition(format!(
                "bracket requires lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if !(self.f_lo * self.f_hi < 0.0) {
            return Err(Error::Precondition(format!(
                "bracket [{}, {}] does not straddle a sign change (f = {:e}, {:e})",
                self.lo, self.hi, self.f_lo, self.f_hi
            )));
        }
        Ok(())
    }
}

const MAX_ROOT_ITERATIONS: usize = 200;

/// Refines a root inside `bracket` with Brent's method.
///
/// Steps fall back to bisection whenever interpolation would leave the
/// bracket or shrink it too slowly, so convergence is guaranteed. The
/// returned point lies in a final bracket no wider than `tol`.
pub fn find_root<F: Fn(f64) -> f64>(f: F, bracket: Bracket, tol: f64) -> Result<f64> {
    bracket.validate()?;
    if bracket.is_degenerate() {
        return Ok(bracket.lo);
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    let (mut c, mut fc) = (b, fb);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ROOT_ITERATIONS {
        if (fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::Numerical(format!("non-finite function value at {b}")));
        }
    }
    Err(Error::Numerical("root refinement exceeded iteration limit".into()))
}

/// Plain bisection on a bracket, stopping when the bracket is narrower than `tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, bracket: Bracket, tol: f64) -> Result<f64> {
    bracket.validate()?;
    if bracket.is_degenerate() {
        return Ok(bracket.lo);
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi, mut f_lo) = (bracket.lo, bracket.hi, bracket.f_lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Grid `lo + i*step` for `i = 0, 1, ...`, ending exactly at `hi`.
pub fn uniform_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut xs: Vec<f64> = (0..=n).map(|i| lo + step * i as f64).collect();
    if let Some(&last) = xs.last() {
        if hi - last > 1e-9 * step {
            xs.push(hi);
        } else {
            *xs.last_mut().unwrap() = hi;
        }
    }
    xs
}

/// Brackets from sampled values on the half-open range `(xs[0], xs[last]]`.
///
/// Each strict sign change between neighbours yields one bracket; an exact
/// zero at an interior or final grid point yields a degenerate bracket.
pub fn brackets_from_samples(xs: &[f64], ys: &[f64]) -> Vec<Bracket> {
    assert_eq!(xs.len(), ys.len());
    let mut out = Vec::new();
    for i in 1..xs.len() {
        let (y0, y1) = (ys[i - 1], ys[i]);
        if y1 == 0.0 {
            out.push(Bracket::degenerate(xs[i]));
        } else if y0 * y1 < 0.0 {
            out.push(Bracket {
                lo: xs[i - 1],
                hi: xs[i],
                f_lo: y0,
                f_hi: y1,
            });
        }
    }
    out
}

/// Sign changes of `f` on `(lo, hi]` sampled every `step`.
pub fn scan_sign_changes<F>(f: F, lo: f64, hi: f64, step: f64) -> Result<Vec<Bracket>>
where
    F: Fn(f64) -> f64 + Sync,
{
    if !(step > 0.0) {
        return Err(Error::Precondition(format!("step must be positive, got {step}")));
    }
    if !(hi > lo) {
        return Err(Error::Precondition(format!("empty scan range ({lo}, {hi}]")));
    }
    let xs = uniform_grid(lo, hi, step);
    let ys: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect();
    if let Some(i) = ys.iter().position(|y| !y.is_finite()) {
        return Err(Error::Numerical(format!("non-finite value at grid point {}", xs[i])));
    }
    Ok(brackets_from_samples(&xs, &ys))
}
