//! The exact kernel
//!
//! `Φ(t) = Σ_{n≥1} (2π² n⁴ e^{9t/4} − 3π n² e^{5t/4}) exp(−π n² e^t)`
//!
//! and its approximating families, with the parameter resolution that pins
//! each family's head value `Φ_family(0) = Φ(0)`.
//!
//! Every approximation is a finite sum `Σ coef · cosh(c t) · exp(−a cosh t)`;
//! [`bessel_terms`] exposes that list so transforms can be assembled from
//! Bessel functions.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coeffs;
use crate::error::{Error, Result};
use crate::numerics::{self, Bracket};

const TWO_PI: f64 = 2.0 * PI;
const FOUR_PI_SQ: f64 = 4.0 * PI * PI;

/// Relative size at which the exact series stops.
const SERIES_TRUNCATION: f64 = 1e-30;
const SERIES_MAX_TERMS: u32 = 10_000;

/// A kernel: the exact `Φ` or one of its approximations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum KernelFamily {
    Exact,
    Polya,
    Polya2,
    DeBruijn,
    Hejhal { m: u32 },
    S1 { m: u32 },
    S2 { m: u32, a: f64 },
    S3 { m: u32 },
    S4 { m: u32 },
}

impl KernelFamily {
    /// Short lowercase name used on the command line.
    pub fn tag(&self) -> &'static str {
        match self {
            KernelFamily::Exact => "exact",
            KernelFamily::Polya => "polya",
            KernelFamily::Polya2 => "polya2",
            KernelFamily::DeBruijn => "debruijn",
            KernelFamily::Hejhal { .. } => "hejhal",
            KernelFamily::S1 { .. } => "s1",
            KernelFamily::S2 { .. } => "s2",
            KernelFamily::S3 { .. } => "s3",
            KernelFamily::S4 { .. } => "s4",
        }
    }

    pub fn m(&self) -> Option<u32> {
        match *self {
            KernelFamily::Hejhal { m }
            | KernelFamily::S1 { m }
            | KernelFamily::S2 { m, .. }
            | KernelFamily::S3 { m }
            | KernelFamily::S4 { m } => Some(m),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, KernelFamily::Exact)
    }

    /// Builds a family from its tag and optional parameters.
    pub fn from_parts(tag: &str, m: Option<u32>, a: Option<f64>) -> Result<Self> {
        let need_m = || m.ok_or_else(|| Error::Parameter(format!("family {tag} needs --m")));
        let family = match tag.to_ascii_lowercase().as_str() {
            "exact" => KernelFamily::Exact,
            "polya" => KernelFamily::Polya,
            "polya2" => KernelFamily::Polya2,
            "debruijn" => KernelFamily::DeBruijn,
            "hejhal" => KernelFamily::Hejhal { m: need_m()? },
            "s1" => KernelFamily::S1 { m: need_m()? },
            "s2" => KernelFamily::S2 {
                m: need_m()?,
                a: a.ok_or_else(|| Error::Parameter("family s2 needs --a".into()))?,
            },
            "s3" => KernelFamily::S3 { m: need_m()? },
            "s4" => KernelFamily::S4 { m: need_m()? },
            other => return Err(Error::Parameter(format!("unknown family {other:?}"))),
        };
        Ok(family)
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            KernelFamily::S2 { m, a } => write!(f, "s2(m={m},a={a})"),
            other => match other.m() {
                Some(m) => write!(f, "{}(m={m})", other.tag()),
                None => f.write_str(other.tag()),
            },
        }
    }
}

/// Constants of the exact kernel and the solved parameters of one family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedParams {
    pub family: KernelFamily,
    /// `Φ(0)`.
    pub phi0: f64,
    /// Second derivative of `Φ` at 0 in the half-argument variable.
    pub phi2_paper: f64,
    /// `e^{2π} Φ(0) / (4π²) − 1`.
    pub beta: f64,
    pub gamma: f64,
    /// `1 + β`.
    pub delta: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a_b: Option<(f64, f64)>,
}

/// Arithmetic shared by real and complex kernel evaluation.
pub trait KernelScalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Mul<f64, Output = Self>
{
    fn real(x: f64) -> Self;
    fn exp(self) -> Self;
    fn cosh(self) -> Self;
    fn sinh(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn magnitude(self) -> f64;
    fn re(self) -> f64;
}

impl KernelScalar for f64 {
    fn real(x: f64) -> Self {
        x
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn re(self) -> f64 {
        self
    }
}

impl KernelScalar for Complex64 {
    fn real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn cosh(self) -> Self {
        Complex64::cosh(self)
    }
    fn sinh(self) -> Self {
        Complex64::sinh(self)
    }
    fn powi(self, n: i32) -> Self {
        Complex64::powi(&self, n)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn re(self) -> f64 {
        self.re
    }
}

/// `exp(-2π n² cosh t)`; with `scaled`, multiplied by `exp(π e^t)` with the
/// cancellation done analytically.
fn gauss<S: KernelScalar>(t: S, n2: f64, scaled: bool) -> S {
    if scaled {
        (t.exp() * (-PI * (n2 - 1.0)) + (t * -1.0).exp() * (-PI * n2)).exp()
    } else {
        (t.cosh() * (-TWO_PI * n2)).exp()
    }
}

/// The series for `Φ` summed at `t` as given. Converges for `Re e^t > 0`.
fn phi_series<S: KernelScalar>(t: S) -> S {
    phi_series_scaled(t, false)
}

/// [`phi_series`], multiplied by `exp(π e^t)` when `scaled`.
fn phi_series_scaled<S: KernelScalar>(t: S, scaled: bool) -> S {
    let u = t.exp();
    let (e9, e5) = ((t * 2.25).exp(), (t * 1.25).exp());
    let mut sum = S::real(0.0);
    let mut scale = 0.0;
    for n in 1..=SERIES_MAX_TERMS {
        let n2 = f64::from(n * n);
        let decay = if scaled { n2 - 1.0 } else { n2 };
        let term = (e9 * (2.0 * PI * PI * n2 * n2) - e5 * (3.0 * PI * n2)) * (u * (-PI * decay)).exp();
        let size = term.magnitude();
        sum = sum + term;
        scale += size;
        // Terms first grow while π n² Re e^t is small; stop only once past the peak.
        if (size <= SERIES_TRUNCATION * scale || size == 0.0) && PI * n2 * u.re() > 4.0 {
            break;
        }
    }
    sum
}

/// `Φ(t)`, evaluated at `|t|`, where the series converges fastest.
pub fn phi_exact(t: f64) -> f64 {
    phi_series(t.abs())
}

/// `Φ(t)` from the series at `t` itself, including negative `t`.
pub fn phi_exact_raw(t: f64) -> f64 {
    phi_series(t)
}

/// `Φ(z)` for complex `z` with `|Im z| < π/2`.
pub fn phi_exact_complex(z: Complex64) -> Complex64 {
    phi_series(z)
}

/// `d²Φ/dt²` at 0 by differentiating the series term by term.
pub fn phi_d2_at_zero() -> f64 {
    let mut sum = 0.0;
    for n in 1..=40u32 {
        let n2 = f64::from(n * n);
        let (a, b, c) = (2.0 * PI * PI * n2 * n2, 3.0 * PI * n2, PI * n2);
        let term = (a * ((2.25 - c).powi(2) - c) - b * ((1.25 - c).powi(2) - c)) * (-c).exp();
        sum += term;
        if term.abs() < SERIES_TRUNCATION * sum.abs() {
            break;
        }
    }
    sum
}

/// The second derivative of `Φ` at 0 taken in the half-argument variable,
/// `4 d²Φ/dt²(0)`; this is the value that calibrates `γ`.
pub fn phi2_paper_at_zero() -> f64 {
    4.0 * phi_d2_at_zero()
}

fn beta_from(phi0: f64) -> f64 {
    TWO_PI.exp() * phi0 / FOUR_PI_SQ - 1.0
}

/// Root of `μ (1 − a^μ) = β` on `[β, β/(1−a) + 1]`.
pub fn solve_mu(a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!("mu requires 0 < a < 1, got {a}")));
    }
    let beta = beta_from(phi_exact(0.0));
    let f = |mu: f64| mu * (1.0 - a.powf(mu)) - beta;
    if f(beta) == 0.0 {
        // a^β underflows relative to 1: μ = β to working precision.
        return Ok(beta);
    }
    let bracket = Bracket::from_fn(f, beta, beta / (1.0 - a) + 1.0)
        .map_err(|e| Error::Numerical(format!("mu bracket failed: {e}")))?;
    numerics::find_root(f, bracket, 1e-14)
}

/// `c_k(a) = 1 − a^{k+1}`.
pub fn s2_weight(a: f64, k: u32) -> f64 {
    1.0 - a.powi(k as i32 + 1)
}

/// `b_k = (k+1)/(m+1)`.
pub fn s1_weight(m: u32, k: u32) -> f64 {
    f64::from(k + 1) / f64::from(m + 1)
}

fn in_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} = {v} must lie in (0, 1)")))
    }
}

/// Computes the constants and solves the family's parameters, rejecting
/// parameter choices outside the conditions that guarantee real zeros.
pub fn resolve_params(family: KernelFamily) -> Result<ResolvedParams> {
    let phi0 = phi_exact(0.0);
    let phi2_paper = phi2_paper_at_zero();
    let beta = beta_from(phi0);
    let delta = 1.0 + beta;
    let gamma = (4.0 * phi2_paper + phi0 * (32.0 * PI - 1.0)) / (128.0 * phi0);
    let mut p = ResolvedParams {
        family,
        phi0,
        phi2_paper,
        beta,
        gamma,
        delta,
        b: None,
        c: None,
        mu: None,
        a: None,
        a_b: None,
    };
    match family {
        KernelFamily::Exact | KernelFamily::Polya | KernelFamily::Polya2 | KernelFamily::DeBruijn => {}
        KernelFamily::Hejhal { m } => {
            if m == 0 {
                return Err(Error::Parameter("hejhal requires m >= 1".into()));
            }
        }
        KernelFamily::S1 { m } => {
            if m < 11 {
                return Err(Error::Parameter(format!(
                    "s1 requires m >= 11 so that b = 2*beta/m < 1 (m = {m} gives b = {:.6})",
                    2.0 * beta / f64::from(m)
                )));
            }
            let b = 2.0 * beta / f64::from(m);
            in_unit("s1 parameter b", b)?;
            p.b = Some(b);
        }
        KernelFamily::S2 { m, a } => {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::Parameter(format!("s2 requires 0 < a < 1, got a = {a}")));
            }
            let mu = solve_mu(a)?;
            let need = mu.ceil() as u32;
            if m < need {
                return Err(Error::Parameter(format!(
                    "s2 requires m >= ceil(mu) = {need} for a = {a} (mu = {mu:.6}), got m = {m}"
                )));
            }
            let denom: f64 = f64::from(m) - (1..=m).map(|k| a.powi(k as i32)).sum::<f64>();
            let c = beta / denom;
            in_unit("s2 parameter c", c)?;
            p.c = Some(c);
            p.mu = Some(mu);
        }
        KernelFamily::S3 { m } => {
            if m == 0 {
                return Err(Error::Parameter("s3 requires m >= 2".into()));
            }
            let radicand = 1.0 - delta.powf(1.0 / f64::from(m)) / 4.0;
            if radicand <= 0.0 {
                return Err(Error::Parameter(format!(
                    "s3 requires m >= 2: at m = {m} the radicand 1 - (1+beta)^(1/m)/4 = {radicand:.6} is negative"
                )));
            }
            let a = radicand.sqrt();
            in_unit("s3 parameter a", a)?;
            p.a = Some(a);
        }
        KernelFamily::S4 { m } => {
            if m == 0 {
                return Err(Error::Parameter("s4 requires m in {2, 3}".into()));
            }
            let root = delta.powf(1.0 / f64::from(m));
            let s = f64::from(m) * gamma * root;
            let q = root / 16.0;
            let disc = s * s - 4.0 * q;
            if disc < 0.0 {
                return Err(Error::Parameter(format!(
                    "s4 requires m in {{2, 3}}: at m = {m} the parameters a(m), b(m) are complex"
                )));
            }
            let (a, b) = ((s - disc.sqrt()) / 2.0, (s + disc.sqrt()) / 2.0);
            if b >= 1.0 {
                return Err(Error::Parameter(format!(
                    "s4 requires m in {{2, 3}}: at m = {m} b(m) = {b:.6} is not below 1"
                )));
            }
            in_unit("s4 parameter a", a)?;
            if !(a < b) {
                return Err(Error::Parameter(format!("s4 requires a < b, got a = {a}, b = {b}")));
            }
            p.a_b = Some((a, b));
        }
    }
    Ok(p)
}

/// One summand `coef · cosh(order · t) · exp(−arg · cosh t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselTerm {
    pub coef: f64,
    pub order: f64,
    pub arg: f64,
}

fn param<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::Precondition(format!("resolved parameters lack {what}")))
}

fn check_match(family: &KernelFamily, params: &ResolvedParams) -> Result<()> {
    if *family == params.family {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "parameters were resolved for {} but {family} was requested",
            params.family
        )))
    }
}

/// Term list of a cosh-built family with like orders merged; unavailable
/// for the exact kernel.
pub fn bessel_terms(family: &KernelFamily, params: &ResolvedParams) -> Result<Vec<BesselTerm>> {
    check_match(family, params)?;
    let single = |coef: f64, order: f64| BesselTerm { coef, order, arg: TWO_PI };
    let mut terms = match *family {
        KernelFamily::Exact => {
            return Err(Error::Precondition("the exact kernel has no Bessel closed form".into()))
        }
        KernelFamily::Polya => vec![single(FOUR_PI_SQ, 2.25)],
        KernelFamily::Polya2 => vec![single(FOUR_PI_SQ, 2.25), single(-6.0 * PI, 1.25)],
        KernelFamily::DeBruijn => vec![
            single(FOUR_PI_SQ, 0.25),
            single(4.0 * PI.powi(3) - 6.0 * PI, 1.25),
            single(FOUR_PI_SQ, 2.25),
        ],
        KernelFamily::Hejhal { m } => (1..=m)
            .flat_map(|n| {
                let n2 = f64::from(n * n);
                let arg = TWO_PI * n2;
                [
                    BesselTerm { coef: FOUR_PI_SQ * n2 * n2, order: 2.25, arg },
                    BesselTerm { coef: -6.0 * PI * n2, order: 1.25, arg },
                ]
            })
            .collect(),
        KernelFamily::S1 { m } => {
            let b = param(params.b, "b")?;
            let mut t = vec![single(FOUR_PI_SQ, 2.25)];
            t.extend((0..m).map(|k| single(FOUR_PI_SQ * b * s1_weight(m, k), 2.25 * f64::from(k) / f64::from(m))));
            t
        }
        KernelFamily::S2 { m, a } => {
            let c = param(params.c, "c")?;
            let mut t = vec![single(FOUR_PI_SQ, 2.25)];
            t.extend((0..m).map(|k| single(FOUR_PI_SQ * c * s2_weight(a, k), 2.25 * f64::from(k) / f64::from(m))));
            t
        }
        KernelFamily::S3 { m } => {
            let a = param(params.a, "a")?;
            let table = coeffs::h_coeffs(m, a)?;
            let mf = f64::from(m);
            (0..=m as usize)
                .flat_map(|j| {
                    let base = 2.0 * j as f64 / mf;
                    let coef = FOUR_PI_SQ * table.get(j);
                    [single(coef, base + 0.25), single(coef, base - 0.25)]
                })
                .collect()
        }
        KernelFamily::S4 { m } => {
            let (a, b) = param(params.a_b, "(a, b)")?;
            let table = coeffs::j_coeffs(m, a, b)?;
            let mf = f64::from(m);
            let mut t = Vec::new();
            for j in 0..=m as usize {
                for l in 0..=m as usize {
                    let coef = FOUR_PI_SQ * table.get2(j, l);
                    let (j, l) = (j as f64, l as f64);
                    for s in [j + l, j - l, l - j, -j - l] {
                        t.push(single(coef, 0.25 + s / mf));
                    }
                }
            }
            t
        }
    };
    for term in &mut terms {
        term.order = term.order.abs();
    }
    Ok(merge_terms(terms))
}

/// Sums coefficients of terms sharing order and argument; output sorted by
/// argument then order.
fn merge_terms(mut terms: Vec<BesselTerm>) -> Vec<BesselTerm> {
    terms.sort_by(|x, y| x.arg.total_cmp(&y.arg).then(x.order.total_cmp(&y.order)));
    let mut out: Vec<BesselTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if (last.order - t.order).abs() < 1e-12 && last.arg == t.arg => last.coef += t.coef,
            _ => out.push(t),
        }
    }
    out
}

/// The family's kernel at a real or complex point.
pub fn eval_kernel_at<S: KernelScalar>(family: &KernelFamily, params: &ResolvedParams, t: S) -> Result<S> {
    eval_kernel_scaled(family, params, t, false)
}

/// `K(t) / Φ(t)` for real `t`, with the common factor `exp(-π e^t)` removed
/// from both before dividing, so it stays finite where each underflows.
pub fn tail_ratio(family: &KernelFamily, params: &ResolvedParams, t: f64) -> Result<f64> {
    let t = t.abs();
    if t > 200.0 {
        return Err(Error::Domain(format!("tail ratio supports |t| <= 200, got {t}")));
    }
    Ok(eval_kernel_scaled(family, params, t, true)? / phi_series_scaled(t, true))
}

fn eval_kernel_scaled<S: KernelScalar>(family: &KernelFamily, params: &ResolvedParams, t: S, scaled: bool) -> Result<S> {
    check_match(family, params)?;
    let e = |t: S| gauss(t, 1.0, scaled);
    let ch = |c: f64| (t * c).cosh();
    let v = match *family {
        KernelFamily::Exact => phi_series_scaled(t, scaled),
        KernelFamily::Polya => ch(2.25) * e(t) * FOUR_PI_SQ,
        KernelFamily::Polya2 => (ch(2.25) * FOUR_PI_SQ - ch(1.25) * (6.0 * PI)) * e(t),
        KernelFamily::DeBruijn => {
            (ch(0.25) * FOUR_PI_SQ + ch(1.25) * (4.0 * PI.powi(3) - 6.0 * PI) + ch(2.25) * FOUR_PI_SQ) * e(t)
        }
        KernelFamily::Hejhal { m } => {
            let mut acc = S::real(0.0);
            for n in 1..=m {
                let n2 = f64::from(n * n);
                let term = ch(2.25) * (FOUR_PI_SQ * n2 * n2) - ch(1.25) * (6.0 * PI * n2);
                acc = acc + term * gauss(t, n2, scaled);
            }
            acc
        }
        KernelFamily::S1 { m } => {
            let b = param(params.b, "b")?;
            let mut acc = ch(2.25);
            for k in 0..m {
                acc = acc + ch(2.25 * f64::from(k) / f64::from(m)) * (b * s1_weight(m, k));
            }
            acc * e(t) * FOUR_PI_SQ
        }
        KernelFamily::S2 { m, a } => {
            let c = param(params.c, "c")?;
            let mut acc = ch(2.25);
            for k in 0..m {
                acc = acc + ch(2.25 * f64::from(k) / f64::from(m)) * (c * s2_weight(a, k));
            }
            acc * e(t) * FOUR_PI_SQ
        }
        KernelFamily::S3 { m } => {
            let a = param(params.a, "a")?;
            let c = (t * (1.0 / f64::from(m))).cosh();
            let inner = c * c * 4.0 - S::real(4.0 * a * a);
            ch(0.25) * inner.powi(m as i32) * e(t) * FOUR_PI_SQ
        }
        KernelFamily::S4 { m } => {
            let (a, b) = param(params.a_b, "(a, b)")?;
            let s = (t * (0.5 / f64::from(m))).sinh();
            let s2 = s * s * 4.0;
            let fa = (s2 + S::real(4.0 * a)).powi(m as i32);
            let fb = (s2 + S::real(4.0 * b)).powi(m as i32);
            ch(0.25) * fa * fb * e(t) * FOUR_PI_SQ
        }
    };
    Ok(v)
}

/// The family's kernel at real `t`.
///
/// Every kernel is even; it is evaluated at `|t|`.
pub fn eval_kernel(family: &KernelFamily, params: &ResolvedParams, t: f64) -> Result<f64> {
    eval_kernel_at(family, params, t.abs())
}
