//! Modified Bessel function of the second kind with complex order and real
//! positive argument,
//!
//! `K_μ(a) = ∫_0^∞ exp(-a cosh t) cosh(μ t) dt`,   `μ = c + iν`,
//!
//! and the symmetric pair `K_{iν+c}(a) + K_{iν-c}(a)` from which every
//! closed-form transform in this crate is assembled.
//!
//! For `|ν|` beyond a few units the integrand on the real axis oscillates
//! while the result is exponentially small, so the integral is taken along a
//! horizontal contour `Im t = η` (see [`numerics::contour_height`]).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{self, QuadratureConfig};

/// Largest `|c|` accepted for the real part of the order.
pub const MAX_REAL_ORDER: f64 = 4.0;
/// Largest `|ν|` accepted for the imaginary part of the order.
pub const MAX_IMAG_ORDER: f64 = 200.0;

/// Decay (natural-log units) the integrand must reach before truncation,
/// measured relative to the size of the contour-scaled result.
const TAIL_LOG_DECAY: f64 = 50.0 + numerics::CANCELLATION_BUDGET;

/// Complex order `c + iν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder {
    pub c: f64,
    pub nu: f64,
}

impl BesselOrder {
    pub fn new(c: f64, nu: f64) -> Result<Self> {
        let o = Self { c, nu };
        o.validate()?;
        Ok(o)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.nu.is_finite()) {
            return Err(Error::Domain("Bessel order must be finite".into()));
        }
        if self.c.abs() > MAX_REAL_ORDER || self.nu.abs() > MAX_IMAG_ORDER {
            return Err(Error::Domain(format!(
                "Bessel order {} + {}i outside supported range |c| <= {MAX_REAL_ORDER}, |nu| <= {MAX_IMAG_ORDER}",
                self.c, self.nu
            )));
        }
        Ok(())
    }
}

fn check_argument(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Bessel argument must be positive, got {a}")))
    }
}

/// Integration cut for `exp(-a cos(η) cosh x + c x)` to fall below the tail
/// threshold relative to its value at 0.
fn contour_upper(a: f64, eta: f64, c: f64) -> f64 {
    let damp = a * eta.cos();
    numerics::truncation_point(|x| damp * (x.cosh() - 1.0) - c.abs() * x, TAIL_LOG_DECAY, 0.0)
}

/// Cut and panel-rate bound for an `exp(-a cosh t)` integrand at frequency
/// `nu` on the contour `Im t = eta`.
fn contour_setup(a: f64, nu: f64, eta: f64, c_max: f64) -> (f64, impl Fn(f64) -> f64) {
    let upper = if eta == 0.0 {
        QuadratureConfig::default().truncation_upper.max(contour_upper(a, 0.0, c_max))
    } else {
        contour_upper(a, eta, c_max)
    };
    let s = eta.sin();
    let nu = nu.abs();
    (upper, move |x: f64| nu + a * s * x.cosh() + c_max)
}

/// `K_{c+iν}(a)` for `c ≥ 0`, `ν ≥ 0`.
fn bessel_k_first_quadrant(c: f64, nu: f64, a: f64) -> Result<Complex64> {
    let mu = Complex64::new(c, nu);
    let eta = numerics::contour_height(nu);
    let (upper, rate) = contour_setup(a, nu, eta, c);
    let cfg = QuadratureConfig::default();
    // K_μ(a) = ½ ∫_{-∞}^{∞} exp(-a cosh t + μ t) dt, folded onto x ≥ 0.
    let value: Complex64 = if eta == 0.0 {
        numerics::integrate_with_rate(
            |x: f64| (-a * x.cosh()).exp() * (mu * x).cosh(),
            0.0,
            upper,
            &cfg,
            rate,
        )?
    } else {
        let shift = Complex64::new(0.0, eta);
        let half: Complex64 = numerics::integrate_with_rate(
            |x: f64| {
                let up = Complex64::new(x, 0.0) + shift;
                let down = Complex64::new(-x, 0.0) + shift;
                (-a * up.cosh() + mu * up).exp() + (-a * down.cosh() + mu * down).exp()
            },
            0.0,
            upper,
            &cfg,
            rate,
        )?;
        half * 0.5
    };
    Ok(value)
}

/// `K_{c+iν}(a)` as a complex number.
///
/// Computed in the quadrant `c, ν ≥ 0`; the other quadrants follow from
/// `K_μ = K_{-μ}` and `K_{conj μ}(a) = conj K_μ(a)`, so both symmetries
/// hold exactly.
pub fn bessel_k(order: BesselOrder, a: f64) -> Result<Complex64> {
    order.validate()?;
    check_argument(a)?;
    let BesselOrder { c, nu } = order;
    let v = match (c < 0.0, nu < 0.0) {
        (false, false) => bessel_k_first_quadrant(c, nu, a)?,
        (true, false) => bessel_k_first_quadrant(-c, nu, a)?.conj(),
        (false, true) => bessel_k_first_quadrant(c, -nu, a)?.conj(),
        (true, true) => bessel_k_first_quadrant(-c, -nu, a)?,
    };
    Ok(v)
}

/// `K_{iν+c}(a) + K_{iν-c}(a) = 2 ∫_0^∞ exp(-a cosh t) cosh(ct) cos(νt) dt`,
/// computed as one real cosine integral.
pub fn g_pair(c: f64, nu: f64, a: f64) -> Result<f64> {
    Ok(g_pairs(&[c], nu, a)?[0])
}

/// [`g_pair`] for several orders sharing one argument and frequency.
///
/// The orders are integrated on a common set of nodes; each component is
/// still an independent integral with its own convergence test.
pub fn g_pairs(orders: &[f64], nu: f64, a: f64) -> Result<Vec<f64>> {
    check_argument(a)?;
    for &c in orders {
        BesselOrder::new(c, nu)?;
    }
    if orders.is_empty() {
        return Ok(Vec::new());
    }
    let nu = nu.abs();
    let eta = numerics::contour_height(nu);
    let c_max = orders.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let (upper, rate) = contour_setup(a, nu, eta, c_max);
    let (sin_eta, cos_eta) = eta.sin_cos();
    let phases: Vec<(f64, f64)> = orders.iter().map(|c| (c * eta).sin_cos()).collect();
    // Components can cross zero; judge them against the integrand's peak
    // rather than their own size.
    let peak = (0..=64)
        .map(|i| {
            let x = upper * f64::from(i) / 64.0;
            (-a * cos_eta * x.cosh() + c_max * x).exp()
        })
        .fold(0.0, f64::max);
    let cfg = QuadratureConfig {
        abs_tol: 1e-14 * peak * upper,
        ..QuadratureConfig::default()
    };
    let inner = numerics::integrate_vector(
        |x: f64, out: &mut [f64]| {
            // exp(-a cosh(x+iη) + iνx) = exp(-a cosh x cos η) · exp(i(νx - a sinh x sin η))
            let magnitude = (-a * x.cosh() * cos_eta).exp();
            let (s, co) = (nu * x - a * x.sinh() * sin_eta).sin_cos();
            let (base_re, base_im) = (magnitude * co, magnitude * s);
            for ((slot, c), (sin_ce, cos_ce)) in out.iter_mut().zip(orders).zip(&phases) {
                // cosh(c(x+iη)) = cosh(cx) cos(cη) + i sinh(cx) sin(cη)
                let (ch, sh) = ((c * x).cosh(), (c * x).sinh());
                let (h_re, h_im) = (ch * cos_ce, sh * sin_ce);
                *slot = base_re * h_re - base_im * h_im;
            }
        },
        orders.len(),
        0.0,
        upper,
        &cfg,
        rate,
    )?;
    let scale = 2.0 * (-nu * eta).exp();
    Ok(inner.into_iter().map(|v| scale * v).collect())
}

/// `K_{1/2}(a) = sqrt(π / (2a)) exp(-a)`.
pub fn k_half_closed_form(a: f64) -> f64 {
    (PI / (2.0 * a)).sqrt() * (-a).exp()
}
