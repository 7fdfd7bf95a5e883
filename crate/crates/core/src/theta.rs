//! Jacobi theta function `θ(x) = Σ_{n∈ℤ} exp(-π n² x)` on the positive real
//! axis, with its first two derivatives.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative size below which a series term ends the summation.
const TRUNCATION: f64 = 1e-30;
const MAX_TERMS: u32 = 10_000;

/// θ and its derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEval {
    pub x: f64,
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

fn check(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta requires x > 0, got {x}")))
    }
}

/// Sums `Σ_{n≥1} n^power exp(-π n² x)` until a term drops below the
/// truncation threshold relative to the running sum.
fn weighted_tail(x: f64, power: i32) -> f64 {
    let mut sum = 0.0;
    for n in 1..=MAX_TERMS {
        let nf = n as f64;
        let term = nf.powi(power) * (-PI * nf * nf * x).exp();
        sum += term;
        if term <= TRUNCATION * sum || term == 0.0 {
            break;
        }
    }
    sum
}

/// `θ(x) = 1 + 2 Σ_{n≥1} exp(-π n² x)`.
pub fn theta(x: f64) -> Result<f64> {
    check(x)?;
    Ok(1.0 + 2.0 * weighted_tail(x, 0))
}

/// `θ'(x) = -2π Σ n² exp(-π n² x)`.
pub fn theta_d1(x: f64) -> Result<f64> {
    check(x)?;
    Ok(-2.0 * PI * weighted_tail(x, 2))
}

/// `θ''(x) = 2π² Σ n⁴ exp(-π n² x)`.
pub fn theta_d2(x: f64) -> Result<f64> {
    check(x)?;
    Ok(2.0 * PI * PI * weighted_tail(x, 4))
}

pub fn theta_eval(x: f64) -> Result<ThetaEval> {
    Ok(ThetaEval {
        x,
        value: theta(x)?,
        d1: theta_d1(x)?,
        d2: theta_d2(x)?,
    })
}
