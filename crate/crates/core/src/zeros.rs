//! Real zeros of `Ξ`-type functions: grid scan for sign changes, bracketed
//! refinement, and pairing of zero sets from two families.

use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{KernelFamily, ResolvedParams};
use crate::numerics::{self, Bracket};
use crate::xi::{self, TransformMethod};

/// Upper end of the supported scan range.
pub const MAX_Z: f64 = 100.0;
/// Coarsest scan step accepted.
pub const MAX_STEP: f64 = 0.25;

/// Zeros found on one scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroReport {
    pub family: KernelFamily,
    pub method: TransformMethod,
    pub range: (f64, f64),
    pub step: f64,
    pub tol: f64,
    pub count: usize,
    pub zeros: Vec<f64>,
    /// `|f(z)| / N(z)` at each refined zero.
    pub residuals: Vec<f64>,
}

/// Refined zeros of an arbitrary function with their residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroScan {
    pub zeros: Vec<f64>,
    pub residuals: Vec<f64>,
}

fn check_scan(lo: f64, hi: f64, step: f64, tol: f64) -> Result<()> {
    if !(lo >= 0.0 && lo < hi && hi <= MAX_Z) {
        return Err(Error::Precondition(format!(
            "zero scan needs 0 <= lo < hi <= {MAX_Z}, got ({lo}, {hi}]"
        )));
    }
    if !(step > 0.0 && step <= MAX_STEP) {
        return Err(Error::Precondition(format!("scan step must lie in (0, {MAX_STEP}], got {step}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Refines the sign changes found in `(xs[0], xs[last]]` from precomputed
/// samples `ys = f(xs)`.
pub fn zeros_from_samples<F>(f: F, xs: &[f64], ys: &[f64], tol: f64) -> Result<ZeroScan>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let plain = |z: f64| match f(z) {
        Ok(v) => v,
        Err(e) => {
            failure.lock().unwrap().get_or_insert(e);
            f64::NAN
        }
    };
    let brackets = numerics::brackets_from_samples(xs, ys);
    let zeros = brackets
        .par_iter()
        .map(|b: &Bracket| {
            if b.is_degenerate() {
                Ok(b.lo)
            } else {
                numerics::find_root(plain, *b, tol)
            }
        })
        .collect::<Result<Vec<f64>>>();
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let zeros = zeros?;
    let residuals = zeros
        .par_iter()
        .map(|&z| Ok(f(z)?.abs() / xi::normalization(z.abs())))
        .collect::<Result<Vec<f64>>>()?;
    Ok(ZeroScan { zeros, residuals })
}

/// Scans `f` on `(lo, hi]` with the given step and refines every sign
/// change to `tol`. Test seam for [`locate_zeros`].
pub fn locate_zeros_with<F>(f: F, lo: f64, hi: f64, step: f64, tol: f64) -> Result<ZeroScan>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if !(step > 0.0) || !(hi > lo) || !(tol > 0.0) {
        return Err(Error::Precondition(format!(
            "bad scan: range ({lo}, {hi}], step {step}, tol {tol}"
        )));
    }
    let xs = numerics::uniform_grid(lo, hi, step);
    let ys = xs.par_iter().map(|&x| f(x)).collect::<Result<Vec<f64>>>()?;
    zeros_from_samples(f, &xs, &ys, tol)
}

/// Zeros of the family's `Ξ` on `(lo, hi]`, using the closed form where one
/// exists.
pub fn locate_zeros(
    family: &KernelFamily,
    params: &ResolvedParams,
    lo: f64,
    hi: f64,
    step: f64,
    tol: f64,
) -> Result<ZeroReport> {
    locate_zeros_by(family, params, TransformMethod::preferred(family), lo, hi, step, tol)
}

/// [`locate_zeros`] with an explicit transform method.
pub fn locate_zeros_by(
    family: &KernelFamily,
    params: &ResolvedParams,
    method: TransformMethod,
    lo: f64,
    hi: f64,
    step: f64,
    tol: f64,
) -> Result<ZeroReport> {
    check_scan(lo, hi, step, tol)?;
    let scan = locate_zeros_with(|z| xi::xi_at(family, params, z, method), lo, hi, step, tol)?;
    Ok(report(family, method, (lo, hi), step, tol, scan))
}

/// Assembles a report from a finished scan.
pub fn report(
    family: &KernelFamily,
    method: TransformMethod,
    range: (f64, f64),
    step: f64,
    tol: f64,
    scan: ZeroScan,
) -> ZeroReport {
    ZeroReport {
        family: *family,
        method,
        range,
        step,
        tol,
        count: scan.zeros.len(),
        zeros: scan.zeros,
        residuals: scan.residuals,
    }
}

/// Result of pairing two zero sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroPairing {
    pub matched: Vec<(f64, f64)>,
    pub max_delta: f64,
    pub unmatched_first: Vec<f64>,
    pub unmatched_second: Vec<f64>,
}

/// Greedy left-to-right pairing: each zero of `r1` takes the nearest
/// still-unmatched zero of `r2` within `pairing_radius`.
pub fn compare_zero_sets(r1: &ZeroReport, r2: &ZeroReport, pairing_radius: f64) -> Result<ZeroPairing> {
    let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
    if !(same(r1.range.0, r2.range.0) && same(r1.range.1, r2.range.1)) {
        return Err(Error::Precondition(format!(
            "zero sets cover different ranges {:?} and {:?}",
            r1.range, r2.range
        )));
    }
    let mut taken = vec![false; r2.zeros.len()];
    let mut matched = Vec::new();
    let mut unmatched_first = Vec::new();
    for &z in &r1.zeros {
        let best = r2
            .zeros
            .iter()
            .enumerate()
            .filter(|(i, w)| !taken[*i] && (*w - z).abs() <= pairing_radius)
            .min_by(|a, b| (a.1 - z).abs().total_cmp(&(b.1 - z).abs()));
        match best {
            Some((i, &w)) => {
                taken[i] = true;
                matched.push((z, w));
            }
            None => unmatched_first.push(z),
        }
    }
    let unmatched_second = r2
        .zeros
        .iter()
        .zip(&taken)
        .filter(|(_, t)| !**t)
        .map(|(z, _)| *z)
        .collect();
    let max_delta = matched.iter().map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(ZeroPairing {
        matched,
        max_delta,
        unmatched_first,
        unmatched_second,
    })
}
