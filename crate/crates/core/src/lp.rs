//! Finite numeric checks behind the real-zero arguments:
//!
//! * Eneström–Kakeya: `0 < a_0 < a_1 < … < a_n` puts every root of
//!   `p(z) = Σ a_k z^k` in the closed unit disk.
//! * Hermite–Biehler: then `A(α) = Σ a_k cos kα` and `B(α) = Σ a_k sin kα`
//!   each have `2n` simple zeros on `[0, 2π)` and the two sets interlace.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{self, Bracket};

pub const MAX_ROOT_DEGREE: usize = 64;
pub const MAX_TRIG_DEGREE: usize = 32;
/// Scan cells per period in [`trig_realroot_report`].
pub const TRIG_SCAN_CELLS: usize = 4096;

const UNIT_DISK_SLACK: f64 = 1e-9;
const ROOT_RESIDUAL: f64 = 1e-12;
const MAX_ABERTH_ITERATIONS: usize = 500;

/// Polynomial coefficients `a_0, …, a_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffSeq {
    a: Vec<f64>,
}

impl CoeffSeq {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::Precondition(format!(
                "coefficient sequence needs at least 2 entries, got {}",
                a.len()
            )));
        }
        if a.iter().any(|x| !x.is_finite()) {
            return Err(Error::Precondition("coefficients must be finite".into()));
        }
        Ok(Self { a })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.a
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    /// `p(z)` and `p'(z)` by Horner's rule.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &c in self.a.iter().rev() {
            d = d * z + p;
            p = p * z + c;
        }
        (p, d)
    }

    /// `A(α) = Σ a_k cos kα`.
    pub fn cos_sum(&self, alpha: f64) -> f64 {
        self.a.iter().enumerate().map(|(k, c)| c * (k as f64 * alpha).cos()).sum()
    }

    /// `B(α) = Σ_{k≥1} a_k sin kα`.
    pub fn sin_sum(&self, alpha: f64) -> f64 {
        self.a.iter().enumerate().skip(1).map(|(k, c)| c * (k as f64 * alpha).sin()).sum()
    }
}

/// True iff the coefficients are strictly positive and strictly increasing.
pub fn ek_applies(s: &CoeffSeq) -> bool {
    s.a[0] > 0.0 && s.a.windows(2).all(|w| w[1] > w[0])
}

/// All roots of `p` by Aberth–Ehrlich simultaneous iteration.
pub fn polynomial_roots(s: &CoeffSeq) -> Result<Vec<Complex64>> {
    let n = s.degree();
    if n > MAX_ROOT_DEGREE {
        return Err(Error::Precondition(format!(
            "degree {n} exceeds the supported {MAX_ROOT_DEGREE}"
        )));
    }
    let lead = s.a[n];
    if lead == 0.0 {
        return Err(Error::Precondition("leading coefficient is zero".into()));
    }
    // Start on a slightly perturbed unit circle.
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0 + 0.01 * k as f64 / n as f64, TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let abs_poly = |r: f64| s.a.iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
    for _ in 0..MAX_ABERTH_ITERATIONS {
        let mut settled = true;
        for k in 0..n {
            let (p, d) = s.eval_with_derivative(z[k]);
            if p.norm() <= ROOT_RESIDUAL * abs_poly(z[k].norm()) {
                continue;
            }
            settled = false;
            let ratio = p / d;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
            } else {
                z[k] += Complex64::new(1e-3, 1e-3);
            }
        }
        if settled {
            return Ok(z);
        }
    }
    Err(Error::Numerical(format!(
        "root iteration did not reach residual {ROOT_RESIDUAL:e} in {MAX_ABERTH_ITERATIONS} sweeps"
    )))
}

/// True iff every root of `p` has modulus at most `1 + 1e-9`.
pub fn roots_in_unit_disk(s: &CoeffSeq) -> Result<bool> {
    Ok(polynomial_roots(s)?.iter().all(|z| z.norm() <= 1.0 + UNIT_DISK_SLACK))
}

/// Zeros of `A` and `B` on `[0, 2π)` and whether they interlace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigRootReport {
    pub degree: usize,
    pub a_zeros: Vec<f64>,
    pub b_zeros: Vec<f64>,
    pub a_count: usize,
    pub b_count: usize,
    pub interlacing: bool,
}

/// Zeros on `[0, 2π)` of a `2π`-periodic function sampled on `cells`
/// uniform cells. `forced` lists grid indices known to be exact zeros.
fn periodic_zeros<F: Fn(f64) -> f64>(f: F, cells: usize, forced: &[usize]) -> Result<Vec<f64>> {
    let h = TAU / cells as f64;
    let xs: Vec<f64> = (0..cells).map(|i| i as f64 * h).collect();
    let mut ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    for &i in forced {
        ys[i] = 0.0;
    }
    // Two zeros inside one cell leave no sign change; a sampled |f| minimum
    // whose interpolating parabola dips through zero betrays them.
    for i in 0..cells {
        let (y0, y1, y2) = (ys[(i + cells - 1) % cells], ys[i], ys[(i + 1) % cells]);
        if y1 == 0.0 || y0 * y1 <= 0.0 || y1 * y2 <= 0.0 || y1.abs() > y0.abs().min(y2.abs()) {
            continue;
        }
        let curvature = y0 - 2.0 * y1 + y2;
        let slope = 0.5 * (y2 - y0);
        if curvature != 0.0 {
            let vertex = y1 - slope * slope / (2.0 * curvature);
            if vertex * y1 < 0.0 {
                return Err(Error::Numerical(format!(
                    "two zeros may share the scan cell near alpha = {:.6}; rerun with more than {cells} cells",
                    xs[i]
                )));
            }
        }
    }
    let mut zeros = Vec::new();
    if ys[0] == 0.0 {
        zeros.push(0.0);
    }
    let mut brackets = numerics::brackets_from_samples(&xs, &ys);
    let (last, first) = (ys[cells - 1], ys[0]);
    if last * first < 0.0 {
        brackets.push(Bracket {
            lo: xs[cells - 1],
            hi: TAU,
            f_lo: last,
            f_hi: first,
        });
    }
    for b in brackets {
        let z = if b.is_degenerate() { b.lo } else { numerics::find_root(&f, b, 1e-14)? };
        zeros.push(z);
    }
    Ok(zeros)
}

/// [`trig_realroot_report`] with an explicit number of scan cells.
pub fn trig_realroot_report_with_cells(s: &CoeffSeq, cells: usize) -> Result<TrigRootReport> {
    if !ek_applies(s) {
        return Err(Error::Precondition(
            "coefficients must be positive and strictly increasing".into(),
        ));
    }
    let n = s.degree();
    if n > MAX_TRIG_DEGREE {
        return Err(Error::Precondition(format!("degree {n} exceeds the supported {MAX_TRIG_DEGREE}")));
    }
    if cells < 8 || cells % 2 != 0 {
        return Err(Error::Precondition(format!("cell count must be even and at least 8, got {cells}")));
    }
    let a_zeros = periodic_zeros(|x| s.cos_sum(x), cells, &[])?;
    // B vanishes identically at 0 and π, both grid points.
    let b_zeros = periodic_zeros(|x| s.sin_sum(x), cells, &[0, cells / 2])?;
    let mut merged: Vec<(f64, bool)> = a_zeros
        .iter()
        .map(|&z| (z, true))
        .chain(b_zeros.iter().map(|&z| (z, false)))
        .collect();
    merged.sort_by(|x, y| x.0.total_cmp(&y.0));
    let interlacing = merged.windows(2).all(|w| w[0].1 != w[1].1 && w[1].0 > w[0].0);
    Ok(TrigRootReport {
        degree: n,
        a_count: a_zeros.len(),
        b_count: b_zeros.len(),
        a_zeros,
        b_zeros,
        interlacing,
    })
}

/// Scans `A` and `B` on `[0, 2π)` with step `2π/4096`, refines each sign
/// change, and checks that the sorted zeros alternate between the two.
pub fn trig_realroot_report(s: &CoeffSeq) -> Result<TrigRootReport> {
    trig_realroot_report_with_cells(s, TRIG_SCAN_CELLS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn seq(a: &[f64]) -> CoeffSeq {
        CoeffSeq::new(a.to_vec()).unwrap()
    }

    #[test]
    fn ek_condition() {
        assert!(ek_applies(&seq(&[1.0, 2.0, 3.0])));
        assert!(!ek_applies(&seq(&[3.0, 2.0, 1.0])));
        assert!(!ek_applies(&seq(&[0.0, 1.0])));
        assert!(!ek_applies(&seq(&[1.0, 1.0])));
        assert!(CoeffSeq::new(vec![1.0]).is_err());
        assert!(CoeffSeq::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn quadratic_roots() {
        let roots = polynomial_roots(&seq(&[1.0, 2.0, 3.0])).unwrap();
        for r in &roots {
            assert!((r.re - -1.0 / 3.0).abs() < 1e-12);
            assert!((r.im.abs() - 2f64.sqrt() / 3.0).abs() < 1e-12);
            assert!((r.norm() - 3f64.sqrt() / 3.0).abs() < 1e-12);
        }
        assert!(roots_in_unit_disk(&seq(&[1.0, 2.0, 3.0])).unwrap());
    }

    #[test]
    fn root_outside_disk() {
        let roots = polynomial_roots(&seq(&[1.0, 0.5])).unwrap();
        assert!((roots[0] - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        assert!(!roots_in_unit_disk(&seq(&[1.0, 0.5])).unwrap());
    }

    #[test]
    fn roots_of_unity() {
        // z^5 - 1: all roots on the circle, within the slack.
        let roots = polynomial_roots(&seq(&[-1.0, 0.0, 0.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(roots.len(), 5);
        assert!(roots.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn degree_limits() {
        assert!(polynomial_roots(&seq(&[1.0, 0.0])).is_err());
        assert!(polynomial_roots(&CoeffSeq::new(vec![1.0; 66]).unwrap()).is_err());
        let long: Vec<f64> = (1..=34).map(f64::from).collect();
        assert!(trig_realroot_report(&seq(&long)).is_err());
        assert!(trig_realroot_report(&seq(&[3.0, 2.0])).is_err());
    }

    #[test]
    fn linear_trig_pair() {
        let r = trig_realroot_report(&seq(&[1.0, 2.0])).unwrap();
        assert_eq!(r.a_count, 2);
        assert!((r.a_zeros[0] - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((r.a_zeros[1] - 4.0 * PI / 3.0).abs() < 1e-12);
        assert_eq!(r.b_zeros, vec![0.0, PI]);
        assert!(r.interlacing);
    }

    #[test]
    fn quadratic_and_quartic_trig_pairs() {
        for a in [vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0, 4.0, 5.0]] {
            let n = a.len() - 1;
            let r = trig_realroot_report(&seq(&a)).unwrap();
            assert_eq!((r.a_count, r.b_count), (2 * n, 2 * n));
            assert!(r.interlacing);
            for z in &r.a_zeros {
                assert!(seq(&a).cos_sum(*z).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn two_zeros_in_one_cell_are_reported() {
        // Minimum -1e-5 at the middle of cell [0, h]; zeros ±0.0045 around it.
        let cells = 64;
        let h = TAU / cells as f64;
        let f = |x: f64| (x - PI - h / 2.0).cos() + 1.0 - 1e-5;
        assert!(matches!(periodic_zeros(f, cells, &[]), Err(Error::Numerical(_))));
        let zeros = periodic_zeros(f, 4096, &[]).unwrap();
        assert_eq!(zeros.len(), 2);
    }

    fn ek_sequence() -> impl Strategy<Value = Vec<f64>> {
        (0.01f64..1.0, prop::collection::vec(0.01f64..1.0, 1..=10)).prop_map(|(a0, steps)| {
            let mut out = vec![a0];
            for d in steps {
                out.push(out.last().unwrap() + d);
            }
            out
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn ek_sequences_have_roots_in_disk(a in ek_sequence()) {
            let s = seq(&a);
            prop_assert!(ek_applies(&s));
            prop_assert!(roots_in_unit_disk(&s).unwrap());
        }

        #[test]
        fn ek_sequences_interlace(a in ek_sequence()) {
            let s = seq(&a);
            let n = s.degree();
            let r = trig_realroot_report(&s).unwrap();
            prop_assert_eq!(r.a_count, 2 * n);
            prop_assert_eq!(r.b_count, 2 * n);
            prop_assert!(r.interlacing);
        }

        #[test]
        fn disk_test_is_scale_invariant(a in prop::collection::vec(-2.0f64..2.0, 2..8), scale in 0.01f64..100.0) {
            prop_assume!(a.last().unwrap().abs() > 0.1);
            let s = seq(&a);
            let scaled = seq(&a.iter().map(|x| x * scale).collect::<Vec<_>>());
            let roots = polynomial_roots(&s).unwrap();
            // Skip cases whose largest root sits on the tolerance boundary.
            let r = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assume!((r - 1.0).abs() > 1e-6);
            prop_assert_eq!(roots_in_unit_disk(&s).unwrap(), roots_in_unit_disk(&scaled).unwrap());
        }
    }
}
