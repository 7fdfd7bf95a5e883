//! Fourier-cosine transforms of the kernels.
//!
//! `F(w) = 2 ∫_0^∞ K(t) cos(wt) dt`; for the exact kernel `F(w) = Ξ(2w)`,
//! so [`xi_at`] evaluates `F(z/2)` to put zeros at the Riemann ordinates.
//!
//! Two independent routes: direct quadrature of the kernel (on a shifted
//! contour for large `|w|`), and a finite sum of Bessel pairs built from the
//! kernel's cosh expansion. Their agreement is the main correctness check.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::besselk;
use crate::error::{Error, Result};
use crate::kernels::{self, BesselTerm, KernelFamily, ResolvedParams};
use crate::numerics::{self, Bracket, QuadratureConfig};

/// Largest `|w|` accepted by [`ft_at`].
pub const MAX_FREQUENCY: f64 = 100.0;

/// Decay (natural-log units, relative to the kernel's size) required before
/// the transform integral is truncated.
const TAIL_LOG_DECAY: f64 = 50.0 + numerics::CANCELLATION_BUDGET;

/// Metric integrals run over `[0, METRIC_UPPER]`; both kernels are below
/// `exp(-250)` beyond it.
const METRIC_UPPER: f64 = 4.5;
const METRIC_SCAN_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformMethod {
    Quadrature,
    BesselClosedForm,
}

impl TransformMethod {
    /// Closed form where one exists, quadrature for the exact kernel.
    pub fn preferred(family: &KernelFamily) -> Self {
        if family.is_exact() {
            TransformMethod::Quadrature
        } else {
            TransformMethod::BesselClosedForm
        }
    }
}

/// Sampled function values, optionally divided by [`normalization`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub abscissa: Vec<f64>,
    pub values: Vec<f64>,
    pub normalized: bool,
}

impl Curve {
    pub fn new(abscissa: Vec<f64>, values: Vec<f64>, normalized: bool) -> Result<Self> {
        if abscissa.len() != values.len() {
            return Err(Error::Precondition(format!(
                "curve has {} abscissae but {} values",
                abscissa.len(),
                values.len()
            )));
        }
        if abscissa.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Precondition("curve abscissa must be strictly increasing".into()));
        }
        Ok(Self {
            abscissa,
            values,
            normalized,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.abscissa.iter().copied().zip(self.values.iter().copied())
    }
}

/// `N(z) = exp(−πz/4)(z+1)²`, the envelope used to put `Ξ` curves on a
/// common scale.
pub fn normalization(z: f64) -> f64 {
    (-PI * z / 4.0).exp() * (z + 1.0).powi(2)
}

fn check_frequency(w: f64) -> Result<()> {
    if w.is_finite() && w.abs() <= MAX_FREQUENCY {
        Ok(())
    } else {
        Err(Error::Domain(format!("frequency must satisfy |w| <= {MAX_FREQUENCY}, got {w}")))
    }
}

/// Largest value of `exp(-log_decay(x))` on `[0, upper]`, sampled.
fn peak(log_decay: impl Fn(f64) -> f64, upper: f64) -> f64 {
    (0..=64)
        .map(|i| (-log_decay(upper * i as f64 / 64.0)).exp())
        .fold(0.0, f64::max)
}

/// Transform by quadrature of the kernel itself.
fn ft_quadrature(family: &KernelFamily, params: &ResolvedParams, w: f64) -> Result<f64> {
    let eta = numerics::contour_height(w);
    let (sin_eta, cos_eta) = eta.sin_cos();
    // Envelope of |K(x + iη)|: exp(-log_decay(x)) times a size factor.
    let (log_decay, size, hejhal_m): (Box<dyn Fn(f64) -> f64>, f64, Option<u32>) = match family {
        KernelFamily::Exact => (
            Box::new(move |x: f64| PI * cos_eta * x.exp() - 2.25 * x),
            2.0 * PI * PI,
            None,
        ),
        _ => {
            let terms = kernels::bessel_terms(family, params)?;
            let c_max = terms.iter().fold(0.0f64, |m, t| m.max(t.order));
            let size: f64 = terms.iter().map(|t| t.coef.abs()).sum();
            let hejhal = match family {
                KernelFamily::Hejhal { m } => Some(*m),
                _ => None,
            };
            (
                Box::new(move |x: f64| 2.0 * PI * cos_eta * x.cosh() - c_max * x),
                size,
                hejhal,
            )
        }
    };
    let floor = if eta == 0.0 { QuadratureConfig::default().truncation_upper } else { 0.5 };
    let start = log_decay(0.0);
    let upper = numerics::truncation_point(
        |x| log_decay(x) - start,
        TAIL_LOG_DECAY + size.max(1.0).ln(),
        floor,
    );
    let wa = w.abs();
    // Higher series terms oscillate faster but die off once their decay
    // exponent passes ~40, which caps their contribution to the rate.
    let cap = 40.0 / cos_eta.max(1e-3);
    let rate = move |x: f64| -> f64 {
        let base = match (family, hejhal_m) {
            (KernelFamily::Exact, _) => PI * x.exp() + cap,
            (_, Some(m)) => (2.0 * PI * f64::from(m * m) * x.cosh()).min(2.0 * PI * x.cosh() + cap),
            _ => 2.0 * PI * x.cosh(),
        };
        wa + sin_eta * base + 2.25
    };
    let cfg = QuadratureConfig {
        abs_tol: 1e-14 * size * peak(&log_decay, upper) * upper,
        ..QuadratureConfig::default()
    };
    numerics::cosine_transform(
        |z: Complex64| kernels::eval_kernel_at(family, params, z).expect("family checked above"),
        wa,
        eta,
        upper,
        &cfg,
        rate,
    )
}

/// Bessel-sum terms grouped by argument: `arg -> [(order, coef)]`.
fn group_terms(terms: &[BesselTerm]) -> BTreeMap<u64, (f64, Vec<(f64, f64)>)> {
    let mut groups: BTreeMap<u64, (f64, Vec<(f64, f64)>)> = BTreeMap::new();
    for t in terms {
        groups
            .entry(t.arg.to_bits())
            .or_insert_with(|| (t.arg, Vec::new()))
            .1
            .push((t.order, t.coef));
    }
    groups
}

fn ft_closed_form(family: &KernelFamily, params: &ResolvedParams, w: f64) -> Result<f64> {
    let terms = kernels::bessel_terms(family, params)?;
    let mut total = 0.0;
    for (_, (arg, pairs)) in group_terms(&terms) {
        let orders: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let g = besselk::g_pairs(&orders, w, arg)?;
        total += pairs.iter().zip(&g).map(|((_, coef), g)| coef * g).sum::<f64>();
    }
    Ok(total)
}

/// `F(w) = 2 ∫_0^∞ K(t) cos(wt) dt` for the family's kernel `K`.
pub fn ft_at(family: &KernelFamily, params: &ResolvedParams, w: f64, method: TransformMethod) -> Result<f64> {
    check_frequency(w)?;
    if *family != params.family {
        return Err(Error::Precondition(format!(
            "parameters were resolved for {} but {family} was requested",
            params.family
        )));
    }
    match method {
        TransformMethod::Quadrature => ft_quadrature(family, params, w),
        TransformMethod::BesselClosedForm => {
            if family.is_exact() {
                return Err(Error::Precondition(
                    "the Bessel closed form is unavailable for the exact kernel".into(),
                ));
            }
            ft_closed_form(family, params, w)
        }
    }
}

/// The family's `Ξ` at `z`, i.e. `F(z/2)`.
pub fn xi_at(family: &KernelFamily, params: &ResolvedParams, z: f64, method: TransformMethod) -> Result<f64> {
    ft_at(family, params, z / 2.0, method)
}

/// `Ξ` sampled on `zs`, in parallel; optionally divided by `N(|z|)`.
pub fn xi_curve(
    family: &KernelFamily,
    params: &ResolvedParams,
    zs: &[f64],
    method: TransformMethod,
    normalize: bool,
) -> Result<Curve> {
    let values = zs
        .par_iter()
        .map(|&z| {
            let v = xi_at(family, params, z, method)?;
            Ok(if normalize { v / normalization(z.abs()) } else { v })
        })
        .collect::<Result<Vec<f64>>>()?;
    Curve::new(zs.to_vec(), values, normalize)
}

/// The kernel sampled on `ts`.
pub fn kernel_curve(family: &KernelFamily, params: &ResolvedParams, ts: &[f64]) -> Result<Curve> {
    let values = ts
        .iter()
        .map(|&t| kernels::eval_kernel(family, params, t))
        .collect::<Result<Vec<f64>>>()?;
    Curve::new(ts.to_vec(), values, false)
}

/// `∫_0^∞ K(t) dt`.
pub fn kernel_integral(family: &KernelFamily, params: &ResolvedParams) -> Result<f64> {
    kernels::eval_kernel(family, params, 0.0)?;
    numerics::integrate_interval(
        |t| kernels::eval_kernel(family, params, t).expect("family checked above"),
        0.0,
        METRIC_UPPER,
        &QuadratureConfig::default(),
    )
}

/// `100 · ∫_0^∞ |Φ − K| / ∫_0^∞ Φ`, in percent.
///
/// Sign changes of `Φ − K` are located on a grid of step 0.01 and refined,
/// so each piece integrates a smooth function.
pub fn rel_l1_diff(family: &KernelFamily, params: &ResolvedParams) -> Result<f64> {
    if family.is_exact() {
        return Err(Error::Precondition("relative difference of the exact kernel with itself".into()));
    }
    kernels::eval_kernel(family, params, 0.0)?;
    let diff = |t: f64| kernels::phi_exact(t) - kernels::eval_kernel(family, params, t).expect("family checked above");
    let xs = numerics::uniform_grid(0.0, METRIC_UPPER, METRIC_SCAN_STEP);
    let ys: Vec<f64> = xs.iter().map(|&x| diff(x)).collect();
    let mut cuts = vec![0.0];
    for b in numerics::brackets_from_samples(&xs, &ys) {
        let root = if b.is_degenerate() { b.lo } else { numerics::find_root(diff, b, 1e-14)? };
        if root > *cuts.last().unwrap() && root < METRIC_UPPER {
            cuts.push(root);
        }
    }
    cuts.push(METRIC_UPPER);
    let cfg = QuadratureConfig::default();
    let mut num = 0.0;
    for piece in cuts.windows(2) {
        num += numerics::integrate_interval(diff, piece[0], piece[1], &cfg)?.abs();
    }
    let den = kernel_integral(&KernelFamily::Exact, &kernels::resolve_params(KernelFamily::Exact)?)?;
    Ok(100.0 * num / den)
}

/// Sign-change brackets of `xi_at` on `(lo, hi]`.
pub fn xi_brackets(
    family: &KernelFamily,
    params: &ResolvedParams,
    lo: f64,
    hi: f64,
    step: f64,
    method: TransformMethod,
) -> Result<Vec<Bracket>> {
    let zs = numerics::uniform_grid(lo, hi, step);
    let curve = xi_curve(family, params, &zs, method, false)?;
    Ok(numerics::brackets_from_samples(&curve.abscissa, &curve.values))
}
