//! Invariant suites behind `verify`: each check yields one PASS/FAIL/INFO
//! line.

use std::f64::consts::PI;
use std::fmt::Write as _;

use clap::ValueEnum;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::besselk::{self, BesselOrder};
use crate::coeffs;
use crate::error::Result;
use crate::kernels::{self, KernelFamily, ResolvedParams};
use crate::lp::{self, CoeffSeq};
use crate::theta;
use crate::xi::{self, TransformMethod};
use crate::zeros;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Theta,
    Constants,
    Params,
    Coeffs,
    Bessel,
    Kernels,
    Xi,
    Metrics,
    Zeros,
    Lp,
}

impl Suite {
    const EACH: [Suite; 10] = [
        Suite::Theta,
        Suite::Constants,
        Suite::Params,
        Suite::Coeffs,
        Suite::Bessel,
        Suite::Kernels,
        Suite::Xi,
        Suite::Metrics,
        Suite::Zeros,
        Suite::Lp,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Theta => "theta",
            Suite::Constants => "constants",
            Suite::Params => "params",
            Suite::Coeffs => "coeffs",
            Suite::Bessel => "bessel",
            Suite::Kernels => "kernels",
            Suite::Xi => "xi",
            Suite::Metrics => "metrics",
            Suite::Zeros => "zeros",
            Suite::Lp => "lp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// Reported value without a pass/fail threshold.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Collects checks for one suite; an `Err` from a computation becomes a
/// failed check instead of aborting the suite.
struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Self {
            suite: suite.name(),
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, status: Status, detail: String) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            status,
            detail,
        });
    }

    fn check(&mut self, name: &str, outcome: Result<(bool, String)>) {
        match outcome {
            Ok((ok, detail)) => self.push(name, if ok { Status::Pass } else { Status::Fail }, detail),
            Err(e) => self.push(name, Status::Fail, format!("error: {e}")),
        }
    }

    fn close(&mut self, name: &str, value: f64, expected: f64, tol: f64) {
        let ok = (value - expected).abs() <= tol;
        self.push(
            name,
            if ok { Status::Pass } else { Status::Fail },
            format!("{value:.9} vs {expected} ± {tol:e}"),
        );
    }

    fn info(&mut self, name: &str, outcome: Result<String>) {
        match outcome {
            Ok(detail) => self.push(name, Status::Info, detail),
            Err(e) => self.push(name, Status::Fail, format!("error: {e}")),
        }
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::All => Suite::EACH.iter().flat_map(|s| run_suite(*s)).collect(),
        Suite::Theta => theta_suite(),
        Suite::Constants => constants_suite(),
        Suite::Params => params_suite(),
        Suite::Coeffs => coeffs_suite(),
        Suite::Bessel => bessel_suite(),
        Suite::Kernels => kernels_suite(),
        Suite::Xi => xi_suite(),
        Suite::Metrics => metrics_suite(),
        Suite::Zeros => zeros_suite(),
        Suite::Lp => lp_suite(),
    }
}

/// One line per check plus a summary line.
pub fn render(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        };
        let _ = writeln!(out, "{tag} {}/{}: {}", c.suite, c.name, c.detail);
    }
    let count = |s| checks.iter().filter(|c| c.status == s).count();
    let _ = writeln!(
        out,
        "summary: {} passed, {} failed, {} info",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Info)
    );
    out
}

fn resolve(f: KernelFamily) -> Result<(KernelFamily, ResolvedParams)> {
    Ok((f, kernels::resolve_params(f)?))
}

fn theta_suite() -> Vec<Check> {
    let mut r = Recorder::new(Suite::Theta);
    for x in [0.05, 0.3, 1.0, 1.7, 3.0] {
        r.check(
            &format!("functional_equation_x={x}"),
            (|| {
                let res = (theta::theta(1.0 / x)? - x.sqrt() * theta::theta(x)?).abs();
                Ok((res < 1e-12, format!("residual {res:.3e}")))
            })(),
        );
        r.check(
            &format!("derivatives_x={x}"),
            (|| {
                let h = 1e-4 * x;
                let e = theta::theta_eval(x)?;
                let d1 = (theta::theta(x + h)? - theta::theta(x - h)?) / (2.0 * h);
                let d2 = (theta::theta_d1(x + h)? - theta::theta_d1(x - h)?) / (2.0 * h);
                let r1 = ((d1 - e.d1) / e.d1).abs();
                let r2 = ((d2 - e.d2) / e.d2).abs();
                Ok((r1 < 1e-6 && r2 < 1e-6, format!("relative errors {r1:.2e}, {r2:.2e}")))
            })(),
        );
    }
    r.checks
}

fn constants_suite() -> Vec<Check> {
    let mut r = Recorder::new(Suite::Constants);
    match kernels::resolve_params(KernelFamily::Exact) {
        Ok(p) => {
            r.close("phi0", p.phi0, 0.446696, 1e-6);
            r.close("beta", p.beta, 5.059069, 1e-5);
            r.close("gamma", p.gamma, 0.192369, 1e-5);
            r.close("delta", p.delta, 6.059069, 1e-5);
            r.close("delta_is_one_plus_beta", p.delta, 1.0 + p.beta, 1e-9);
            // Two-term series oracle; the third term contributes 5e-7.
            let two_terms: f64 = (1..=2)
                .map(|n| {
                    let n2 = f64::from(n * n);
                    let e = (-PI * n2).exp();
                    let a = 2.0 * PI * PI * n2 * n2;
                    let b = 3.0 * PI * n2;
                    let u = PI * n2;
                    // d²/dt² of (a e^{9t/4} - b e^{5t/4}) exp(-u e^t) at t = 0
                    let f = |k: f64, c: f64| c * e * ((k - u).powi(2) - u);
                    f(2.25, a) - f(1.25, b)
                })
                .sum();
            r.close("phi_second_derivative", kernels::phi_d2_at_zero(), two_terms, 1e-6);
        }
        Err(e) => r.push("resolve", Status::Fail, format!("error: {e}")),
    }
    r.checks
}

fn params_suite() -> Vec<Check> {
    let mut r = Recorder::new(Suite::Params);
    let pinned: [(KernelFamily, &str, f64); 8] = [
        (KernelFamily::S1 { m: 11 }, "b", 0.919830),
        (KernelFamily::S1 { m: 100 }, "b", 0.101181),
        (KernelFamily::S2 { m: 6, a: 0.01 }, "c", 0.844600),
        (KernelFamily::S2 { m: 7, a: 0.5 }, "c", 0.842081),
        (KernelFamily::S3 { m: 2 }, "a", 0.620177),
        (KernelFamily::S3 { m: 3 }, "a", 0.737722),
        (KernelFamily::S4 { m: 2 }, "a", 0.208233),
        (KernelFamily::S4 { m: 3 }, "a", 0.122579),
    ];
    for (f, field, expected) in pinned {
        match kernels::resolve_params(f) {
            Ok(p) => {
                let v = match field {
                    "b" => p.b,
                    "c" => p.c,
                    _ => p.a.or(p.a_b.map(|ab| ab.0)),
                };
                r.close(&format!("{f}.{field}"), v.unwrap_or(f64::NAN), expected, 1e-5);
                if let (KernelFamily::S4 { m }, Some((_, b))) = (f, p.a_b) {
                    let expected_b = if m == 2 { 0.738810 } else { 0.929527 };
                    r.close(&format!("{f}.b"), b, expected_b, 1e-5);
                }
            }
            Err(e) => r.push(&f.to_string(), Status::Fail, format!("error: {e}")),
        }
    }
    for f in [
        KernelFamily::S1 { m: 10 },
        KernelFamily::S3 { m: 1 },
        KernelFamily::S4 { m: 1 },
        KernelFamily::S4 { m: 4 },
    ] {
        let rejected = kernels::resolve_params(f);
        let ok = matches!(&rejected, Err(e) if e.is_user_error());
        let detail = match rejected {
            Err(e) => e.to_string(),
            Ok(_) => "accepted".into(),
        };
        r.push(&format!("rejects_{f}"), if ok { Status::Pass } else { Status::Fail }, detail);
    }
    r.check(
        "mu_half",
        (|| {
            let mu = kernels::solve_mu(0.5)?;
            let beta = kernels::resolve_params(KernelFamily::Exact)?.beta;
            let res = (mu * (1.0 - 2f64.powf(-mu)) - beta).abs();
            Ok((res < 1e-10, format!("mu = {mu:.10}, residual {res:.2e}")))
        })(),
    );
    r.checks
}

fn coeffs_suite() -> Vec<Check> {
    let mut r = Recorder::new(Suite::Coeffs);
    r.check(
        "sinh_power_row_sums",
        (|| {
            let worst = (1..=10)
                .map(|k| Ok(coeffs::sinh_power_coeffs(k)?.sum().abs()))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Ok((worst < 1e-12, format!("max |row sum| {worst:.2e} for k <= 10")))
        })(),
    );
    r.check(
        "h_sum_rule_and_expansion",
        (|| {
            let mut worst: f64 = 0.0;
            for m in 1..=6u32 {
                for a in [0.0, 0.3, 0.62] {
                    let t = coeffs::h_coeffs(m, a)?;
                    let q = 1.0 - a * a;
                    let direct = |x: f64| {
                        4f64.powi(m as i32) * (x / 4.0).cosh() * ((x / f64::from(m)).sinh().powi(2) + q).powi(m as i32)
                    };
                    for x in [0.0, 0.5, 1.3, 2.2] {
                        let series: f64 = (0..=m as usize)
                            .map(|j| {
                                let s = 2.0 * j as f64 * x / f64::from(m);
                                t.get(j) * ((s + x / 4.0).cosh() + (s - x / 4.0).cosh())
                            })
                            .sum();
                        worst = worst.max(((series - direct(x)) / direct(x)).abs());
                    }
                }
            }
            Ok((worst < 1e-10, format!("max relative error {worst:.2e} for m <= 6")))
        })(),
    );
    r.check(
        "j_sum_rule_and_expansion",
        (|| {
            let mut worst: f64 = 0.0;
            for m in 1..=6u32 {
                for (a, b) in [(0.3, 0.8), (0.208233, 0.738810)] {
                    let t = coeffs::j_coeffs(m, a, b)?;
                    let direct = |x: f64| {
                        let s = 4.0 * (x / (2.0 * f64::from(m))).sinh().powi(2);
                        (x / 4.0).cosh() * (s + 4.0 * a).powi(m as i32) * (s + 4.0 * b).powi(m as i32)
                    };
                    for x in [0.0, 0.7, 2.1] {
                        let mut series = 0.0;
                        for j in 0..=m as usize {
                            for l in 0..=m as usize {
                                series += t.get2(j, l) * coeffs::p_four_terms(m, j, l, x);
                            }
                        }
                        worst = worst.max(((series - direct(x)) / direct(x)).abs());
                    }
                }
            }
            Ok((worst < 1e-10, format!("max relative error {worst:.2e} for m <= 6")))
        })(),
    );
    r.checks
}

fn bessel_suite() -> Vec<Check> {
    let mut r = Recorder::new(Suite::Bessel);
    let two_pi = 2.0 * PI;
    r.check(
        "half_order_closed_form",
        (|| {
            let v = besselk::bessel_k(BesselOrder::new(0.5, 0.0)?, two_pi)?;
            let exact = 0.5 * (-two_pi).exp();
            let rel = ((v.re - exact) / exact).abs();
            Ok((rel < 1e-12, format!("relative error {rel:.2e}")))
        })(),
    );
    for nu in [1.0, 7.0, 40.0] {
        r.check(
            &format!("symmetries_nu={nu}"),
            (|| {
                let mut worst: f64 = 0.0;
                for c in [0.25, 1.25, 2.25] {
                    let k = besselk::bessel_k(BesselOrder::new(c, nu)?, two_pi)?;
                    let neg = besselk::bessel_k(BesselOrder::new(-c, -nu)?, two_pi)?;
                    let conj = besselk::bessel_k(BesselOrder::new(c, -nu)?, two_pi)?;
                    worst = worst.max((k - neg).norm() / k.norm()).max((conj - k.conj()).norm() / k.norm());
                }
                Ok((worst <= 1e-12, format!("max relative deviation {worst:.2e}")))
            })(),
        );
    }
    r.checks
}

fn kernels_suite() -> Vec<Check> {
    let mut r = Recorder::new(Suite::Kernels);
    let phi0 = kernels::phi_exact(0.0);
    let heads = [
        (KernelFamily::S1 { m: 11 }, 1e-6),
        (KernelFamily::S2 { m: 6, a: 0.01 }, 1e-6),
        (KernelFamily::S3 { m: 2 }, 1e-6),
        (KernelFamily::S4 { m: 2 }, 1e-4),
    ];
    for (f, tol) in heads {
        match resolve(f).and_then(|(f, p)| kernels::eval_kernel(&f, &p, 0.0)) {
            Ok(v) => r.close(&format!("head_{f}"), v, phi0, tol),
            Err(e) => r.push(&format!("head_{f}"), Status::Fail, format!("error: {e}")),
        }
    }
    // Tail agreement is asymptotic: past the peak near t = 3 the deviation
    // from the exact kernel shrinks steadily.
    for (f, _) in heads {
        r.check(
            &format!("tail_{f}"),
            (|| {
                let (f, p) = resolve(f)?;
                let devs = [5.0, 10.0, 20.0, 40.0]
                    .iter()
                    .map(|&t| Ok((kernels::tail_ratio(&f, &p, t)? - 1.0).abs()))
                    .collect::<Result<Vec<f64>>>()?;
                let ok = devs.windows(2).all(|w| w[1] < w[0]) && devs[3] < 1e-3;
                let shown: Vec<String> = devs.iter().map(|d| format!("{d:.3e}")).collect();
                Ok((ok, format!("|K/Phi - 1| at t = 5, 10, 20, 40: {}", shown.join(", "))))
            })(),
        );
    }
    r.check(
        "evenness",
        (|| {
            let mut worst: f64 = 0.0;
            for f in [KernelFamily::Polya2, KernelFamily::Hejhal { m: 3 }, KernelFamily::S4 { m: 3 }] {
                let (f, p) = resolve(f)?;
                for t in [0.3, 1.1, 2.4] {
                    let (a, b) = (kernels::eval_kernel_at(&f, &p, t)?, kernels::eval_kernel_at(&f, &p, -t)?);
                    worst = worst.max(((a - b) / a).abs());
                }
            }
            Ok((worst < 1e-12, format!("max relative asymmetry {worst:.2e}")))
        })(),
    );
    r.checks
}

const CLOSED_FORM_FAMILIES: [KernelFamily; 7] = [
    KernelFamily::Polya,
    KernelFamily::DeBruijn,
    KernelFamily::Hejhal { m: 4 },
    KernelFamily::S1 { m: 11 },
    KernelFamily::S2 { m: 7, a: 0.5 },
    KernelFamily::S3 { m: 3 },
    KernelFamily::S4 { m: 2 },
];

fn xi_suite() -> Vec<Check> {
    let mut r = Recorder::new(Suite::Xi);
    r.check(
        "exact_at_zero",
        (|| {
            let (f, p) = resolve(KernelFamily::Exact)?;
            let v = xi::xi_at(&f, &p, 0.0, TransformMethod::Quadrature)?;
            // ξ(1/2), from ζ(1/2) and Γ(1/4) in 40-digit arithmetic
            let expected = 0.497_120_778_188_314_1;
            Ok(((v - expected).abs() < 1e-12, format!("{v:.15}")))
        })(),
    );
    for f in CLOSED_FORM_FAMILIES {
        r.check(
            &format!("cross_method_{f}"),
            (|| {
                let (f, p) = resolve(f)?;
                let mut worst: f64 = 0.0;
                for w in [0.0, 5.0, 20.0, 60.0] {
                    let a = xi::ft_at(&f, &p, w, TransformMethod::BesselClosedForm)?;
                    let b = xi::ft_at(&f, &p, w, TransformMethod::Quadrature)?;
                    worst = worst.max((a - b).abs() / a.abs().max(1.0));
                }
                Ok((worst <= 1e-8, format!("max scaled difference {worst:.2e}")))
            })(),
        );
    }
    r.check(
        "evenness",
        (|| {
            let (f, p) = resolve(KernelFamily::S3 { m: 2 })?;
            let m = TransformMethod::BesselClosedForm;
            let (a, b) = (xi::xi_at(&f, &p, 17.3, m)?, xi::xi_at(&f, &p, -17.3, m)?);
            Ok((a == b, format!("{a:e} vs {b:e}")))
        })(),
    );
    r.checks
}

fn metrics_suite() -> Vec<Check> {
    let mut r = Recorder::new(Suite::Metrics);
    let pinned = [
        (KernelFamily::S1 { m: 11 }, 7.949691),
        (KernelFamily::S2 { m: 6, a: 0.01 }, 2.497861),
        (KernelFamily::S2 { m: 7, a: 0.5 }, 3.916332),
        (KernelFamily::S3 { m: 2 }, 0.835144),
        (KernelFamily::S3 { m: 3 }, 0.402822),
    ];
    for (f, expected) in pinned {
        match resolve(f).and_then(|(f, p)| xi::rel_l1_diff(&f, &p)) {
            Ok(v) => r.close(&format!("rel_l1_{f}"), v, expected, 0.05),
            Err(e) => r.push(&format!("rel_l1_{f}"), Status::Fail, format!("error: {e}")),
        }
    }
    for f in [KernelFamily::S1 { m: 100 }, KernelFamily::S4 { m: 2 }, KernelFamily::S4 { m: 3 }] {
        r.info(
            &format!("rel_l1_{f}"),
            resolve(f).and_then(|(f, p)| xi::rel_l1_diff(&f, &p)).map(|v| format!("{v:.6} %")),
        );
    }
    r.checks
}

fn zeros_suite() -> Vec<Check> {
    let mut r = Recorder::new(Suite::Zeros);
    let exact = resolve(KernelFamily::Exact)
        .and_then(|(f, p)| zeros::locate_zeros(&f, &p, 0.0, 100.0, 0.05, 1e-10));
    let exact = match exact {
        Ok(rep) => rep,
        Err(e) => {
            r.push("exact", Status::Fail, format!("error: {e}"));
            return r.checks;
        }
    };
    r.push(
        "count_exact",
        if exact.count == 29 { Status::Pass } else { Status::Fail },
        format!("{} zeros on (0, 100]", exact.count),
    );
    let first = exact.zeros.first().copied().unwrap_or(f64::NAN);
    r.close("first_exact_zero", first, 14.134725, 1e-3);
    r.check(
        "count_and_pairing_s3(m=2)",
        (|| {
            let (f, p) = resolve(KernelFamily::S3 { m: 2 })?;
            let rep = zeros::locate_zeros(&f, &p, 0.0, 100.0, 0.05, 1e-10)?;
            let pairing = zeros::compare_zero_sets(&exact, &rep, 1.0)?;
            let ok = rep.count == 29 && pairing.matched.len() == 29;
            Ok((ok, format!("{} zeros, {} paired, max |dz| {:.4}", rep.count, pairing.matched.len(), pairing.max_delta)))
        })(),
    );
    match resolve(KernelFamily::Polya).and_then(|(f, p)| zeros::locate_zeros(&f, &p, 0.0, 100.0, 0.05, 1e-10)) {
        Ok(rep) => {
            r.push(
                "count_polya",
                if rep.count == 29 { Status::Pass } else { Status::Fail },
                format!("{} zeros on (0, 100]", rep.count),
            );
            // Complex-order Bessel K in 30-digit arithmetic.
            let oracle = [8.992_814_038_681_99, 19.065_399_657_125_55, 24.474_758_791_883_58];
            let worst = rep.zeros.iter().zip(oracle).map(|(z, o)| (z - o).abs()).fold(0.0, f64::max);
            r.push(
                "polya_low_zeros",
                if rep.count >= 3 && worst < 1e-8 { Status::Pass } else { Status::Fail },
                format!("max deviation {worst:.1e} from reference values"),
            );
            // The low Polya zeros sit well below the exact ones (8.99 vs 14.13),
            // so not every zero has a partner within radius 1.
            r.info(
                "pairing_polya",
                zeros::compare_zero_sets(&exact, &rep, 1.0)
                    .map(|c| format!("{} of 29 paired at radius 1, max |dz| {:.4}", c.matched.len(), c.max_delta)),
            );
        }
        Err(e) => r.push("count_polya", Status::Fail, format!("error: {e}")),
    }
    r.check(
        "step_halving_polya",
        (|| {
            let (f, p) = resolve(KernelFamily::Polya)?;
            let coarse = zeros::locate_zeros(&f, &p, 0.0, 100.0, 0.05, 1e-10)?;
            let fine = zeros::locate_zeros(&f, &p, 0.0, 100.0, 0.025, 1e-10)?;
            let pairing = zeros::compare_zero_sets(&coarse, &fine, 1e-6)?;
            let ok = coarse.count == fine.count && pairing.matched.len() == fine.count;
            Ok((ok, format!("{} vs {} zeros, max |dz| {:.1e}", coarse.count, fine.count, pairing.max_delta)))
        })(),
    );
    r.check(
        "symmetric_range",
        (|| {
            let (f, p) = resolve(KernelFamily::Polya)?;
            let m = TransformMethod::BesselClosedForm;
            let pos = zeros::locate_zeros_with(|z| xi::xi_at(&f, &p, z, m), 0.0, 40.0, 0.05, 1e-10)?;
            let neg = zeros::locate_zeros_with(|z| xi::xi_at(&f, &p, -z, m), 0.0, 40.0, 0.05, 1e-10)?;
            let worst = pos.zeros.iter().zip(&neg.zeros).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            Ok((pos.zeros.len() == neg.zeros.len() && worst < 1e-9, format!("max |z+ - z-| {worst:.1e}")))
        })(),
    );
    r.checks
}

fn lp_suite() -> Vec<Check> {
    let mut r = Recorder::new(Suite::Lp);
    let mut rng = StdRng::seed_from_u64(20_240_611);
    let mut disk_ok = 0;
    let mut trig_ok = 0;
    let mut failures = Vec::new();
    for i in 0..100 {
        let n = rng.gen_range(1..=10);
        let mut a = Vec::with_capacity(n + 1);
        let mut last = 0.0;
        for _ in 0..=n {
            last += rng.gen_range(0.05..2.0);
            a.push(last);
        }
        let outcome = (|| -> Result<(bool, bool)> {
            let s = CoeffSeq::new(a)?;
            debug_assert!(lp::ek_applies(&s));
            let disk = lp::roots_in_unit_disk(&s)?;
            let rep = lp::trig_realroot_report(&s)?;
            let trig = rep.a_count == 2 * n && rep.b_count == 2 * n && rep.interlacing;
            Ok((disk, trig))
        })();
        match outcome {
            Ok((disk, trig)) => {
                disk_ok += usize::from(disk);
                trig_ok += usize::from(trig);
                if !(disk && trig) {
                    failures.push(i);
                }
            }
            Err(_) => failures.push(i),
        }
    }
    r.push(
        "ek_roots_in_unit_disk",
        if disk_ok == 100 { Status::Pass } else { Status::Fail },
        format!("{disk_ok}/100 random sequences"),
    );
    r.push(
        "trig_counts_and_interlacing",
        if trig_ok == 100 { Status::Pass } else { Status::Fail },
        format!("{trig_ok}/100 random sequences; failing cases {failures:?}"),
    );
    r.checks
}
