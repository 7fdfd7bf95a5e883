//! Counts the real zeros of every family's Ξ on (0, 100] and pairs them
//! with the zeros of the exact Ξ.
//!
//! cargo run --release --example zero_counts [step]

use std::time::Instant;

use xi_kernels::kernels::{resolve_params, KernelFamily};
use xi_kernels::zeros::{compare_zero_sets, locate_zeros};

fn main() -> anyhow::Result<()> {
    let step: f64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(0.05);
    let families = [
        KernelFamily::Exact,
        KernelFamily::Polya,
        KernelFamily::Polya2,
        KernelFamily::DeBruijn,
        KernelFamily::Hejhal { m: 1 },
        KernelFamily::Hejhal { m: 4 },
        KernelFamily::S1 { m: 11 },
        KernelFamily::S1 { m: 21 },
        KernelFamily::S2 { m: 6, a: 0.01 },
        KernelFamily::S2 { m: 7, a: 0.5 },
        KernelFamily::S3 { m: 2 },
        KernelFamily::S3 { m: 3 },
        KernelFamily::S4 { m: 2 },
        KernelFamily::S4 { m: 3 },
    ];
    let exact = locate_zeros(&families[0], &resolve_params(families[0])?, 0.0, 100.0, step, 1e-10)?;
    println!(
        "{:<16} {:>5} {:>7} {:>10} {:>12} {:>8}",
        "family", "count", "paired", "max|dz|", "max resid", "secs"
    );
    for family in families {
        let start = Instant::now();
        let params = resolve_params(family)?;
        let report = locate_zeros(&family, &params, 0.0, 100.0, step, 1e-10)?;
        let pairing = compare_zero_sets(&exact, &report, 1.0)?;
        let resid = report.residuals.iter().copied().fold(0.0, f64::max);
        println!(
            "{:<16} {:>5} {:>7} {:>10.4} {:>12.2e} {:>8.2}",
            family.to_string(),
            report.count,
            pairing.matched.len(),
            pairing.max_delta,
            resid,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
