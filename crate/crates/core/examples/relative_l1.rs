//! Relative L1 distance between each approximation and the exact kernel.
//!
//! cargo run --example relative_l1

use xi_kernels::kernels::{resolve_params, KernelFamily};
use xi_kernels::xi::rel_l1_diff;

fn main() -> anyhow::Result<()> {
    for family in [
        KernelFamily::Polya,
        KernelFamily::Polya2,
        KernelFamily::DeBruijn,
        KernelFamily::S1 { m: 11 },
        KernelFamily::S1 { m: 21 },
        KernelFamily::S1 { m: 100 },
        KernelFamily::S2 { m: 6, a: 0.01 },
        KernelFamily::S2 { m: 7, a: 0.5 },
        KernelFamily::S3 { m: 2 },
        KernelFamily::S3 { m: 3 },
        KernelFamily::S4 { m: 2 },
        KernelFamily::S4 { m: 3 },
    ] {
        let pct = rel_l1_diff(&family, &resolve_params(family)?)?;
        println!("{:<18} {pct:>10.6} %", family.to_string());
    }
    Ok(())
}
