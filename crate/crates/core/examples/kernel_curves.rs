//! Samples the exact kernel and a set of approximations on [0, 3] and
//! writes one CSV with a column per family; then shows how the ratio to the
//! exact kernel approaches one far out in the tail.
//!
//! cargo run --example kernel_curves [out.csv]

use std::fmt::Write as _;

use xi_kernels::kernels::{resolve_params, tail_ratio, KernelFamily};
use xi_kernels::numerics::uniform_grid;
use xi_kernels::xi::kernel_curve;

fn main() -> anyhow::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "kernels.csv".into());
    let families = [
        KernelFamily::Exact,
        KernelFamily::Polya,
        KernelFamily::DeBruijn,
        KernelFamily::S1 { m: 11 },
        KernelFamily::S2 { m: 6, a: 0.01 },
        KernelFamily::S3 { m: 2 },
        KernelFamily::S4 { m: 2 },
    ];
    let ts = uniform_grid(0.0, 3.0, 0.01);
    let mut columns = Vec::new();
    for f in families {
        columns.push(kernel_curve(&f, &resolve_params(f)?, &ts)?.values);
    }

    let mut csv = String::from("t");
    for f in families {
        write!(csv, ",{}", f.to_string().replace(',', ";"))?;
    }
    csv.push('\n');
    for (i, t) in ts.iter().enumerate() {
        write!(csv, "{t}")?;
        for col in &columns {
            write!(csv, ",{:.12e}", col[i])?;
        }
        csv.push('\n');
    }
    std::fs::write(&out, csv)?;
    println!("wrote {} rows to {out}", ts.len());

    println!("\n{:<18} {:>10} {:>10} {:>10} {:>10}", "K/Phi - 1 at t =", 0, 3, 10, 40);
    for f in &families[1..] {
        let p = resolve_params(*f)?;
        let dev = |t| tail_ratio(f, &p, t).map(|r| r - 1.0);
        println!(
            "{:<18} {:>10.2e} {:>10.2e} {:>10.2e} {:>10.2e}",
            f.to_string(),
            dev(0.0)?,
            dev(3.0)?,
            dev(10.0)?,
            dev(40.0)?
        );
    }
    Ok(())
}
