//! Normalized Ξ curves of the exact kernel and an approximation, side by
//! side, as CSV on stdout.
//!
//! cargo run --release --example xi_curves [family] [m] > xi.csv

use xi_kernels::kernels::{resolve_params, KernelFamily};
use xi_kernels::numerics::uniform_grid;
use xi_kernels::xi::{xi_curve, TransformMethod};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let tag = args.next().unwrap_or_else(|| "s3".into());
    let m = args.next().map(|s| s.parse()).transpose()?.or(Some(2));
    let approx = KernelFamily::from_parts(&tag, m, Some(0.5))?;
    let exact = KernelFamily::Exact;

    let zs = uniform_grid(0.0, 100.0, 0.1);
    let a = xi_curve(&exact, &resolve_params(exact)?, &zs, TransformMethod::Quadrature, true)?;
    let b = xi_curve(&approx, &resolve_params(approx)?, &zs, TransformMethod::preferred(&approx), true)?;

    println!("z,exact,{}", approx.tag());
    for ((z, x), y) in a.points().zip(&b.values) {
        println!("{z:.2},{x:.9},{y:.9}");
    }
    Ok(())
}
