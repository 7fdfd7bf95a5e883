//! The kernel constants and the solved parameters of every approximating
//! family used in the figures.
//!
//! cargo run --example constants

use xi_kernels::kernels::{resolve_params, KernelFamily};

fn main() -> anyhow::Result<()> {
    let p = resolve_params(KernelFamily::Exact)?;
    println!("Phi(0)      = {:.9}", p.phi0);
    println!("Phi''(0)    = {:.9}  (second derivative in the t/2 variable)", p.phi2_paper);
    println!("beta        = {:.9}", p.beta);
    println!("gamma       = {:.9}", p.gamma);
    println!("delta       = {:.9}", p.delta);
    println!();

    for family in [
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
        let p = resolve_params(family)?;
        let solved = match (p.b, p.c, p.a, p.a_b) {
            (Some(b), ..) => format!("b = {b:.6}"),
            (_, Some(c), ..) => format!("c = {c:.6}, mu = {:.6}", p.mu.unwrap_or(f64::NAN)),
            (_, _, Some(a), _) => format!("a = {a:.6}, a^2 = {:.6}", a * a),
            (.., Some((a, b))) => format!("a = {a:.6}, b = {b:.6}"),
            _ => String::new(),
        };
        println!("{:<18} {solved}", family.to_string());
    }

    println!();
    for family in [KernelFamily::S1 { m: 10 }, KernelFamily::S3 { m: 1 }, KernelFamily::S4 { m: 4 }] {
        if let Err(e) = resolve_params(family) {
            println!("{family}: {e}");
        }
    }
    Ok(())
}
