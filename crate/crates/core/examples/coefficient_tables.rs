//! Expansion coefficients: powers of sinh as cosh sums, and the tables that
//! rewrite the product-form kernels as sums of Bessel terms.
//!
//! cargo run --example coefficient_tables

use num_rational::BigRational;
use xi_kernels::coeffs::{h_coeffs, j_coeffs, j_coeffs_exact, sinh_power_coeffs_exact};
use xi_kernels::kernels::{bessel_terms, resolve_params, KernelFamily};

fn main() -> anyhow::Result<()> {
    for k in 1..=4 {
        let row: Vec<String> = sinh_power_coeffs_exact(k)?.iter().map(|c| c.to_string()).collect();
        println!("sinh^{}(x): [{}]", 2 * k, row.join(", "));
    }

    let s3 = resolve_params(KernelFamily::S3 { m: 2 })?;
    println!("\nh coefficients, m = 2, a = {:.6}: {:?}", s3.a.unwrap(), h_coeffs(2, s3.a.unwrap())?.values());

    let (a, b) = resolve_params(KernelFamily::S4 { m: 2 })?.a_b.unwrap();
    let j = j_coeffs(2, a, b)?;
    println!("\nj coefficients, m = 2, a = {a:.6}, b = {b:.6}:");
    for r in 0..=2 {
        println!("  {:?}", (0..=2).map(|l| j.get2(r, l)).collect::<Vec<_>>());
    }

    let quarter = BigRational::new(1.into(), 4.into());
    println!("\nexact j coefficients, m = 1, a = b = 1/4: {:?}", j_coeffs_exact(1, &quarter, &quarter)?
        .iter()
        .map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>());

    let f = KernelFamily::S4 { m: 2 };
    println!("\nBessel terms of {f} (coefficient, order, argument):");
    for t in bessel_terms(&f, &resolve_params(f)?)? {
        println!("  {:>14.6e}  {:>6.3}  {:.4}", t.coef, t.order, t.arg);
    }
    Ok(())
}
