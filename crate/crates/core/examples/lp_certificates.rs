//! Eneström–Kakeya and Hermite–Biehler checks for a coefficient sequence:
//! polynomial roots in the unit disk, and the real, interlacing zeros of
//! A(α) = Σ a_k cos kα and B(α) = Σ a_k sin kα on [0, 2π).
//!
//! cargo run --example lp_certificates [a0 a1 ...]

use xi_kernels::lp::{ek_applies, polynomial_roots, trig_realroot_report, CoeffSeq};

fn main() -> anyhow::Result<()> {
    let coeffs: Vec<f64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let coeffs = if coeffs.is_empty() { vec![1.0, 2.0, 3.0, 5.0] } else { coeffs };
    let s = CoeffSeq::new(coeffs)?;

    println!("coefficients {:?}, Enestrom-Kakeya applies: {}", s.coeffs(), ek_applies(&s));
    for z in polynomial_roots(&s)? {
        println!("  root {:+.6} {:+.6}i   |z| = {:.6}", z.re, z.im, z.norm());
    }
    let r = trig_realroot_report(&s)?;
    println!("A has {} zeros, B has {} zeros, interlacing: {}", r.a_count, r.b_count, r.interlacing);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ");
    println!("  A: {}", fmt(&r.a_zeros));
    println!("  B: {}", fmt(&r.b_zeros));
    Ok(())
}
