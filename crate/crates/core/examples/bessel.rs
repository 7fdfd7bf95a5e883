//! Modified Bessel functions of complex order and the real g-pairs
//! K_{c+iν}(a) + K_{c−iν}(a) from which every closed-form Ξ is built.
//!
//! cargo run --example bessel

use std::f64::consts::PI;

use xi_kernels::besselk::{bessel_k, g_pair, k_half_closed_form, BesselOrder};

fn main() -> anyhow::Result<()> {
    let a = 2.0 * PI;
    let k = bessel_k(BesselOrder::new(0.5, 0.0)?, a)?;
    println!("K_1/2(2pi) = {:.16e}  closed form {:.16e}", k.re, k_half_closed_form(a));

    println!("\n{:>6} {:>26} {:>22}", "nu", "K_{9/4+i nu}(2pi)", "g-pair");
    for nu in [0.0, 1.0, 5.0, 10.0, 20.0, 40.0] {
        let k = bessel_k(BesselOrder::new(2.25, nu)?, a)?;
        let g = g_pair(2.25, nu, a)?;
        println!("{nu:>6} {:>12.4e} {:+.4e}i {g:>22.12e}", k.re, k.im);
    }
    Ok(())
}
