use proptest::prelude::*;

use xi_kernels::coeffs;
use xi_kernels::kernels::{self, KernelFamily};
use xi_kernels::theta;
use xi_kernels::xi::{self, TransformMethod};

fn closed_form_family() -> impl Strategy<Value = KernelFamily> {
    prop_oneof![
        Just(KernelFamily::Polya),
        Just(KernelFamily::Polya2),
        Just(KernelFamily::DeBruijn),
        (1u32..=4).prop_map(|m| KernelFamily::Hejhal { m }),
        (11u32..=30).prop_map(|m| KernelFamily::S1 { m }),
        (0.05f64..0.6).prop_map(|a| KernelFamily::S2 { m: 8, a }),
        (2u32..=5).prop_map(|m| KernelFamily::S3 { m }),
        (2u32..=3).prop_map(|m| KernelFamily::S4 { m }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_agrees_with_quadrature(f in closed_form_family(), w in 0.0f64..60.0) {
        let p = kernels::resolve_params(f).unwrap();
        let a = xi::ft_at(&f, &p, w, TransformMethod::BesselClosedForm).unwrap();
        let b = xi::ft_at(&f, &p, w, TransformMethod::Quadrature).unwrap();
        prop_assert!((a - b).abs() <= 1e-8 * a.abs().max(1.0), "{f} at w = {w}: {a} vs {b}");
    }

    #[test]
    fn transforms_are_even(f in closed_form_family(), z in 0.0f64..100.0) {
        let p = kernels::resolve_params(f).unwrap();
        let m = TransformMethod::BesselClosedForm;
        prop_assert_eq!(xi::xi_at(&f, &p, z, m).unwrap(), xi::xi_at(&f, &p, -z, m).unwrap());
    }
}

proptest! {
    #[test]
    fn kernels_are_even_and_positive(f in closed_form_family(), t in 0.0f64..3.0) {
        let p = kernels::resolve_params(f).unwrap();
        let k = kernels::eval_kernel_at(&f, &p, t).unwrap();
        let k_neg = kernels::eval_kernel_at(&f, &p, -t).unwrap();
        prop_assert!((k - k_neg).abs() <= 1e-13 * k.abs());
        prop_assert!(k > 0.0);
    }

    #[test]
    fn theta_functional_equation(x in 0.02f64..50.0) {
        let lhs = theta::theta(1.0 / x).unwrap();
        let rhs = x.sqrt() * theta::theta(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(rhs));
    }

    #[test]
    fn h_sum_rule(m in 1u32..=6, a in 0.0f64..0.99) {
        let sum = coeffs::h_coeffs(m, a).unwrap().sum();
        let expected = (4.0 * (1.0 - a * a)).powi(m as i32);
        prop_assert!((2.0 * sum - expected).abs() <= 1e-10 * expected.max(1.0));
    }

    #[test]
    fn j_sum_rule(m in 1u32..=6, a in 0.01f64..1.0, b in 0.01f64..1.5) {
        let sum = coeffs::j_coeffs(m, a, b).unwrap().sum();
        let expected = (16.0 * a * b).powi(m as i32);
        let scale: f64 = coeffs::j_coeffs(m, a, b).unwrap().values().iter().map(|d| d.abs()).sum();
        prop_assert!((4.0 * sum - expected).abs() <= 1e-10 * expected + 64.0 * f64::EPSILON * 4.0 * scale);
    }

    #[test]
    fn sinh_power_rows_alternate_and_vanish_at_zero(k in 1u32..=20) {
        let row = coeffs::sinh_power_coeffs(k).unwrap();
        let scale: f64 = row.values().iter().map(|c| c.abs()).sum();
        prop_assert!(row.sum().abs() <= 1e-15 * scale);
        for j in 0..=k as usize {
            let expected_sign = if (k as usize - j) % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!(row.get(j) * expected_sign > 0.0);
        }
    }
}
