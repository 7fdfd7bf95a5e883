//! Expansion coefficients that turn the product-form kernels into finite
//! sums of hyperbolic cosines.
//!
//! * `sinh^{2k}(x) = Σ_{j=0}^{k} a_{k,j} cosh(2jx)`
//! * `4^m cosh(t/4) (sinh²(t/m) + 1 - a²)^m
//!      = Σ_j b_{m,j} [cosh(2jt/m + t/4) + cosh(2jt/m - t/4)]`
//! * `cosh(t/4) (4 sinh²(t/2m) + 4a)^m (4 sinh²(t/2m) + 4b)^m
//!      = Σ_{j,l} d_{m,j,l} p_{m,j,l}(t)`, with
//!   `p_{m,j,l}(t) = 4 cosh(t/4) cosh(jt/m) cosh(lt/m)`.
//!
//! Binomials are exact integers. The `*_exact` variants keep every
//! coefficient as a big rational when the parameters are rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 64;

/// Which expansion a table holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoeffKind {
    SinhPower { k: u32 },
    H { m: u32, a: f64 },
    J { m: u32, a: f64, b: f64 },
}

/// Expansion coefficients. One-dimensional tables are indexed by `j`;
/// `J` tables by `(j, l)`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    pub kind: CoeffKind,
    entries: Vec<f64>,
    cols: usize,
}

impl CoeffTable {
    pub fn len(&self) -> usize {
        self.entries.len() / self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry `j` of a one-dimensional table.
    pub fn get(&self, j: usize) -> f64 {
        debug_assert_eq!(self.cols, 1);
        self.entries[j]
    }

    /// Entry `(j, l)` of a two-dimensional table.
    pub fn get2(&self, j: usize, l: usize) -> f64 {
        self.entries[j * self.cols + l]
    }

    /// The row of a one-dimensional table.
    pub fn values(&self) -> &[f64] {
        &self.entries
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().sum()
    }
}

fn check_order(name: &str, n: u32) -> Result<()> {
    if (1..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must lie in 1..={MAX_ORDER}, got {n}")))
    }
}

/// `C(n, k)` in exact integer arithmetic.
pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is integral; dividing out the common factor
        // first keeps every intermediate below the final value.
        let (num, den) = (u128::from(n - i), u128::from(i + 1));
        let g = gcd(acc, den);
        acc = (acc / g) * (num / (den / g));
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn big_binomial(n: u32, k: u32) -> BigInt {
    BigInt::from(binomial(n, k))
}

fn pow2_rational(exp: i64) -> BigRational {
    let two = BigInt::from(2);
    if exp >= 0 {
        BigRational::from_integer(num_traits::pow(two, exp as usize))
    } else {
        BigRational::new(BigInt::one(), num_traits::pow(two, (-exp) as usize))
    }
}

/// Exact `a_{k,j}` for `j = 0..=k`.
pub fn sinh_power_coeffs_exact(k: u32) -> Result<Vec<BigRational>> {
    check_order("k", k)?;
    let k64 = i64::from(k);
    let mut row = Vec::with_capacity(k as usize + 1);
    for j in 0..=k {
        let sign = if (k - j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let value = if j == 0 {
            BigRational::from_integer(sign * big_binomial(2 * k, k)) * pow2_rational(-2 * k64)
        } else {
            BigRational::from_integer(sign * big_binomial(2 * k, k - j)) * pow2_rational(1 - 2 * k64)
        };
        row.push(value);
    }
    Ok(row)
}

fn sinh_power_row(k: u32) -> Vec<f64> {
    // k = 0 is the constant 1 = cosh(0); used internally by the h/j sums.
    if k == 0 {
        return vec![1.0];
    }
    let scale = |e: i32| 2f64.powi(e);
    (0..=k)
        .map(|j| {
            let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 {
                sign * binomial(2 * k, k) as f64 * scale(-2 * k as i32)
            } else {
                sign * binomial(2 * k, k - j) as f64 * scale(1 - 2 * k as i32)
            }
        })
        .collect()
}

/// `a_{k,j}` as floating point; see the module docs.
pub fn sinh_power_coeffs(k: u32) -> Result<CoeffTable> {
    check_order("k", k)?;
    Ok(CoeffTable {
        kind: CoeffKind::SinhPower { k },
        entries: sinh_power_row(k),
        cols: 1,
    })
}

/// `b_{m,j} = ½ 4^m Σ_{k=j}^{m} C(m,k) (1-a²)^{m-k} a_{k,j}`.
pub fn h_coeffs(m: u32, a: f64) -> Result<CoeffTable> {
    check_order("m", m)?;
    if !(0.0..1.0).contains(&a) {
        return Err(Error::Domain(format!("h expansion requires 0 <= a < 1, got {a}")));
    }
    let rows: Vec<Vec<f64>> = (0..=m).map(sinh_power_row).collect();
    let q = 1.0 - a * a;
    let lead = 0.5 * 4f64.powi(m as i32);
    let entries = (0..=m as usize)
        .map(|j| {
            let s: f64 = (j..=m as usize)
                .map(|k| binomial(m, k as u32) as f64 * q.powi((m as usize - k) as i32) * rows[k][j])
                .sum();
            lead * s
        })
        .collect();
    Ok(CoeffTable {
        kind: CoeffKind::H { m, a },
        entries,
        cols: 1,
    })
}

fn exact_row(k: u32) -> Vec<BigRational> {
    if k == 0 {
        vec![BigRational::one()]
    } else {
        sinh_power_coeffs_exact(k).expect("order checked by caller")
    }
}

/// Exact `b_{m,j}` for a rational parameter.
pub fn h_coeffs_exact(m: u32, a: &BigRational) -> Result<Vec<BigRational>> {
    check_order("m", m)?;
    if a.is_negative() || *a >= BigRational::one() {
        return Err(Error::Domain(format!("h expansion requires 0 <= a < 1, got {a}")));
    }
    let rows: Vec<Vec<BigRational>> = (0..=m).map(exact_row).collect();
    let q = BigRational::one() - a * a;
    let lead = pow2_rational(2 * i64::from(m) - 1);
    Ok((0..=m as usize)
        .map(|j| {
            let mut s = BigRational::zero();
            for k in j..=m as usize {
                let term = BigRational::from_integer(big_binomial(m, k as u32))
                    * num_traits::pow(q.clone(), m as usize - k)
                    * &rows[k][j];
                s += term;
            }
            &lead * s
        })
        .collect())
}

/// `d_{m,j,l} = 4^{2m-1} Σ_{k=j}^{m} Σ_{n=l}^{m} C(m,k) C(m,n) a^{m-k} b^{m-n} a_{k,j} a_{n,l}`.
///
/// Both parameters must be positive.
pub fn j_coeffs(m: u32, a: f64, b: f64) -> Result<CoeffTable> {
    check_order("m", m)?;
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!(
            "j expansion requires positive finite a, b; got a = {a}, b = {b}"
        )));
    }
    let mu = m as usize;
    let rows: Vec<Vec<f64>> = (0..=m).map(sinh_power_row).collect();
    // Inner sums factor: d_{j,l} = 4^{2m-1} u_j v_l.
    let partial = |p: f64, j: usize| -> f64 {
        (j..=mu)
            .map(|k| binomial(m, k as u32) as f64 * p.powi((mu - k) as i32) * rows[k][j])
            .sum()
    };
    let u: Vec<f64> = (0..=mu).map(|j| partial(a, j)).collect();
    let v: Vec<f64> = (0..=mu).map(|l| partial(b, l)).collect();
    let lead = 4f64.powi(2 * m as i32 - 1);
    let mut entries = Vec::with_capacity((mu + 1) * (mu + 1));
    for uj in &u {
        for vl in &v {
            entries.push(lead * uj * vl);
        }
    }
    Ok(CoeffTable {
        kind: CoeffKind::J { m, a, b },
        entries,
        cols: mu + 1,
    })
}

/// Exact `d_{m,j,l}` for rational parameters, as rows indexed by `j`.
pub fn j_coeffs_exact(m: u32, a: &BigRational, b: &BigRational) -> Result<Vec<Vec<BigRational>>> {
    check_order("m", m)?;
    if !(a.is_positive() && b.is_positive()) {
        return Err(Error::Domain("j expansion requires positive a, b".into()));
    }
    let mu = m as usize;
    let rows: Vec<Vec<BigRational>> = (0..=m).map(exact_row).collect();
    let partial = |p: &BigRational, j: usize| -> BigRational {
        let mut s = BigRational::zero();
        for k in j..=mu {
            s += BigRational::from_integer(big_binomial(m, k as u32))
                * num_traits::pow(p.clone(), mu - k)
                * &rows[k][j];
        }
        s
    };
    let u: Vec<BigRational> = (0..=mu).map(|j| partial(a, j)).collect();
    let v: Vec<BigRational> = (0..=mu).map(|l| partial(b, l)).collect();
    let lead = pow2_rational(4 * i64::from(m) - 2);
    Ok(u
        .iter()
        .map(|uj| v.iter().map(|vl| &lead * uj * vl).collect())
        .collect())
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `p_{m,j,l}(t)` from its hyperbolic product form.
pub fn p_product(m: u32, j: usize, l: usize, t: f64) -> f64 {
    let mf = f64::from(m);
    4.0 * (t / 4.0).cosh() * (j as f64 * t / mf).cosh() * (l as f64 * t / mf).cosh()
}

/// `p_{m,j,l}(t)` as the sum of four hyperbolic cosines with arguments
/// `t/4 + (±j ± l) t/m`.
pub fn p_four_terms(m: u32, j: usize, l: usize, t: f64) -> f64 {
    let mf = f64::from(m);
    let (j, l) = (j as f64, l as f64);
    [j + l, j - l, -j + l, -j - l]
        .iter()
        .map(|s| (t / 4.0 + s * t / mf).cosh())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(10, 0), 1);
        assert_eq!(binomial(128, 64), 23_951_146_041_928_082_866_135_587_776_380_551_750);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn half_angle_row() {
        let t = sinh_power_coeffs(1).unwrap();
        assert_eq!(t.values(), &[-0.5, 0.5]);
        let exact = sinh_power_coeffs_exact(1).unwrap();
        assert_eq!(exact, vec![rat(-1, 2), rat(1, 2)]);
    }

    #[test]
    fn fourth_power_row() {
        // (e^x - e^-x)^4 / 16 = (2cosh4x - 8cosh2x + 6) / 16
        let exact = sinh_power_coeffs_exact(2).unwrap();
        assert_eq!(exact, vec![rat(3, 8), rat(-1, 2), rat(1, 8)]);
    }

    #[test]
    fn rows_vanish_at_zero_and_alternate() {
        for k in 1..=10 {
            let row = sinh_power_coeffs(k).unwrap();
            assert!(row.sum().abs() < 1e-15, "k = {k}");
            let exact: BigRational = sinh_power_coeffs_exact(k).unwrap().into_iter().sum();
            assert!(exact.is_zero());
            for j in 0..k as usize {
                let expected = if (k as usize - j) % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(row.get(j).signum(), expected);
            }
        }
    }

    #[test]
    fn sinh_power_pointwise() {
        for k in [1u32, 3, 7, 12] {
            let row = sinh_power_coeffs(k).unwrap();
            let x = 0.37;
            let series: f64 = (0..=k as usize).map(|j| row.get(j) * (2.0 * j as f64 * x).cosh()).sum();
            let direct = x.sinh().powi(2 * k as i32);
            assert!((series - direct).abs() < 1e-12 * direct.max(1e-3), "k = {k}");
        }
    }

    #[test]
    fn order_range_checked() {
        assert!(sinh_power_coeffs(0).is_err());
        assert!(sinh_power_coeffs(65).is_err());
        assert!(h_coeffs(0, 0.5).is_err());
        assert!(h_coeffs(2, 1.0).is_err());
        assert!(j_coeffs(2, 0.0, 0.5).is_err());
        assert!(j_coeffs(2, 0.5, -0.5).is_err());
    }

    #[test]
    fn h_first_order_by_hand() {
        // h_1 = cosh(t/4)(2 cosh 2t + 2 - 4a²) at a = 1/2
        let t = h_coeffs(1, 0.5).unwrap();
        assert!((t.get(0) - 0.5).abs() < 1e-15);
        assert!((t.get(1) - 1.0).abs() < 1e-15);
        assert_eq!(h_coeffs_exact(1, &rat(1, 2)).unwrap(), vec![rat(1, 2), rat(1, 1)]);
    }

    #[test]
    fn h_sum_rule() {
        for m in 1..=6u32 {
            for a in [0.0, 0.3, 0.62, 0.7] {
                let t = h_coeffs(m, a).unwrap();
                let expected = 4f64.powi(m as i32) * (1.0 - a * a).powi(m as i32);
                assert!((2.0 * t.sum() - expected).abs() < 1e-10 * expected, "m = {m}, a = {a}");
            }
        }
    }

    fn h_expansion(t: &CoeffTable, m: u32, x: f64) -> f64 {
        let mf = f64::from(m);
        (0..=m as usize)
            .map(|j| {
                let s = 2.0 * j as f64 * x / mf;
                t.get(j) * ((s + x / 4.0).cosh() + (s - x / 4.0).cosh())
            })
            .sum()
    }

    #[test]
    fn h_pointwise() {
        let (m, a, x) = (3, 0.62, 1.3f64);
        let t = h_coeffs(m, a).unwrap();
        let direct = 4f64.powi(3) * (x / 4.0).cosh() * ((x / 3.0).sinh().powi(2) + 1.0 - a * a).powi(3);
        assert!((h_expansion(&t, m, x) - direct).abs() < 1e-10);
    }

    #[test]
    fn exact_h_matches_float() {
        for m in 1..=6 {
            for (n, d) in [(0, 1), (1, 100), (1, 2), (5, 8)] {
                let exact = h_coeffs_exact(m, &rat(n, d)).unwrap();
                let float = h_coeffs(m, n as f64 / d as f64).unwrap();
                for (j, e) in exact.iter().enumerate() {
                    let e = rational_to_f64(e);
                    assert!((e - float.get(j)).abs() <= 1e-14 * e.abs().max(1.0));
                }
            }
        }
    }

    fn j_direct(m: u32, a: f64, b: f64, x: f64) -> f64 {
        let s = 4.0 * (x / (2.0 * f64::from(m))).sinh().powi(2);
        (x / 4.0).cosh() * (s + 4.0 * a).powi(m as i32) * (s + 4.0 * b).powi(m as i32)
    }

    fn j_expansion(t: &CoeffTable, m: u32, x: f64) -> f64 {
        let mut acc = 0.0;
        for j in 0..=m as usize {
            for l in 0..=m as usize {
                acc += t.get2(j, l) * p_four_terms(m, j, l, x);
            }
        }
        acc
    }

    #[test]
    fn j_sum_rule() {
        let (a, b) = (0.208233, 0.738810);
        let t = j_coeffs(2, a, b).unwrap();
        let expected = 4f64.powi(4) * (a * b).powi(2);
        assert!((4.0 * t.sum() - expected).abs() < 1e-12 * expected);
        for m in 1..=6u32 {
            let t = j_coeffs(m, 0.3, 0.8).unwrap();
            let expected = 16f64.powi(m as i32) * 0.24f64.powi(m as i32);
            assert!((4.0 * t.sum() - expected).abs() < 1e-10 * expected, "m = {m}");
        }
    }

    #[test]
    fn j_first_order_quarter() {
        // cosh(t/4)(4 sinh²(t/2) + 1)² = cosh(t/4)(2 cosh 2t - 4 cosh t + 3)
        let q = rat(1, 4);
        let exact = j_coeffs_exact(1, &q, &q).unwrap();
        assert_eq!(exact[0][0], rat(1, 4));
        assert_eq!(exact[0][1], rat(-1, 2));
        assert_eq!(exact[1][0], rat(-1, 2));
        assert_eq!(exact[1][1], rat(1, 1));
        for x in [0.0f64, 0.4, 1.7] {
            let direct = (x / 4.0).cosh() * (2.0 * (2.0 * x).cosh() - 4.0 * x.cosh() + 3.0);
            let t = j_coeffs(1, 0.25, 0.25).unwrap();
            assert!((j_expansion(&t, 1, x) - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn j_pointwise() {
        for x in [0.7, 2.1] {
            let t = j_coeffs(3, 0.122579, 0.929527).unwrap();
            let direct = j_direct(3, 0.122579, 0.929527, x);
            assert!(((j_expansion(&t, 3, x) - direct) / direct).abs() < 1e-10);
        }
    }

    #[test]
    fn exact_j_matches_float() {
        for m in 1..=4 {
            let (a, b) = (rat(1, 5), rat(3, 4));
            let exact = j_coeffs_exact(m, &a, &b).unwrap();
            let float = j_coeffs(m, 0.2, 0.75).unwrap();
            for (j, row) in exact.iter().enumerate() {
                for (l, e) in row.iter().enumerate() {
                    let e = rational_to_f64(e);
                    assert!((e - float.get2(j, l)).abs() <= 1e-14 * e.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn four_cosh_reconstruction() {
        for m in 1..=4u32 {
            for j in 0..=m as usize {
                for l in 0..=m as usize {
                    for x in [0.3, 1.1, 2.5] {
                        let p = p_product(m, j, l, x);
                        let q = p_four_terms(m, j, l, x);
                        assert!((p - q).abs() <= 1e-12 * p.abs());
                    }
                }
            }
        }
    }
}
