//! Hermite polynomials, the inverse Weierstrass transform and the two-index double sum.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::quad::gauss_hermite;
use super::{eigenstate_c64, Units};
use crate::error::Result;
use crate::report::{Check, Report};
use crate::scalar::{factorial_f64, factorial_q, qi, Q};

/// Physicists' `H_n` as ascending coefficients, from `H_{n+1} = 2x H_n - 2n H_{n-1}`.
pub fn hermite_coeffs(n: usize) -> Vec<Q> {
    let mut prev: Vec<Q> = vec![Q::one()];
    if n == 0 {
        return prev;
    }
    let mut cur: Vec<Q> = vec![Q::zero(), qi(2)];
    for k in 1..n {
        let mut next = vec![Q::zero(); k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += qi(2) * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= qi(2 * k as i128) * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn hermite_f64(n: usize, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, 2.0 * x);
    if n == 0 {
        return a;
    }
    for k in 1..n {
        let c = 2.0 * x * b - 2.0 * k as f64 * a;
        a = b;
        b = c;
    }
    b
}

/// `sum_k (-1/4)^k / k! d^{2k}/dx^{2k} x^n`, ascending coefficients.
fn weierstrass_series(n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n + 1];
    let mut k = 0usize;
    while 2 * k <= n {
        // d^{2k} x^n = n!/(n-2k)! x^{n-2k}
        let fall = factorial_q(n as u32) / factorial_q((n - 2 * k) as u32);
        let quarter = (0..k).fold(Q::one(), |a, _| a * Q::new(-1, 4));
        out[n - 2 * k] += quarter / factorial_q(k as u32) * fall;
        k += 1;
    }
    out
}

/// Exact check of `exp(-1/4 d^2) x^n = 2^-n H_n(x)`.
pub fn inverse_weierstrass(n: usize) -> Report {
    let lhs = weierstrass_series(n);
    let scale = Q::one() / (0..n).fold(Q::one(), |a, _| a * qi(2));
    let rhs: Vec<Q> = hermite_coeffs(n).into_iter().map(|c| c * scale).collect();
    let mismatches = lhs.iter().zip(&rhs).filter(|(a, b)| a != b).count() + lhs.len().abs_diff(rhs.len());
    let show = |v: &[Q]| v.iter().map(|c| format!("{}", c)).collect::<Vec<_>>().join(", ");
    let mut rep = Report::new(format!("inverse Weierstrass n={}", n));
    rep.push(Check::exact(format!("exp(-d^2/4) x^{} = 2^-{} H_{}", n, n, n), show(&lhs), show(&rhs), mismatches as f64).with_anchor("inverse-weierstrass"));
    rep
}

/// The two-index Hermite double sum
/// `2^{n1+n2} sum_{k<=n1} sum_{l<=n2} i^{n1-n2+l-k} H_{l+k}(e1) H_{n1+n2-l-k}(e2)`.
pub fn double_sum_hermite(n1: u32, n2: u32, e1: f64, e2: f64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    for k in 0..=n1 as i32 {
        for l in 0..=n2 as i32 {
            let p = (n1 as i32 - n2 as i32 + l - k).rem_euclid(4);
            let h = hermite_f64((l + k) as usize, e1) * hermite_f64((n1 + n2) as usize - (l + k) as usize, e2);
            s += i.powi(p) * h;
        }
    }
    s * libm::pow(2.0, (n1 + n2) as f64)
}

/// Norm of the double sum against the nominal `pi n1! n2!`, and its relation to the
/// ladder-built polynomial `sqrt(pi n1! n2!) Psi exp(r^2/2)` (units 1).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoubleSumNorm {
    pub n1: u32,
    pub n2: u32,
    pub norm: f64,
    pub nominal: f64,
    pub norm_ratio: f64,
    /// Constant ratio double-sum / ladder polynomial when the two are proportional.
    pub ratio_to_ladder: Option<(f64, f64)>,
}

pub fn double_sum_norm_ratio(n1: u32, n2: u32) -> Result<DoubleSumNorm> {
    let order = 32;
    let (u, w) = gauss_hermite(order)?;
    let mut norm = 0.0;
    for i in 0..order {
        for j in 0..order {
            norm += w[i] * w[j] * double_sum_hermite(n1, n2, u[i], u[j]).norm_sqr();
        }
    }
    let nominal = core::f64::consts::PI * factorial_f64(n1) * factorial_f64(n2);
    let psi = eigenstate_c64(n1, n2, &Units::default());
    let pref = libm::sqrt(nominal);
    let probes = [(0.3, -0.7), (1.1, 0.4), (-0.6, 1.3), (0.9, 0.9), (-1.4, -0.2)];
    let mut ratios = Vec::new();
    for (a, b) in probes {
        let (p, _) = psi.eval_parts(a, b);
        let ours = p * pref;
        if ours.norm() > 1e-9 {
            ratios.push(double_sum_hermite(n1, n2, a, b) / ours);
        }
    }
    let ratio_to_ladder = match ratios.first() {
        Some(r0) if ratios.iter().all(|r| (r - r0).norm() <= 1e-9 * r0.norm().max(1.0)) => Some((r0.re, r0.im)),
        _ => None,
    };
    Ok(DoubleSumNorm { n1, n2, norm, nominal, norm_ratio: norm / nominal, ratio_to_ladder })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn hermite_table() {
        assert_eq!(hermite_coeffs(2), vec![qi(-2), qi(0), qi(4)]);
        assert_eq!(hermite_coeffs(3), vec![qi(0), qi(-12), qi(0), qi(8)]);
    }

    #[test]
    fn weierstrass_examples() {
        assert_eq!(weierstrass_series(2), vec![q(-1, 2), qi(0), qi(1)]);
        assert_eq!(weierstrass_series(3), vec![qi(0), q(-3, 2), qi(0), qi(1)]);
        for n in 0..=10 {
            assert!(inverse_weierstrass(n).pass());
        }
    }

    #[test]
    fn double_sum_low_orders() {
        let d = double_sum_norm_ratio(0, 0).unwrap();
        assert!((d.norm_ratio - 1.0).abs() < 1e-12);
        let d = double_sum_norm_ratio(1, 0).unwrap();
        assert!((d.norm_ratio - 16.0).abs() < 1e-10);
        let (re, im) = d.ratio_to_ladder.unwrap();
        assert!((re - 4.0).abs() < 1e-12 && im.abs() < 1e-12);
    }
}
