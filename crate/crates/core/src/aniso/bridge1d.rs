//! Per-coordinate bridge: `exp(-w K_i/hbar) exp(H_i/(2 hbar w)) exp(i ln2 D_i/hbar)` on `x^n`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::FrequencyPair;
use crate::bridge::hermite_coeffs;
use crate::error::{invalid, Result};
use crate::report::{Check, Report};
use crate::scalar::{factorial_f64, factorial_q, q_pow, q_to_f64, qi, Surd, Q};

/// `2^{1/4} grading P(x) exp(-kappa^2 x^2/2)` with `P` exact.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeImage {
    pub n: u32,
    pub kappa_sq: Q,
    /// `2^{n/2}`.
    pub grading: Surd,
    /// Ascending coefficients of the terminated series.
    pub poly: Vec<Q>,
}

impl ModeImage {
    pub fn eval(&self, x: f64) -> f64 {
        let p = self.poly.iter().rev().fold(0.0, |a, c| a * x + q_to_f64(c));
        let k2 = q_to_f64(&self.kappa_sq);
        libm::pow(2.0, 0.25) * self.grading.to_c64().re * p * libm::exp(-k2 * x * x / 2.0)
    }
}

/// Product of the two mode images.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparableState {
    pub modes: [ModeImage; 2],
}

impl SeparableState {
    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        self.modes[0].eval(x1) * self.modes[1].eval(x2)
    }
}

fn mode_image(n: u32, omega: Q, m: Q, hbar: Q) -> ModeImage {
    let n_us = n as usize;
    let c = -hbar / (qi(4) * m * omega);
    let mut poly = vec![Q::zero(); n_us + 1];
    let mut k = 0usize;
    while 2 * k <= n_us {
        let fall = factorial_q(n) / factorial_q(n - 2 * k as u32);
        poly[n_us - 2 * k] += q_pow(c, k as i32) / factorial_q(k as u32) * fall;
        k += 1;
    }
    ModeImage { n, kappa_sq: m * omega / hbar, grading: Surd::pow_sqrt2(n as i32), poly }
}

/// Bridge image of `x1^n1 x2^n2`; needs rational frequencies and units.
pub fn aniso_cbt_apply(n1: u32, n2: u32, freq: &FrequencyPair, m: Q, hbar: Q) -> Result<SeparableState> {
    let (w1, w2) = freq.exact.ok_or_else(|| invalid("anisotropic bridge needs rational frequencies"))?;
    if m <= Q::zero() || hbar <= Q::zero() {
        return Err(invalid("mass and hbar must be positive"));
    }
    Ok(SeparableState { modes: [mode_image(n1, w1, m, hbar), mode_image(n2, w2, m, hbar)] })
}

/// Normalised 1D Hermite function with `kappa^2 = m w/hbar`.
pub fn hermite_function(n: u32, kappa_sq: f64, x: f64) -> f64 {
    let k = libm::sqrt(kappa_sq);
    let y = k * x;
    let (mut a, mut b) = (1.0, 2.0 * y);
    let h = if n == 0 {
        a
    } else {
        for j in 1..n {
            let c = 2.0 * y * b - 2.0 * j as f64 * a;
            a = b;
            b = c;
        }
        b
    };
    libm::pow(kappa_sq / core::f64::consts::PI, 0.25) / libm::sqrt(libm::pow(2.0, n as f64) * factorial_f64(n)) * h * libm::exp(-y * y / 2.0)
}

/// `(derived, reduced)` constants `c` with `S phi_{n1,n2} = c psi_{n1} psi_{n2}`.
///
/// derived: `sqrt(2 pi n1! n2!) (hbar/m)^{(n1+n2+1)/2} w1^{-(2n1+1)/4} w2^{-(2n2+1)/4}`;
/// reduced: `(w1/w2)^{-1/4} (hbar/m)^{(n1+n2+1)/2} sqrt(2 n1! n2! pi)`.
pub fn aniso_bridge_constant(n1: u32, n2: u32, w1: f64, w2: f64, m: f64, hbar: f64) -> (f64, f64) {
    let common = libm::sqrt(2.0 * core::f64::consts::PI * factorial_f64(n1) * factorial_f64(n2)) * libm::pow(hbar / m, (n1 + n2 + 1) as f64 / 2.0);
    let derived = common * libm::pow(w1, -(2.0 * n1 as f64 + 1.0) / 4.0) * libm::pow(w2, -(2.0 * n2 as f64 + 1.0) / 4.0);
    let reduced = common * libm::pow(w1 / w2, -0.25);
    (derived, reduced)
}

/// Exact series identity `P_n(x) = 2^{-n} kappa^{-n} H_n(kappa x)` per mode, and the grid ratio
/// `S phi / (psi psi)` against the derived constant.
pub fn verify_aniso_bridge(freq: &FrequencyPair, m: Q, hbar: Q, nmax: u32, tol: f64) -> Result<Report> {
    let mut rep = Report::new(format!("anisotropic bridge n<={}", nmax));
    let (w1, w2) = freq.exact.ok_or_else(|| invalid("anisotropic bridge needs rational frequencies"))?;
    let mut bad = 0usize;
    for w in [w1, w2] {
        for n in 0..=nmax {
            let img = mode_image(n, w, m, hbar);
            let h = hermite_coeffs(n as usize);
            let scale = Q::one() / q_pow(qi(2), n as i32);
            for (j, hj) in h.iter().enumerate() {
                // kappa^{j-n} with j - n even
                let want = scale * hj * q_pow(img.kappa_sq, (j as i32 - n as i32) / 2);
                if img.poly[j] != want {
                    bad += 1;
                }
            }
        }
    }
    rep.push(Check::exact("exp(H/(2 hbar w)) x^n = (2 kappa)^-n H_n(kappa x)", format!("{} mismatches", bad), "0", bad as f64).with_anchor("aniso-bridge"));

    let (mf, hf) = (q_to_f64(&m), q_to_f64(&hbar));
    let (k1, k2) = (q_to_f64(&(m * w1 / hbar)), q_to_f64(&(m * w2 / hbar)));
    let mut worst = 0.0f64;
    for n1 in 0..=nmax {
        for n2 in 0..=nmax {
            let s = aniso_cbt_apply(n1, n2, freq, m, hbar)?;
            let (want, _) = aniso_bridge_constant(n1, n2, freq.omega1, freq.omega2, mf, hf);
            let side = 11;
            for a in 0..side {
                for b in 0..side {
                    let x1 = (a as f64 / (side - 1) as f64 - 0.5) * 5.0 / libm::sqrt(k1);
                    let x2 = (b as f64 / (side - 1) as f64 - 0.5) * 5.0 / libm::sqrt(k2);
                    let psi = hermite_function(n1, k1, x1) * hermite_function(n2, k2, x2);
                    if libm::fabs(psi) < 1e-6 {
                        continue;
                    }
                    worst = worst.max(libm::fabs(s.eval(x1, x2) / psi / want - 1.0));
                }
            }
        }
    }
    rep.push(Check::tol("S phi_{n1,n2} = c psi_{n1} psi_{n2} on the grid", format!("{:.3e}", worst), "0", worst, tol).with_anchor("aniso-bridge"));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn ground_and_first() {
        let f = FrequencyPair::exact(qi(1), qi(3)).unwrap();
        let s = aniso_cbt_apply(0, 0, &f, qi(1), qi(1)).unwrap();
        // 2^{1/2} exp(-(x1^2 + 3 x2^2)/2)
        assert!((s.eval(0.4, -0.2) - libm::sqrt(2.0) * libm::exp(-(0.16 + 3.0 * 0.04) / 2.0)).abs() < 1e-15);
        let s = aniso_cbt_apply(1, 0, &f, qi(1), qi(1)).unwrap();
        assert_eq!(s.modes[0].poly, alloc::vec![qi(0), qi(1)]);
        assert_eq!(s.modes[1].poly, alloc::vec![qi(1)]);
    }

    #[test]
    fn constants() {
        for (f, m, h) in [(FrequencyPair::exact(qi(1), qi(3)).unwrap(), qi(1), qi(1)), (FrequencyPair::exact(q(3, 2), q(5, 7)).unwrap(), q(2, 1), q(1, 3))] {
            let r = verify_aniso_bridge(&f, m, h, 4, 1e-12).unwrap();
            assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
        }
        // the two constants agree at n = 0 only when w2 = 1
        let (d, p) = aniso_bridge_constant(0, 0, 2.0, 1.0, 1.0, 1.0);
        assert!((d - p).abs() < 1e-14);
        let (d, p) = aniso_bridge_constant(1, 0, 1.0, 3.0, 1.0, 1.0);
        assert!((d / p - libm::pow(3.0, -0.5)).abs() < 1e-14);
    }
}
