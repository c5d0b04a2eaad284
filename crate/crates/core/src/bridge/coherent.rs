//! Coherent states `Phi(alpha, beta)`: eigenstates of both lowering modes.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::quad::{inner_product, QUAD_ORDER};
use super::{eigenstate_c64, grid_points, Gaussian, Units, WaveState, ZPoly};
use crate::coupling::Coupling;
use crate::error::Result;
use crate::fockeng::Direction;
use crate::report::{Check, Report};
use crate::scalar::{factorial_f64, q_to_f64};

/// Total-number cutoff of the eigenstate expansion used for evolution checks.
const EXPANSION_CUTOFF: u32 = 40;
/// Largest `n1 + n2` whose expansion coefficient is checked by quadrature.
const COEFF_CHECK_MAX: u32 = 6;

/// `(kappa/sqrt(pi)) exp(-kappa^2 z zb/2 + alpha z + beta zb - alpha beta/kappa^2 - (|alpha|^2+|beta|^2)/(2 kappa^2))`,
/// normalised, with `b1- Phi = (alpha/kappa) Phi` and `b2- Phi = (beta/kappa) Phi`.
pub fn coherent_state(alpha: Complex64, beta: Complex64, units: &Units) -> WaveState<Complex64> {
    let k = units.kappa_f64();
    let k2 = k * k;
    let norm = libm::exp(-(alpha.norm_sqr() + beta.norm_sqr()) / (2.0 * k2));
    WaveState {
        poly: ZPoly::constant(Complex64::new(k * norm, 0.0)),
        gauss: Gaussian { zz: Complex64::new(-k2 / 2.0, 0.0), z_lin: alpha, zb_lin: beta, konst: -alpha * beta / k2 },
        sqrt_pi_power: -1,
        units: *units,
    }
}

/// `<Psi_{n1,n2}|Phi(alpha,beta)> = exp(-(|alpha|^2+|beta|^2)/(2 kappa^2)) (alpha/kappa)^n1 (beta/kappa)^n2 / sqrt(n1! n2!)`.
pub fn coherent_coefficient(alpha: Complex64, beta: Complex64, n1: u32, n2: u32, units: &Units) -> Complex64 {
    let k = units.kappa_f64();
    let norm = libm::exp(-(alpha.norm_sqr() + beta.norm_sqr()) / (2.0 * k * k));
    (alpha / k).powu(n1) * (beta / k).powu(n2) * norm / libm::sqrt(factorial_f64(n1) * factorial_f64(n2))
}

fn l2_norm(s: &WaveState<Complex64>) -> Result<f64> {
    Ok(libm::sqrt(inner_product(s, s, QUAD_ORDER)?.re.max(0.0)))
}

/// Eigenvalue relations, normalisation, expansion coefficients, time evolution and rotation.
///
/// Evolution by `H_g` multiplies `Phi(alpha e^{-i omega ell1 t}, beta e^{-i omega ell2 t})` by the
/// zero-point phase `e^{-i omega t}`; rotation is `exp(i gamma p_phi/hbar)`.
pub fn coherent_checks(alpha: Complex64, beta: Complex64, t: f64, gamma: f64, cp: &Coupling, units: &Units, tol: f64) -> Result<Report> {
    let mut rep = Report::new(format!("coherent state alpha={} beta={}", alpha, beta));
    let phi = coherent_state(alpha, beta, units);
    let k = units.kappa_f64();

    let n = l2_norm(&phi)?;
    rep.push(Check::tol("||Phi|| = 1", format!("{:.17e}", n), "1", libm::fabs(n - 1.0), tol).with_anchor("coherent-state"));

    for (mode, ev, name) in [(1u8, alpha / k, "b1- Phi = sqrt(hbar/m omega) alpha Phi"), (2, beta / k, "b2- Phi = sqrt(hbar/m omega) beta Phi")] {
        let lowered = phi.ladder(mode, Direction::Lower);
        let diff = lowered.sub(&phi.scale(&ev))?;
        let r = l2_norm(&diff)?;
        rep.push(Check::tol(name, format!("{:.3e}", r), "0", r, tol).with_anchor("coherent-eigen"));
    }

    let mut states = Vec::new();
    for total in 0..=EXPANSION_CUTOFF {
        for n2 in 0..=total {
            states.push((total - n2, n2, eigenstate_c64(total - n2, n2, units)));
        }
    }
    let mut worst = 0.0f64;
    for (n1, n2, psi) in states.iter().filter(|(a, b, _)| a + b <= COEFF_CHECK_MAX) {
        let c = inner_product(psi, &phi, QUAD_ORDER)?;
        worst = worst.max((c - coherent_coefficient(alpha, beta, *n1, *n2, units)).norm());
    }
    rep.push(Check::tol(format!("<Psi_n|Phi> closed form, n1+n2<={}", COEFF_CHECK_MAX), format!("{:.3e}", worst), "0", worst, tol).with_anchor("coherent-expansion"));

    let w = q_to_f64(&units.omega);
    let (l1, l2) = (q_to_f64(&cp.ell1()), q_to_f64(&cp.ell2()));
    let i = Complex64::new(0.0, 1.0);
    let ev_a = alpha * (-i * w * l1 * t).exp();
    let ev_b = beta * (-i * w * l2 * t).exp();
    let evolved = coherent_state(ev_a, ev_b, units);
    let zero_point = (-i * w * t).exp();
    let rot = coherent_state(alpha * (i * gamma).exp(), beta * (-i * gamma).exp(), units);
    let grid = grid_points(9, 2.0);
    let (mut r_ev, mut r_rot, mut r_pt) = (0.0f64, 0.0f64, 0.0f64);
    for &(x1, x2) in &grid {
        let mut sum_ev = Complex64::new(0.0, 0.0);
        let mut sum_rot = Complex64::new(0.0, 0.0);
        for (n1, n2, psi) in &states {
            let c = coherent_coefficient(alpha, beta, *n1, *n2, units);
            let v = psi.eval(x1, x2);
            let e = w * (l1 * *n1 as f64 + l2 * *n2 as f64 + 1.0);
            sum_ev += c * (-i * e * t).exp() * v;
            sum_rot += c * (i * gamma * (*n1 as f64 - *n2 as f64)).exp() * v;
        }
        r_ev = r_ev.max((sum_ev - zero_point * evolved.eval(x1, x2)).norm());
        r_rot = r_rot.max((sum_rot - rot.eval(x1, x2)).norm());
        // exp(i gamma p_phi/hbar) f (z) = f(z e^{i gamma})
        let zr = Complex64::new(x1, x2) * (i * gamma).exp();
        r_pt = r_pt.max((phi.eval(zr.re, zr.im) - rot.eval(x1, x2)).norm());
    }
    rep.push(Check::tol("exp(-itH/hbar) Phi(a,b) = e^{-i omega t} Phi(a e^{-i w l1 t}, b e^{-i w l2 t})", format!("{:.3e}", r_ev), "0", r_ev, tol).with_anchor("coherent-evolution"));
    rep.push(Check::tol("exp(i gamma p_phi/hbar) Phi(a,b) = Phi(a e^{i gamma}, b e^{-i gamma})", format!("{:.3e}", r_rot), "0", r_rot, tol).with_anchor("coherent-rotation"));
    rep.push(Check::tol("Phi(a,b)(z e^{i gamma}) = Phi(a e^{i gamma}, b e^{-i gamma})(z)", format!("{:.3e}", r_pt), "0", r_pt, tol).with_anchor("coherent-rotation"));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::ground_state;
    use crate::scalar::q;

    #[test]
    fn zero_parameters_give_ground_state() {
        let u = Units::default();
        let phi = coherent_state(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), &u);
        let g = ground_state(&u).to_c64();
        for (x1, x2) in [(0.0, 0.0), (0.5, -1.0), (1.5, 0.25)] {
            assert!((phi.eval(x1, x2) - g.eval(x1, x2)).norm() < 1e-15);
        }
    }

    #[test]
    fn checks_pass() {
        let u = Units::default();
        let r = coherent_checks(Complex64::new(0.6, -0.3), Complex64::new(-0.2, 0.5), 0.7, 1.1, &Coupling::new(q(1, 3)), &u, 1e-10).unwrap();
        assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
        let g = Units::new(q(2, 1), q(3, 2), q(1, 2)).unwrap();
        let r = coherent_checks(Complex64::new(0.9, 0.1), Complex64::new(0.3, -0.8), 2.3, -0.4, &Coupling::new(q(-5, 2)), &g, 1e-10).unwrap();
        assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
    }
}
