//! Cartesian-type modes, the su(2) generators built on them, and the unitary map
//! between the rotation-invariant and the non-invariant oscillators.

use alloc::format;

use num_complex::Complex64;

use super::{hamiltonian, ladder, matrix_exponential, Direction, FockBasis, FockOperator, InteriorMask};
use crate::coupling::Coupling;
use crate::error::{invalid, Result};
use crate::report::{Check, Report};
use crate::scalar::q_to_f64;

const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

/// `a1- = (b1- + b2-)/sqrt2`, `a2- = i(b1- - b2-)/sqrt2` and their adjoints,
/// written directly in the circular number basis.
pub fn amode_ladder(basis: FockBasis, mode: u8, dir: Direction) -> Result<FockOperator> {
    let b1 = ladder(basis, 1, dir)?;
    let b2 = ladder(basis, 2, dir)?;
    let s = FRAC_1_SQRT_2;
    let op = match (mode, dir) {
        (1, _) => (&b1 + &b2).scale_re(s),
        (2, Direction::Lower) => (&b1 - &b2).scale(Complex64::new(0.0, s)),
        (2, Direction::Raise) => (&b1 - &b2).scale(Complex64::new(0.0, -s)),
        _ => return Err(invalid("mode must be 1 or 2")),
    };
    Ok(op.labeled(format!("a{}{}", mode, if dir == Direction::Raise { "+" } else { "-" })))
}

/// Schwinger generators `(L1, L2, L3)` on the a-modes.
pub fn su2_generators(basis: FockBasis) -> Result<[FockOperator; 3]> {
    let a1m = amode_ladder(basis, 1, Direction::Lower)?;
    let a1p = amode_ladder(basis, 1, Direction::Raise)?;
    let a2m = amode_ladder(basis, 2, Direction::Lower)?;
    let a2p = amode_ladder(basis, 2, Direction::Raise)?;
    let l1 = (&(&a1p * &a2m) + &(&a2p * &a1m)).scale_re(0.5).labeled("L1");
    let l2 = (&(&a2p * &a1m) - &(&a1p * &a2m)).scale(Complex64::new(0.0, 0.5)).labeled("L2");
    let l3 = (&(&a1p * &a1m) - &(&a2p * &a2m)).scale_re(0.5).labeled("L3");
    Ok([l1, l2, l3])
}

/// `exp(i (2 pi/3) (L1 + L2 + L3)/sqrt3)`; it carries `L1 -> L3 -> L2 -> L1` and
/// `a_j^-+` to `e^{-+i pi/4} b_j^-+`. Exact on total-number shells `n1 + n2 <= N`.
pub fn unitary_bridge_u(basis: FockBasis) -> Result<FockOperator> {
    let [l1, l2, l3] = su2_generators(basis)?;
    let theta = 2.0 * core::f64::consts::PI / 3.0 / libm::sqrt(3.0);
    let gen = (&(&l1 + &l2) + &l3).scale(Complex64::new(0.0, theta));
    Ok(matrix_exponential(&gen)?.labeled("U"))
}

/// `hbar omega (ell1 a1+ a1- + ell2 a2+ a2- + 1)`.
pub fn rni_hamiltonian(basis: FockBasis, cp: &Coupling, hbar_omega: f64) -> Result<FockOperator> {
    let n1 = &amode_ladder(basis, 1, Direction::Raise)? * &amode_ladder(basis, 1, Direction::Lower)?;
    let n2 = &amode_ladder(basis, 2, Direction::Raise)? * &amode_ladder(basis, 2, Direction::Lower)?;
    let h = &(&n1.scale_re(q_to_f64(&cp.ell1())) + &n2.scale_re(q_to_f64(&cp.ell2()))) + &FockOperator::identity(basis);
    Ok(h.scale_re(hbar_omega).labeled(format!("H_ni({})", cp.g())))
}

fn conj(u: &FockOperator, x: &FockOperator) -> FockOperator {
    &(u * x) * &u.adjoint()
}

/// Unitarity, the mode map, the su(2) permutation and `U H_ni U^dag = H_g`, each on
/// total-number shells clear of the cutoff.
pub fn verify_unitary_equivalence(basis: FockBasis, couplings: &[Coupling], tol: f64) -> Result<Report> {
    let u = unitary_bridge_u(basis)?;
    let mut rep = Report::new("unitary equivalence");
    let shells = InteriorMask::total(0);
    let inner = InteriorMask::total(1);
    let id = FockOperator::identity(basis);
    let r = (&u * &u.adjoint()).block_residual(&id, &shells)?;
    rep.push(Check::tol("U U^dag = I", format!("{:.3e}", r), "I", r, tol).with_anchor("unitary-map"));
    let ph = Complex64::from_polar(1.0, core::f64::consts::FRAC_PI_4);
    for mode in [1u8, 2] {
        for (dir, phase, sign) in [(Direction::Lower, ph.conj(), "-"), (Direction::Raise, ph, "+")] {
            let a = amode_ladder(basis, mode, dir)?;
            let b = ladder(basis, mode, dir)?.scale(phase);
            let r = conj(&u, &a).masked_residual(&b, &inner)?;
            rep.push(
                Check::tol(format!("U a{m}{s} U^dag = e^({s}i pi/4) b{m}{s}", m = mode, s = sign), format!("{:.3e}", r), "0", r, tol)
                    .with_anchor("unitary-map"),
            );
        }
    }
    let [l1, l2, l3] = su2_generators(basis)?;
    for (x, y) in [(&l1, &l3), (&l3, &l2), (&l2, &l1)] {
        let r = conj(&u, x).masked_residual(y, &shells)?;
        rep.push(Check::tol(format!("U {} U^dag = {}", x.label, y.label), format!("{:.3e}", r), "0", r, tol).with_anchor("unitary-map"));
    }
    for cp in couplings {
        let hni = rni_hamiltonian(basis, cp, 1.0)?;
        let hg = hamiltonian(basis, cp, 1.0);
        let r = conj(&u, &hni).masked_residual(&hg, &shells)?;
        rep.push(Check::tol(format!("U H_ni U^dag = H_g at g={}", cp.g()), format!("{:.3e}", r), "0", r, tol).with_anchor("unitary-map"));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockeng::{angular_momentum, commutator};
    use crate::scalar::{q, qi};

    #[test]
    fn equivalence_holds() {
        let b = FockBasis::new(8).unwrap();
        let cs = [Coupling::zero(), Coupling::new(q(1, 3)), Coupling::new(q(1, 2)), Coupling::new(qi(3))];
        let r = verify_unitary_equivalence(b, &cs, 1e-10).unwrap();
        assert!(r.pass(), "{:#?}", r.failures().collect::<alloc::vec::Vec<_>>());
    }

    #[test]
    fn rni_rotation_invariance_only_at_zero() {
        let b = FockBasis::new(6).unwrap();
        let mask = InteriorMask::total(0);
        let p = angular_momentum(b, 1.0);
        let h0 = rni_hamiltonian(b, &Coupling::zero(), 1.0).unwrap();
        let r0 = commutator(&h0, &p).unwrap().masked_residual(&FockOperator::zero(b), &mask).unwrap();
        assert!(r0 < 1e-12);
        assert!(h0.masked_residual(&hamiltonian(b, &Coupling::zero(), 1.0), &mask).unwrap() < 1e-12);
        let h = rni_hamiltonian(b, &Coupling::new(q(1, 2)), 1.0).unwrap();
        let r = commutator(&h, &p).unwrap().masked_residual(&FockOperator::zero(b), &mask).unwrap();
        assert!(r > 0.1);
    }
}
