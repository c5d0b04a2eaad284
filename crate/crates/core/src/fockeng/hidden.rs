//! Higher-order ladder operators `L(s1,s2)`, `J(s1,s2)` and their closed-form matrix elements.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;
use serde::Serialize;

use super::degeneracy::{degeneracy_classes, ClassExtent};
use super::{c, ladder, Direction, FockBasis, FockOperator, PRUNE};
use crate::coupling::{Coupling, HiddenKind, Strength};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::scalar::qi;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HiddenDirection {
    Plus,
    Minus,
}

/// `n! / (n-s)!` as a float; `None` when `n < s` (a pole of the reciprocal gamma).
fn falling(n: usize, s: usize) -> Option<f64> {
    if n < s {
        return None;
    }
    Some(((n - s + 1)..=n).fold(1.0, |a, k| a * k as f64))
}

/// Image state and coefficient of the hidden operator on `|n1, n2>` from the gamma-function formulas.
/// A gamma pole in the denominator gives `None`.
pub fn hidden_coefficient(kind: HiddenKind, dir: HiddenDirection, s1: u32, s2: u32, n1: usize, n2: usize) -> Option<((usize, usize), f64)> {
    let (s1, s2) = (s1 as usize, s2 as usize);
    // Each factor is a ratio of the form sqrt(n!/m!) or sqrt(m!/n!) between neighbouring indices.
    match (kind, dir) {
        // sqrt(n2! G(n1+s1+1) / (n1! G(n2-s2+1)))
        (HiddenKind::L, HiddenDirection::Plus) => {
            let a = falling(n1 + s1, s1)?;
            let b = falling(n2, s2)?;
            Some(((n1 + s1, n2 - s2), libm::sqrt(a * b)))
        }
        // sqrt(n1! G(n2+s2+1) / (n2! G(n1-s1+1)))
        (HiddenKind::L, HiddenDirection::Minus) => {
            let a = falling(n1, s1)?;
            let b = falling(n2 + s2, s2)?;
            Some(((n1 - s1, n2 + s2), libm::sqrt(a * b)))
        }
        // sqrt(G(n1+s1+1) G(n2+s2+1) / (n1! n2!))
        (HiddenKind::J, HiddenDirection::Plus) => {
            let a = falling(n1 + s1, s1)?;
            let b = falling(n2 + s2, s2)?;
            Some(((n1 + s1, n2 + s2), libm::sqrt(a * b)))
        }
        // sqrt(n1! n2! / (G(n1-s1+1) G(n2-s2+1)))
        (HiddenKind::J, HiddenDirection::Minus) => {
            let a = falling(n1, s1)?;
            let b = falling(n2, s2)?;
            Some(((n1 - s1, n2 - s2), libm::sqrt(a * b)))
        }
    }
}

fn check_exponents(cp: &Coupling, kind: HiddenKind, s1: u32, s2: u32) -> Result<()> {
    if s1 == 0 && s2 == 0 {
        return Err(Error::IncompatibleCoupling("hidden operator needs s1 + s2 > 0".into()));
    }
    let (l1, l2) = cp.ells();
    let lhs = l1 * qi(s1 as i128);
    let rhs = l2 * qi(s2 as i128);
    let ok = match kind {
        HiddenKind::L => lhs == rhs,
        HiddenKind::J => lhs + rhs == qi(0) && s1 != s2,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::IncompatibleCoupling(format!("{:?}({}, {}) does not commute with H at g = {}", kind, s1, s2, cp.g())))
    }
}

/// Ladder composition for the hidden operator; the coupling must make it commute with `H_g`.
pub fn hidden_operator(basis: FockBasis, cp: &Coupling, kind: HiddenKind, s1: u32, s2: u32, dir: HiddenDirection) -> Result<FockOperator> {
    check_exponents(cp, kind, s1, s2)?;
    let (d1, d2) = match (kind, dir) {
        (HiddenKind::L, HiddenDirection::Plus) => (Direction::Raise, Direction::Lower),
        (HiddenKind::L, HiddenDirection::Minus) => (Direction::Lower, Direction::Raise),
        (HiddenKind::J, HiddenDirection::Plus) => (Direction::Raise, Direction::Raise),
        (HiddenKind::J, HiddenDirection::Minus) => (Direction::Lower, Direction::Lower),
    };
    let a = ladder(basis, 1, d1)?.pow(s1);
    let b = ladder(basis, 2, d2)?.pow(s2);
    let sign = if dir == HiddenDirection::Plus { "+" } else { "-" };
    let name = match kind {
        HiddenKind::L => "L",
        HiddenKind::J => "J",
    };
    Ok((&a * &b).labeled(format!("{}{}({},{})", name, sign, s1, s2)))
}

/// Matrix elements of the ladder composition against the gamma formulas, relative residual.
pub fn verify_hidden_coefficients(basis: FockBasis, cp: &Coupling, kind: HiddenKind, s1: u32, s2: u32, tol: f64) -> Result<Report> {
    let mut rep = Report::new(format!("{:?}({},{}) matrix elements", kind, s1, s2));
    for dir in [HiddenDirection::Plus, HiddenDirection::Minus] {
        let op = hidden_operator(basis, cp, kind, s1, s2, dir)?;
        let mut worst = 0.0f64;
        let mut columns = 0usize;
        for (n1, n2) in basis.states() {
            let want = hidden_coefficient(kind, dir, s1, s2, n1, n2);
            let target_inside = match want {
                Some(((t1, t2), _)) => t1 <= basis.cutoff() && t2 <= basis.cutoff(),
                None => true,
            };
            if !target_inside {
                continue;
            }
            columns += 1;
            let col = op.apply_state(n1, n2);
            let mut r = 0.0f64;
            for (t, v) in &col {
                let w = match want {
                    Some((ts, x)) if ts == *t => x,
                    _ => 0.0,
                };
                r = r.max((v - c(w)).norm() / w.max(1.0));
            }
            if let Some((ts, x)) = want {
                if !col.iter().any(|(t, _)| *t == ts) && x > PRUNE {
                    r = r.max(1.0);
                }
            }
            worst = worst.max(r);
        }
        rep.push(
            Check::tol(format!("{}: elements on {} columns", op.label, columns), format!("{:.3e}", worst), "gamma-function coefficients", worst, tol)
                .with_anchor("hidden-coefficients"),
        );
    }
    Ok(rep)
}

/// Within each finite class repeated `L+` walks all members and then annihilates;
/// `J+` never annihilates before the cutoff.
pub fn verify_hidden_termination(basis: FockBasis, cp: &Coupling) -> Result<Report> {
    let h = cp.hidden();
    let op = hidden_operator(basis, cp, h.kind, h.s1, h.s2, HiddenDirection::Plus)?;
    let mut rep = Report::new(format!("{} orbit walk", op.label));
    let mut bad = 0usize;
    let mut walks = 0usize;
    match h.kind {
        HiddenKind::L => {
            for cl in degeneracy_classes(&Strength::Rational(*cp), None, basis)? {
                if cl.extent != ClassExtent::Finite {
                    continue;
                }
                walks += 1;
                let mut cur = cl.members[0];
                let mut visited = Vec::from([cur]);
                loop {
                    let out = op.apply_state(cur.0, cur.1);
                    match out.as_slice() {
                        [] => break,
                        [(t, v)] if !v.is_zero() => {
                            cur = *t;
                            visited.push(cur);
                            if visited.len() > cl.members.len() {
                                break;
                            }
                        }
                        _ => {
                            bad += 1;
                            break;
                        }
                    }
                }
                if visited != cl.members {
                    bad += 1;
                }
            }
        }
        HiddenKind::J => {
            for (n1, n2) in basis.states() {
                let mut cur = (n1, n2);
                while cur.0 + h.s1 as usize <= basis.cutoff() && cur.1 + h.s2 as usize <= basis.cutoff() {
                    walks += 1;
                    let out = op.apply_state(cur.0, cur.1);
                    if out.len() != 1 {
                        bad += 1;
                        break;
                    }
                    cur = out[0].0;
                }
            }
        }
    }
    rep.push(Check::exact(format!("{} walks", walks), format!("{} broken", bad), "0 broken", bad as f64).with_anchor("hidden-termination"));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn examples() {
        let b = FockBasis::new(6).unwrap();
        let g = Coupling::new(q(1, 3));
        let lp = hidden_operator(b, &g, HiddenKind::L, 1, 2, HiddenDirection::Plus).unwrap();
        let out = lp.apply_state(0, 2);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0, (1, 0));
        assert!((out[0].1.re - libm::sqrt(2.0)).abs() < 1e-14);
        let lm = hidden_operator(b, &g, HiddenKind::L, 1, 2, HiddenDirection::Minus).unwrap();
        assert!(lm.apply_state(0, 2).is_empty());
        assert_eq!(hidden_coefficient(HiddenKind::L, HiddenDirection::Minus, 1, 2, 0, 2), None);

        let g3 = Coupling::new(qi(3));
        let jp = hidden_operator(b, &g3, HiddenKind::J, 1, 2, HiddenDirection::Plus).unwrap();
        let out = jp.apply_state(0, 0);
        assert_eq!(out[0].0, (1, 2));
        assert!((out[0].1.re - libm::sqrt(2.0)).abs() < 1e-14);
    }

    #[test]
    fn mismatch_rejected() {
        let b = FockBasis::new(4).unwrap();
        assert!(hidden_operator(b, &Coupling::new(q(1, 2)), HiddenKind::L, 1, 2, HiddenDirection::Plus).is_err());
    }

    #[test]
    fn coefficients_and_walks() {
        let b = FockBasis::new(12).unwrap();
        for (g, kind) in [(q(1, 3), HiddenKind::L), (qi(3), HiddenKind::J), (q(-1, 2), HiddenKind::L), (qi(-2), HiddenKind::J)] {
            let cp = Coupling::new(g);
            let h = cp.hidden();
            assert_eq!(h.kind, kind);
            let r = verify_hidden_coefficients(b, &cp, kind, h.s1, h.s2, 1e-12).unwrap();
            assert!(r.pass(), "{:?}", r);
            let r = verify_hidden_termination(b, &cp).unwrap();
            assert!(r.pass(), "{:?}", r);
        }
    }
}
