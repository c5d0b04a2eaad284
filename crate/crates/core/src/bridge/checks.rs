//! Bridge proportionality, intertwining relations and the overlap matrix.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::quad::orthonormality;
use super::{act_free, cbt_apply, eigenstate, exact_ratio, grid_points, label, FreeGen, Units, WaveState, ZPoly};
use crate::error::Result;
use crate::fockeng::Direction;
use crate::report::{Check, Report};
use crate::scalar::{factorial_q, qi, Gq, Surd, Q};

/// Grid used for the pointwise ratio.
const GRID_SIDE: usize = 21;
const GRID_HALF_WIDTH: f64 = 3.0;
const NODAL_CUTOFF: f64 = 1e-6;

/// Exact constants `c` with `bridge(phi_n) = c Psi_n`; values carry a factor `pi^(k/2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BridgeConstant {
    pub n1: u32,
    pub n2: u32,
    #[serde(skip)]
    pub ratio: (Surd, i32),
    #[serde(skip)]
    pub reduced: (Surd, i32),
    pub ratio_f64: f64,
    pub reduced_f64: f64,
    pub grid_spread: f64,
}

fn with_pi(v: &(Surd, i32)) -> f64 {
    v.0.to_c64().re * libm::pow(core::f64::consts::PI, v.1 as f64 / 2.0)
}

/// `c(n1,n2)` exactly and on the grid, and `c / ((2 hbar/m omega)^{(n1+n2)/2} sqrt(n1! n2!))`.
pub fn bridge_constant(n1: u32, n2: u32, units: &Units) -> Option<BridgeConstant> {
    let s = cbt_apply(&ZPoly::<Surd>::jordan(n1, n2), units);
    let psi = eigenstate(n1, n2, units);
    let ratio = exact_ratio(&s, &psi)?;
    let scale = (0..n1 + n2).fold(Q::one(), |a, _| a * qi(2) / units.kappa_sq()) * factorial_q(n1) * factorial_q(n2);
    let inv = Surd::sqrt_q(Q::one() / scale);
    let reduced = (&ratio.0 * &inv, ratio.1);
    let (sc, pc) = (s.to_c64(), psi.to_c64());
    let mut vals = Vec::new();
    for (x1, x2) in grid_points(GRID_SIDE, GRID_HALF_WIDTH) {
        let p = pc.eval(x1, x2);
        if p.norm() >= NODAL_CUTOFF {
            vals.push(sc.eval(x1, x2) / p);
        }
    }
    let mean = vals.iter().fold(Complex64::zero(), |a, v| a + v) / vals.len().max(1) as f64;
    let spread = vals.iter().map(|v| (v - mean).norm()).fold(0.0, f64::max) / mean.norm();
    Some(BridgeConstant { n1, n2, ratio_f64: with_pi(&ratio), reduced_f64: with_pi(&reduced), ratio, reduced, grid_spread: spread })
}

/// For all `n1, n2 <= nmax`: the bridge image is proportional to `Psi_{n1,n2}` (exactly and with grid
/// spread within `tol`), and the reduced constant is the same for every state.
pub fn verify_bridge_proportionality(units: &Units, nmax: u32, tol: f64) -> Result<Report> {
    let mut rep = Report::new(format!("bridge proportionality n1,n2<={}", nmax));
    let reference = bridge_constant(0, 0, units).map(|b| b.reduced);
    for n1 in 0..=nmax {
        for n2 in 0..=nmax {
            match bridge_constant(n1, n2, units) {
                None => rep.push(Check::exact(format!("S phi{} ~ Psi{}", label(n1, n2), label(n1, n2)), "not proportional", "proportional", 1.0).with_anchor("bridge-eigen")),
                Some(b) => {
                    rep.push(
                        Check::tol(format!("S phi{} / Psi{} grid spread", label(n1, n2), label(n1, n2)), format!("{:.3e}", b.grid_spread), "0", b.grid_spread, tol)
                            .with_anchor("bridge-eigen"),
                    );
                    let same = reference.as_ref() == Some(&b.reduced);
                    rep.push(
                        Check::exact(
                            format!("reduced constant at {} equals the one at (0,0)", label(n1, n2)),
                            format!("{} * pi^({}/2)", b.reduced.0, b.reduced.1),
                            reference.as_ref().map(|r| format!("{} * pi^({}/2)", r.0, r.1)).unwrap_or_default(),
                            if same { 0.0 } else { 1.0 },
                        )
                        .with_anchor("bridge-eigen"),
                    );
                }
            }
        }
    }
    // sqrt(2 pi hbar/(m omega))
    let want = (Surd::sqrt_q(qi(2) / units.kappa_sq()), 1);
    rep.push(
        Check::exact(
            "reduced constant = sqrt(2 pi hbar/(m omega))",
            reference.as_ref().map(|r| format!("{} * pi^({}/2)", r.0, r.1)).unwrap_or_default(),
            format!("{} * pi^(1/2)", want.0),
            if reference.as_ref() == Some(&want) { 0.0 } else { 1.0 },
        )
        .with_anchor("bridge-eigen"),
    );
    Ok(rep)
}

fn ladder2(s: &WaveState<Surd>, a: (u8, Direction), b: (u8, Direction)) -> WaveState<Surd> {
    s.ladder(b.0, b.1).ladder(a.0, a.1)
}

/// `bridge(G s) = G' bridge(s)` for every free generator and its trapped image, exactly,
/// on all monomials with `n1, n2 <= nmax`.
pub fn verify_intertwining(units: &Units, nmax: u32) -> Report {
    let (m, w, h) = (units.m, units.omega, units.hbar);
    let lo = Direction::Lower;
    let hi = Direction::Raise;
    let sp = Surd::sqrt_q(qi(2) * m * h * w);
    let sx = Surd::sqrt_q(qi(2) * m * h / w);
    let minus_i = Surd::from_gq(Gq::new(Q::zero(), -Q::one()));
    type Image = fn(&WaveState<Surd>, &Units) -> WaveState<Surd>;
    let rules: [(FreeGen, &str, Image); 5] = [
        (FreeGen::H, "S H = -omega hbar b1- b2- S", |s, u| ladder2(s, (1, Direction::Lower), (2, Direction::Lower)).scale(&Surd::from_q(-u.omega * u.hbar))),
        (FreeGen::D2i, "S 2iD = hbar (N1 + N2 + 1) S", |s, u| {
            let n1 = ladder2(s, (1, Direction::Raise), (1, Direction::Lower));
            let n2 = ladder2(s, (2, Direction::Raise), (2, Direction::Lower));
            n1.add(&n2).and_then(|x| x.add(s)).expect("same Gaussian").scale(&Surd::from_q(u.hbar))
        }),
        (FreeGen::K, "S K = (hbar/omega) b1+ b2+ S", |s, u| ladder2(s, (1, Direction::Raise), (2, Direction::Raise)).scale(&Surd::from_q(u.hbar / u.omega))),
        (FreeGen::Pphi, "S p_phi = hbar (N1 - N2) S", |s, u| {
            let n1 = ladder2(s, (1, Direction::Raise), (1, Direction::Lower));
            let n2 = ladder2(s, (2, Direction::Raise), (2, Direction::Lower));
            n1.sub(&n2).expect("same Gaussian").scale(&Surd::from_q(u.hbar))
        }),
        (FreeGen::Pphi, "S p_phi = p_phi S", |s, _| s.angular_momentum()),
    ];
    let linear: [(FreeGen, &str, u8, Direction, Surd); 4] = [
        (FreeGen::Pminus, "S p- = -i sqrt(2 m hbar omega) b1- S", 1, lo, &sp * &minus_i),
        (FreeGen::Pplus, "S p+ = -i sqrt(2 m hbar omega) b2- S", 2, lo, &sp * &minus_i),
        (FreeGen::XiPlus, "S xi+ = sqrt(2 m hbar/omega) b1+ S", 1, hi, sx.clone()),
        (FreeGen::XiMinus, "S xi- = sqrt(2 m hbar/omega) b2+ S", 2, hi, sx),
    ];
    let mut rep = Report::new("bridge intertwining");
    let mut fails = [0usize; 9];
    for n1 in 0..=nmax {
        for n2 in 0..=nmax {
            let phi = ZPoly::<Surd>::jordan(n1, n2);
            let img = cbt_apply(&phi, units);
            for (k, (g, _, f)) in rules.iter().enumerate() {
                if cbt_apply(&act_free(*g, &phi, units), units) != f(&img, units) {
                    fails[k] += 1;
                }
            }
            for (k, (g, _, mode, dir, c)) in linear.iter().enumerate() {
                if cbt_apply(&act_free(*g, &phi, units), units) != img.ladder(*mode, *dir).scale(c) {
                    fails[5 + k] += 1;
                }
            }
        }
    }
    let names = rules.iter().map(|r| r.1).chain(linear.iter().map(|r| r.1));
    for (name, f) in names.zip(fails) {
        rep.push(Check::exact(format!("{} on phi_(n1,n2), n<={}", name, nmax), format!("{} monomials fail", f), "0", f as f64).with_anchor("bridge-intertwining"));
    }
    rep
}

/// Quadrature overlap matrix of `Psi_{n1,n2}`, `n1, n2 <= nmax`, against the identity.
pub fn verify_overlap_matrix(units: &Units, nmax: u32, order: usize, tol: f64) -> Result<Report> {
    let mut states = Vec::new();
    for a in 0..=nmax {
        for b in 0..=nmax {
            states.push((a, b));
        }
    }
    let mut worst = 0.0f64;
    for (i, n) in states.iter().enumerate() {
        for l in states.iter().skip(i) {
            let v = orthonormality(*n, *l, units, order)?;
            let want = if n == l { 1.0 } else { 0.0 };
            worst = worst.max((v - want).norm());
        }
    }
    let mut rep = Report::new("eigenfunction overlaps");
    rep.push(Check::tol(format!("<Psi_n|Psi_l> = delta, n1,n2<={}", nmax), format!("{:.3e}", worst), "0", worst, tol).with_anchor("orthonormality"));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn constants_examples() {
        let u = Units::default();
        let b = bridge_constant(1, 1, &u).unwrap();
        // c(1,1) = 2 sqrt2 sqrt(pi)
        assert_eq!(b.ratio, (Surd::sqrt_int(8), 1));
        let b0 = bridge_constant(0, 0, &u).unwrap();
        assert_eq!(b0.ratio, (Surd::sqrt_int(2), 1));
        let b1 = bridge_constant(1, 0, &u).unwrap();
        assert_eq!(b1.reduced, b0.reduced);
        assert!(bridge_constant(2, 0, &u).unwrap().grid_spread < 1e-12);
    }

    #[test]
    fn proportionality_general_units() {
        for u in [Units::default(), Units::new(q(2, 1), q(3, 2), q(5, 7)).unwrap()] {
            let r = verify_bridge_proportionality(&u, 3, 1e-9).unwrap();
            assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn intertwining_general_units() {
        for u in [Units::default(), Units::new(q(3, 2), q(5, 7), q(2, 3)).unwrap()] {
            let r = verify_intertwining(&u, 3);
            assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn overlaps() {
        let r = verify_overlap_matrix(&Units::default(), 3, 16, 1e-10).unwrap();
        assert!(r.pass(), "{:?}", r);
    }
}
