//! Anisotropic rescaling from the Cartesian form of `H_g` to a signed pair of oscillators.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ModeSign;
use crate::coupling::Coupling;
use crate::error::{Error, Result};
use crate::phasealg::{poisson_bracket, Basis, Params, PhasePoly};
use crate::report::{Check, Report};
use crate::scalar::{qi, Surd, Q};

/// `x_i' = x_i/sqrt|l_i|`, `p_i' = sqrt|l_i| p_i`, turning `l_i (p_i^2/2m + m w^2 x_i^2/2)` into
/// `sigma_i (p_i'^2/2m + m W_i^2 x_i'^2/2)` with `W_i = |l_i| w`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RescaleMap {
    #[serde(skip)]
    pub ell: (Q, Q),
    pub sigma: (i8, i8),
    /// `W_i / w = |l_i|`.
    #[serde(skip)]
    pub omega_scale: (Q, Q),
    /// The rescaled Hamiltonian is `overall * H^(sign)_{W1,W2}`.
    pub overall: i8,
    pub sign: ModeSign,
}

pub fn rescale_map(c: &Coupling) -> Result<RescaleMap> {
    let (l1, l2) = c.ells();
    if l1.is_zero() || l2.is_zero() {
        return Err(Error::InvalidParameter(format!("rescaling undefined at g = {}: a mode weight vanishes", c.g())));
    }
    let sg = |l: &Q| if l.is_positive() { 1i8 } else { -1 };
    let sigma = (sg(&l1), sg(&l2));
    let (overall, sign) = match sigma {
        (1, 1) => (1, ModeSign::Plus),
        (1, _) => (1, ModeSign::Minus),
        _ => (-1, ModeSign::Minus),
    };
    Ok(RescaleMap { ell: (l1, l2), sigma, omega_scale: (l1.abs(), l2.abs()), overall, sign })
}

fn var(p: Params, i: usize) -> PhasePoly {
    PhasePoly::var(Basis::Canonical, p, i)
}

/// Exact checks: the substituted Cartesian Hamiltonian, the canonical brackets of the primed
/// variables, and the spectrum with multiplicities on `n_i <= nmax`.
pub fn verify_rescale(c: &Coupling, params: Params, nmax: usize) -> Result<Report> {
    let map = rescale_map(c)?;
    let (m, w) = (params.m, params.omega);
    let ells = [map.ell.0, map.ell.1];
    let sig = [map.sigma.0, map.sigma.1];
    let half = Q::new(1, 2);
    let zero = PhasePoly::zero(Basis::Canonical, params);
    let mut h_ni = zero.clone();
    let mut target = zero.clone();
    let mut images: [PhasePoly; 4] = core::array::from_fn(|i| var(params, i));
    let mut primed: [PhasePoly; 4] = core::array::from_fn(|i| var(params, i));
    for i in 0..2 {
        let (x, p) = (var(params, i), var(params, i + 2));
        let l = ells[i];
        let k = m * w * w;
        h_ni = &h_ni + &(&p * &p).scale_q(l * half / m);
        h_ni = &h_ni + &(&x * &x).scale_q(l * k * half);
        let big = l.abs();
        let s = qi(sig[i] as i128);
        target = &target + &(&p * &p).scale_q(s * half / m);
        target = &target + &(&x * &x).scale_q(s * m * big * big * w * w * half);
        let root = Surd::sqrt_q(big);
        let inv = Surd::sqrt_q(Q::one() / big);
        // unprimed in terms of primed
        images[i] = x.scale(&root);
        images[i + 2] = p.scale(&inv);
        // primed in terms of unprimed
        primed[i] = x.scale(&inv);
        primed[i + 2] = p.scale(&root);
    }
    let mut rep = Report::new(format!("anisotropic rescaling at g = {}", c.g()));
    let sub = h_ni.substitute(&images);
    let d = (&sub - &target).max_abs_coeff();
    rep.push(
        Check::exact("sum l_i (p_i^2/2m + m w^2 x_i^2/2) = sum sigma_i (p_i'^2/2m + m W_i^2 x_i'^2/2)", sub.to_string_short(), target.to_string_short(), d)
            .with_anchor("aniso-rescale"),
    );
    let names = ["x1'", "x2'", "p1'", "p2'"];
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in (a + 1)..4 {
            let want = if b == a + 2 { Q::one() } else { Q::zero() };
            let br = poisson_bracket(&primed[a], &primed[b]);
            let want = PhasePoly::constant(Basis::Canonical, params, Surd::from_q(want));
            worst = worst.max((&br - &want).max_abs_coeff());
        }
    }
    rep.push(Check::exact(format!("canonical brackets of {}", names.join(", ")), format!("{}", worst), "0", worst).with_anchor("aniso-rescale"));

    let mut lhs: Vec<Q> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for n1 in 0..=nmax {
        for n2 in 0..=nmax {
            let (a, b) = (qi(n1 as i128), qi(n2 as i128));
            lhs.push(ells[0] * a + ells[1] * b + Q::one());
            rhs.push(qi(sig[0] as i128) * map.omega_scale.0 * (a + half) + qi(sig[1] as i128) * map.omega_scale.1 * (b + half));
        }
    }
    lhs.sort();
    rhs.sort();
    let bad = lhs.iter().zip(&rhs).filter(|(a, b)| a != b).count();
    rep.push(
        Check::exact(format!("spectrum of H_g = spectrum of the rescaled pair, n<={}", nmax), format!("{} mismatches", bad), "0", bad as f64)
            .with_anchor("aniso-rescale"),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn examples() {
        let r = rescale_map(&Coupling::new(q(1, 2))).unwrap();
        assert_eq!(r.omega_scale, (q(3, 2), q(1, 2)));
        assert_eq!(r.sigma, (1, 1));
        let r = rescale_map(&Coupling::new(qi(3))).unwrap();
        assert_eq!(r.omega_scale, (qi(4), qi(2)));
        assert_eq!((r.sigma, r.sign), ((1, -1), ModeSign::Minus));
        let r = rescale_map(&Coupling::new(qi(-3))).unwrap();
        assert_eq!((r.sigma, r.overall), ((-1, 1), -1));
        assert!(rescale_map(&Coupling::new(qi(1))).is_err());
        assert!(rescale_map(&Coupling::new(qi(-1))).is_err());
    }

    #[test]
    fn exact_checks() {
        for g in [q(0, 1), q(1, 3), q(1, 2), qi(3), q(-5, 2), q(2, 7)] {
            for p in [Params::default(), Params { m: q(3, 2), omega: q(2, 5) }] {
                let r = verify_rescale(&Coupling::new(g), p, 8).unwrap();
                assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
            }
        }
    }
}
