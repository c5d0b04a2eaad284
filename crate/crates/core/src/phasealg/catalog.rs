use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::poly::{Basis, Exps, Params, PhasePoly};
use crate::coupling::{Coupling, HiddenKind};
use crate::error::{invalid, Result};
use crate::scalar::{qi, Surd, Q};

fn mono(p: Params, e: Exps, c: Q, mu: Q) -> PhasePoly {
    PhasePoly::monomial(Basis::Circular, p, e, Surd::from_q(c), mu)
}

/// The quadratic and linear integrals of `H_g`, in the circular basis.
///
/// Frequencies are in units of omega: a term with `mu` carries `e^{i mu omega t}`.
#[derive(Clone, Debug)]
pub struct IntegralCatalog {
    pub ell1: Q,
    pub ell2: Q,
    pub params: Params,
    pub j0: PhasePoly,
    pub j_plus: PhasePoly,
    pub j_minus: PhasePoly,
    pub l2: PhasePoly,
    pub l_plus: PhasePoly,
    pub l_minus: PhasePoly,
    pub b1_plus: PhasePoly,
    pub b1_minus: PhasePoly,
    pub b2_plus: PhasePoly,
    pub b2_minus: PhasePoly,
    pub beta1_plus: PhasePoly,
    pub beta1_minus: PhasePoly,
    pub beta2_plus: PhasePoly,
    pub beta2_minus: PhasePoly,
}

impl IntegralCatalog {
    pub fn new(c: &Coupling, params: Params) -> Self {
        let (l1, l2) = c.ells();
        IntegralCatalog::with_weights(l1, l2, params)
    }

    /// Catalog for arbitrary exact weights, e.g. the isotropic Minkowskian limit `(1, -1)`.
    pub fn with_weights(ell1: Q, ell2: Q, params: Params) -> Self {
        let h = Q::new(1, 2);
        let z = Q::zero();
        let o = Q::one();
        let g = (ell1 - ell2) * h;
        let n1 = mono(params, [1, 1, 0, 0], o, z);
        let n2 = mono(params, [0, 0, 1, 1], o, z);
        IntegralCatalog {
            ell1,
            ell2,
            params,
            j0: (&n1 + &n2).scale_q(h),
            l2: (&n1 - &n2).scale_q(h),
            j_plus: mono(params, [1, 0, 1, 0], o, qi(-2)),
            j_minus: mono(params, [0, 1, 0, 1], o, qi(2)),
            l_plus: mono(params, [1, 0, 0, 1], o, -g * qi(2)),
            l_minus: mono(params, [0, 1, 1, 0], o, g * qi(2)),
            b1_plus: mono(params, [2, 0, 0, 0], o, -ell1 * qi(2)),
            b1_minus: mono(params, [0, 2, 0, 0], o, ell1 * qi(2)),
            b2_plus: mono(params, [0, 0, 2, 0], o, -ell2 * qi(2)),
            b2_minus: mono(params, [0, 0, 0, 2], o, ell2 * qi(2)),
            beta1_plus: mono(params, [1, 0, 0, 0], o, -ell1),
            beta1_minus: mono(params, [0, 1, 0, 0], o, ell1),
            beta2_plus: mono(params, [0, 0, 1, 0], o, -ell2),
            beta2_minus: mono(params, [0, 0, 0, 1], o, ell2),
        }
    }

    /// `H = omega (ell1 N1 + ell2 N2)`.
    pub fn hamiltonian(&self) -> PhasePoly {
        let w = self.params.omega;
        let mut p = PhasePoly::zero(Basis::Circular, self.params);
        p = &p + &mono(self.params, [1, 1, 0, 0], self.ell1 * w, Q::zero());
        p = &p + &mono(self.params, [0, 0, 1, 1], self.ell2 * w, Q::zero());
        p
    }

    /// The ten quadratic generators with their names, in a fixed order.
    pub fn quadratic(&self) -> Vec<(&'static str, &PhasePoly)> {
        alloc::vec![
            ("J0", &self.j0),
            ("J+", &self.j_plus),
            ("J-", &self.j_minus),
            ("L2", &self.l2),
            ("L+", &self.l_plus),
            ("L-", &self.l_minus),
            ("B1+", &self.b1_plus),
            ("B1-", &self.b1_minus),
            ("B2+", &self.b2_plus),
            ("B2-", &self.b2_minus),
        ]
    }

    pub fn linear(&self) -> Vec<(&'static str, &PhasePoly)> {
        alloc::vec![
            ("beta1+", &self.beta1_plus),
            ("beta1-", &self.beta1_minus),
            ("beta2+", &self.beta2_plus),
            ("beta2-", &self.beta2_minus),
        ]
    }

    pub fn get(&self, name: &str) -> Option<&PhasePoly> {
        self.quadratic().into_iter().chain(self.linear()).find(|(n, _)| *n == name).map(|(_, p)| p)
    }
}

/// Free and oscillator observables in the canonical basis.
pub mod canonical {
    use super::*;

    fn v(p: Params, i: usize) -> PhasePoly {
        PhasePoly::var(Basis::Canonical, p, i)
    }

    /// `(p1^2 + p2^2) / 2m`
    pub fn free_hamiltonian(p: Params) -> PhasePoly {
        (&v(p, 2).pow(2) + &v(p, 3).pow(2)).scale_q(Q::one() / (qi(2) * p.m))
    }
    /// `(x1 p1 + x2 p2) / 2`
    pub fn dilatation(p: Params) -> PhasePoly {
        (&(&v(p, 0) * &v(p, 2)) + &(&v(p, 1) * &v(p, 3))).scale_q(Q::new(1, 2))
    }
    /// `m (x1^2 + x2^2) / 2`
    pub fn special_conformal(p: Params) -> PhasePoly {
        (&v(p, 0).pow(2) + &v(p, 1).pow(2)).scale_q(p.m / qi(2))
    }
    /// `x1 p2 - x2 p1`
    pub fn angular_momentum(p: Params) -> PhasePoly {
        &(&v(p, 0) * &v(p, 3)) - &(&v(p, 1) * &v(p, 2))
    }
    /// `p^2/2m + m omega^2 x^2 / 2`
    pub fn oscillator(p: Params) -> PhasePoly {
        &free_hamiltonian(p) + &special_conformal(p).scale_q(p.omega * p.omega)
    }
    /// `H_osc + g omega p_phi`
    pub fn h_g(c: &Coupling, p: Params) -> PhasePoly {
        &oscillator(p) + &angular_momentum(p).scale_q(c.g() * p.omega)
    }
}

/// `(b1+)^j1 (b2-)^j2` (kind L) or `(b1+)^j1 (b2+)^j2` (kind J) with its time factor;
/// `conjugate` returns the complex conjugate member.
pub fn hidden_integral(c: &Coupling, params: Params, kind: HiddenKind, j1: u32, j2: u32, conjugate: bool) -> Result<PhasePoly> {
    if j1 == 0 && j2 == 0 {
        return Err(invalid("hidden integral needs j1 + j2 > 0"));
    }
    let (a, b) = (j1 as u8, j2 as u8);
    let e = match kind {
        HiddenKind::L => [a, 0, 0, b],
        HiddenKind::J => [a, 0, b, 0],
    };
    let p = mono(params, e, Q::one(), c.hidden_mu(kind, j1, j2));
    Ok(if conjugate { p.conj() } else { p })
}
