use alloc::format;

use num_traits::Zero;

use super::bracket::poisson_bracket;
use super::catalog::{canonical, IntegralCatalog};
use super::poly::{Basis, Params, PhasePoly};
use super::verify::compare;
use crate::coupling::Coupling;
use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::{Gq, Surd, Q};

const MAX_SERIES: u32 = 512;

/// `sum_n param^n / n! {F,{F,...,f}}`, which must terminate.
pub fn lie_series(gen: &PhasePoly, f: &PhasePoly, param: &Surd) -> Result<PhasePoly> {
    let mut out = f.clone();
    let mut term = f.clone();
    for n in 1..=MAX_SERIES {
        term = poisson_bracket(gen, &term).scale(&param.scale_q(Q::new(1, n as i128)));
        if term.is_zero() {
            return Ok(out);
        }
        out = &out + &term;
    }
    Err(Error::Unsupported(format!("Lie series did not terminate within {} terms", MAX_SERIES)))
}

/// Flow of the dilatation generator `(x.p)/2` with parameter `-ln 2`: each
/// monomial `x^a p^b` is an eigenvector with weight `(b-a)/2`, so the flow
/// multiplies it by `2^{(a-b)/2}`.
pub fn dilatation_flow_ln2(f: &PhasePoly) -> PhasePoly {
    let c = f.to_basis(Basis::Canonical);
    let mut out = PhasePoly::zero(Basis::Canonical, c.params());
    for (e, mu, v) in c.terms() {
        let a = e[0] as i32 + e[1] as i32;
        let b = e[2] as i32 + e[3] as i32;
        out.add_term(*e, *mu, &(v * &Surd::pow_sqrt2(a - b)));
    }
    out
}

fn flow_params(p: Params) -> (Surd, Surd) {
    // delta = i/(2 omega), beta = -i omega
    let delta = Surd::from_gq(Gq::new(Q::zero(), Q::new(1, 2) / p.omega));
    let beta = Surd::from_gq(Gq::new(Q::zero(), -p.omega));
    (delta, beta)
}

/// The classical bridge `T_K0(beta) o T_H(delta) o T_D0(gamma)` at `t = 0`.
///
/// Explicit time factors of the input are evaluated at `t = 0`.
pub fn classical_cbt(a: &PhasePoly) -> PhasePoly {
    let p = a.params();
    let f = a.to_basis(Basis::Canonical).at_time_zero();
    let (delta, beta) = flow_params(p);
    let f = dilatation_flow_ln2(&f);
    let f = lie_series(&canonical::free_hamiltonian(p), &f, &delta).expect("free flow is nilpotent on polynomials");
    lie_series(&canonical::special_conformal(p), &f, &beta).expect("conformal flow is nilpotent on polynomials")
}

/// Equivalent ordering `T_K0(beta) o T_D0(gamma) o T_H(2 delta)`.
pub fn classical_cbt_alt(a: &PhasePoly) -> PhasePoly {
    let p = a.params();
    let f = a.to_basis(Basis::Canonical).at_time_zero();
    let (delta, beta) = flow_params(p);
    let two_delta = delta.scale_q(Q::from_integer(2));
    let f = lie_series(&canonical::free_hamiltonian(p), &f, &two_delta).expect("nilpotent");
    let f = dilatation_flow_ln2(&f);
    lie_series(&canonical::special_conformal(p), &f, &beta).expect("nilpotent")
}

/// Images of `(H, iD0, K0)` under the bridge against `(-omega J-, J0, J+/omega)` at `t = 0`.
pub fn verify_classical_cbt(p: Params) -> Report {
    let cat = IntegralCatalog::new(&Coupling::zero(), p);
    let mut rep = Report::new("classical bridge");
    let h = canonical::free_hamiltonian(p);
    let d = canonical::dilatation(p).scale_gq(Gq::i());
    let k = canonical::special_conformal(p);
    let jm = cat.j_minus.at_time_zero().scale_q(-p.omega);
    let jp = cat.j_plus.at_time_zero().scale_q(Q::from_integer(1) / p.omega);
    let j0 = cat.j0.clone();
    for (name, src, want) in [("T(H)=-omega J-", &h, &jm), ("T(iD0)=J0", &d, &j0), ("T(K0)=J+/omega", &k, &jp)] {
        let img = classical_cbt(src);
        rep.push(compare(name, &img, &want.to_basis(Basis::Canonical)).with_anchor("classical-bridge"));
        let alt = classical_cbt_alt(src);
        rep.push(compare(&format!("{} (alternative ordering)", name), &alt, &want.to_basis(Basis::Canonical)).with_anchor("classical-bridge"));
    }
    // omega (2iD0 + g p_phi) is carried to H_g
    let g = Coupling::new(Q::new(1, 3));
    let src = &d.scale_q(Q::from_integer(2) * p.omega) + &canonical::angular_momentum(p).scale_q(g.g() * p.omega);
    let img = classical_cbt(&src);
    rep.push(compare("T(omega(2iD0+g p_phi))=H_g", &img, &canonical::h_g(&g, p)).with_anchor("classical-bridge"));
    rep
}
