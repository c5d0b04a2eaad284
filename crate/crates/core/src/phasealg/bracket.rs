use num_traits::Zero;

use super::poly::{Basis, PhasePoly};
use crate::error::{Error, Result};
use crate::scalar::{Gq, Surd};

/// Conjugate pairs `(q, P)` and the structure constant `{q, P} = c`.
fn pairs(b: Basis) -> ([(usize, usize); 2], Surd) {
    match b {
        Basis::Canonical => ([(0, 2), (1, 3)], Surd::one()),
        // {b_j-, b_j+} = -i
        Basis::Circular => ([(1, 0), (3, 2)], Surd::from_gq(-Gq::i())),
    }
}

/// Poisson bracket `{a, b}`; `b` is converted into the basis of `a` when they differ.
pub fn poisson_bracket(a: &PhasePoly, b: &PhasePoly) -> PhasePoly {
    let b = a.aligned(b);
    let (prs, c) = pairs(a.basis());
    let mut out = PhasePoly::zero(a.basis(), a.params());
    for (qi, pi) in prs {
        let t = &(&a.derivative(qi) * &b.derivative(pi)) - &(&a.derivative(pi) * &b.derivative(qi));
        out = &out + &t;
    }
    out.scale(&c)
}

/// `{a, h} + da/dt`, the explicit part contributing `i mu omega` per term.
pub fn total_time_derivative(a: &PhasePoly, h: &PhasePoly) -> Result<PhasePoly> {
    if !h.is_time_independent() {
        return Err(Error::NonAutonomous);
    }
    let mut out = poisson_bracket(a, h);
    let w = a.params().omega;
    for (e, mu, c) in a.terms() {
        if mu.is_zero() {
            continue;
        }
        out.add_term(*e, *mu, &c.scale_gq(Gq::new(Zero::zero(), *mu * w)));
    }
    Ok(out)
}

/// Conserved with no explicit time dependence.
pub fn is_true_integral(a: &PhasePoly, h: &PhasePoly) -> Result<bool> {
    Ok(a.is_time_independent() && total_time_derivative(a, h)?.is_zero())
}

/// Conserved, possibly with explicit time dependence.
pub fn is_dynamical_integral(a: &PhasePoly, h: &PhasePoly) -> Result<bool> {
    Ok(total_time_derivative(a, h)?.is_zero())
}
