//! Exact polynomial phase-space algebra.
//!
//! Observables are [`PhasePoly`] values over the exact surd field. Brackets in the
//! circular basis follow `{b_j-, b_k+} = -i delta_jk`; in the canonical basis
//! `{x_j, p_k} = delta_jk`. Each term may carry an explicit factor `e^{i mu omega t}`.

mod bracket;
mod cartan;
mod catalog;
mod cbt;
mod poly;
mod verify;

pub use bracket::{is_dynamical_integral, is_true_integral, poisson_bracket, total_time_derivative};
pub use cartan::{reduce_to_cartan, CartanReduction};
pub use catalog::{canonical, hidden_integral, IntegralCatalog};
pub use cbt::{classical_cbt, classical_cbt_alt, dilatation_flow_ln2, lie_series, verify_classical_cbt};
pub use poly::{canonical_in_circular, circular_in_canonical, Basis, Exps, Params, PhasePoly};
pub use verify::{
    compare, condition_sweep, sp4_table, verify_casimirs, verify_casimirs_with, verify_catalog_conservation, verify_hidden_ladders, verify_integral_conditions, verify_sp4_table,
    verify_sp4_table_with,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::{Coupling, HiddenKind};
    use crate::scalar::{q, qi, Gq, Surd};

    fn p() -> Params {
        Params::default()
    }

    #[test]
    fn defining_bracket() {
        let b1m = PhasePoly::var(Basis::Circular, p(), 1);
        let b1p = PhasePoly::var(Basis::Circular, p(), 0);
        let br = poisson_bracket(&b1m, &b1p);
        assert_eq!(br, PhasePoly::constant(Basis::Circular, p(), Surd::from_gq(-Gq::i())));
    }

    #[test]
    fn canonical_bracket_of_converted_ladders() {
        let pm = Params { m: q(3, 2), omega: q(5, 7) };
        let b = circular_in_canonical(pm);
        let br = poisson_bracket(&b[1], &b[0]);
        assert_eq!(br, PhasePoly::constant(Basis::Canonical, pm, Surd::from_gq(-Gq::i())));
        let zero = poisson_bracket(&b[1], &b[2]);
        assert!(zero.is_zero());
    }

    #[test]
    fn conversions_round_trip() {
        let pm = Params { m: qi(2), omega: q(1, 3) };
        for i in 0..4 {
            let v = PhasePoly::var(Basis::Canonical, pm, i);
            assert_eq!(v.to_basis(Basis::Circular).to_basis(Basis::Canonical), v);
            let w = PhasePoly::var(Basis::Circular, pm, i);
            assert_eq!(w.to_basis(Basis::Canonical).to_basis(Basis::Circular), w);
        }
    }

    #[test]
    fn catalog_hamiltonian_matches_canonical() {
        let c = Coupling::new(q(2, 5));
        let cat = IntegralCatalog::new(&c, p());
        let hc = canonical::h_g(&c, p());
        assert_eq!(cat.hamiltonian(), hc.to_basis(Basis::Circular));
        let two_l2 = cat.l2.scale_q(qi(2));
        assert_eq!(two_l2.to_basis(Basis::Canonical), canonical::angular_momentum(p()));
    }

    #[test]
    fn table_holds() {
        let r = verify_sp4_table(&Coupling::new(q(1, 3)));
        for c in &r.checks {
            assert!(c.pass, "{} : {} vs {}", c.identity_name, c.lhs, c.rhs);
        }
        assert_eq!(r.checks.iter().filter(|c| c.identity_name.contains("=-") || c.identity_name.contains("=i") || c.identity_name.contains("=2") || c.identity_name.contains("=4")).count(), 28);
    }

    #[test]
    fn casimirs_hold() {
        assert!(verify_casimirs().pass());
    }

    #[test]
    fn hidden_true_integral_g_third() {
        let c = Coupling::new(q(1, 3));
        let cat = IntegralCatalog::new(&c, p());
        let l = hidden_integral(&c, p(), HiddenKind::L, 1, 2, false).unwrap();
        assert!(is_true_integral(&l, &cat.hamiltonian()).unwrap());
        let c3 = Coupling::new(qi(3));
        let j = hidden_integral(&c3, p(), HiddenKind::J, 1, 2, false).unwrap();
        assert!(is_true_integral(&j, &IntegralCatalog::new(&c3, p()).hamiltonian()).unwrap());
    }

    #[test]
    fn hidden_bracket_reduces() {
        let c = Coupling::new(q(1, 3));
        let lp = hidden_integral(&c, p(), HiddenKind::L, 1, 2, false).unwrap();
        let lm = hidden_integral(&c, p(), HiddenKind::L, 1, 2, true).unwrap();
        let red = reduce_to_cartan(&poisson_bracket(&lm, &lp));
        assert!(red.is_reduced());
        assert_eq!(red.degree(), 2);
        // i(4 N1 N2 - N2^2)
        assert_eq!(red.coeff(1, 1), Surd::from_gq(Gq::new(qi(0), qi(4))));
        assert_eq!(red.coeff(0, 2), Surd::from_gq(Gq::new(qi(0), qi(-1))));
    }

    #[test]
    fn classical_bridge_triple() {
        let r = verify_classical_cbt(p());
        for c in &r.checks {
            assert!(c.pass, "{}: {} vs {}", c.identity_name, c.lhs, c.rhs);
        }
        let r = verify_classical_cbt(Params { m: qi(2), omega: q(3, 2) });
        assert!(r.pass());
    }

    #[test]
    fn hidden_ladders() {
        for g in [q(1, 3), q(1, 2), qi(3), q(-5, 3), qi(0)] {
            let r = verify_hidden_ladders(&Coupling::new(g), p());
            for c in &r.checks {
                assert!(c.pass, "g={} {}: {} vs {}", g, c.identity_name, c.lhs, c.rhs);
            }
        }
    }

    #[test]
    fn integral_conditions_sweep() {
        let gs = condition_sweep();
        assert_eq!(gs.len(), 20);
        let r = verify_integral_conditions(&gs, p(), 6);
        assert!(r.pass(), "{:#?}", r.failures().collect::<alloc::vec::Vec<_>>());
        let r = verify_integral_conditions(&[Coupling::new(q(1, 3))], Params { m: q(3, 2), omega: q(2, 5) }, 4);
        assert!(r.pass());
        assert!(r.checks[0].identity_name.contains("(4 true)"), "{}", r.checks[0].identity_name);
    }
}
