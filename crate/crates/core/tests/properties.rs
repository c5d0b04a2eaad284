use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;
use riaho_core::aniso::rationalize;
use riaho_core::bridge::{coherent_state, Units};
use riaho_core::classdyn::{closure_period, conserved_values, position, Closure, TrajectoryParams};
use riaho_core::fockeng::{degeneracy_classes, energy_exact, Direction, FockBasis};
use riaho_core::landau::{g_to_landau_exact, landau_to_g_exact};
use riaho_core::phasealg::{poisson_bracket, verify_integral_conditions, Basis, Params, PhasePoly};
use riaho_core::scalar::{q, Q, Surd};
use riaho_core::{Coupling, HiddenKind, Strength};

fn coupling() -> impl Strategy<Value = Coupling> {
    (-12i128..=12, 1i128..=7).prop_map(|(a, b)| Coupling::new(q(a, b)))
}

fn poly(max_terms: usize) -> impl Strategy<Value = PhasePoly> {
    prop::collection::vec(([0u8..=2, 0u8..=2, 0u8..=2, 0u8..=2], -5i128..=5), 1..=max_terms).prop_map(|terms| {
        let p = Params::default();
        terms.into_iter().fold(PhasePoly::zero(Basis::Canonical, p), |acc, (e, c)| {
            &acc + &PhasePoly::monomial(Basis::Canonical, p, e, Surd::int(c), Q::zero())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_antisymmetric(a in poly(4), b in poly(4)) {
        prop_assert_eq!(poisson_bracket(&a, &b), -&poisson_bracket(&b, &a));
    }

    #[test]
    fn bracket_obeys_jacobi(a in poly(2), b in poly(2), c in poly(2)) {
        let s = &(&poisson_bracket(&a, &poisson_bracket(&b, &c)) + &poisson_bracket(&b, &poisson_bracket(&c, &a)))
            + &poisson_bracket(&c, &poisson_bracket(&a, &b));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn integral_condition_holds(c in coupling()) {
        let r = verify_integral_conditions(&[c], Params::default(), 4);
        prop_assert!(r.pass(), "{:?}", r.failures().map(|f| f.identity_name.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn hidden_shift_preserves_energy(c in coupling(), n1 in 0usize..20, n2 in 0usize..20) {
        let h = c.hidden();
        let (s1, s2) = (h.s1 as usize, h.s2 as usize);
        let e = energy_exact(&c, n1 + s1, n2 + s2);
        match h.kind {
            HiddenKind::L => prop_assert_eq!(e, energy_exact(&c, n1, n2 + 2 * s2)),
            HiddenKind::J => prop_assert_eq!(e, energy_exact(&c, n1, n2)),
        }
    }

    #[test]
    fn degeneracy_classes_partition_the_window(c in coupling(), n in 4usize..10) {
        let basis = FockBasis::new(n).unwrap();
        let classes = degeneracy_classes(&Strength::Rational(c), None, basis).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for cl in &classes {
            prop_assert!(!cl.members.is_empty());
            for &(a, b) in &cl.members {
                prop_assert_eq!(energy_exact(&c, a, b), cl.energy);
                prop_assert!(seen.insert((a, b)), "({}, {}) in two classes", a, b);
            }
        }
        prop_assert_eq!(seen.len(), basis.dim());
        let mut energies: Vec<Q> = classes.iter().map(|cl| cl.energy).collect();
        energies.dedup();
        prop_assert_eq!(energies.len(), classes.len());
    }

    #[test]
    fn landau_round_trip(g in (-20i128..=20, 1i128..=9), w in (1i128..=9, 1i128..=9)) {
        let (g, w) = (q(g.0, g.1), q(w.0, w.1));
        let (omega_b, lambda) = g_to_landau_exact(g, w).unwrap();
        prop_assert_eq!(landau_to_g_exact(omega_b, lambda).g_rational(), Some(g));
    }

    #[test]
    fn closed_orbits_close_and_conserve(c in coupling(), r1 in 0.0f64..2.0, r2 in 0.0f64..2.0, g1 in -3.0f64..3.0, g2 in -3.0f64..3.0, t in 0.0f64..5.0) {
        let p = TrajectoryParams::new(r1, r2, g1, g2, 1.0, Strength::Rational(c)).unwrap();
        let Closure::Period(period) = closure_period(&p.strength, p.omega) else { panic!("rational orbit reported open") };
        let scale = 1.0 + r1 + r2;
        let (a, b) = (position(&p, t), position(&p, t + period));
        prop_assert!((a.0 - b.0).abs().max((a.1 - b.1).abs()) < 1e-9 * scale * (1.0 + period));
        let d = conserved_values(&p, 0.0).max_diff(&conserved_values(&p, t));
        prop_assert!(d < 1e-10 * scale * scale * scale * scale, "{:e}", d);
    }

    #[test]
    fn coherent_states_are_lowering_eigenstates(ar in -1.5f64..1.5, ai in -1.5f64..1.5, br in -1.5f64..1.5, bi in -1.5f64..1.5, x1 in -2.0f64..2.0, x2 in -2.0f64..2.0) {
        let u = Units::new(q(2, 1), q(3, 2), q(1, 2)).unwrap();
        let (alpha, beta) = (Complex64::new(ar, ai), Complex64::new(br, bi));
        let phi = coherent_state(alpha, beta, &u);
        let k = u.kappa_f64();
        for (mode, ev) in [(1u8, alpha / k), (2, beta / k)] {
            let lowered = phi.ladder(mode, Direction::Lower).eval(x1, x2);
            let want = phi.eval(x1, x2) * ev;
            prop_assert!((lowered - want).norm() <= 1e-12 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn rationalize_recovers_fractions(p in 1u64..60, r in 1u64..60) {
        let g = num_integer::gcd(p, r);
        prop_assert_eq!(rationalize(p as f64 / r as f64, 100, 1e-12), Some((p / g, r / g)));
    }
}
