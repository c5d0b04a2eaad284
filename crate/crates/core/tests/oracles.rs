//! Frozen reference values, each computed independently of the code under test.

use nalgebra::{Complex, DMatrix};
use num_complex::Complex64;
use riaho_core::aniso::{lissajous_period, rationalize, FrequencyPair};
use riaho_core::bridge::{coherent_coefficient, gauss_hermite, hermite_coeffs, inverse_weierstrass, orthonormality, Units, QUAD_ORDER};
use riaho_core::classdyn::closure_period_units;
use riaho_core::fockeng::energy_exact;
use riaho_core::landau::{landau_to_g_exact, rotating_frame_to_g_exact, LandauPhase};
use riaho_core::scalar::{q, qi, Q};
use riaho_core::{Coupling, HiddenKind};

use std::f64::consts::PI;

fn c(a: i128, b: i128) -> Coupling {
    Coupling::new(q(a, b))
}

#[test]
fn energies_in_units_of_hbar_omega() {
    assert_eq!(energy_exact(&c(1, 3), 1, 0), q(7, 3));
    assert_eq!(energy_exact(&c(1, 3), 0, 1), q(5, 3));
    assert_eq!(energy_exact(&c(3, 1), 0, 2), qi(-3));
    assert_eq!(energy_exact(&Coupling::zero(), 2, 3), qi(6));
}

#[test]
fn closure_periods() {
    for (g, want) in [(c(2, 3), qi(3)), (c(1, 2), qi(2)), (c(3, 5), q(5, 2)), (Coupling::zero(), qi(1)), (c(1, 1), q(1, 2))] {
        assert_eq!(closure_period_units(g.ells()), want, "g = {}", g.g());
    }
}

#[test]
fn hidden_exponents() {
    let h = c(1, 3).hidden();
    assert_eq!((h.kind, h.s1, h.s2), (HiddenKind::L, 1, 2));
    let h = c(3, 1).hidden();
    assert_eq!((h.kind, h.s1, h.s2), (HiddenKind::J, 1, 2));
    let h = c(-3, 5).hidden();
    assert_eq!((h.kind, h.s1, h.s2), (HiddenKind::L, 4, 1));
    assert_eq!(Coupling::from_hidden(HiddenKind::J, 1, 3).unwrap().g(), qi(2));
}

#[test]
fn landau_maps() {
    let img = landau_to_g_exact(q(3, 4), q(7, 16));
    assert_eq!(img.g_rational(), Some(q(3, 4)));
    assert_eq!(img.phase(), LandauPhase::EuclidEquivalent);
    // omega_b^2 + lambda = 0 with omega_b != 0
    assert_eq!(landau_to_g_exact(qi(1), qi(-1)).phase(), LandauPhase::Critical);
    assert_eq!(landau_to_g_exact(qi(1), qi(-2)).phase(), LandauPhase::Supercritical);
    assert_eq!(landau_to_g_exact(qi(1), Q::from_integer(0)).g_rational(), Some(qi(1)));
    let rot = rotating_frame_to_g_exact(qi(4), qi(1), qi(1)).unwrap();
    assert_eq!(rot.g_rational(), Some(q(1, 2)));
}

#[test]
fn coherent_coefficient_values() {
    let u = Units::default();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    assert!((coherent_coefficient(one, zero, 1, 0, &u) - Complex64::new(0.606_530_659_712_633_4, 0.0)).norm() < 1e-15);
    // exp(-1) (1)^2 (i)^1 / sqrt(2)
    let v = coherent_coefficient(one, Complex64::new(0.0, 1.0), 2, 1, &u);
    assert!((v - Complex64::new(0.0, 0.260_130_047_511_444_5)).norm() < 1e-15);
}

#[test]
fn gauss_hermite_moments() {
    let (x, w) = gauss_hermite(QUAD_ORDER).unwrap();
    let moment = |k: i32| x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum::<f64>();
    assert!((moment(0) - PI.sqrt()).abs() < 1e-13);
    assert!((moment(2) - PI.sqrt() / 2.0).abs() < 1e-13);
    assert!((moment(4) - 3.0 * PI.sqrt() / 4.0).abs() < 1e-13);
    assert!(moment(3).abs() < 1e-13);
}

#[test]
fn eigenfunction_overlaps() {
    let u = Units::new(q(2, 1), q(3, 2), q(1, 2)).unwrap();
    assert!((orthonormality((1, 2), (1, 2), &u, QUAD_ORDER).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-10);
    assert!(orthonormality((1, 2), (2, 1), &u, QUAD_ORDER).unwrap().norm() < 1e-10);
}

#[test]
fn hermite_and_weierstrass() {
    assert_eq!(hermite_coeffs(2), vec![qi(-2), qi(0), qi(4)]);
    assert_eq!(hermite_coeffs(3), vec![qi(0), qi(-12), qi(0), qi(8)]);
    assert_eq!(hermite_coeffs(4), vec![qi(12), qi(0), qi(-48), qi(0), qi(16)]);
    for n in 0..=12 {
        assert!(inverse_weierstrass(n).pass(), "n = {}", n);
    }
}

#[test]
fn rational_frequency_ratios() {
    assert_eq!(rationalize(0.6, 100, 1e-12), Some((3, 5)));
    assert_eq!(rationalize(7.0 / 3.0, 100, 1e-12), Some((7, 3)));
    assert_eq!(rationalize(2f64.sqrt(), 100, 1e-12), None);
    let period = |a: Q, b: Q| lissajous_period(&FrequencyPair::exact(a, b).unwrap()).unwrap();
    assert!((period(qi(1), qi(3)) - 2.0 * PI).abs() < 1e-14);
    assert!((period(q(1, 4), qi(1)) - 8.0 * PI).abs() < 1e-14);
    assert!((period(qi(2), qi(3)) - 2.0 * PI).abs() < 1e-14);
}

/// Diagonalises `n1 + n2 + 1 + g L` in the Cartesian number basis, built from scratch.
fn cartesian_spectrum(g: f64, shells: usize) -> Vec<f64> {
    let states: Vec<(usize, usize)> = (0..=shells).flat_map(|n| (0..=n).map(move |k| (k, n - k))).collect();
    let idx = |a: usize, b: usize| states.iter().position(|s| *s == (a, b));
    let dim = states.len();
    let mut h = DMatrix::<Complex<f64>>::zeros(dim, dim);
    for (j, &(k1, k2)) in states.iter().enumerate() {
        h[(j, j)] = Complex::new((k1 + k2 + 1) as f64, 0.0);
        // L = -i (a1+ a2- - a2+ a1-)
        if k2 > 0 {
            if let Some(i) = idx(k1 + 1, k2 - 1) {
                h[(i, j)] += Complex::new(0.0, -g * ((k1 + 1) as f64 * k2 as f64).sqrt());
            }
        }
        if k1 > 0 {
            if let Some(i) = idx(k1 - 1, k2 + 1) {
                h[(i, j)] += Complex::new(0.0, g * (k1 as f64 * (k2 + 1) as f64).sqrt());
            }
        }
    }
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

#[test]
fn spectrum_matches_cartesian_diagonalisation() {
    let shells = 10;
    for g in [c(0, 1), c(1, 3), c(-2, 5), c(3, 1), c(-5, 2)] {
        let mut exact: Vec<f64> = (0..=shells)
            .flat_map(|n| (0..=n).map(move |n1| (n1, n - n1)))
            .map(|(a, b)| riaho_core::scalar::q_to_f64(&energy_exact(&g, a, b)))
            .collect();
        exact.sort_by(f64::total_cmp);
        let got = cartesian_spectrum(g.g_f64(), shells);
        let worst = exact.iter().zip(&got).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-10, "g = {}: {:e}", g.g(), worst);
    }
}
