//! One pass/fail line per acceptance criterion. Run with `--nocapture` to see the table.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riaho_core::aniso::{
    lissajous_fixtures, so11_invariant_check, verify_aniso_hidden, verify_aniso_spectrum, verify_lissajous, FrequencyPair, ModeSign, SignedModeHamiltonian,
};
use riaho_core::bridge::{coherent_checks, inverse_weierstrass, verify_bridge_proportionality, verify_overlap_matrix, Units, QUAD_ORDER};
use riaho_core::classdyn::verify_orbit_gallery;
use riaho_core::fockeng::{
    hamiltonian, hidden_operator, verify_commutes, verify_degeneracy_orbits, verify_quantum_cbt, verify_spectrum_exact, verify_unitary_equivalence, FockBasis,
    HiddenDirection, InteriorMask,
};
use riaho_core::landau::verify_landau;
use riaho_core::phasealg::{condition_sweep, verify_casimirs_with, verify_classical_cbt, verify_integral_conditions, verify_sp4_table_with, Params};
use riaho_core::scalar::Q;
use riaho_core::{Coupling, Report, Result};

// Tolerances pinned by the acceptance table.
const CBT_TOL: f64 = 1e-10;
const CLOSURE_TOL: f64 = 1e-9;
const TRAJ_TOL: f64 = 1e-6;
const HIDDEN_TOL: f64 = 1e-12;
const UNITARY_TOL: f64 = 1e-10;
const GRID_SPREAD_TOL: f64 = 1e-9;
const OVERLAP_TOL: f64 = 1e-8;
const COHERENT_TOL: f64 = 1e-10;
const ANISO_TOL: f64 = 1e-12;
const LANDAU_TOL: f64 = 1e-12;

fn g(a: i128, b: i128) -> Coupling {
    Coupling::new(Q::new(a, b))
}

fn c1() -> Result<Report> {
    let mut rep = Report::new("sp(4,R) table and Casimirs");
    for p in [Params::default(), Params { m: Q::new(3, 2), omega: Q::new(2, 5) }] {
        for c in [Coupling::zero(), g(1, 3), g(1, 2), g(3, 1), g(-5, 2), g(1, 1)] {
            rep.extend(verify_sp4_table_with(&c, p));
            rep.extend(verify_casimirs_with(&c, p));
        }
    }
    Ok(rep)
}

fn c2() -> Result<Report> {
    Ok(verify_integral_conditions(&condition_sweep(), Params::default(), 8))
}

fn c3() -> Result<Report> {
    let mut rep = Report::new("classical and quantum bridge");
    rep.extend(verify_classical_cbt(Params::default()));
    rep.extend(verify_quantum_cbt(Params::default(), 1.0, FockBasis::new(10)?, CBT_TOL)?);
    Ok(rep)
}

fn c4() -> Result<Report> {
    verify_orbit_gallery(CLOSURE_TOL, TRAJ_TOL)
}

fn c5() -> Result<Report> {
    let mut rep = Report::new("spectrum and degeneracy");
    let big = FockBasis::new(24)?;
    for c in [Coupling::zero(), g(1, 3), g(3, 1), g(2, 3), g(-1, 2), g(5, 2), g(1, 1)] {
        rep.extend(verify_spectrum_exact(big, &c));
    }
    let basis = FockBasis::new(12)?;
    for c in [g(1, 3), g(3, 1)] {
        let h = c.hidden();
        let mask = InteriorMask::margin(h.s1.max(h.s2) as usize);
        rep.extend(verify_degeneracy_orbits(basis, &c, &mask)?);
        let hg = hamiltonian(basis, &c, 1.0);
        for dir in [HiddenDirection::Plus, HiddenDirection::Minus] {
            rep.extend(verify_commutes(&hg, &hidden_operator(basis, &c, h.kind, h.s1, h.s2, dir)?, &mask, HIDDEN_TOL)?);
        }
    }
    Ok(rep)
}

fn c6() -> Result<Report> {
    verify_unitary_equivalence(FockBasis::new(12)?, &[Coupling::zero(), g(1, 3), g(1, 2), g(3, 1)], UNITARY_TOL)
}

fn c7() -> Result<Report> {
    let mut rep = Report::new("bridge eigenfunctions");
    let u = Units::default();
    rep.extend(verify_bridge_proportionality(&u, 5, GRID_SPREAD_TOL)?);
    rep.extend(verify_overlap_matrix(&u, 5, QUAD_ORDER, OVERLAP_TOL)?);
    for n in 0..=10 {
        rep.extend(inverse_weierstrass(n));
    }
    Ok(rep)
}

fn c8() -> Result<Report> {
    let mut rep = Report::new("coherent states");
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let u = Units::default();
    for k in 0..10 {
        let mut z = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (a, b) = (z(), z());
        let t = rng.gen_range(0.0..6.0);
        let gamma = rng.gen_range(-3.2..3.2);
        let c = if k % 2 == 0 { g(1, 3) } else { g(-5, 2) };
        rep.extend(coherent_checks(a, b, t, gamma, &c, &u, COHERENT_TOL)?);
    }
    Ok(rep)
}

fn c9() -> Result<Report> {
    let mut rep = Report::new("anisotropic oscillator");
    let basis = FockBasis::new(12)?;
    let pairs = [
        FrequencyPair::exact(Q::from_integer(1), Q::from_integer(3))?,
        FrequencyPair::exact(Q::from_integer(3), Q::from_integer(5))?,
        FrequencyPair::exact(Q::from_integer(1), Q::from_integer(1))?,
        FrequencyPair::exact(Q::new(1, 4), Q::from_integer(1))?,
    ];
    for f in pairs {
        for s in [ModeSign::Plus, ModeSign::Minus] {
            rep.extend(verify_aniso_spectrum(&SignedModeHamiltonian::new(f, s, 1.0), basis, &InteriorMask::margin(0), ANISO_TOL)?);
        }
        rep.extend(verify_aniso_hidden(basis, &f, 1.0, ANISO_TOL)?);
    }
    rep.extend(so11_invariant_check(&pairs[2], 1.0, 1.0, basis, ANISO_TOL)?);
    for (_, f, p) in lissajous_fixtures() {
        rep.extend(verify_lissajous(&p, &f, CLOSURE_TOL, TRAJ_TOL)?);
    }
    Ok(rep)
}

fn c10() -> Result<Report> {
    Ok(verify_landau(LANDAU_TOL))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Result<Report>); 10] = [
        ("1  sp(4,R) brackets and Casimirs exact", c1),
        ("2  true-integral conditions over 20 couplings", c2),
        ("3  classical bridge triple, quantum similarity N=10", c3),
        ("4  gallery orbits: closure, RK4, cusp and origin flags", c4),
        ("5  exact spectrum n<=24, degeneracy orbits, commutators", c5),
        ("6  unitary equivalence N=12", c6),
        ("7  bridge eigenfunctions, overlaps, inverse Weierstrass", c7),
        ("8  coherent states, 10 random probes", c8),
        ("9  anisotropic spectra, so(1,1), hidden elements, Lissajous", c9),
        ("10 Landau and rotating-frame maps", c10),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let start = std::time::Instant::now();
        let (ok, detail) = match f() {
            Ok(r) => {
                let bad = r.failures().count();
                (r.pass(), format!("{} checks, {} failed, max residual {:.2e}", r.checks.len(), bad, r.max_residual()))
            }
            Err(e) => (false, format!("error: {}", e)),
        };
        println!("criterion {:<58} {}  ({}, {:.2}s)", name, if ok { "PASS" } else { "FAIL" }, detail, start.elapsed().as_secs_f64());
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
