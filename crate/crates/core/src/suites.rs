//! Named verification suites assembled from the module checks.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::One;

use crate::aniso::{
    lissajous_fixtures, so11_invariant_check, verify_aniso_bridge, verify_aniso_hidden, verify_aniso_spectrum, verify_lissajous, verify_rescale,
    FrequencyPair, ModeSign, SignedModeHamiltonian,
};
use crate::bridge::{coherent_checks, inverse_weierstrass, verify_bridge_proportionality, verify_intertwining, verify_overlap_matrix, Units, QUAD_ORDER};
use crate::classdyn::verify_orbit_gallery;
use crate::coupling::Coupling;
use crate::error::{invalid, Error, Result};
use crate::fockeng::{
    hamiltonian, hidden_operator, verify_commutes, verify_degeneracy_orbits, verify_hidden_coefficients, verify_hidden_termination, verify_ladder_algebra,
    verify_quantum_cbt, verify_spectrum_exact, verify_unitary_equivalence, FockBasis, HiddenDirection, InteriorMask,
};
use crate::landau::verify_landau;
use crate::phasealg::{
    condition_sweep, verify_casimirs_with, verify_catalog_conservation, verify_classical_cbt, verify_hidden_ladders, verify_integral_conditions,
    verify_sp4_table_with, Params,
};
use crate::report::Report;
use crate::scalar::{q_to_f64, qi, Q};

pub const SUITES: [&str; 6] = ["algebra", "classical", "fock", "bridge", "aniso", "landau"];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub m: Q,
    pub omega: Q,
    pub hbar: Q,
    /// Fock cutoff `N`.
    pub cutoff: usize,
    /// Elementwise operator checks.
    pub fock_tol: f64,
    /// Checks that go through a matrix exponential.
    pub operator_tol: f64,
    pub quad_tol: f64,
    pub traj_tol: f64,
    pub closure_tol: f64,
    pub map_tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            m: Q::one(),
            omega: Q::one(),
            hbar: Q::one(),
            cutoff: 12,
            fock_tol: 1e-12,
            operator_tol: 1e-10,
            quad_tol: 1e-8,
            traj_tol: 1e-6,
            closure_tol: 1e-9,
            map_tol: 1e-12,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        Units::new(self.m, self.omega, self.hbar)?;
        if self.cutoff < 4 {
            return Err(invalid("truncation N must be at least 4"));
        }
        let tols = [self.fock_tol, self.operator_tol, self.quad_tol, self.traj_tol, self.closure_tol, self.map_tol];
        if tols.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(invalid("tolerances must be positive and finite"));
        }
        Ok(())
    }
    pub fn params(&self) -> Params {
        Params { m: self.m, omega: self.omega }
    }
    pub fn units(&self) -> Units {
        Units { m: self.m, omega: self.omega, hbar: self.hbar }
    }
    pub fn basis(&self) -> Result<FockBasis> {
        FockBasis::new(self.cutoff)
    }
}

fn g(a: i128, b: i128) -> Coupling {
    Coupling::new(Q::new(a, b))
}

/// Couplings used by the algebraic suites.
pub fn algebra_couplings() -> Vec<Coupling> {
    alloc::vec![Coupling::zero(), g(1, 3), g(1, 2), g(3, 1), g(-5, 2), g(1, 1)]
}

/// Deterministic coherent-state probes `(alpha, beta, t, gamma)`.
pub fn coherent_probes() -> Vec<(Complex64, Complex64, f64, f64)> {
    let c = Complex64::new;
    alloc::vec![
        (c(0.0, 0.0), c(0.0, 0.0), 0.0, 0.0),
        (c(1.0, 0.0), c(0.0, 0.0), 0.0, core::f64::consts::PI),
        (c(0.6, -0.3), c(-0.2, 0.5), 0.7, 1.1),
        (c(-0.4, 0.9), c(0.3, 0.1), 2.3, -0.4),
    ]
}

pub fn algebra(cfg: &SuiteConfig) -> Result<Report> {
    let p = cfg.params();
    let mut rep = Report::new("algebra");
    for c in algebra_couplings() {
        rep.extend(verify_sp4_table_with(&c, p));
        rep.extend(verify_casimirs_with(&c, p));
        rep.extend(verify_catalog_conservation(&c, p));
        if c.g() != Q::one() {
            rep.extend(verify_hidden_ladders(&c, p));
        }
    }
    rep.extend(verify_classical_cbt(p));
    rep.extend(verify_integral_conditions(&condition_sweep(), p, 6));
    Ok(rep)
}

pub fn classical(cfg: &SuiteConfig) -> Result<Report> {
    let mut rep = Report::new("classical");
    rep.extend(verify_orbit_gallery(cfg.closure_tol, cfg.traj_tol)?);
    Ok(rep)
}

pub fn fock(cfg: &SuiteConfig) -> Result<Report> {
    let basis = cfg.basis()?;
    let hbar = q_to_f64(&cfg.hbar);
    let hw = hbar * q_to_f64(&cfg.omega);
    let mut rep = Report::new("fock");
    rep.extend(verify_ladder_algebra(basis, cfg.fock_tol)?);
    rep.extend(verify_quantum_cbt(cfg.params(), hbar, FockBasis::new(cfg.cutoff.min(10))?, cfg.operator_tol)?);
    for c in [Coupling::zero(), g(1, 3), g(3, 1), g(-1, 2), g(-2, 1)] {
        rep.extend(verify_spectrum_exact(basis, &c));
    }
    for c in [g(1, 3), g(3, 1), g(-1, 2), g(-2, 1)] {
        let h = c.hidden();
        rep.extend(verify_hidden_coefficients(basis, &c, h.kind, h.s1, h.s2, cfg.fock_tol)?);
        rep.extend(verify_hidden_termination(basis, &c)?);
        let mask = InteriorMask::margin(h.s1.max(h.s2) as usize);
        rep.extend(verify_degeneracy_orbits(basis, &c, &mask)?);
        let hg = hamiltonian(basis, &c, hw);
        for dir in [HiddenDirection::Plus, HiddenDirection::Minus] {
            let x = hidden_operator(basis, &c, h.kind, h.s1, h.s2, dir)?;
            rep.extend(verify_commutes(&hg, &x, &mask, cfg.fock_tol)?);
        }
    }
    rep.extend(verify_unitary_equivalence(basis, &[Coupling::zero(), g(1, 3), g(1, 2), g(3, 1)], cfg.operator_tol)?);
    Ok(rep)
}

pub fn bridge(cfg: &SuiteConfig) -> Result<Report> {
    let u = cfg.units();
    let mut rep = Report::new("bridge");
    rep.extend(verify_bridge_proportionality(&u, 5, cfg.operator_tol)?);
    rep.extend(verify_intertwining(&u, 4));
    rep.extend(verify_overlap_matrix(&u, 4, QUAD_ORDER, cfg.quad_tol)?);
    for n in 0..=10 {
        rep.extend(inverse_weierstrass(n));
    }
    for (a, b, t, gamma) in coherent_probes() {
        rep.extend(coherent_checks(a, b, t, gamma, &g(1, 3), &u, cfg.operator_tol)?);
    }
    Ok(rep)
}

pub fn aniso(cfg: &SuiteConfig) -> Result<Report> {
    let basis = cfg.basis()?;
    let hbar = q_to_f64(&cfg.hbar);
    let mut rep = Report::new("aniso");
    let w = cfg.omega;
    let pairs = [FrequencyPair::exact(w, qi(3) * w)?, FrequencyPair::exact(qi(3) * w, qi(5) * w)?, FrequencyPair::exact(w, w)?];
    for f in pairs {
        for s in [ModeSign::Plus, ModeSign::Minus] {
            rep.extend(verify_aniso_spectrum(&SignedModeHamiltonian::new(f, s, hbar), basis, &InteriorMask::margin(0), cfg.fock_tol)?);
        }
        rep.extend(verify_aniso_hidden(basis, &f, hbar, cfg.fock_tol)?);
        rep.extend(verify_aniso_bridge(&f, cfg.m, cfg.hbar, 4, cfg.fock_tol)?);
    }
    rep.extend(so11_invariant_check(&pairs[2], hbar, q_to_f64(&cfg.m), basis, cfg.fock_tol)?);
    for (_, f, p) in lissajous_fixtures() {
        rep.extend(verify_lissajous(&p, &f, cfg.closure_tol, cfg.traj_tol)?);
    }
    for c in [Coupling::zero(), g(1, 3), g(1, 2), g(3, 1), g(-5, 2)] {
        rep.extend(verify_rescale(&c, cfg.params(), 8)?);
    }
    Ok(rep)
}

pub fn landau(cfg: &SuiteConfig) -> Result<Report> {
    let mut rep = Report::new("landau");
    rep.extend(verify_landau(cfg.map_tol));
    Ok(rep)
}

/// Runs one named suite, or every suite in order for `"all"`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let one = |n: &str| -> Result<Report> {
        match n {
            "algebra" => algebra(cfg),
            "classical" => classical(cfg),
            "fock" => fock(cfg),
            "bridge" => bridge(cfg),
            "aniso" => aniso(cfg),
            "landau" => landau(cfg),
            other => Err(Error::InvalidParameter(format!("unknown suite '{}'", other))),
        }
    };
    if name != "all" {
        return one(name);
    }
    let mut rep = Report::new("all");
    for n in SUITES {
        rep.extend(one(n)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn config_validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        assert!(SuiteConfig { cutoff: 3, ..Default::default() }.validate().is_err());
        assert!(SuiteConfig { quad_tol: 0.0, ..Default::default() }.validate().is_err());
        assert!(SuiteConfig { hbar: Q::zero(), ..Default::default() }.validate().is_err());
        assert!(run_suite("nope", &SuiteConfig::default()).is_err());
    }

    #[test]
    fn light_suites_pass() {
        for s in ["classical", "landau"] {
            let r = run_suite(s, &SuiteConfig::default()).unwrap();
            assert!(r.pass(), "{}: {:#?}", s, r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn every_suite_passes() {
        let r = run_suite("all", &SuiteConfig::default()).unwrap();
        assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
    }
}
