//! Classical orbits of `H_g`: closed form, fixed-step integration, closure and geometry.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::coupling::{Coupling, Strength};
use crate::error::{invalid, Result};
use crate::report::{Check, Report};
use crate::scalar::{q_to_f64, qi, Q};

/// Relative tolerance of the geometric predicates on float radii.
pub const GEOMETRY_RTOL: f64 = 1e-9;
/// Default integrator resolution.
pub const STEPS_PER_PERIOD: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryParams {
    pub r1: f64,
    pub r2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub omega: f64,
    pub m: f64,
    pub strength: Strength,
}

impl TrajectoryParams {
    pub fn new(r1: f64, r2: f64, gamma1: f64, gamma2: f64, omega: f64, strength: Strength) -> Result<Self> {
        let p = TrajectoryParams { r1, r2, gamma1, gamma2, omega, m: 1.0, strength };
        p.validate()?;
        Ok(p)
    }
    pub fn validate(&self) -> Result<()> {
        let all = [self.r1, self.r2, self.gamma1, self.gamma2, self.omega, self.m];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(invalid("trajectory parameters must be finite"));
        }
        if self.r1 < 0.0 || self.r2 < 0.0 {
            return Err(invalid("radii must be non-negative"));
        }
        if self.omega <= 0.0 || self.m <= 0.0 {
            return Err(invalid("omega and m must be positive"));
        }
        if let Strength::Irrational(g) = self.strength {
            if !g.is_finite() {
                return Err(invalid("coupling must be finite"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct PhaseState {
    pub x1: f64,
    pub x2: f64,
    pub p1: f64,
    pub p2: f64,
}

impl PhaseState {
    fn axpy(&self, h: f64, d: &PhaseState) -> PhaseState {
        PhaseState { x1: self.x1 + h * d.x1, x2: self.x2 + h * d.x2, p1: self.p1 + h * d.p1, p2: self.p2 + h * d.p2 }
    }
    pub fn max_diff(&self, o: &PhaseState) -> f64 {
        [self.x1 - o.x1, self.x2 - o.x2, self.p1 - o.p1, self.p2 - o.p2].iter().fold(0.0, |a, v| a.max(libm::fabs(*v)))
    }
    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.p1.is_finite() && self.p2.is_finite()
    }
}

fn cis(a: f64) -> Complex64 {
    Complex64::new(libm::cos(a), libm::sin(a))
}

/// `(b1+, b1-, b2+, b2-)` at time `t`.
pub fn circular_values(p: &TrajectoryParams, t: f64) -> [Complex64; 4] {
    let (l1, l2) = p.strength.ells_f64();
    let b1p = cis(p.gamma1 + p.omega * l1 * t) * p.r1;
    let b2m = cis(-(p.gamma2 + p.omega * l2 * t)) * p.r2;
    [b1p, b1p.conj(), b2m.conj(), b2m]
}

/// Canonical coordinates from circular values.
pub fn state_from_circular(b: [Complex64; 4], m: f64, omega: f64) -> PhaseState {
    let s = libm::sqrt(m * omega);
    let i = Complex64::new(0.0, 1.0);
    let [b1p, b1m, b2p, b2m] = b;
    let x1 = (b1p + b2p + b1m + b2m) / (2.0 * s);
    let x2 = (-i * b1p + i * b2p + i * b1m - i * b2m) / (2.0 * s);
    let p1 = i * s / 2.0 * (b1p + b2p - b1m - b2m);
    let p2 = (b1p - b2p + b1m - b2m) * (s / 2.0);
    PhaseState { x1: x1.re, x2: x2.re, p1: p1.re, p2: p2.re }
}

/// Circular values from canonical coordinates.
pub fn circular_from_state(st: &PhaseState, m: f64, omega: f64) -> [Complex64; 4] {
    let s = libm::sqrt(m * omega);
    let x = Complex64::new(st.x1, -st.x2);
    let xc = x.conj();
    let b1m = x * (s / 2.0) + Complex64::new(st.p2, st.p1) / (2.0 * s);
    let b2m = xc * (s / 2.0) + Complex64::new(-st.p2, st.p1) / (2.0 * s);
    [b1m.conj(), b1m, b2m.conj(), b2m]
}

/// `z(t) = x1 + i x2`.
pub fn position(p: &TrajectoryParams, t: f64) -> (f64, f64) {
    let b = circular_values(p, t);
    let z = (b[0] + b[3]) / libm::sqrt(p.m * p.omega);
    (z.re, z.im)
}

pub fn phase_state(p: &TrajectoryParams, t: f64) -> PhaseState {
    state_from_circular(circular_values(p, t), p.m, p.omega)
}

/// Hamilton's equations for `H = a H_osc + b omega p_phi` with `a = (ell1+ell2)/2`, `b = (ell1-ell2)/2`.
pub fn hamiltonian_flow_rhs(s: &PhaseState, strength: &Strength, omega: f64, m: f64) -> PhaseState {
    let (l1, l2) = strength.ells_f64();
    let a = 0.5 * (l1 + l2);
    let b = 0.5 * (l1 - l2);
    PhaseState {
        x1: a * s.p1 / m - b * omega * s.x2,
        x2: a * s.p2 / m + b * omega * s.x1,
        p1: -a * m * omega * omega * s.x1 - b * omega * s.p2,
        p2: -a * m * omega * omega * s.x2 + b * omega * s.p1,
    }
}

/// Energy `a H_osc + b omega p_phi` of a canonical state.
pub fn energy(s: &PhaseState, strength: &Strength, omega: f64, m: f64) -> f64 {
    let (l1, l2) = strength.ells_f64();
    let a = 0.5 * (l1 + l2);
    let b = 0.5 * (l1 - l2);
    let hosc = (s.p1 * s.p1 + s.p2 * s.p2) / (2.0 * m) + 0.5 * m * omega * omega * (s.x1 * s.x1 + s.x2 * s.x2);
    a * hosc + b * omega * (s.x1 * s.p2 - s.x2 * s.p1)
}

/// Classical RK4 from the closed-form state at `t = 0`; returns `steps + 1` samples.
pub fn integrate(p: &TrajectoryParams, t_end: f64, steps: usize) -> Result<Vec<(f64, PhaseState)>> {
    if steps == 0 {
        return Err(invalid("step count must be at least 1"));
    }
    if !t_end.is_finite() {
        return Err(invalid("integration window must be finite"));
    }
    let h = t_end / steps as f64;
    let f = |s: &PhaseState| hamiltonian_flow_rhs(s, &p.strength, p.omega, p.m);
    let mut s = phase_state(p, 0.0);
    let mut out = Vec::with_capacity(steps + 1);
    out.push((0.0, s));
    for k in 0..steps {
        let k1 = f(&s);
        let k2 = f(&s.axpy(h / 2.0, &k1));
        let k3 = f(&s.axpy(h / 2.0, &k2));
        let k4 = f(&s.axpy(h, &k3));
        s = PhaseState {
            x1: s.x1 + h / 6.0 * (k1.x1 + 2.0 * k2.x1 + 2.0 * k3.x1 + k4.x1),
            x2: s.x2 + h / 6.0 * (k1.x2 + 2.0 * k2.x2 + 2.0 * k3.x2 + k4.x2),
            p1: s.p1 + h / 6.0 * (k1.p1 + 2.0 * k2.p1 + 2.0 * k3.p1 + k4.p1),
            p2: s.p2 + h / 6.0 * (k1.p2 + 2.0 * k2.p2 + 2.0 * k3.p2 + k4.p2),
        };
        out.push(((k + 1) as f64 * h, s));
    }
    Ok(out)
}

/// Closed-form samples on `[0, t_end]`, `samples >= 2` points including both ends.
pub fn sample(p: &TrajectoryParams, t_end: f64, samples: usize) -> Vec<(f64, PhaseState)> {
    let n = samples.max(2);
    (0..n)
        .map(|k| {
            let t = t_end * k as f64 / (n - 1) as f64;
            (t, phase_state(p, t))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Closure {
    /// Period in time units.
    Period(f64),
    Open,
}

/// Smallest `T > 0` (in units of `2 pi / omega`) with every nonzero `ell_i T` an integer.
pub fn closure_period_units(ells: (Q, Q)) -> Q {
    let mut den_lcm: i128 = 1;
    let mut num_gcd: i128 = 0;
    for l in [ells.0, ells.1] {
        if l.is_zero() {
            continue;
        }
        den_lcm = den_lcm.lcm(l.denom());
        num_gcd = num_gcd.gcd(&l.numer().abs());
    }
    Q::new(den_lcm, num_gcd)
}

pub fn closure_period(strength: &Strength, omega: f64) -> Closure {
    match strength.ells_exact() {
        Some(e) => Closure::Period(q_to_f64(&closure_period_units(e)) * 2.0 * core::f64::consts::PI / omega),
        None => Closure::Open,
    }
}

fn rel_eq(a: f64, b: f64) -> bool {
    let s = libm::fabs(a).max(libm::fabs(b));
    s == 0.0 || libm::fabs(a - b) <= GEOMETRY_RTOL * s
}

/// The velocity vanishes somewhere on the orbit: `R1 |ell1| = R2 |ell2|` with a moving orbit.
pub fn is_cusped(p: &TrajectoryParams) -> bool {
    let (l1, l2) = p.strength.ells_f64();
    let a = p.r1 * libm::fabs(l1);
    let b = p.r2 * libm::fabs(l2);
    a > 0.0 && rel_eq(a, b)
}

/// Exact cusp predicate for rational radii.
pub fn is_cusped_exact(r1: Q, r2: Q, c: &Coupling) -> bool {
    let a = r1 * c.ell1().abs();
    a > Q::zero() && a == r2 * c.ell2().abs()
}

/// Squared radius of the isotropic Minkowskian circular orbit.
pub fn minkowski_radius_sq(r1: f64, r2: f64, gamma1: f64, gamma2: f64) -> f64 {
    r1 * r1 + r2 * r2 + 2.0 * r1 * r2 * libm::cos(gamma1 + gamma2)
}

/// Whether the orbit reaches `z = 0`.
pub fn pass_through_origin(p: &TrajectoryParams) -> bool {
    match p.strength {
        Strength::IsotropicMink { .. } => {
            let r = minkowski_radius_sq(p.r1, p.r2, p.gamma1, p.gamma2);
            rel_eq(p.r1, p.r2) && libm::fabs(r) <= GEOMETRY_RTOL * ((p.r1 + p.r2) * (p.r1 + p.r2)).max(f64::MIN_POSITIVE)
        }
        _ => rel_eq(p.r1, p.r2),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RotationSense {
    Same,
    Opposite,
    /// One mode does not rotate.
    Frozen,
}

/// Relative sense of the two rotating terms of `z(t)`.
pub fn rotation_senses(strength: &Strength) -> RotationSense {
    let (l1, l2) = strength.ells_f64();
    let s = l1.signum() * (-l2).signum();
    if l1 == 0.0 || l2 == 0.0 {
        RotationSense::Frozen
    } else if s > 0.0 {
        RotationSense::Same
    } else {
        RotationSense::Opposite
    }
}

/// Values of the catalog integrals on the orbit, time factors included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConservedValues {
    pub j0: f64,
    pub l2: f64,
    pub j_plus: Complex64,
    pub j_minus: Complex64,
    pub l_plus: Complex64,
    pub l_minus: Complex64,
    pub b1_plus: Complex64,
    pub b1_minus: Complex64,
    pub b2_plus: Complex64,
    pub b2_minus: Complex64,
    pub beta1_plus: Complex64,
    pub beta2_plus: Complex64,
    pub energy: f64,
    pub p_phi: f64,
}

impl ConservedValues {
    pub fn complex_entries(&self) -> [(&'static str, Complex64); 10] {
        [
            ("J+", self.j_plus),
            ("J-", self.j_minus),
            ("L+", self.l_plus),
            ("L-", self.l_minus),
            ("B1+", self.b1_plus),
            ("B1-", self.b1_minus),
            ("B2+", self.b2_plus),
            ("B2-", self.b2_minus),
            ("beta1+", self.beta1_plus),
            ("beta2+", self.beta2_plus),
        ]
    }
    /// Largest difference against another evaluation.
    pub fn max_diff(&self, o: &ConservedValues) -> f64 {
        let mut d = libm::fabs(self.j0 - o.j0).max(libm::fabs(self.l2 - o.l2)).max(libm::fabs(self.energy - o.energy));
        for ((_, a), (_, b)) in self.complex_entries().iter().zip(o.complex_entries().iter()) {
            d = d.max((a - b).norm());
        }
        d
    }
}

/// Evaluate the catalog on a canonical state at time `t`.
pub fn conserved_from_state(st: &PhaseState, t: f64, strength: &Strength, omega: f64, m: f64) -> ConservedValues {
    let (l1, l2) = strength.ells_f64();
    let [b1p, b1m, b2p, b2m] = circular_from_state(st, m, omega);
    let w = omega * t;
    let f = |mu: f64| cis(mu * w);
    let n1 = (b1p * b1m).re;
    let n2 = (b2p * b2m).re;
    ConservedValues {
        j0: 0.5 * (n1 + n2),
        l2: 0.5 * (n1 - n2),
        j_plus: f(-2.0) * b1p * b2p,
        j_minus: f(2.0) * b1m * b2m,
        l_plus: f(-(l1 - l2)) * b1p * b2m,
        l_minus: f(l1 - l2) * b1m * b2p,
        b1_plus: f(-2.0 * l1) * b1p * b1p,
        b1_minus: f(2.0 * l1) * b1m * b1m,
        b2_plus: f(-2.0 * l2) * b2p * b2p,
        b2_minus: f(2.0 * l2) * b2m * b2m,
        beta1_plus: f(-l1) * b1p,
        beta2_plus: f(-l2) * b2p,
        energy: energy(st, strength, omega, m),
        p_phi: st.x1 * st.p2 - st.x2 * st.p1,
    }
}

pub fn conserved_values(p: &TrajectoryParams, t: f64) -> ConservedValues {
    conserved_from_state(&phase_state(p, t), t, &p.strength, p.omega, p.m)
}

/// Period used for sampling: the closure period, or `window` for open orbits.
pub fn sampling_window(p: &TrajectoryParams, window: f64) -> f64 {
    match closure_period(&p.strength, p.omega) {
        Closure::Period(t) => t,
        Closure::Open => window,
    }
}

/// Orbit gallery: `(label, g, R1, R2)` with zero phases.
pub fn orbit_gallery() -> Vec<(&'static str, Q, f64, f64)> {
    let q = Q::new;
    alloc::vec![
        ("g=2/3 R=1:2", q(2, 3), 1.0, 2.0),
        ("g=1/3 R=1:1", q(1, 3), 1.0, 1.0),
        ("g=4/5 R=2:1", q(4, 5), 2.0, 1.0),
        ("g=1 R=1:2", qi(1), 1.0, 2.0),
        ("g=1 R=1:1", qi(1), 1.0, 1.0),
        ("g=1 R=2:1", qi(1), 2.0, 1.0),
        ("g=3/2 R=1:2", q(3, 2), 1.0, 2.0),
        ("g=3 R=1:1", qi(3), 1.0, 1.0),
        ("g=5/4 R=2:1", q(5, 4), 2.0, 1.0),
        ("g=1/3 R=1:2", q(1, 3), 1.0, 2.0),
        ("g=1/2 R=1:6", q(1, 2), 1.0, 6.0),
        ("g=3/5 R=1:20", q(3, 5), 1.0, 20.0),
        ("g=3 R=1:2", qi(3), 1.0, 2.0),
        ("g=2 R=1:6", qi(2), 1.0, 6.0),
        ("g=5/3 R=1:20", q(5, 3), 1.0, 20.0),
    ]
}

/// Fixtures whose orbit has a cusp, and those through the origin.
pub const CUSPED_FIXTURES: [&str; 2] = ["g=1/3 R=1:2", "g=3 R=1:2"];
pub const ORIGIN_FIXTURES: [&str; 3] = ["g=1/3 R=1:1", "g=1 R=1:1", "g=3 R=1:1"];

/// Closure at the period, RK4 against the closed form over one period, and the geometric flags.
pub fn verify_trajectory(label: &str, p: &TrajectoryParams, closure_tol: f64, traj_tol: f64) -> Result<Report> {
    let mut rep = Report::new(format!("trajectory {}", label));
    let t = match closure_period(&p.strength, p.omega) {
        Closure::Period(t) => t,
        Closure::Open => return Err(invalid("orbit does not close")),
    };
    let scale = (p.r1 + p.r2).max(1.0);
    let (a, b) = (phase_state(p, 0.0), phase_state(p, t));
    let gap = libm::hypot(a.x1 - b.x1, a.x2 - b.x2) / scale;
    rep.push(Check::tol(format!("{}: z(T) = z(0), T = {:.6}", label, t), format!("{:.3e}", gap), "0", gap, closure_tol).with_anchor("closure"));
    let turns = libm::ceil(t * p.omega / (2.0 * core::f64::consts::PI)).max(1.0) as usize;
    let worst = integrate(p, t, turns * STEPS_PER_PERIOD)?
        .iter()
        .map(|(s, st)| {
            let (x1, x2) = position(p, *s);
            libm::hypot(st.x1 - x1, st.x2 - x2) / scale
        })
        .fold(0.0, f64::max);
    rep.push(Check::tol(format!("{}: RK4 = closed form over one period", label), format!("{:.3e}", worst), "0", worst, traj_tol).with_anchor("trajectory"));
    Ok(rep)
}

/// Every gallery fixture: closure, integration and the expected cusp and origin flags.
pub fn verify_orbit_gallery(closure_tol: f64, traj_tol: f64) -> Result<Report> {
    let mut rep = Report::new("trajectory galleries");
    for (label, g, r1, r2) in orbit_gallery() {
        let p = TrajectoryParams::new(r1, r2, 0.0, 0.0, 1.0, Strength::Rational(Coupling::new(g)))?;
        rep.extend(verify_trajectory(label, &p, closure_tol, traj_tol)?);
        let flags = [("cusp", is_cusped(&p), CUSPED_FIXTURES.contains(&label)), ("through origin", pass_through_origin(&p), ORIGIN_FIXTURES.contains(&label))];
        for (what, got, want) in flags {
            rep.push(Check::exact(format!("{}: {} flag", label, what), format!("{}", got), format!("{}", want), if got == want { 0.0 } else { 1.0 }).with_anchor("geometry"));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn params(g: Q, r1: f64, r2: f64) -> TrajectoryParams {
        TrajectoryParams::new(r1, r2, 0.3, -0.7, 1.0, Strength::Rational(Coupling::new(g))).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure_period_units(Coupling::new(q(2, 3)).ells()), qi(3));
        assert_eq!(closure_period_units(Coupling::zero().ells()), qi(1));
        assert_eq!(closure_period_units(Coupling::new(qi(1)).ells()), q(1, 2));
        assert_eq!(closure_period(&Strength::Irrational(0.5f64.sqrt()), 1.0), Closure::Open);
        assert_eq!(closure_period(&Strength::IsotropicMink { sign: 1 }, 2.0), Closure::Period(core::f64::consts::PI));
    }

    #[test]
    fn state_round_trip() {
        let p = params(q(1, 2), 1.3, 0.4);
        let s = phase_state(&p, 0.77);
        let b = circular_from_state(&s, 1.0, 1.0);
        let c = circular_values(&p, 0.77);
        for k in 0..4 {
            assert!((b[k] - c[k]).norm() < 1e-14);
        }
    }

    #[test]
    fn landau_circle() {
        let p = TrajectoryParams::new(1.5, 0.0, 0.0, 0.0, 1.0, Strength::Rational(Coupling::new(qi(1)))).unwrap();
        let (x, y) = position(&p, 0.25);
        assert!((x - 1.5 * libm::cos(0.5)).abs() < 1e-15 && (y - 1.5 * libm::sin(0.5)).abs() < 1e-15);
    }

    #[test]
    fn cusp_and_origin_predicates() {
        assert!(is_cusped(&params(q(1, 3), 1.0, 2.0)));
        assert!(is_cusped(&params(qi(3), 1.0, 2.0)));
        assert!(!is_cusped(&params(qi(0), 1.0, 0.0)));
        assert!(is_cusped_exact(qi(1), qi(2), &Coupling::new(q(1, 3))));
        assert!(pass_through_origin(&params(q(1, 3), 1.0, 1.0)));
        assert!(!pass_through_origin(&params(q(1, 3), 1.0, 1.1)));
    }

    #[test]
    fn senses() {
        assert_eq!(rotation_senses(&Strength::Rational(Coupling::new(q(1, 2)))), RotationSense::Opposite);
        assert_eq!(rotation_senses(&Strength::Rational(Coupling::new(qi(2)))), RotationSense::Same);
        assert_eq!(rotation_senses(&Strength::Rational(Coupling::new(qi(1)))), RotationSense::Frozen);
    }

    #[test]
    fn single_mode_values() {
        let p = TrajectoryParams::new(1.2, 0.0, 0.4, 0.0, 1.0, Strength::Rational(Coupling::new(q(1, 3)))).unwrap();
        let c = conserved_values(&p, 2.0);
        assert!((c.j0 - 0.72).abs() < 1e-14);
        assert!((c.l2 - 0.72).abs() < 1e-14);
        assert!((c.l2 - c.p_phi / 2.0).abs() < 1e-14);
    }

    #[test]
    fn integrate_rejects_zero_steps() {
        assert!(integrate(&params(qi(0), 1.0, 0.0), 1.0, 0).is_err());
    }

    #[test]
    fn gallery() {
        let r = verify_orbit_gallery(1e-9, 1e-6).unwrap();
        assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.checks.len(), 15 * 4);
    }

    #[test]
    fn open_orbit_rejected() {
        let p = TrajectoryParams::new(1.0, 1.0, 0.0, 0.0, 1.0, Strength::Irrational(0.5f64.sqrt())).unwrap();
        assert!(verify_trajectory("open", &p, 1e-9, 1e-6).is_err());
    }
}
