//! Subcommand bodies.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use num_complex::Complex64;
use riaho_core::aniso::{lissajous as lissajous_point, lissajous_period, lissajous_samples, FrequencyPair, LissajousParams};
use riaho_core::bridge::{coherent_checks, coherent_state, eigenstate_c64, orthonormality, Units, QUAD_ORDER};
use riaho_core::classdyn::{
    closure_period, closure_period_units, conserved_values, is_cusped, pass_through_origin, position, rotation_senses, sample, Closure, TrajectoryParams,
};
use riaho_core::fockeng::{degeneracy_classes, energy_exact, ClassExtent, FockBasis};
use riaho_core::landau::{
    landau_to_g, landau_to_g_exact, rotating_frame_to_g, rotating_frame_to_g_exact, CouplingImage, ExactCouplingImage, LandauExtension, RotatingFrame,
};
use riaho_core::scalar::{q_to_f64, Q};
use riaho_core::{Coupling, Strength};
use serde_json::{json, Value};

use crate::cli::{CouplingArg, Outcome};
use crate::config::RunConfig;
use crate::fmt::g17;
use crate::output::{finite, write_dataset, write_json, Cell, Table, SCHEMA_VERSION};
use crate::parse::{parse_complex, parse_grid, parse_rational};

fn strength(c: &CouplingArg) -> Result<Strength> {
    match (&c.g, c.g_float) {
        (Some(s), None) => Ok(Strength::Rational(Coupling::new(parse_rational(s)?))),
        (None, Some(x)) if x.is_finite() => Ok(Strength::Irrational(x)),
        (None, Some(_)) => bail!("coupling must be finite"),
        _ => bail!("give the coupling with --g num/den or --g-float x"),
    }
}

fn q_text(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn strength_json(s: &Strength) -> Value {
    match s {
        Strength::Rational(c) => json!({ "g": q_text(&c.g()), "g_num": c.g().numer().to_string(), "g_den": c.g().denom().to_string() }),
        Strength::Irrational(x) => json!({ "g_float": x }),
        Strength::IsotropicMink { sign } => json!({ "isotropic_minkowski_sign": sign }),
    }
}

fn report_written(paths: &[PathBuf]) {
    for p in paths {
        println!("{}", p.display());
    }
}

#[allow(clippy::too_many_arguments)]
pub fn trajectory(cfg: &RunConfig, c: &CouplingArg, r1: f64, r2: f64, gamma1: f64, gamma2: f64, samples: usize, window: Option<f64>, name: &str) -> Result<Outcome> {
    let s = strength(c)?;
    let mut p = TrajectoryParams::new(r1, r2, gamma1, gamma2, q_to_f64(&cfg.suite.omega), s)?;
    p.m = q_to_f64(&cfg.suite.m);
    p.validate()?;
    if samples < 2 {
        bail!("need at least 2 samples");
    }
    let closure = closure_period(&p.strength, p.omega);
    let t_end = match (closure, window) {
        (_, Some(w)) if !(w.is_finite() && w > 0.0) => bail!("window must be positive"),
        (Closure::Period(t), _) => t,
        (Closure::Open, Some(w)) => w,
        (Closure::Open, None) => 20.0 * std::f64::consts::PI / p.omega,
    };
    let mut table = Table::new(&["t", "x1", "x2", "p1", "p2"]);
    for (t, st) in sample(&p, t_end, samples) {
        let (x1, x2) = position(&p, t);
        table.push(vec![t.into(), x1.into(), x2.into(), st.p1.into(), st.p2.into()]);
    }
    let period_pi = s.ells_exact().map(|e| q_text(&(closure_period_units(e) * Q::from_integer(2))));
    let sidecar = json!({
        "command": "trajectory",
        "coupling": strength_json(&s),
        "r1": r1, "r2": r2, "gamma1": gamma1, "gamma2": gamma2,
        "omega": p.omega, "m": p.m,
        "closed": matches!(closure, Closure::Period(_)),
        "period": match closure { Closure::Period(t) => finite(t), Closure::Open => Value::Null },
        "period_in_pi_over_omega": period_pi,
        "window": t_end,
        "cusp": is_cusped(&p),
        "through_origin": pass_through_origin(&p),
        "rotation_sense": format!("{:?}", rotation_senses(&p.strength)).to_lowercase(),
        "conserved": conserved_values(&p, 0.0),
    });
    report_written(&write_dataset(&cfg.out, name, cfg.format, &table, sidecar)?);
    Ok(Outcome::Pass)
}

fn frequency(s: &str) -> Result<(f64, Option<Q>)> {
    match parse_rational(s) {
        Ok(q) => Ok((q_to_f64(&q), Some(q))),
        Err(_) => Ok((crate::parse::parse_f64(s)?, None)),
    }
}

pub fn lissajous(cfg: &RunConfig, w1: &str, w2: &str, amp: [f64; 4], samples: usize, window: Option<f64>, name: &str) -> Result<Outcome> {
    let (a, b) = (frequency(w1)?, frequency(w2)?);
    let freq = match (a.1, b.1) {
        (Some(x), Some(y)) => FrequencyPair::exact(x, y)?,
        _ => FrequencyPair::from_f64(a.0, b.0)?,
    };
    if amp.iter().any(|v| !v.is_finite()) {
        bail!("amplitudes must be finite");
    }
    if samples < 2 {
        bail!("need at least 2 samples");
    }
    let p = LissajousParams { a1: amp[0], b1: amp[1], a2: amp[2], b2: amp[3] };
    let period = lissajous_period(&freq);
    let t_end = match (period, window) {
        (_, Some(w)) if !(w.is_finite() && w > 0.0) => bail!("window must be positive"),
        (_, Some(w)) => w,
        (Some(t), None) => t,
        (None, None) => bail!("frequencies are not commensurable; give --window"),
    };
    let mut table = Table::new(&["t", "x1", "x2"]);
    for (t, x1, x2) in lissajous_samples(&p, &freq, t_end, samples) {
        table.push(vec![t.into(), x1.into(), x2.into()]);
    }
    let closure = period.map(|t| {
        let (x0, y0) = lissajous_point(&p, &freq, 0.0);
        let (x1, y1) = lissajous_point(&p, &freq, t);
        (x1 - x0).hypot(y1 - y0)
    });
    let sidecar = json!({
        "command": "lissajous",
        "omega1": freq.omega1, "omega2": freq.omega2,
        "commensurability": freq.commensurability,
        "amplitudes": p,
        "period": period,
        "closure_residual": closure,
        "window": t_end,
    });
    report_written(&write_dataset(&cfg.out, name, cfg.format, &table, sidecar)?);
    Ok(Outcome::Pass)
}

fn members_text(m: &[(usize, usize)]) -> String {
    m.iter().map(|(a, b)| format!("{}:{}", a, b)).collect::<Vec<_>>().join(" ")
}

fn extent_text(e: ClassExtent) -> &'static str {
    match e {
        ClassExtent::Finite => "finite",
        ClassExtent::Truncated => "truncated",
        ClassExtent::Infinite => "infinite",
    }
}

pub fn spectrum(cfg: &RunConfig, c: &CouplingArg, nmax: Option<usize>, name: &str) -> Result<Outcome> {
    let s = strength(c)?;
    let nmax = nmax.unwrap_or(cfg.suite.cutoff);
    let basis = FockBasis::new(nmax.max(1))?;
    let hw = cfg.suite.hbar * cfg.suite.omega;
    let hw_f = q_to_f64(&hw);
    let mut table = Table::new(&["n1", "n2", "E_exact_num", "E_exact_den", "E_float", "class_id"]);
    match s {
        Strength::Rational(cp) => {
            let classes = degeneracy_classes(&s, None, basis)?;
            let mut id = BTreeMap::new();
            for cl in &classes {
                for m in &cl.members {
                    id.insert(*m, cl.id);
                }
            }
            for (n1, n2) in basis.states() {
                let e = hw * energy_exact(&cp, n1, n2);
                table.push(vec![n1.into(), n2.into(), Cell::I(*e.numer()), Cell::I(*e.denom()), q_to_f64(&e).into(), id[&(n1, n2)].into()]);
            }
        }
        _ => {
            let (l1, l2) = s.ells_f64();
            for (n1, n2) in basis.states() {
                let e = hw_f * (l1 * n1 as f64 + l2 * n2 as f64 + 1.0);
                table.push(vec![n1.into(), n2.into(), Cell::Empty, Cell::Empty, e.into(), Cell::Empty]);
            }
        }
    }
    let sidecar = json!({
        "command": "spectrum",
        "coupling": strength_json(&s),
        "nmax": nmax,
        "energy_unit": "absolute, E = hbar omega (l1 n1 + l2 n2 + 1)",
        "hbar": q_text(&cfg.suite.hbar), "omega": q_text(&cfg.suite.omega),
    });
    report_written(&write_dataset(&cfg.out, name, cfg.format, &table, sidecar)?);
    Ok(Outcome::Pass)
}

pub fn degeneracy(cfg: &RunConfig, c: &CouplingArg, emax: &str, emin: Option<&str>, name: &str) -> Result<Outcome> {
    let s = strength(c)?;
    let Strength::Rational(cp) = s else {
        bail!("degeneracy classes need a rational coupling (--g num/den)");
    };
    let emax = parse_rational(emax)?;
    let (l1, l2) = cp.ells();
    let one = Q::from_integer(1);
    let mut cutoff = cfg.suite.cutoff;
    if l1 > Q::from_integer(0) && l2 > Q::from_integer(0) && emax > one {
        let need = ((emax - one) / l1.min(l2)).floor().to_integer();
        cutoff = cutoff.max(usize::try_from(need).unwrap_or(usize::MAX).saturating_add(1));
        if cutoff > 4096 {
            bail!("emax too large for the enumeration");
        }
    }
    let basis = FockBasis::new(cutoff)?;
    let lo = match emin {
        Some(e) => parse_rational(e)?,
        None => basis.states().map(|(a, b)| energy_exact(&cp, a, b)).min().unwrap_or(one),
    };
    let classes = degeneracy_classes(&s, Some((lo, emax)), basis)?;
    let hw = cfg.suite.hbar * cfg.suite.omega;
    let mut table = Table::new(&["class_id", "E_exact_num", "E_exact_den", "E_float", "E_over_hbar_omega", "extent", "size", "members"]);
    for cl in &classes {
        let e = hw * cl.energy;
        table.push(vec![
            cl.id.into(),
            Cell::I(*e.numer()),
            Cell::I(*e.denom()),
            q_to_f64(&e).into(),
            Cell::S(q_text(&cl.energy)),
            Cell::S(extent_text(cl.extent).into()),
            cl.members.len().into(),
            Cell::S(members_text(&cl.members)),
        ]);
    }
    let sidecar = json!({
        "command": "degeneracy",
        "coupling": strength_json(&s),
        "window_over_hbar_omega": [q_text(&lo), q_text(&emax)],
        "cutoff": cutoff,
        "classes": classes.len(),
        "members_format": "n1:n2 pairs separated by spaces",
    });
    report_written(&write_dataset(&cfg.out, name, cfg.format, &table, sidecar)?);
    Ok(Outcome::Pass)
}

pub fn eigenstate(cfg: &RunConfig, n1: u32, n2: u32, grid: &str, grid2: Option<&str>, name: &str) -> Result<Outcome> {
    let gx = parse_grid(grid)?;
    let gy = match grid2 {
        Some(g) => parse_grid(g)?,
        None => gx,
    };
    if n1 + n2 > 40 {
        bail!("n1 + n2 must be at most 40");
    }
    let u: Units = cfg.suite.units();
    let psi = eigenstate_c64(n1, n2, &u);
    let mut table = Table::new(&["x1", "x2", "re_psi", "im_psi"]);
    for x1 in gx.points() {
        for x2 in gy.points() {
            let v = psi.eval(x1, x2);
            table.push(vec![x1.into(), x2.into(), v.re.into(), v.im.into()]);
        }
    }
    let norm = orthonormality((n1, n2), (n1, n2), &u, QUAD_ORDER)?;
    let sidecar = json!({
        "command": "eigenstate",
        "n1": n1, "n2": n2,
        "oscillator_energy_over_hbar_omega": n1 + n2 + 1,
        "angular_momentum_over_hbar": n1 as i64 - n2 as i64,
        "norm_squared": norm.re,
        "units": { "m": q_text(&u.m), "omega": q_text(&u.omega), "hbar": q_text(&u.hbar) },
    });
    report_written(&write_dataset(&cfg.out, name, cfg.format, &table, sidecar)?);
    Ok(Outcome::Pass)
}

#[allow(clippy::too_many_arguments)]
pub fn coherent(cfg: &RunConfig, alpha: &str, beta: &str, t: f64, gamma: f64, g: &str, grid: &str, name: &str) -> Result<Outcome> {
    let (alpha, beta) = (parse_complex(alpha)?, parse_complex(beta)?);
    if !(t.is_finite() && gamma.is_finite()) {
        bail!("t and gamma must be finite");
    }
    let cp = Coupling::new(parse_rational(g)?);
    let grid = parse_grid(grid)?;
    let u = cfg.suite.units();
    let w = q_to_f64(&u.omega);
    let (l1, l2) = (q_to_f64(&cp.ell1()), q_to_f64(&cp.ell2()));
    let (ea, eb) = (alpha * Complex64::from_polar(1.0, -w * l1 * t), beta * Complex64::from_polar(1.0, -w * l2 * t));
    let (ra, rb) = (alpha * Complex64::from_polar(1.0, gamma), beta * Complex64::from_polar(1.0, -gamma));
    let zero_point = Complex64::from_polar(1.0, -w * t);
    let (phi, evolved, rotated) = (coherent_state(alpha, beta, &u), coherent_state(ea, eb, &u), coherent_state(ra, rb, &u));
    let mut table = Table::new(&["x1", "x2", "re_phi", "im_phi", "re_evolved", "im_evolved", "re_rotated", "im_rotated"]);
    for x1 in grid.points() {
        for x2 in grid.points() {
            let (a, b, c) = (phi.eval(x1, x2), zero_point * evolved.eval(x1, x2), rotated.eval(x1, x2));
            table.push(vec![x1.into(), x2.into(), a.re.into(), a.im.into(), b.re.into(), b.im.into(), c.re.into(), c.im.into()]);
        }
    }
    let rep = coherent_checks(alpha, beta, t, gamma, &cp, &u, cfg.suite.operator_tol)?;
    let checks: Vec<Value> = rep.checks.iter().map(|c| json!({ "name": c.identity_name, "residual": finite(c.residual), "pass": c.pass })).collect();
    let c2 = |z: Complex64| json!([z.re, z.im]);
    let sidecar = json!({
        "command": "coherent",
        "alpha": c2(alpha), "beta": c2(beta), "t": t, "gamma": gamma,
        "g": q_text(&cp.g()),
        "evolved_parameters": [c2(ea), c2(eb)],
        "evolved_phase": c2(zero_point),
        "rotated_parameters": [c2(ra), c2(rb)],
        "tolerance": cfg.suite.operator_tol,
        "checks": checks,
        "pass": rep.pass(),
    });
    report_written(&write_dataset(&cfg.out, name, cfg.format, &table, sidecar)?);
    Ok(if rep.pass() { Outcome::Pass } else { Outcome::Fail })
}

#[derive(Clone, Debug, PartialEq)]
pub enum LandauInput {
    Field { omega_b: String, lambda: String },
    Frame { k: String, m: String, omega_cap: String },
}

fn exact_json(img: &ExactCouplingImage) -> Value {
    let mut v = json!({ "phase": img.phase() });
    match img {
        ExactCouplingImage::Confined { omega, g, .. } => {
            match img.g_rational() {
                Some(q) => {
                    v["g_num"] = json!(q.numer().to_string());
                    v["g_den"] = json!(q.denom().to_string());
                }
                None => v["g_float"] = finite(g.to_c64().re),
            }
            v["omega"] = finite(omega.to_c64().re);
            v["omega_exact"] = json!(omega.to_string());
        }
        ExactCouplingImage::Critical => v["omega"] = Value::Null,
        ExactCouplingImage::Supercritical { omega_abs_sq } => {
            v["omega"] = Value::Null;
            v["omega_abs"] = finite(q_to_f64(omega_abs_sq).sqrt());
            v["omega_abs_squared"] = json!(q_text(omega_abs_sq));
        }
    }
    v
}

fn float_json(img: &CouplingImage) -> Value {
    let mut v = json!({ "phase": img.phase() });
    match img {
        CouplingImage::Confined { omega, g, .. } => {
            v["g_float"] = finite(*g);
            v["omega"] = finite(*omega);
        }
        CouplingImage::Critical => v["omega"] = Value::Null,
        CouplingImage::Supercritical { omega_abs } => {
            v["omega"] = Value::Null;
            v["omega_abs"] = finite(*omega_abs);
        }
    }
    v
}

pub fn landau(cfg: &RunConfig, input: &LandauInput, float: bool, name: &str) -> Result<Outcome> {
    let num = |s: &str| crate::parse::parse_f64(s);
    let mut v = match input {
        LandauInput::Field { omega_b, lambda } => {
            let mut v = if float {
                float_json(&landau_to_g(&LandauExtension { omega_b: num(omega_b)?, lambda: num(lambda)? }))
            } else {
                exact_json(&landau_to_g_exact(parse_rational(omega_b)?, parse_rational(lambda)?))
            };
            v["input"] = json!({ "kind": "field", "omega_b": omega_b, "lambda": lambda });
            v
        }
        LandauInput::Frame { k, m, omega_cap } => {
            let mut v = if float {
                float_json(&rotating_frame_to_g(&RotatingFrame { k: num(k)?, m: num(m)?, omega_cap: num(omega_cap)? })?)
            } else {
                exact_json(&rotating_frame_to_g_exact(parse_rational(k)?, parse_rational(m)?, parse_rational(omega_cap)?)?)
            };
            v["input"] = json!({ "kind": "rotating-frame", "k": k, "m": m, "omega_cap": omega_cap });
            v
        }
    };
    v["schema_version"] = json!(SCHEMA_VERSION);
    v["exact"] = json!(!float);
    let path = cfg.out.join(format!("{}.json", name));
    write_json(&path, &v)?;
    println!("{}", serde_json::to_string(&v)?);
    Ok(Outcome::Pass)
}

pub fn verify(cfg: &RunConfig, suite: &str, timing: bool) -> Result<Outcome> {
    let rep = crate::report::verify(suite, cfg, timing)?;
    let path = cfg.out.join(format!("verify-{}.json", suite));
    write_json(&path, &rep)?;
    for c in rep.failures() {
        println!("FAIL {} {} residual={}", c.check_id, c.name, c.residual.map(g17).unwrap_or_else(|| "inf".into()));
    }
    let failed = rep.failures().count();
    println!("{}: {} checks, {} failed, report {}", suite, rep.checks.len(), failed, path.display());
    if rep.checks.is_empty() {
        return Err(anyhow!("suite {} produced no checks", suite));
    }
    Ok(if rep.pass { Outcome::Pass } else { Outcome::Fail })
}
