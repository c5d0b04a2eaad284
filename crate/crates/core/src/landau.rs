//! Parameter maps to the harmonically extended Landau problem and to an oscillator in a
//! uniformly rotating frame.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::coupling::Strength;
use crate::error::{invalid, Error, Result};
use crate::report::{Check, Report};
use crate::scalar::{q, q_to_f64, qi, Surd, Q};

/// Relative width of the float boundaries `Lambda = 0` and `Lambda = -wB^2`.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LandauPhase {
    EuclidEquivalent,
    Landau,
    MinkowskiEquivalent,
    Critical,
    Supercritical,
}

/// `H = (p - q A/c)^2/2m + m Lambda r^2/2` in symmetric gauge, `omega_b = qB/2mc` signed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LandauExtension {
    pub omega_b: f64,
    pub lambda: f64,
}

/// Isotropic oscillator `k r^2/2` seen from a frame rotating at `omega_cap`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RotatingFrame {
    pub k: f64,
    pub m: f64,
    pub omega_cap: f64,
}

/// Float image of the maps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CouplingImage {
    Confined { phase: LandauPhase, omega: f64, g: f64 },
    Critical,
    Supercritical { omega_abs: f64 },
}

impl CouplingImage {
    pub fn phase(&self) -> LandauPhase {
        match self {
            CouplingImage::Confined { phase, .. } => *phase,
            CouplingImage::Critical => LandauPhase::Critical,
            CouplingImage::Supercritical { .. } => LandauPhase::Supercritical,
        }
    }
}

/// Exact image for rational inputs: `omega` and `g` live in the surd field.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactCouplingImage {
    Confined { phase: LandauPhase, omega: Surd, g: Surd },
    Critical,
    /// `|omega|^2 = -(wB^2 + Lambda)`.
    Supercritical { omega_abs_sq: Q },
}

impl ExactCouplingImage {
    pub fn phase(&self) -> LandauPhase {
        match self {
            ExactCouplingImage::Confined { phase, .. } => *phase,
            ExactCouplingImage::Critical => LandauPhase::Critical,
            ExactCouplingImage::Supercritical { .. } => LandauPhase::Supercritical,
        }
    }
    /// `g` as an exact rational when it is one.
    pub fn g_rational(&self) -> Option<Q> {
        match self {
            ExactCouplingImage::Confined { g, .. } => g.as_q(),
            _ => None,
        }
    }
}

fn phase_of_g_q(g: &Q) -> LandauPhase {
    let a = g.abs();
    if a < Q::one() {
        LandauPhase::EuclidEquivalent
    } else if a == Q::one() {
        LandauPhase::Landau
    } else {
        LandauPhase::MinkowskiEquivalent
    }
}

/// Phase from `(Lambda, omega_b)` with exact boundaries.
pub fn classify_exact(lambda: Q, omega_b: Q) -> LandauPhase {
    let w2 = omega_b * omega_b + lambda;
    if w2.is_zero() {
        LandauPhase::Critical
    } else if w2.is_negative() {
        LandauPhase::Supercritical
    } else if lambda.is_zero() {
        LandauPhase::Landau
    } else if lambda.is_positive() {
        LandauPhase::EuclidEquivalent
    } else {
        LandauPhase::MinkowskiEquivalent
    }
}

/// Float version; values within [`BOUNDARY_TOL`] of a boundary resolve to it.
pub fn classify(lambda: f64, omega_b: f64) -> LandauPhase {
    let scale = (omega_b * omega_b).max(libm::fabs(lambda)).max(f64::MIN_POSITIVE);
    let w2 = omega_b * omega_b + lambda;
    if libm::fabs(w2) <= BOUNDARY_TOL * scale {
        LandauPhase::Critical
    } else if w2 < 0.0 {
        LandauPhase::Supercritical
    } else if libm::fabs(lambda) <= BOUNDARY_TOL * scale {
        LandauPhase::Landau
    } else if lambda > 0.0 {
        LandauPhase::EuclidEquivalent
    } else {
        LandauPhase::MinkowskiEquivalent
    }
}

/// `omega = sqrt(wB^2 + Lambda)`, `g = wB/omega`.
pub fn landau_to_g(ext: &LandauExtension) -> CouplingImage {
    let w2 = ext.omega_b * ext.omega_b + ext.lambda;
    match classify(ext.lambda, ext.omega_b) {
        LandauPhase::Critical => CouplingImage::Critical,
        LandauPhase::Supercritical => CouplingImage::Supercritical { omega_abs: libm::sqrt(-w2) },
        phase => {
            let omega = libm::sqrt(w2);
            let g = match phase {
                LandauPhase::Landau => libm::copysign(1.0, ext.omega_b),
                _ => ext.omega_b / omega,
            };
            CouplingImage::Confined { phase, omega, g }
        }
    }
}

pub fn landau_to_g_exact(omega_b: Q, lambda: Q) -> ExactCouplingImage {
    let w2 = omega_b * omega_b + lambda;
    match classify_exact(lambda, omega_b) {
        LandauPhase::Critical => ExactCouplingImage::Critical,
        LandauPhase::Supercritical => ExactCouplingImage::Supercritical { omega_abs_sq: -w2 },
        phase => ExactCouplingImage::Confined { phase, omega: Surd::sqrt_q(w2), g: Surd::sqrt_q(Q::one() / w2).scale_q(omega_b) },
    }
}

/// `omega_b = g omega`, `Lambda = (1 - g^2) omega^2`.
pub fn g_to_landau(strength: &Strength, omega: f64) -> Result<LandauExtension> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(invalid("omega must be positive"));
    }
    let g = match strength {
        Strength::Rational(c) => c.g_f64(),
        Strength::Irrational(g) => *g,
        Strength::IsotropicMink { .. } => return Err(Error::Unsupported("the isotropic Minkowskian limit needs a rescaled frequency".into())),
    };
    Ok(LandauExtension { omega_b: g * omega, lambda: (1.0 - g * g) * omega * omega })
}

pub fn g_to_landau_exact(g: Q, omega: Q) -> Result<(Q, Q)> {
    if !omega.is_positive() {
        return Err(invalid("omega must be positive"));
    }
    Ok((g * omega, (Q::one() - g * g) * omega * omega))
}

/// `omega^2 = k/m`, `g = Omega/omega`; `k = 0` with `Omega != 0` is critical.
pub fn rotating_frame_to_g(frame: &RotatingFrame) -> Result<CouplingImage> {
    if !(frame.m.is_finite() && frame.m > 0.0) {
        return Err(invalid("mass must be positive"));
    }
    if !(frame.k.is_finite() && frame.k >= 0.0) || !frame.omega_cap.is_finite() {
        return Err(invalid("spring constant must be non-negative"));
    }
    let w2 = frame.k / frame.m;
    if w2 == 0.0 {
        return Ok(CouplingImage::Critical);
    }
    let omega = libm::sqrt(w2);
    let g = frame.omega_cap / omega;
    let o2 = frame.omega_cap * frame.omega_cap;
    let phase = if libm::fabs(o2 - w2) <= BOUNDARY_TOL * w2 {
        LandauPhase::Landau
    } else if o2 < w2 {
        LandauPhase::EuclidEquivalent
    } else {
        LandauPhase::MinkowskiEquivalent
    };
    let g = if phase == LandauPhase::Landau { libm::copysign(1.0, g) } else { g };
    Ok(CouplingImage::Confined { phase, omega, g })
}

pub fn rotating_frame_to_g_exact(k: Q, m: Q, omega_cap: Q) -> Result<ExactCouplingImage> {
    if !m.is_positive() {
        return Err(invalid("mass must be positive"));
    }
    if k.is_negative() {
        return Err(invalid("spring constant must be non-negative"));
    }
    let w2 = k / m;
    if w2.is_zero() {
        return Ok(ExactCouplingImage::Critical);
    }
    let o2 = omega_cap * omega_cap;
    let phase = if o2 < w2 {
        LandauPhase::EuclidEquivalent
    } else if o2 == w2 {
        LandauPhase::Landau
    } else {
        LandauPhase::MinkowskiEquivalent
    };
    Ok(ExactCouplingImage::Confined { phase, omega: Surd::sqrt_q(w2), g: Surd::sqrt_q(Q::one() / w2).scale_q(omega_cap) })
}

/// Nine `(k, m, Omega)` probes covering every confined phase, both rotation senses, the
/// inertial frame and the free particle.
pub fn rotating_frame_probes() -> Vec<((Q, Q, Q), LandauPhase, Option<Q>)> {
    use LandauPhase::*;
    alloc::vec![
        ((qi(4), qi(1), qi(1)), EuclidEquivalent, Some(q(1, 2))),
        ((qi(4), qi(1), qi(-1)), EuclidEquivalent, Some(q(-1, 2))),
        ((qi(9), qi(1), qi(0)), EuclidEquivalent, Some(qi(0))),
        ((qi(2), qi(2), qi(1)), Landau, Some(qi(1))),
        ((q(9, 4), qi(1), q(-3, 2)), Landau, Some(qi(-1))),
        ((qi(1), qi(4), qi(1)), MinkowskiEquivalent, Some(qi(2))),
        ((qi(1), qi(1), qi(-3)), MinkowskiEquivalent, Some(qi(-3))),
        ((qi(2), qi(1), qi(1)), EuclidEquivalent, None),
        ((qi(0), qi(1), qi(1)), Critical, None),
    ]
}

fn show(img: &ExactCouplingImage) -> String {
    match img {
        ExactCouplingImage::Confined { phase, omega, g } => format!("{:?} omega={} g={}", phase, omega, g),
        ExactCouplingImage::Critical => String::from("Critical"),
        ExactCouplingImage::Supercritical { omega_abs_sq } => format!("Supercritical |omega|^2={}", omega_abs_sq),
    }
}

/// Round trips, phase boundaries, worked values and the rotating-frame table.
pub fn verify_landau(tol: f64) -> Report {
    let mut rep = Report::new("Landau and rotating-frame maps");
    let sweep: Vec<Q> = [(0, 1), (1, 3), (-1, 3), (1, 2), (-1, 2), (2, 3), (1, 1), (-1, 1), (3, 2), (-3, 2), (2, 1), (-2, 1), (3, 1), (7, 5), (-9, 4)]
        .iter()
        .map(|&(a, b)| q(a, b))
        .collect();
    let omegas = [qi(1), q(3, 2), q(2, 7)];
    let mut bad_exact = 0usize;
    let mut worst = 0.0f64;
    let mut bad_rel = 0usize;
    for g in &sweep {
        for w in &omegas {
            let (wb, lam) = g_to_landau_exact(*g, *w).expect("positive omega");
            match landau_to_g_exact(wb, lam) {
                ExactCouplingImage::Confined { omega, g: gi, phase } => {
                    if omega != Surd::from_q(*w) || gi != Surd::from_q(*g) || phase != phase_of_g_q(g) {
                        bad_exact += 1;
                    }
                }
                _ => bad_exact += 1,
            }
            if lam.abs() != (Q::one() - g * g).abs() * w * w {
                bad_rel += 1;
            }
            let (gf, wf) = (q_to_f64(g), q_to_f64(w));
            let ext = g_to_landau(&Strength::Rational(crate::coupling::Coupling::new(*g)), wf).expect("finite");
            match landau_to_g(&ext) {
                CouplingImage::Confined { omega, g, .. } => worst = worst.max(libm::fabs(omega - wf)).max(libm::fabs(g - gf)),
                _ => worst = f64::INFINITY,
            }
        }
    }
    // irrational couplings
    for g in [libm::sqrt(2.0) / 2.0, -core::f64::consts::PI / 4.0, libm::sqrt(5.0), -core::f64::consts::E] {
        let ext = g_to_landau(&Strength::Irrational(g), 1.3).expect("finite");
        match landau_to_g(&ext) {
            CouplingImage::Confined { omega, g: gi, .. } => worst = worst.max(libm::fabs(omega - 1.3)).max(libm::fabs(gi - g)),
            _ => worst = f64::INFINITY,
        }
    }
    rep.push(Check::exact("landau_to_g(g_to_landau(g, w)) = (g, w), exact", format!("{} mismatches", bad_exact), "0", bad_exact as f64).with_anchor("landau-map"));
    rep.push(Check::tol("landau_to_g(g_to_landau(g, w)) = (g, w), float", format!("{:.3e}", worst), "0", worst, tol).with_anchor("landau-map"));
    rep.push(Check::exact("|Lambda| = |1 - g^2| w^2", format!("{} mismatches", bad_rel), "0", bad_rel as f64).with_anchor("landau-map"));

    let wb = q(3, 4);
    let cases = [
        (Q::zero(), LandauPhase::Landau, Some(qi(1))),
        (qi(3) * wb * wb, LandauPhase::EuclidEquivalent, Some(q(1, 2))),
        (q(-3, 4) * wb * wb, LandauPhase::MinkowskiEquivalent, Some(qi(2))),
        (-wb * wb, LandauPhase::Critical, None),
        (qi(-2) * wb * wb, LandauPhase::Supercritical, None),
        (q(1, 2) * wb * wb, LandauPhase::EuclidEquivalent, None),
    ];
    for (lam, phase, g) in cases {
        for sign in [1, -1] {
            let img = landau_to_g_exact(wb * qi(sign), lam);
            let ok = img.phase() == phase && g.map_or(true, |g| img.g_rational() == Some(g * qi(sign)));
            rep.push(
                Check::exact(format!("Lambda = {} at wB = {}", lam, wb * qi(sign)), show(&img), format!("{:?}", phase), if ok { 0.0 } else { 1.0 })
                    .with_anchor("landau-classify"),
            );
        }
    }
    // boundaries are approached from the adjacent phases
    let eps = q(1, 1_000_000_000);
    let adj = [
        (eps, LandauPhase::EuclidEquivalent),
        (-eps, LandauPhase::MinkowskiEquivalent),
        (-wb * wb + eps, LandauPhase::MinkowskiEquivalent),
        (-wb * wb - eps, LandauPhase::Supercritical),
    ];
    let bad = adj.iter().filter(|(l, p)| classify_exact(*l, wb) != *p || classify(q_to_f64(l), q_to_f64(&wb)) != *p).count();
    rep.push(Check::exact("phases adjacent to the Landau and critical boundaries", format!("{} mismatches", bad), "0", bad as f64).with_anchor("landau-classify"));

    for ((k, m, om), phase, g) in rotating_frame_probes() {
        let img = rotating_frame_to_g_exact(k, m, om);
        let ok = match &img {
            Ok(i) => {
                let sign_ok = match i {
                    ExactCouplingImage::Confined { g, .. } => {
                        let gf = g.to_c64().re;
                        (gf == 0.0 && om.is_zero()) || (gf > 0.0) == om.is_positive()
                    }
                    _ => true,
                };
                i.phase() == phase && g.map_or(true, |g| i.g_rational() == Some(g)) && sign_ok
            }
            Err(_) => false,
        };
        let fl = rotating_frame_to_g(&RotatingFrame { k: q_to_f64(&k), m: q_to_f64(&m), omega_cap: q_to_f64(&om) }).map(|i| i.phase()).ok();
        let ok = ok && fl == Some(phase);
        rep.push(
            Check::exact(
                format!("rotating frame k={} m={} Omega={}", k, m, om),
                img.as_ref().map(show).unwrap_or_else(|e| format!("{}", e)),
                format!("{:?}", phase),
                if ok { 0.0 } else { 1.0 },
            )
            .with_anchor("rotating-frame"),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let wb = qi(2);
        assert_eq!(landau_to_g_exact(wb, Q::zero()).g_rational(), Some(qi(1)));
        let e = landau_to_g_exact(wb, qi(12));
        assert_eq!(e, ExactCouplingImage::Confined { phase: LandauPhase::EuclidEquivalent, omega: Surd::int(4), g: Surd::from_q(q(1, 2)) });
        assert_eq!(landau_to_g_exact(wb, qi(-3)).g_rational(), Some(qi(2)));
        assert_eq!(landau_to_g_exact(wb, qi(-4)), ExactCouplingImage::Critical);
        assert_eq!(g_to_landau_exact(Q::zero(), qi(3)).unwrap(), (Q::zero(), qi(9)));
        assert_eq!(g_to_landau_exact(qi(1), qi(3)).unwrap().1, Q::zero());
        assert_eq!(g_to_landau_exact(qi(2), qi(1)).unwrap().1, qi(-3));
        assert!(g_to_landau(&Strength::IsotropicMink { sign: 1 }, 1.0).is_err());
        assert_eq!(classify(0.5, 1.0), LandauPhase::EuclidEquivalent);
        assert_eq!(classify(-1.0, 1.0), LandauPhase::Critical);
        assert_eq!(classify(-2.0, 1.0), LandauPhase::Supercritical);
        assert!(rotating_frame_to_g(&RotatingFrame { k: -1.0, m: 1.0, omega_cap: 0.0 }).is_err());
    }

    #[test]
    fn suite() {
        let r = verify_landau(1e-12);
        assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.checks.iter().filter(|c| c.anchor == "rotating-frame").count(), 9);
    }
}
