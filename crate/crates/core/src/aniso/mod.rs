//! Rotationally non-invariant oscillators `H^(+-)_{w1,w2}` with Cartesian frequencies.

mod bridge1d;
mod rescale;

pub use bridge1d::{aniso_bridge_constant, aniso_cbt_apply, hermite_function, verify_aniso_bridge, ModeImage, SeparableState};
pub use rescale::{rescale_map, verify_rescale, RescaleMap};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::coupling::HiddenKind;
use crate::error::{invalid, Error, Result};
use crate::fockeng::{
    commutator, hidden_coefficient, ladder, number, Direction, ExactOperator, FockBasis, FockOperator, HiddenDirection, InteriorMask, PRUNE,
};
use crate::report::{Check, Report};
use crate::scalar::{q_to_f64, qi, Q};

/// Largest exponent accepted when rationalising a float frequency ratio.
pub const RATIO_CAP: u64 = 64;
/// Relative tolerance of float commensurability detection.
pub const RATIO_TOL: f64 = 1e-9;

/// Sign in front of the second mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModeSign {
    Plus,
    Minus,
}

impl ModeSign {
    pub fn sigma(&self) -> i32 {
        match self {
            ModeSign::Plus => 1,
            ModeSign::Minus => -1,
        }
    }
    /// The integral family that commutes with this Hamiltonian.
    pub fn hidden_kind(&self) -> HiddenKind {
        match self {
            ModeSign::Plus => HiddenKind::L,
            ModeSign::Minus => HiddenKind::J,
        }
    }
}

/// Two positive frequencies; `(l1, l2)` coprime with `l1 w1 = l2 w2` when commensurable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrequencyPair {
    pub omega1: f64,
    pub omega2: f64,
    #[serde(skip)]
    pub exact: Option<(Q, Q)>,
    pub commensurability: Option<(u32, u32)>,
}

impl FrequencyPair {
    /// Rational frequencies; always commensurable.
    pub fn exact(w1: Q, w2: Q) -> Result<Self> {
        if !w1.is_positive() || !w2.is_positive() {
            return Err(invalid("frequencies must be positive"));
        }
        let r = w1 / w2;
        let (l2, l1) = (r.numer(), r.denom());
        let comm = if *l1 <= u32::MAX as i128 && *l2 <= u32::MAX as i128 { Some((*l1 as u32, *l2 as u32)) } else { None };
        Ok(FrequencyPair { omega1: q_to_f64(&w1), omega2: q_to_f64(&w2), exact: Some((w1, w2)), commensurability: comm })
    }

    /// Float frequencies; the ratio is rationalised by continued fractions.
    pub fn from_f64(w1: f64, w2: f64) -> Result<Self> {
        if !(w1.is_finite() && w2.is_finite() && w1 > 0.0 && w2 > 0.0) {
            return Err(invalid("frequencies must be positive and finite"));
        }
        let comm = rationalize(w1 / w2, RATIO_CAP, RATIO_TOL).map(|(a, b)| (b as u32, a as u32));
        Ok(FrequencyPair { omega1: w1, omega2: w2, exact: None, commensurability: comm })
    }

    pub fn is_isotropic(&self) -> bool {
        match self.exact {
            Some((a, b)) => a == b,
            None => self.omega1 == self.omega2,
        }
    }

    fn require_ratio(&self) -> Result<(u32, u32)> {
        self.commensurability.ok_or_else(|| Error::IncompatibleCoupling(format!("frequencies {} and {} are not commensurable", self.omega1, self.omega2)))
    }
}

/// Best rational `p/q` with `p, q <= cap` and `|x - p/q| <= tol x`, from the continued fraction of `x`.
pub fn rationalize(x: f64, cap: u64, tol: f64) -> Option<(u64, u64)> {
    if !(x.is_finite() && x > 0.0) {
        return None;
    }
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut r = x;
    for _ in 0..64 {
        let a = libm::floor(r);
        if a > cap as f64 {
            return None;
        }
        let a = a as u64;
        let h = a.checked_mul(h1)?.checked_add(h0)?;
        let k = a.checked_mul(k1)?.checked_add(k0)?;
        if h > cap || k > cap {
            return None;
        }
        if libm::fabs(x - h as f64 / k as f64) <= tol * x {
            let g = h.gcd(&k);
            return Some((h / g, k / g));
        }
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let f = r - a as f64;
        if f <= 0.0 {
            return None;
        }
        r = 1.0 / f;
    }
    None
}

/// `hbar (w1 n1 + s w2 n2 + (w1 + s w2)/2)`.
pub fn spectrum(freq: &FrequencyPair, sign: ModeSign, n1: usize, n2: usize, hbar: f64) -> f64 {
    let s = sign.sigma() as f64;
    hbar * (freq.omega1 * (n1 as f64 + 0.5) + s * freq.omega2 * (n2 as f64 + 0.5))
}

/// The same in units of `hbar`, exactly, for rational frequencies.
pub fn spectrum_exact(freq: &FrequencyPair, sign: ModeSign, n1: usize, n2: usize) -> Option<Q> {
    let (w1, w2) = freq.exact?;
    let half = Q::new(1, 2);
    Some(w1 * (qi(n1 as i128) + half) + qi(sign.sigma() as i128) * w2 * (qi(n2 as i128) + half))
}

/// `H^(sign)` on the product Fock space of the two Cartesian modes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedModeHamiltonian {
    pub freq: FrequencyPair,
    pub sign: ModeSign,
    pub hbar: f64,
}

impl SignedModeHamiltonian {
    pub fn new(freq: FrequencyPair, sign: ModeSign, hbar: f64) -> Self {
        SignedModeHamiltonian { freq, sign, hbar }
    }

    pub fn energy(&self, n1: usize, n2: usize) -> f64 {
        spectrum(&self.freq, self.sign, n1, n2, self.hbar)
    }

    /// `hbar (w1 a1+ a1- + s w2 a2+ a2- + (w1 + s w2)/2)` from ladder matrices.
    pub fn fock(&self, basis: FockBasis) -> Result<FockOperator> {
        let n1 = &ladder(basis, 1, Direction::Raise)? * &ladder(basis, 1, Direction::Lower)?;
        let n2 = &ladder(basis, 2, Direction::Raise)? * &ladder(basis, 2, Direction::Lower)?;
        let s = self.sign.sigma() as f64;
        let shift = FockOperator::identity(basis).scale_re((self.freq.omega1 + s * self.freq.omega2) / 2.0);
        let h = &(&n1.scale_re(self.freq.omega1) + &n2.scale_re(s * self.freq.omega2)) + &shift;
        Ok(h.scale_re(self.hbar).labeled(format!("H({:?})", self.sign)))
    }

    /// Closed-form diagonal.
    pub fn diagonal(&self, basis: FockBasis) -> FockOperator {
        FockOperator::diagonal(basis, |a, b| Complex64::new(self.energy(a, b), 0.0), format!("H({:?})", self.sign))
    }

    /// The same in units of `hbar`, exact, for rational frequencies.
    pub fn exact(&self, basis: FockBasis) -> Option<ExactOperator> {
        let (w1, w2) = self.freq.exact?;
        let s = qi(self.sign.sigma() as i128);
        let n1 = ExactOperator::ladder(basis, 1, Direction::Raise).mul(&ExactOperator::ladder(basis, 1, Direction::Lower));
        let n2 = ExactOperator::ladder(basis, 2, Direction::Raise).mul(&ExactOperator::ladder(basis, 2, Direction::Lower));
        let shift = ExactOperator::identity(basis).scale_q((w1 + s * w2) / qi(2));
        Some(n1.scale_q(w1).add(&n2.scale_q(s * w2)).add(&shift))
    }
}

/// Ladder-built spectrum equals the closed formula on every masked state: exactly for rational
/// frequencies, to `tol` relative otherwise.
pub fn verify_aniso_spectrum(h: &SignedModeHamiltonian, basis: FockBasis, mask: &InteriorMask, tol: f64) -> Result<Report> {
    let mut rep = Report::new(format!("spectrum of H({:?}) w=({}, {})", h.sign, h.freq.omega1, h.freq.omega2));
    let states: Vec<(usize, usize)> = basis.states().filter(|&(a, b)| mask.contains(&basis, a, b)).collect();
    if let Some(ex) = h.exact(basis) {
        let bad = states.iter().filter(|&&(a, b)| ex.diagonal_q(a, b) != spectrum_exact(&h.freq, h.sign, a, b)).count();
        rep.push(Check::exact("diag(H) = w1(n1+1/2) + s w2(n2+1/2), exact", format!("{} mismatches", bad), "0", bad as f64).with_anchor("aniso-spectrum"));
        let off = ex.offdiagonal_count();
        rep.push(Check::exact("H is diagonal in the product basis", format!("{} off-diagonal entries", off), "0", off as f64).with_anchor("aniso-spectrum"));
    } else {
        let f = h.fock(basis)?;
        let mut worst = 0.0f64;
        for &(a, b) in &states {
            let e = h.energy(a, b);
            worst = worst.max((f.element((a, b), (a, b)) - e).norm() / e.abs().max(1.0));
        }
        rep.push(Check::tol("diag(H) = closed formula", format!("{:.3e}", worst), "0", worst, tol).with_anchor("aniso-spectrum"));
    }
    Ok(rep)
}

/// `L+ = (a1+)^l1 (a2-)^l2`, `J+ = (a1+)^l1 (a2+)^l2` and their adjoints, built from ladder matrices.
pub fn aniso_hidden_operator(basis: FockBasis, freq: &FrequencyPair, kind: HiddenKind, dir: HiddenDirection) -> Result<FockOperator> {
    let (l1, l2) = freq.require_ratio()?;
    let second = match kind {
        HiddenKind::L => Direction::Lower,
        HiddenKind::J => Direction::Raise,
    };
    let plus = &ladder(basis, 1, Direction::Raise)?.pow(l1) * &ladder(basis, 2, second)?.pow(l2);
    let op = match dir {
        HiddenDirection::Plus => plus,
        HiddenDirection::Minus => plus.adjoint(),
    };
    let name = match kind {
        HiddenKind::L => "Lw",
        HiddenKind::J => "Jw",
    };
    Ok(op.labeled(format!("{}{}({},{})", name, if dir == HiddenDirection::Plus { "+" } else { "-" }, l1, l2)))
}

/// Partition of the masked states into connected components of the nonzero elements of `op`.
fn orbits(op: &FockOperator, mask: &InteriorMask) -> BTreeSet<Vec<(usize, usize)>> {
    let basis = op.basis();
    let states: Vec<(usize, usize)> = basis.states().filter(|&(a, b)| mask.contains(&basis, a, b)).collect();
    let index: BTreeMap<(usize, usize), usize> = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut parent: Vec<usize> = (0..states.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (i, s) in states.iter().enumerate() {
        for (t, v) in op.apply_state(s.0, s.1) {
            if v.norm() > PRUNE {
                if let Some(&j) = index.get(&t) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..states.len() {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(states[i]);
    }
    comps.into_values().collect()
}

/// Matrix elements against the gamma-function formulas, commutators with the matching
/// `H^(sign)` on the interior, and degeneracy classes equal to the hidden orbits.
pub fn verify_aniso_hidden(basis: FockBasis, freq: &FrequencyPair, hbar: f64, tol: f64) -> Result<Report> {
    let (l1, l2) = freq.require_ratio()?;
    let mask = InteriorMask::margin(l1.max(l2) as usize);
    let mut rep = Report::new(format!("hidden operators w1/w2 = {}/{}", l2, l1));
    for sign in [ModeSign::Plus, ModeSign::Minus] {
        let kind = sign.hidden_kind();
        let h = SignedModeHamiltonian::new(*freq, sign, hbar).diagonal(basis);
        for dir in [HiddenDirection::Plus, HiddenDirection::Minus] {
            let op = aniso_hidden_operator(basis, freq, kind, dir)?;
            let mut worst = 0.0f64;
            for (n1, n2) in basis.states() {
                let got = op.apply_state(n1, n2);
                match hidden_coefficient(kind, dir, l1, l2, n1, n2) {
                    Some((t, c)) if basis.contains(t.0 as i64, t.1 as i64) => {
                        for (s, v) in &got {
                            let want = if *s == t { c } else { 0.0 };
                            worst = worst.max((v - want).norm() / want.max(1.0));
                        }
                        if !got.iter().any(|(s, _)| *s == t) {
                            worst = worst.max(1.0);
                        }
                    }
                    Some(_) => {}
                    None => worst = worst.max(got.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max)),
                }
            }
            rep.push(Check::tol(format!("{} matrix elements = gamma formula", op.label), format!("{:.3e}", worst), "0", worst, tol).with_anchor("aniso-hidden"));
            let c = commutator(&h, &op)?;
            let r = c.masked_residual(&FockOperator::zero(basis), &mask)?;
            rep.push(Check::tol(format!("[{}, {}] = 0 on interior", h.label, op.label), format!("{:.3e}", r), "0", r, tol).with_anchor("aniso-hidden"));
        }
        // energies are proportional to l2 n1 + s l1 n2
        let s = sign.sigma() as i64;
        let mut classes: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (a, b) in basis.states().filter(|&(a, b)| mask.contains(&basis, a, b)) {
            classes.entry(l2 as i64 * a as i64 + s * l1 as i64 * b as i64).or_default().push((a, b));
        }
        let classes: BTreeSet<Vec<(usize, usize)>> = classes.into_values().collect();
        let orb = orbits(&aniso_hidden_operator(basis, freq, kind, HiddenDirection::Plus)?, &mask);
        let diff = classes.symmetric_difference(&orb).count();
        rep.push(
            Check::exact(format!("classes of H({:?}) = orbits of {:?}+", sign, kind), format!("{} classes", classes.len()), format!("{} orbits", orb.len()), diff as f64)
                .with_anchor("aniso-orbits"),
        );
    }
    Ok(rep)
}

/// Isotropic Minkowskian oscillator: `L11 = x1 p2 + x2 p1 = i hbar (J+ - J-)` is conserved and
/// `{J0, J+, J-}` close into sl(2,R) with `J0 = (N1 + N2 + 1)/2`.
pub fn so11_invariant_check(freq: &FrequencyPair, hbar: f64, m: f64, basis: FockBasis, tol: f64) -> Result<Report> {
    if !freq.is_isotropic() {
        return Err(invalid("so(1,1) invariant needs equal frequencies"));
    }
    let w = freq.omega1;
    let mask = InteriorMask::margin(1);
    let mask2 = InteriorMask::margin(2);
    let i = Complex64::new(0.0, 1.0);
    let a = |mode, dir| ladder(basis, mode, dir);
    let (r1, l1, r2, l2) = (a(1, Direction::Raise)?, a(1, Direction::Lower)?, a(2, Direction::Raise)?, a(2, Direction::Lower)?);
    let xs = libm::sqrt(hbar / (2.0 * m * w));
    let ps = libm::sqrt(m * hbar * w / 2.0);
    let x1 = (&r1 + &l1).scale_re(xs);
    let x2 = (&r2 + &l2).scale_re(xs);
    let p1 = (&r1 - &l1).scale(i * ps);
    let p2 = (&r2 - &l2).scale(i * ps);
    let l11 = &(&x1 * &p2) + &(&x2 * &p1);
    let jp = &r1 * &r2;
    let jm = &l1 * &l2;
    let via_j = (&jp - &jm).scale(i * hbar);
    let n_tot = &number(basis, 1) + &number(basis, 2);
    let j0 = (&n_tot + &FockOperator::identity(basis)).scale_re(0.5);
    let h_osc = (&n_tot + &FockOperator::identity(basis)).scale_re(hbar * w);
    let hm = SignedModeHamiltonian::new(*freq, ModeSign::Minus, hbar).fock(basis)?;

    let mut rep = Report::new(format!("so(1,1) invariant w={}", w));
    let mut push = |name: &str, r: f64, anchor: &str| rep.push(Check::tol(name, format!("{:.3e}", r), "0", r, tol).with_anchor(anchor));
    push("x1 p2 + x2 p1 = i hbar (J+ - J-)", l11.masked_residual(&via_j, &mask)?, "so11-invariant");
    push("[H(-), L11] = 0", commutator(&hm, &l11)?.masked_residual(&FockOperator::zero(basis), &mask2)?, "so11-invariant");
    push("[J-, J+] = 2 J0", commutator(&jm, &jp)?.masked_residual(&j0.scale_re(2.0), &mask)?, "so11-sl2");
    push("[J0, J+] = J+", commutator(&j0, &jp)?.masked_residual(&jp, &mask)?, "so11-sl2");
    push("[J0, J-] = -J-", commutator(&j0, &jm)?.masked_residual(&jm.scale_re(-1.0), &mask)?, "so11-sl2");
    push("[H(-), H_osc] = 0", commutator(&hm, &h_osc)?.masked_residual(&FockOperator::zero(basis), &mask)?, "so11-sl2");
    // (H_osc - hbar w)/(2 hbar w) is the sl(2) generator shifted by 1/2.
    let shifted = (&h_osc - &FockOperator::identity(basis).scale_re(hbar * w)).scale_re(1.0 / (2.0 * hbar * w));
    push("J0 = (H_osc - hbar w)/(2 hbar w) + 1/2", j0.masked_residual(&(&shifted + &FockOperator::identity(basis).scale_re(0.5)), &mask)?, "so11-sl2");
    Ok(rep)
}

/// Amplitudes of a Cartesian trajectory `x_i = A_i cos(w_i t) + B_i sin(w_i t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LissajousParams {
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
}

pub fn lissajous(p: &LissajousParams, freq: &FrequencyPair, t: f64) -> (f64, f64) {
    let (w1, w2) = (freq.omega1, freq.omega2);
    (p.a1 * libm::cos(w1 * t) + p.b1 * libm::sin(w1 * t), p.a2 * libm::cos(w2 * t) + p.b2 * libm::sin(w2 * t))
}

/// `2 pi l2 / w1 = 2 pi l1 / w2` when the frequencies are commensurable.
pub fn lissajous_period(freq: &FrequencyPair) -> Option<f64> {
    freq.commensurability.map(|(_, l2)| 2.0 * core::f64::consts::PI * l2 as f64 / freq.omega1)
}

/// `samples` equally spaced points on `[0, window]`, endpoint included.
pub fn lissajous_samples(p: &LissajousParams, freq: &FrequencyPair, window: f64, samples: usize) -> Vec<(f64, f64, f64)> {
    let n = samples.max(2);
    (0..n)
        .map(|k| {
            let t = window * k as f64 / (n - 1) as f64;
            let (x1, x2) = lissajous(p, freq, t);
            (t, x1, x2)
        })
        .collect()
}

/// Classical flow of `H^(sign)` with `m = 1` by fixed-step RK4.
fn integrate_signed(p: &LissajousParams, freq: &FrequencyPair, sign: ModeSign, t_end: f64, steps: usize) -> Vec<(f64, f64)> {
    let s = sign.sigma() as f64;
    let (w1, w2) = (freq.omega1, freq.omega2);
    // (x1, x2, p1, p2); the second mode's velocity is s p2.
    let rhs = |y: [f64; 4]| [y[2], s * y[3], -w1 * w1 * y[0], -s * w2 * w2 * y[1]];
    let mut y = [p.a1, p.a2, p.b1 * w1, s * p.b2 * w2];
    let h = t_end / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    out.push((y[0], y[1]));
    for _ in 0..steps {
        let k1 = rhs(y);
        let k2 = rhs(core::array::from_fn(|i| y[i] + 0.5 * h * k1[i]));
        let k3 = rhs(core::array::from_fn(|i| y[i] + 0.5 * h * k2[i]));
        let k4 = rhs(core::array::from_fn(|i| y[i] + h * k3[i]));
        y = core::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        out.push((y[0], y[1]));
    }
    out
}

/// Closure at the period and agreement of both signed flows with the closed form.
pub fn verify_lissajous(p: &LissajousParams, freq: &FrequencyPair, closure_tol: f64, traj_tol: f64) -> Result<Report> {
    let period = lissajous_period(freq).ok_or_else(|| Error::IncompatibleCoupling("frequencies are not commensurable".into()))?;
    let mut rep = Report::new(format!("Lissajous w1/w2 = {}", freq.omega1 / freq.omega2));
    let (a, b) = (lissajous(p, freq, 0.0), lissajous(p, freq, period));
    let r = libm::hypot(a.0 - b.0, a.1 - b.1);
    rep.push(Check::tol("x(T) = x(0) at T = 2 pi l2/w1", format!("{:.3e}", r), "0", r, closure_tol).with_anchor("lissajous"));
    let steps = 20_000;
    for sign in [ModeSign::Plus, ModeSign::Minus] {
        let num = integrate_signed(p, freq, sign, period, steps);
        let worst = num
            .iter()
            .enumerate()
            .map(|(k, y)| {
                let (x1, x2) = lissajous(p, freq, period * k as f64 / steps as f64);
                libm::fabs(x1 - y.0).max(libm::fabs(x2 - y.1))
            })
            .fold(0.0, f64::max);
        rep.push(Check::tol(format!("H({:?}) flow = closed-form curve", sign), format!("{:.3e}", worst), "0", worst, traj_tol).with_anchor("lissajous"));
    }
    Ok(rep)
}

/// Frequency pairs `(w1, w2)` with ratios 1/3, 1/4, 3/5 and a fixed amplitude set.
pub fn lissajous_fixtures() -> Vec<(&'static str, FrequencyPair, LissajousParams)> {
    let amp = LissajousParams { a1: 1.0, b1: 0.3, a2: 0.4, b2: 0.8 };
    [("1/3", 1, 3), ("1/4", 1, 4), ("3/5", 3, 5)]
        .into_iter()
        .map(|(name, a, b)| (name, FrequencyPair::exact(qi(a), qi(b)).expect("positive"), amp))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn rationalize_examples() {
        assert_eq!(rationalize(1.0 / 3.0, 64, 1e-9), Some((1, 3)));
        assert_eq!(rationalize(0.6, 64, 1e-9), Some((3, 5)));
        assert_eq!(rationalize(libm::sqrt(2.0), 64, 1e-9), None);
        let f = FrequencyPair::from_f64(1.0, 3.0).unwrap();
        assert_eq!(f.commensurability, Some((3, 1)));
        let f = FrequencyPair::exact(q(3, 2), q(5, 2)).unwrap();
        assert_eq!(f.commensurability, Some((5, 3)));
    }

    #[test]
    fn spectrum_examples() {
        let f = FrequencyPair::exact(q(1, 2), qi(2)).unwrap();
        assert_eq!(spectrum_exact(&f, ModeSign::Plus, 0, 0), Some(q(5, 4)));
        let w = FrequencyPair::exact(qi(1), qi(1)).unwrap();
        assert_eq!(spectrum_exact(&w, ModeSign::Minus, 0, 1), Some(qi(-1)));
        for n in 0..6 {
            assert_eq!(spectrum_exact(&w, ModeSign::Minus, n, n), Some(qi(0)));
        }
        let b = FockBasis::new(8).unwrap();
        for s in [ModeSign::Plus, ModeSign::Minus] {
            assert!(verify_aniso_spectrum(&SignedModeHamiltonian::new(f, s, 1.0), b, &InteriorMask::margin(0), 1e-12).unwrap().pass());
            let g = FrequencyPair::from_f64(0.7, libm::sqrt(2.0)).unwrap();
            assert!(verify_aniso_spectrum(&SignedModeHamiltonian::new(g, s, 0.5), b, &InteriorMask::margin(0), 1e-12).unwrap().pass());
        }
    }

    #[test]
    fn hidden_examples() {
        let b = FockBasis::new(10).unwrap();
        let f = FrequencyPair::exact(qi(1), qi(3)).unwrap();
        assert_eq!(f.commensurability, Some((3, 1)));
        let lm = aniso_hidden_operator(b, &f, HiddenKind::L, HiddenDirection::Minus).unwrap();
        assert!(lm.apply_state(2, 0).iter().all(|(_, v)| v.norm() < 1e-14));
        let w = FrequencyPair::exact(qi(1), qi(1)).unwrap();
        let jp = aniso_hidden_operator(b, &w, HiddenKind::J, HiddenDirection::Plus).unwrap();
        assert_eq!(jp.apply_state(0, 0), alloc::vec![((1, 1), Complex64::new(1.0, 0.0))]);
        for f in [f, w, FrequencyPair::exact(qi(3), qi(5)).unwrap(), FrequencyPair::from_f64(0.25, 1.0).unwrap()] {
            let r = verify_aniso_hidden(b, &f, 1.0, 1e-12).unwrap();
            assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
        }
        let irr = FrequencyPair::from_f64(1.0, libm::sqrt(2.0)).unwrap();
        assert!(aniso_hidden_operator(b, &irr, HiddenKind::L, HiddenDirection::Plus).is_err());
    }

    #[test]
    fn so11() {
        let b = FockBasis::new(10).unwrap();
        let w = FrequencyPair::exact(q(3, 2), q(3, 2)).unwrap();
        let r = so11_invariant_check(&w, 0.7, 1.3, b, 1e-12).unwrap();
        assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert!(so11_invariant_check(&FrequencyPair::exact(qi(1), qi(2)).unwrap(), 1.0, 1.0, b, 1e-12).is_err());
    }

    #[test]
    fn lissajous_examples() {
        for (_, f, p) in lissajous_fixtures() {
            let r = verify_lissajous(&p, &f, 1e-9, 1e-6).unwrap();
            assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
        }
        let f = FrequencyPair::exact(qi(1), qi(3)).unwrap();
        let seg = LissajousParams { a1: 1.0, b1: 0.5, a2: 0.0, b2: 0.0 };
        assert!(lissajous_samples(&seg, &f, 5.0, 50).iter().all(|s| s.2 == 0.0));
    }
}
