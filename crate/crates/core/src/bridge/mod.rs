//! Closed-form wave functions `P(z, zb) exp(G)` on the plane and the quantum bridge.
//!
//! `z = x1 + i x2`. States are kept as a polynomial times a Gaussian with exponent
//! `G = a z zb + b z + c zb + d`, times `pi^(k/2)` for an integer `k`. The ladder modes act as
//! first-order differential operators with `kappa = sqrt(m omega/hbar)`:
//! `b1- = kappa zb/2 + d_z/kappa`, `b1+ = kappa z/2 - d_zb/kappa`,
//! `b2- = kappa z/2 + d_zb/kappa`, `b2+ = kappa zb/2 - d_z/kappa`.

mod checks;
mod coherent;
mod hermite;
mod quad;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::fockeng::Direction;
use crate::scalar::{factorial_q, q_to_f64, qi, Gq, Surd, Q};

pub use checks::{bridge_constant, verify_bridge_proportionality, verify_intertwining, verify_overlap_matrix, BridgeConstant};
pub use coherent::{coherent_checks, coherent_coefficient, coherent_state};
pub use hermite::{double_sum_hermite, double_sum_norm_ratio, hermite_coeffs, inverse_weierstrass, DoubleSumNorm};
pub use quad::{gauss_hermite, inner_product, orthonormality, QUAD_ORDER};

/// Coefficient field for wave-state algebra: exact surds or doubles.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_surd(s: &Surd) -> Self;
    fn to_c64(&self) -> Complex64;
    fn conj(&self) -> Self;
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn from_q(x: Q) -> Self {
        Self::from_surd(&Surd::from_q(x))
    }
}

impl Scalar for Surd {
    fn zero() -> Self {
        Surd::zero()
    }
    fn one() -> Self {
        Surd::one()
    }
    fn is_zero(&self) -> bool {
        Surd::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_surd(s: &Surd) -> Self {
        s.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Surd::to_c64(self)
    }
    fn conj(&self) -> Self {
        Surd::conj(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_surd(s: &Surd) -> Self {
        s.to_c64()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}

/// Mass, frequency and Planck constant, exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Units {
    pub m: Q,
    pub omega: Q,
    pub hbar: Q,
}

impl Default for Units {
    fn default() -> Self {
        Units { m: Q::one(), omega: Q::one(), hbar: Q::one() }
    }
}

impl Units {
    pub fn new(m: Q, omega: Q, hbar: Q) -> Result<Self> {
        if m <= Q::zero() || omega <= Q::zero() || hbar <= Q::zero() {
            return Err(invalid("m, omega and hbar must be positive"));
        }
        Ok(Units { m, omega, hbar })
    }
    /// `kappa^2 = m omega / hbar`
    pub fn kappa_sq(&self) -> Q {
        self.m * self.omega / self.hbar
    }
    pub fn kappa(&self) -> Surd {
        Surd::sqrt_q(self.kappa_sq())
    }
    pub fn kappa_f64(&self) -> f64 {
        libm::sqrt(q_to_f64(&self.kappa_sq()))
    }
}

/// Polynomial in `z`, `zb`: `(a, b) -> coefficient of z^a zb^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZPoly<S: Scalar> {
    terms: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> Default for ZPoly<S> {
    fn default() -> Self {
        ZPoly { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> ZPoly<S> {
    pub fn zero() -> Self {
        ZPoly::default()
    }
    pub fn constant(c: S) -> Self {
        ZPoly::monomial(0, 0, c)
    }
    pub fn monomial(a: u32, b: u32, c: S) -> Self {
        let mut p = ZPoly::zero();
        p.add_term(a, b, c);
        p
    }
    /// `phi_{n1,n2} = z^n1 zb^n2`
    pub fn jordan(n1: u32, n2: u32) -> Self {
        ZPoly::monomial(n1, n2, S::one())
    }
    pub fn add_term(&mut self, a: u32, b: u32, c: S) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&(a, b)) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert((a, b), v);
        }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &S)> {
        self.terms.iter()
    }
    pub fn coeff(&self, a: u32, b: u32) -> S {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(S::zero)
    }
    pub fn degree(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(x, y), (a, b)| (x.max(*a), y.max(*b)))
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }
    pub fn scale(&self, c: &S) -> Self {
        let mut p = ZPoly::zero();
        for ((a, b), v) in &self.terms {
            p.add_term(*a, *b, v.mul(c));
        }
        p
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for ((a, b), v) in &o.terms {
            p.add_term(*a, *b, v.clone());
        }
        p
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&S::one().neg()))
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut p = ZPoly::zero();
        for ((a, b), v) in &self.terms {
            for ((c, d), w) in &o.terms {
                p.add_term(a + c, b + d, v.mul(w));
            }
        }
        p
    }
    pub fn mul_z(&self) -> Self {
        ZPoly { terms: self.terms.iter().map(|((a, b), v)| ((a + 1, *b), v.clone())).collect() }
    }
    pub fn mul_zb(&self) -> Self {
        ZPoly { terms: self.terms.iter().map(|((a, b), v)| ((*a, b + 1), v.clone())).collect() }
    }
    pub fn d_z(&self) -> Self {
        let mut p = ZPoly::zero();
        for ((a, b), v) in &self.terms {
            if *a > 0 {
                p.add_term(a - 1, *b, v.mul(&S::from_q(qi(*a as i128))));
            }
        }
        p
    }
    pub fn d_zb(&self) -> Self {
        let mut p = ZPoly::zero();
        for ((a, b), v) in &self.terms {
            if *b > 0 {
                p.add_term(*a, b - 1, v.mul(&S::from_q(qi(*b as i128))));
            }
        }
        p
    }
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, ((a, b), v)| acc + v.to_c64() * z.powu(*a) * zb.powu(*b))
    }
    pub fn to_c64(&self) -> ZPoly<Complex64> {
        let mut p = ZPoly::zero();
        for ((a, b), v) in &self.terms {
            p.add_term(*a, *b, v.to_c64());
        }
        p
    }
    /// Complex conjugate as a function of `(x1, x2)`: `z^a zb^b -> conj(c) z^b zb^a`.
    pub fn conj(&self) -> Self {
        let mut p = ZPoly::zero();
        for ((a, b), v) in &self.terms {
            p.add_term(*b, *a, v.conj());
        }
        p
    }
}

/// Exponent `zz z zb + z_lin z + zb_lin zb + konst`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gaussian<S: Scalar> {
    pub zz: S,
    pub z_lin: S,
    pub zb_lin: S,
    pub konst: S,
}

impl<S: Scalar> Gaussian<S> {
    pub fn radial(a: S) -> Self {
        Gaussian { zz: a, z_lin: S::zero(), zb_lin: S::zero(), konst: S::zero() }
    }
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zz.to_c64() * z * z.conj() + self.z_lin.to_c64() * z + self.zb_lin.to_c64() * z.conj() + self.konst.to_c64()
    }
    fn to_c64(&self) -> Gaussian<Complex64> {
        Gaussian { zz: self.zz.to_c64(), z_lin: self.z_lin.to_c64(), zb_lin: self.zb_lin.to_c64(), konst: self.konst.to_c64() }
    }
    fn conj(&self) -> Self {
        Gaussian { zz: self.zz.conj(), z_lin: self.zb_lin.conj(), zb_lin: self.z_lin.conj(), konst: self.konst.conj() }
    }
}

/// `pi^(sqrt_pi_power/2) * poly * exp(gauss)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveState<S: Scalar> {
    pub poly: ZPoly<S>,
    pub gauss: Gaussian<S>,
    pub sqrt_pi_power: i32,
    pub units: Units,
}

impl<S: Scalar> WaveState<S> {
    /// Normalisable when the real part of the `z zb` coefficient is negative.
    pub fn is_physical(&self) -> bool {
        self.gauss.zz.to_c64().re < 0.0
    }
    fn with_poly(&self, poly: ZPoly<S>) -> Self {
        WaveState { poly, gauss: self.gauss.clone(), sqrt_pi_power: self.sqrt_pi_power, units: self.units }
    }
    pub fn scale(&self, c: &S) -> Self {
        self.with_poly(self.poly.scale(c))
    }
    fn same_frame(&self, o: &Self) -> Result<()> {
        if self.gauss != o.gauss || self.sqrt_pi_power != o.sqrt_pi_power || self.units != o.units {
            return Err(invalid("states with different Gaussian factors cannot be added"));
        }
        Ok(())
    }
    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_frame(o)?;
        Ok(self.with_poly(self.poly.add(&o.poly)))
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_frame(o)?;
        Ok(self.with_poly(self.poly.sub(&o.poly)))
    }
    pub fn mul_z(&self) -> Self {
        self.with_poly(self.poly.mul_z())
    }
    pub fn mul_zb(&self) -> Self {
        self.with_poly(self.poly.mul_zb())
    }
    /// `d/dz (P e^G) = (P_z + P (a zb + b)) e^G`
    pub fn d_z(&self) -> Self {
        let g = &self.gauss;
        let extra = ZPoly::monomial(0, 1, g.zz.clone()).add(&ZPoly::constant(g.z_lin.clone()));
        self.with_poly(self.poly.d_z().add(&self.poly.mul(&extra)))
    }
    /// `d/dzb (P e^G) = (P_zb + P (a z + c)) e^G`
    pub fn d_zb(&self) -> Self {
        let g = &self.gauss;
        let extra = ZPoly::monomial(1, 0, g.zz.clone()).add(&ZPoly::constant(g.zb_lin.clone()));
        self.with_poly(self.poly.d_zb().add(&self.poly.mul(&extra)))
    }
    /// Circular ladder `b_mode^dir` as a differential operator.
    pub fn ladder(&self, mode: u8, dir: Direction) -> Self {
        let k = S::from_surd(&self.units.kappa());
        let half_k = k.mul(&S::from_q(Q::new(1, 2)));
        let inv_k = S::from_surd(&self.units.kappa().recip_monomial().expect("kappa is a single root"));
        let (mult, deriv, sign) = match (mode, dir) {
            (1, Direction::Lower) => (self.mul_zb(), self.d_z(), S::one()),
            (1, Direction::Raise) => (self.mul_z(), self.d_zb(), S::one().neg()),
            (2, Direction::Lower) => (self.mul_z(), self.d_zb(), S::one()),
            (_, _) => (self.mul_zb(), self.d_z(), S::one().neg()),
        };
        self.with_poly(mult.poly.scale(&half_k).add(&deriv.poly.scale(&inv_k.mul(&sign))))
    }
    /// `hbar (z d_z - zb d_zb)`
    pub fn angular_momentum(&self) -> Self {
        let h = S::from_q(self.units.hbar);
        self.with_poly(self.d_z().mul_z().poly.sub(&self.d_zb().mul_zb().poly).scale(&h))
    }
    /// `hbar omega (ell1 N1 + ell2 N2 + 1)` with the number operators as ladder products.
    pub fn hamiltonian(&self, ell1: Q, ell2: Q) -> Self {
        let n1 = self.ladder(1, Direction::Lower).ladder(1, Direction::Raise);
        let n2 = self.ladder(2, Direction::Lower).ladder(2, Direction::Raise);
        let hw = self.units.hbar * self.units.omega;
        let p = n1.poly.scale(&S::from_q(ell1)).add(&n2.poly.scale(&S::from_q(ell2))).add(&self.poly);
        self.with_poly(p.scale(&S::from_q(hw)))
    }
    /// Value at `(x1, x2)`.
    pub fn eval(&self, x1: f64, x2: f64) -> Complex64 {
        let (p, g) = self.eval_parts(x1, x2);
        p * g.exp()
    }
    /// Polynomial value including the power of pi, and the exponent.
    pub fn eval_parts(&self, x1: f64, x2: f64) -> (Complex64, Complex64) {
        let z = Complex64::new(x1, x2);
        let pi = libm::pow(core::f64::consts::PI, self.sqrt_pi_power as f64 / 2.0);
        (self.poly.eval(z) * pi, self.gauss.eval(z))
    }
    pub fn to_c64(&self) -> WaveState<Complex64> {
        WaveState { poly: self.poly.to_c64(), gauss: self.gauss.to_c64(), sqrt_pi_power: self.sqrt_pi_power, units: self.units }
    }
    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        WaveState { poly: self.poly.conj(), gauss: self.gauss.conj(), sqrt_pi_power: self.sqrt_pi_power, units: self.units }
    }
}

/// Generators of the free particle acting on polynomials in `z`, `zb` (at `t = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FreeGen {
    /// `-(2 hbar^2/m) d_z d_zb`
    H,
    /// `m z zb / 2`
    K,
    /// `2iD = hbar (z d_z + zb d_zb + 1)`
    D2i,
    /// `hbar (z d_z - zb d_zb)`
    Pphi,
    /// `p+ = p1 + i p2 = -2i hbar d_zb`
    Pplus,
    /// `p- = p1 - i p2 = -2i hbar d_z`
    Pminus,
    /// `xi+ = m z`
    XiPlus,
    /// `xi- = m zb`
    XiMinus,
}

pub fn act_free<S: Scalar>(gen: FreeGen, s: &ZPoly<S>, units: &Units) -> ZPoly<S> {
    let (m, h) = (units.m, units.hbar);
    let i2h = S::from_surd(&Surd::from_gq(Gq::new(Q::zero(), -qi(2) * h)));
    match gen {
        FreeGen::H => s.d_z().d_zb().scale(&S::from_q(-qi(2) * h * h / m)),
        FreeGen::K => s.mul_z().mul_zb().scale(&S::from_q(m / qi(2))),
        FreeGen::D2i => s.d_z().mul_z().add(&s.d_zb().mul_zb()).add(s).scale(&S::from_q(h)),
        FreeGen::Pphi => s.d_z().mul_z().sub(&s.d_zb().mul_zb()).scale(&S::from_q(h)),
        FreeGen::Pplus => s.d_zb().scale(&i2h),
        FreeGen::Pminus => s.d_z().scale(&i2h),
        FreeGen::XiPlus => s.mul_z().scale(&S::from_q(m)),
        FreeGen::XiMinus => s.mul_zb().scale(&S::from_q(m)),
    }
}

/// The bridge: grading `2^{(n1+n2+1)/2}` per monomial, then `exp(H/(2 hbar omega))` as a
/// terminating series, then the Gaussian `exp(-m omega z zb/(2 hbar))`.
pub fn cbt_apply<S: Scalar>(s: &ZPoly<S>, units: &Units) -> WaveState<S> {
    let mut graded = ZPoly::zero();
    for ((a, b), v) in s.terms() {
        graded.add_term(*a, *b, v.mul(&S::from_surd(&Surd::pow_sqrt2((a + b + 1) as i32))));
    }
    let param = Q::one() / (qi(2) * units.hbar * units.omega);
    let mut out = graded.clone();
    let mut term = graded;
    let mut k = 1i128;
    loop {
        term = act_free(FreeGen::H, &term, units).scale(&S::from_q(param / qi(k)));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
        k += 1;
    }
    WaveState { poly: out, gauss: Gaussian::radial(S::from_q(-units.kappa_sq() / qi(2))), sqrt_pi_power: 0, units: *units }
}

/// `Psi_{0,0} = (kappa/sqrt(pi)) exp(-kappa^2 z zb/2)`.
pub fn ground_state(units: &Units) -> WaveState<Surd> {
    WaveState { poly: ZPoly::constant(units.kappa()), gauss: Gaussian::radial(Surd::from_q(-units.kappa_sq() / qi(2))), sqrt_pi_power: -1, units: *units }
}

/// `Psi_{n1,n2} = (b1+)^n1 (b2+)^n2 Psi_{0,0} / sqrt(n1! n2!)`, exact.
pub fn eigenstate(n1: u32, n2: u32, units: &Units) -> WaveState<Surd> {
    let mut s = ground_state(units);
    for _ in 0..n2 {
        s = s.ladder(2, Direction::Raise);
    }
    for _ in 0..n1 {
        s = s.ladder(1, Direction::Raise);
    }
    s.scale(&Surd::sqrt_q(Q::one() / (factorial_q(n1) * factorial_q(n2))))
}

/// Same construction in double precision, for indices where exact factorials get large.
pub fn eigenstate_c64(n1: u32, n2: u32, units: &Units) -> WaveState<Complex64> {
    let mut s = ground_state(units).to_c64();
    for k in 0..n2 {
        s = s.ladder(2, Direction::Raise).scale(&Complex64::new(1.0 / libm::sqrt((k + 1) as f64), 0.0));
    }
    for k in 0..n1 {
        s = s.ladder(1, Direction::Raise).scale(&Complex64::new(1.0 / libm::sqrt((k + 1) as f64), 0.0));
    }
    s
}

/// Exact ratio `a / b` when `a` is a scalar multiple of `b` (same Gaussian), else `None`.
/// The power of pi is returned separately as `pi^(k/2)`.
pub fn exact_ratio(a: &WaveState<Surd>, b: &WaveState<Surd>) -> Option<(Surd, i32)> {
    if a.gauss != b.gauss || a.units != b.units || b.poly.is_zero() {
        return None;
    }
    let (key, bv) = b.poly.terms().next_back()?;
    let av = a.poly.coeff(key.0, key.1);
    let inv = bv.recip_monomial().or_else(|| bv.as_gq().map(|g| Surd::from_gq(g.recip())))?;
    let c = &av * &inv;
    if a.poly != b.poly.scale(&c) {
        return None;
    }
    Some((c, a.sqrt_pi_power - b.sqrt_pi_power))
}

pub(crate) fn grid_points(n: usize, half_width: f64) -> Vec<(f64, f64)> {
    let step = 2.0 * half_width / (n - 1) as f64;
    let mut v = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            v.push((-half_width + step * i as f64, -half_width + step * j as f64));
        }
    }
    v
}

pub(crate) fn label(n1: u32, n2: u32) -> alloc::string::String {
    format!("({},{})", n1, n2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn free_actions() {
        let u = Units::default();
        let p = act_free(FreeGen::H, &ZPoly::<Surd>::jordan(1, 1), &u);
        assert_eq!(p, ZPoly::constant(Surd::int(-2)));
        assert!(act_free(FreeGen::H, &ZPoly::<Surd>::jordan(1, 0), &u).is_zero());
        assert_eq!(act_free(FreeGen::D2i, &ZPoly::<Surd>::jordan(0, 0), &u), ZPoly::constant(Surd::one()));
        assert_eq!(act_free(FreeGen::K, &ZPoly::<Surd>::jordan(1, 2), &u), ZPoly::monomial(2, 3, Surd::from_q(q(1, 2))));
        assert_eq!(act_free(FreeGen::Pphi, &ZPoly::<Surd>::jordan(3, 1), &u), ZPoly::monomial(3, 1, Surd::int(2)));
        assert_eq!(act_free(FreeGen::Pminus, &ZPoly::<Surd>::jordan(2, 0), &u), ZPoly::monomial(1, 0, Surd::from_gq(Gq::new(q(0, 1), qi(-4)))));
    }

    #[test]
    fn bridge_examples() {
        let u = Units::default();
        let s = cbt_apply(&ZPoly::<Surd>::jordan(0, 0), &u);
        assert_eq!(s.poly, ZPoly::constant(Surd::sqrt_int(2)));
        assert_eq!(s.gauss.zz, Surd::from_q(q(-1, 2)));
        let s = cbt_apply(&ZPoly::<Surd>::jordan(1, 0), &u);
        assert_eq!(s.poly, ZPoly::monomial(1, 0, Surd::int(2)));
        let s = cbt_apply(&ZPoly::<Surd>::jordan(1, 1), &u);
        let two_sqrt2 = Surd::sqrt_int(8);
        assert_eq!(s.poly, ZPoly::monomial(1, 1, two_sqrt2.clone()).sub(&ZPoly::constant(two_sqrt2)));
    }

    #[test]
    fn eigenstate_examples() {
        let u = Units::default();
        let g = ground_state(&u);
        assert_eq!(g.poly, ZPoly::constant(Surd::one()));
        assert_eq!(g.sqrt_pi_power, -1);
        let s = eigenstate(2, 1, &u);
        let lz = s.angular_momentum();
        assert_eq!(exact_ratio(&lz, &s), Some((Surd::one(), 0)));
        let cp = crate::Coupling::new(q(1, 3));
        let s = eigenstate(1, 0, &u);
        let h = s.hamiltonian(cp.ell1(), cp.ell2());
        assert_eq!(exact_ratio(&h, &s), Some((Surd::from_q(cp.ell1() + Q::one()), 0)));
    }

    #[test]
    fn ladders_lower_ground_to_zero() {
        for u in [Units::default(), Units::new(q(2, 1), q(3, 2), q(5, 7)).unwrap()] {
            let g = ground_state(&u);
            assert!(g.ladder(1, Direction::Lower).poly.is_zero());
            assert!(g.ladder(2, Direction::Lower).poly.is_zero());
            let up = g.ladder(1, Direction::Raise);
            let back = up.ladder(1, Direction::Lower);
            assert_eq!(back, g);
        }
    }
}
