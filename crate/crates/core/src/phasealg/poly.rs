use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::scalar::{Gq, Surd, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Variables `(x1, x2, p1, p2)`.
    Canonical,
    /// Variables `(b1+, b1-, b2+, b2-)`.
    Circular,
}

impl Basis {
    pub fn var_names(&self) -> [&'static str; 4] {
        match self {
            Basis::Canonical => ["x1", "x2", "p1", "p2"],
            Basis::Circular => ["b1+", "b1-", "b2+", "b2-"],
        }
    }
}

/// Mass and frequency, both exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub m: Q,
    pub omega: Q,
}

impl Default for Params {
    fn default() -> Self {
        Params { m: Q::one(), omega: Q::one() }
    }
}

pub type Exps = [u8; 4];

/// Polynomial in four phase-space variables. Each term carries `e^{i mu omega t}`.
#[derive(Clone, PartialEq, Eq)]
pub struct PhasePoly {
    basis: Basis,
    params: Params,
    terms: BTreeMap<(Exps, Q), Surd>,
}

impl fmt::Debug for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.basis.var_names();
        let mut first = true;
        for ((e, mu), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (k, n) in e.iter().enumerate() {
                match n {
                    0 => {}
                    1 => write!(f, "*{}", names[k])?,
                    _ => write!(f, "*{}^{}", names[k], n)?,
                }
            }
            if !mu.is_zero() {
                write!(f, "*e^(i*({})*wt)", Gq::real(*mu))?;
            }
        }
        Ok(())
    }
}

impl PhasePoly {
    pub fn zero(basis: Basis, params: Params) -> Self {
        PhasePoly { basis, params, terms: BTreeMap::new() }
    }
    pub fn constant(basis: Basis, params: Params, c: Surd) -> Self {
        PhasePoly::monomial(basis, params, [0; 4], c, Q::zero())
    }
    pub fn monomial(basis: Basis, params: Params, exps: Exps, c: Surd, mu: Q) -> Self {
        let mut p = PhasePoly::zero(basis, params);
        p.add_term(exps, mu, &c);
        p
    }
    /// The `idx`-th variable of the basis (see [`Basis::var_names`]).
    pub fn var(basis: Basis, params: Params, idx: usize) -> Self {
        let mut e = [0u8; 4];
        e[idx] = 1;
        PhasePoly::monomial(basis, params, e, Surd::one(), Q::zero())
    }
    pub fn basis(&self) -> Basis {
        self.basis
    }
    pub fn params(&self) -> Params {
        self.params
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Q, &Surd)> {
        self.terms.iter().map(|((e, mu), c)| (e, mu, c))
    }
    pub fn coeff(&self, exps: Exps, mu: Q) -> Surd {
        self.terms.get(&(exps, mu)).cloned().unwrap_or_default()
    }
    pub(crate) fn add_term(&mut self, exps: Exps, mu: Q, c: &Surd) {
        if c.is_zero() {
            return;
        }
        let key = (exps, mu);
        let e = self.terms.entry(key).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(e, _)| e.iter().map(|&x| x as u32).sum()).max().unwrap_or(0)
    }
    /// Distinct time frequencies present.
    pub fn frequencies(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.terms.keys().map(|(_, mu)| *mu).collect();
        v.sort();
        v.dedup();
        v
    }
    pub fn is_time_independent(&self) -> bool {
        self.terms.keys().all(|(_, mu)| mu.is_zero())
    }
    pub fn scale(&self, c: &Surd) -> Self {
        let mut r = PhasePoly::zero(self.basis, self.params);
        for ((e, mu), v) in &self.terms {
            r.add_term(*e, *mu, &(v * c));
        }
        r
    }
    pub fn scale_q(&self, c: Q) -> Self {
        self.scale(&Surd::from_q(c))
    }
    pub fn scale_gq(&self, c: Gq) -> Self {
        self.scale(&Surd::from_gq(c))
    }
    /// Multiply every term by `e^{i nu omega t}`.
    pub fn shift_mu(&self, nu: Q) -> Self {
        let mut r = PhasePoly::zero(self.basis, self.params);
        for ((e, mu), v) in &self.terms {
            r.add_term(*e, *mu + nu, v);
        }
        r
    }
    /// Replace every frequency by `mu`.
    pub fn with_mu(&self, mu: Q) -> Self {
        let mut r = PhasePoly::zero(self.basis, self.params);
        for ((e, _), v) in &self.terms {
            r.add_term(*e, mu, v);
        }
        r
    }
    /// Value at `t = 0`: all exponential factors drop.
    pub fn at_time_zero(&self) -> Self {
        self.with_mu(Q::zero())
    }
    pub fn pow(&self, k: u32) -> Self {
        let mut r = PhasePoly::constant(self.basis, self.params, Surd::one());
        for _ in 0..k {
            r = &r * self;
        }
        r
    }
    fn assert_compatible(&self, o: &PhasePoly) {
        assert_eq!(self.params, o.params, "phase polynomials carry different (m, omega)");
    }
    /// Bring `o` into this polynomial's basis.
    pub(crate) fn aligned(&self, o: &PhasePoly) -> PhasePoly {
        self.assert_compatible(o);
        if o.basis == self.basis {
            o.clone()
        } else {
            o.to_basis(self.basis)
        }
    }

    /// Complex conjugate, treating canonical variables as real.
    pub fn conj(&self) -> Self {
        let mut r = PhasePoly::zero(self.basis, self.params);
        for ((e, mu), v) in &self.terms {
            let e2 = match self.basis {
                Basis::Canonical => *e,
                Basis::Circular => [e[1], e[0], e[3], e[2]],
            };
            r.add_term(e2, -*mu, &v.conj());
        }
        r
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut r = PhasePoly::zero(self.basis, self.params);
        for ((e, mu), v) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[idx] -= 1;
            r.add_term(e2, *mu, &v.scale_q(Q::from_integer(e[idx] as i128)));
        }
        r
    }

    /// Substitute each variable by a polynomial (in a possibly different basis).
    pub fn substitute(&self, images: &[PhasePoly; 4]) -> PhasePoly {
        let target = images[0].basis;
        let params = images[0].params;
        let mut out = PhasePoly::zero(target, params);
        // cache powers
        let mut powers: [Vec<PhasePoly>; 4] = Default::default();
        for (k, img) in images.iter().enumerate() {
            powers[k].push(PhasePoly::constant(target, params, Surd::one()));
            let maxe = self.terms.keys().map(|(e, _)| e[k]).max().unwrap_or(0);
            for j in 1..=maxe as usize {
                let next = &powers[k][j - 1] * img;
                powers[k].push(next);
            }
        }
        for ((e, mu), v) in &self.terms {
            let mut t = PhasePoly::monomial(target, params, [0; 4], v.clone(), *mu);
            for k in 0..4 {
                if e[k] > 0 {
                    t = &t * &powers[k][e[k] as usize];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Exact change of basis.
    pub fn to_basis(&self, target: Basis) -> PhasePoly {
        if target == self.basis {
            return self.clone();
        }
        let images = match target {
            Basis::Circular => canonical_in_circular(self.params),
            Basis::Canonical => circular_in_canonical(self.params),
        };
        self.substitute(&images)
    }

    /// Evaluate with the four variable values of this basis at time `t`.
    pub fn eval(&self, vars: [Complex64; 4], t: f64) -> Complex64 {
        let w = crate::scalar::q_to_f64(&self.params.omega);
        let mut acc = Complex64::new(0.0, 0.0);
        for ((e, mu), v) in &self.terms {
            let mut term = v.to_c64();
            for k in 0..4 {
                for _ in 0..e[k] {
                    term *= vars[k];
                }
            }
            if !mu.is_zero() {
                let ph = crate::scalar::q_to_f64(mu) * w * t;
                term *= Complex64::new(libm::cos(ph), libm::sin(ph));
            }
            acc += term;
        }
        acc
    }

    /// Largest coefficient magnitude, 0 for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| {
            let v = c.abs_f64();
            if v > a {
                v
            } else {
                a
            }
        })
    }

    pub fn to_string_short(&self) -> String {
        alloc::format!("{}", self)
    }
}

/// `sqrt(m omega)` as an exact surd.
pub(crate) fn sqrt_m_omega(p: Params) -> Surd {
    Surd::sqrt_q(p.m * p.omega)
}

/// Canonical variables written in the circular basis.
pub fn canonical_in_circular(p: Params) -> [PhasePoly; 4] {
    let s = sqrt_m_omega(p);
    let inv = s.recip_monomial().expect("sqrt(m omega) is a single root");
    let half = Q::new(1, 2);
    let c = Basis::Circular;
    let v = |i| PhasePoly::var(c, p, i);
    let (b1p, b1m, b2p, b2m) = (v(0), v(1), v(2), v(3));
    let i = Gq::i();
    let x1 = (&(&(&b1p + &b2p) + &b1m) + &b2m).scale(&inv.scale_q(half));
    let x2 = (&(&(&b1p.scale_gq(-i) + &b2p.scale_gq(i)) + &b1m.scale_gq(i)) + &b2m.scale_gq(-i)).scale(&inv.scale_q(half));
    let p1 = (&(&(&b1p + &b2p) - &b1m) - &b2m).scale(&s.scale_gq(i.scale(half)));
    let p2 = (&(&(&b1p - &b2p) + &b1m) - &b2m).scale(&s.scale_q(half));
    [x1, x2, p1, p2]
}

/// Circular variables written in the canonical basis.
pub fn circular_in_canonical(p: Params) -> [PhasePoly; 4] {
    let s = sqrt_m_omega(p);
    let inv = s.recip_monomial().expect("sqrt(m omega) is a single root");
    let half = Q::new(1, 2);
    let c = Basis::Canonical;
    let v = |i| PhasePoly::var(c, p, i);
    let (x1, x2, p1, p2) = (v(0), v(1), v(2), v(3));
    let i = Gq::i();
    let sh = s.scale_q(half);
    let ih = inv.scale_q(half);
    let b1m = &(&x1 + &x2.scale_gq(-i)).scale(&sh) + &(&p1.scale_gq(i) + &p2).scale(&ih);
    let b1p = &(&x1 + &x2.scale_gq(i)).scale(&sh) + &(&p1.scale_gq(-i) + &p2).scale(&ih);
    let b2m = &(&x1 + &x2.scale_gq(i)).scale(&sh) + &(&p1.scale_gq(i) - &p2).scale(&ih);
    let b2p = &(&x1 + &x2.scale_gq(-i)).scale(&sh) + &(&p1.scale_gq(-i) - &p2).scale(&ih);
    [b1p, b1m, b2p, b2m]
}

impl<'a> Add<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn add(self, o: &PhasePoly) -> PhasePoly {
        let o = self.aligned(o);
        let mut r = self.clone();
        for ((e, mu), v) in &o.terms {
            r.add_term(*e, *mu, v);
        }
        r
    }
}

impl<'a> Sub<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn sub(self, o: &PhasePoly) -> PhasePoly {
        let o = self.aligned(o);
        let mut r = self.clone();
        for ((e, mu), v) in &o.terms {
            r.add_term(*e, *mu, &-v);
        }
        r
    }
}

impl<'a> Mul<&'a PhasePoly> for &'a PhasePoly {
    type Output = PhasePoly;
    fn mul(self, o: &PhasePoly) -> PhasePoly {
        let o = self.aligned(o);
        let mut r = PhasePoly::zero(self.basis, self.params);
        for ((ea, ma), va) in &self.terms {
            for ((eb, mb), vb) in &o.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                r.add_term(e, *ma + *mb, &(va * vb));
            }
        }
        r
    }
}

impl Neg for &PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        self.scale(&Surd::int(-1))
    }
}

impl Add for PhasePoly {
    type Output = PhasePoly;
    fn add(self, o: PhasePoly) -> PhasePoly {
        &self + &o
    }
}
impl Sub for PhasePoly {
    type Output = PhasePoly;
    fn sub(self, o: PhasePoly) -> PhasePoly {
        &self - &o
    }
}
impl Mul for PhasePoly {
    type Output = PhasePoly;
    fn mul(self, o: PhasePoly) -> PhasePoly {
        &self * &o
    }
}
