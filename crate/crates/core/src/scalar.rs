//! Exact scalars: rationals, Gaussian rationals and finite sums of square roots.
//!
//! A [`Surd`] is `sum_k c_k * sqrt(k)` with `k` squarefree and `c_k` a Gaussian
//! rational. The representation is canonical, so equality and zero tests are exact.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational.
pub type Q = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn q_to_f64(x: &Q) -> f64 {
    let n = *x.numer() as f64;
    let d = *x.denom() as f64;
    n / d
}

/// Integer power of a rational, negative exponents allowed.
pub fn q_pow(x: Q, e: i32) -> Q {
    let mut r = Q::one();
    let base = if e < 0 { x.recip() } else { x };
    for _ in 0..e.unsigned_abs() {
        r *= base;
    }
    r
}

/// Gaussian rational `re + i im`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gq {
    pub re: Q,
    pub im: Q,
}

impl Default for Gq {
    fn default() -> Self {
        Gq::zero()
    }
}

impl Gq {
    pub const fn new(re: Q, im: Q) -> Self {
        Gq { re, im }
    }
    pub fn real(re: Q) -> Self {
        Gq { re, im: Q::zero() }
    }
    pub fn zero() -> Self {
        Gq::real(Q::zero())
    }
    pub fn one() -> Self {
        Gq::real(Q::one())
    }
    pub fn i() -> Self {
        Gq { re: Q::zero(), im: Q::one() }
    }
    pub fn int(n: i128) -> Self {
        Gq::real(qi(n))
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        Gq { re: self.re, im: -self.im }
    }
    pub fn norm_sqr(&self) -> Q {
        self.re * self.re + self.im * self.im
    }
    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Gq { re: self.re / n, im: -self.im / n }
    }
    pub fn scale(&self, k: Q) -> Self {
        Gq { re: self.re * k, im: self.im * k }
    }
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }
    pub fn powi(&self, e: u32) -> Self {
        let mut r = Gq::one();
        for _ in 0..e {
            r = r * *self;
        }
        r
    }
}

impl Add for Gq {
    type Output = Gq;
    fn add(self, o: Gq) -> Gq {
        Gq { re: self.re + o.re, im: self.im + o.im }
    }
}
impl Sub for Gq {
    type Output = Gq;
    fn sub(self, o: Gq) -> Gq {
        Gq { re: self.re - o.re, im: self.im - o.im }
    }
}
impl Mul for Gq {
    type Output = Gq;
    fn mul(self, o: Gq) -> Gq {
        Gq {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}
impl Div for Gq {
    type Output = Gq;
    fn div(self, o: Gq) -> Gq {
        self * o.recip()
    }
}
impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re, im: -self.im }
    }
}

fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        alloc::format!("{}", x.numer())
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_q(&self.re)),
            (true, false) => write!(f, "{}i", fmt_q(&self.im)),
            (false, false) => write!(f, "({}{}{}i)", fmt_q(&self.re), if self.im.is_negative() { "" } else { "+" }, fmt_q(&self.im)),
        }
    }
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = libm::sqrt(n as f64) as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Split `n = s^2 * r` with `r` squarefree (up to factors above the trial bound,
/// which only occur for inputs far beyond anything used here).
pub fn split_square(mut n: u128) -> (u128, u128) {
    if n == 0 {
        return (0, 1);
    }
    let mut outside: u128 = 1;
    let mut rad: u128 = 1;
    let mut p: u128 = 2;
    while p * p <= n && p < 1_000_000 {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            outside *= p;
        }
        if e % 2 == 1 {
            rad *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        let s = isqrt(n);
        if s * s == n {
            outside *= s;
        } else {
            rad *= n;
        }
    }
    (outside, rad)
}

/// Exact element of the field generated by square roots over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct Surd {
    terms: BTreeMap<u64, Gq>,
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *k == 1 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{}*sqrt({})", c, k)?;
            }
        }
        Ok(())
    }
}

impl Surd {
    pub fn zero() -> Self {
        Surd { terms: BTreeMap::new() }
    }
    pub fn one() -> Self {
        Surd::from_gq(Gq::one())
    }
    pub fn i() -> Self {
        Surd::from_gq(Gq::i())
    }
    pub fn int(n: i128) -> Self {
        Surd::from_gq(Gq::int(n))
    }
    pub fn from_q(x: Q) -> Self {
        Surd::from_gq(Gq::real(x))
    }
    pub fn from_gq(c: Gq) -> Self {
        let mut s = Surd::zero();
        s.push(1, c);
        s
    }
    /// `c * sqrt(k)` for an arbitrary positive integer `k`.
    pub fn sqrt_int(k: u128) -> Self {
        let (o, r) = split_square(k);
        let mut s = Surd::zero();
        s.push(r as u64, Gq::int(o as i128));
        s
    }
    /// Principal square root of a rational; negative inputs give `i sqrt(|x|)`.
    pub fn sqrt_q(x: Q) -> Self {
        if x.is_zero() {
            return Surd::zero();
        }
        let neg = x.is_negative();
        let a = x.abs();
        let n = *a.numer() as u128;
        let d = *a.denom() as u128;
        let (o, r) = split_square(n * d);
        let coeff = Q::new(o as i128, d as i128);
        let mut s = Surd::zero();
        s.push(r as u64, if neg { Gq::new(Q::zero(), coeff) } else { Gq::real(coeff) });
        s
    }
    /// `2^(k/2)` for any integer `k`.
    pub fn pow_sqrt2(k: i32) -> Self {
        let half = k.div_euclid(2);
        let r = q_pow(qi(2), half);
        if k.rem_euclid(2) == 0 {
            Surd::from_q(r)
        } else {
            Surd::sqrt_int(2).scale_q(r)
        }
    }
    fn push(&mut self, k: u64, c: Gq) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Gq::zero);
        *e = *e + c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (u64, Gq)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, *c))
    }
    /// The value when it is a Gaussian rational.
    pub fn as_gq(&self) -> Option<Gq> {
        match self.terms.len() {
            0 => Some(Gq::zero()),
            1 => self.terms.get(&1).copied(),
            _ => None,
        }
    }
    pub fn as_q(&self) -> Option<Q> {
        self.as_gq().filter(|g| g.im.is_zero()).map(|g| g.re)
    }
    pub fn conj(&self) -> Self {
        Surd { terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect() }
    }
    pub fn scale_q(&self, x: Q) -> Self {
        self.scale_gq(Gq::real(x))
    }
    pub fn scale_gq(&self, x: Gq) -> Self {
        if x.is_zero() {
            return Surd::zero();
        }
        Surd { terms: self.terms.iter().map(|(k, c)| (*k, *c * x)).collect() }
    }
    pub fn to_c64(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            z += c.to_c64() * libm::sqrt(*k as f64);
        }
        z
    }
    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }
    pub fn powi(&self, e: u32) -> Self {
        let mut r = Surd::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }
    /// Exact inverse when the value is a Gaussian rational times a single root.
    pub fn recip_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next().map(|(k, c)| (*k, *c))?;
        // 1/(c sqrt k) = sqrt k / (c k)
        let mut s = Surd::zero();
        s.push(k, c.recip().scale(Q::new(1, k as i128)));
        Some(s)
    }
    /// Radicands present in the expansion.
    pub fn radicands(&self) -> Vec<u64> {
        self.terms.keys().copied().collect()
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, o: &Surd) -> Surd {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.push(*k, *c);
        }
        r
    }
}
impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, o: &Surd) -> Surd {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.push(*k, -*c);
        }
        r
    }
}
impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        let mut r = Surd::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let g = a.gcd(b);
                let rad = (a / g) * (b / g);
                r.push(rad, (*ca * *cb).scale(qi(g as i128)));
            }
        }
        r
    }
}
impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { terms: self.terms.iter().map(|(k, c)| (*k, -*c)).collect() }
    }
}
impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        &self + &o
    }
}
impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        &self - &o
    }
}
impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        &self * &o
    }
}
impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}
impl AddAssign<&Surd> for Surd {
    fn add_assign(&mut self, o: &Surd) {
        for (k, c) in &o.terms {
            self.push(*k, *c);
        }
    }
}
impl SubAssign<&Surd> for Surd {
    fn sub_assign(&mut self, o: &Surd) {
        for (k, c) in &o.terms {
            self.push(*k, -*c);
        }
    }
}

/// `n!` as a rational.
pub fn factorial_q(n: u32) -> Q {
    let mut r = Q::one();
    for k in 2..=n {
        r *= qi(k as i128);
    }
    r
}

pub fn factorial_f64(n: u32) -> f64 {
    (2..=n).fold(1.0, |a, k| a * k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_square_small() {
        assert_eq!(split_square(12), (2, 3));
        assert_eq!(split_square(49), (7, 1));
        assert_eq!(split_square(30), (1, 30));
    }

    #[test]
    fn sqrt_products_collapse() {
        let s2 = Surd::sqrt_int(2);
        let s6 = Surd::sqrt_int(6);
        let s3 = Surd::sqrt_int(3);
        assert_eq!(&s2 * &s6, Surd::sqrt_int(12));
        assert_eq!(&s2 * &s3, s6);
        assert_eq!(&s2 * &s2, Surd::int(2));
    }

    #[test]
    fn sqrt_of_fraction() {
        let s = Surd::sqrt_q(q(1, 2));
        assert_eq!(&s * &s, Surd::from_q(q(1, 2)));
        let t = Surd::sqrt_q(q(-4, 9));
        assert_eq!(t, Surd::from_gq(Gq::new(Q::zero(), q(2, 3))));
    }

    #[test]
    fn pow_sqrt2_signs() {
        assert_eq!(Surd::pow_sqrt2(-1), Surd::sqrt_int(2).scale_q(q(1, 2)));
        assert_eq!(&Surd::pow_sqrt2(3) * &Surd::pow_sqrt2(-3), Surd::one());
    }

    #[test]
    fn recip_monomial_inverts() {
        let s = Surd::sqrt_int(6).scale_gq(Gq::new(qi(1), qi(2)));
        let r = s.recip_monomial().unwrap();
        assert_eq!(&s * &r, Surd::one());
    }
}
