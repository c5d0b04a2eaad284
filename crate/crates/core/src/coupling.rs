//! Coupling constant `g`, mode weights and phase tags.

use alloc::format;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{q_to_f64, qi, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Phase {
    IsotropicEuclid,
    Euclid,
    Landau,
    Minkowski,
    IsotropicMink,
}

/// Which family of higher-order integrals is time independent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HiddenKind {
    /// `(b1+)^s1 (b2-)^s2`
    L,
    /// `(b1+)^s1 (b2+)^s2`
    J,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HiddenExponents {
    pub kind: HiddenKind,
    pub s1: u32,
    pub s2: u32,
}

/// Exact rational coupling with weights `ell1 = 1+g`, `ell2 = 1-g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Coupling {
    g: Q,
}

impl Coupling {
    pub fn new(g: Q) -> Self {
        Coupling { g }
    }
    pub fn from_ratio(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter(format!("zero denominator in {}/{}", num, den)));
        }
        Ok(Coupling { g: Q::new(num, den) })
    }
    pub fn zero() -> Self {
        Coupling { g: Q::zero() }
    }
    pub fn g(&self) -> Q {
        self.g
    }
    pub fn ell1(&self) -> Q {
        Q::one() + self.g
    }
    pub fn ell2(&self) -> Q {
        Q::one() - self.g
    }
    pub fn ells(&self) -> (Q, Q) {
        (self.ell1(), self.ell2())
    }
    pub fn g_f64(&self) -> f64 {
        q_to_f64(&self.g)
    }
    pub fn phase(&self) -> Phase {
        let a = self.g.abs();
        if a.is_zero() {
            Phase::IsotropicEuclid
        } else if a < Q::one() {
            Phase::Euclid
        } else if a == Q::one() {
            Phase::Landau
        } else {
            Phase::Minkowski
        }
    }

    /// Coprime exponents of the time-independent hidden integrals.
    ///
    /// `|g| <= 1` gives the L family with `g = (s2-s1)/(s1+s2)`, `|g| > 1` the J family
    /// with `g = (s2+s1)/(s2-s1)`.
    pub fn hidden(&self) -> HiddenExponents {
        let p = *self.g.numer();
        let q = *self.g.denom();
        if self.g.abs() <= Q::one() {
            let d = (q - p).gcd(&(q + p));
            HiddenExponents { kind: HiddenKind::L, s1: ((q - p) / d) as u32, s2: ((q + p) / d) as u32 }
        } else {
            // s2+s1 = p k, s2-s1 = q k
            let d = (p + q).gcd(&(p - q)) * p.signum();
            HiddenExponents { kind: HiddenKind::J, s1: ((p - q) / d) as u32, s2: ((p + q) / d) as u32 }
        }
    }

    /// Inverse of [`Coupling::hidden`].
    pub fn from_hidden(kind: HiddenKind, s1: u32, s2: u32) -> Result<Self> {
        let (a, b) = (s1 as i128, s2 as i128);
        match kind {
            HiddenKind::L if a + b > 0 => Ok(Coupling::new(Q::new(b - a, a + b))),
            HiddenKind::J if a != b => Ok(Coupling::new(Q::new(b + a, b - a))),
            _ => Err(Error::IncompatibleCoupling(format!("{:?}({}, {})", kind, s1, s2))),
        }
    }

    /// Frequency of `(b1+)^j1 (b2-)^j2` (or `(b2+)^j2`) in units of omega: `-(j1 ell1 -+ j2 ell2)`.
    pub fn hidden_mu(&self, kind: HiddenKind, j1: u32, j2: u32) -> Q {
        let (l1, l2) = self.ells();
        match kind {
            HiddenKind::L => -(l1 * qi(j1 as i128) - l2 * qi(j2 as i128)),
            HiddenKind::J => -(l1 * qi(j1 as i128) + l2 * qi(j2 as i128)),
        }
    }
}

/// Coupling values including the ones that have no exact rational form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Strength {
    Rational(Coupling),
    Irrational(f64),
    /// `|g| -> infinity` with `omega -> omega/|g|`; `sign` is `+1` or `-1`.
    IsotropicMink { sign: i8 },
}

impl Strength {
    pub fn rational(num: i128, den: i128) -> Result<Self> {
        Ok(Strength::Rational(Coupling::from_ratio(num, den)?))
    }
    pub fn phase(&self) -> Phase {
        match self {
            Strength::Rational(c) => c.phase(),
            Strength::Irrational(g) => {
                let a = libm::fabs(*g);
                if a < 1.0 {
                    Phase::Euclid
                } else {
                    Phase::Minkowski
                }
            }
            Strength::IsotropicMink { .. } => Phase::IsotropicMink,
        }
    }
    /// Mode weights as floats. The isotropic limit uses `(sign, -sign)`.
    pub fn ells_f64(&self) -> (f64, f64) {
        match self {
            Strength::Rational(c) => (q_to_f64(&c.ell1()), q_to_f64(&c.ell2())),
            Strength::Irrational(g) => (1.0 + g, 1.0 - g),
            Strength::IsotropicMink { sign } => (*sign as f64, -(*sign as f64)),
        }
    }
    /// Exact weights when available.
    pub fn ells_exact(&self) -> Option<(Q, Q)> {
        match self {
            Strength::Rational(c) => Some(c.ells()),
            Strength::Irrational(_) => None,
            Strength::IsotropicMink { sign } => Some((qi(*sign as i128), qi(-(*sign as i128)))),
        }
    }
    pub fn coupling(&self) -> Option<Coupling> {
        match self {
            Strength::Rational(c) => Some(*c),
            _ => None,
        }
    }
}

impl From<Coupling> for Strength {
    fn from(c: Coupling) -> Self {
        Strength::Rational(c)
    }
}
