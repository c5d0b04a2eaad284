use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use num_traits::Zero;

use super::poly::{Basis, PhasePoly};
use crate::scalar::Surd;

/// Result of rewriting an observable through `N1 = b1+ b1-` and `N2 = b2+ b2-`.
#[derive(Clone, Debug)]
pub struct CartanReduction {
    /// Coefficients of `N1^k1 N2^k2`.
    pub poly: BTreeMap<(u8, u8), Surd>,
    /// Terms that are not functions of `N1`, `N2` alone; empty on success.
    pub remainder: PhasePoly,
}

impl CartanReduction {
    pub fn is_reduced(&self) -> bool {
        self.remainder.is_zero()
    }
    pub fn degree(&self) -> u32 {
        self.poly.keys().map(|(a, b)| *a as u32 + *b as u32).max().unwrap_or(0)
    }
    pub fn coeff(&self, k1: u8, k2: u8) -> Surd {
        self.poly.get(&(k1, k2)).cloned().unwrap_or_default()
    }
    pub fn to_string_short(&self) -> String {
        if self.poly.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, ((a, b), c)) in self.poly.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            s.push_str(&format!("({})*N1^{}*N2^{}", c, a, b));
        }
        s
    }
}

/// Rewrite `a` as a polynomial in `N1`, `N2`; terms with unbalanced exponents
/// or a nonzero time frequency go to the remainder.
pub fn reduce_to_cartan(a: &PhasePoly) -> CartanReduction {
    let c = a.to_basis(Basis::Circular);
    let mut poly = BTreeMap::new();
    let mut remainder = PhasePoly::zero(Basis::Circular, c.params());
    for (e, mu, v) in c.terms() {
        if e[0] == e[1] && e[2] == e[3] && mu.is_zero() {
            let entry: &mut Surd = poly.entry((e[0], e[2])).or_default();
            *entry += v;
            if entry.is_zero() {
                poly.remove(&(e[0], e[2]));
            }
        } else {
            remainder.add_term(*e, *mu, v);
        }
    }
    CartanReduction { poly, remainder }
}
