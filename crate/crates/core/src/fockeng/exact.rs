//! Sparse operators with exact surd entries.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Direction, FockBasis, FockOperator};
use crate::coupling::Coupling;
use crate::linalg::CMatrix;
use crate::scalar::{Surd, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct ExactOperator {
    basis: FockBasis,
    /// `(row, col) -> entry`, zero entries absent.
    entries: BTreeMap<(usize, usize), Surd>,
}

impl ExactOperator {
    pub fn zero(basis: FockBasis) -> Self {
        ExactOperator { basis, entries: BTreeMap::new() }
    }
    pub fn identity(basis: FockBasis) -> Self {
        let mut o = ExactOperator::zero(basis);
        for i in 0..basis.dim() {
            o.entries.insert((i, i), Surd::one());
        }
        o
    }
    pub fn ladder(basis: FockBasis, mode: u8, dir: Direction) -> Self {
        let n = basis.cutoff();
        let mut o = ExactOperator::zero(basis);
        for (n1, n2) in basis.states() {
            let k = if mode == 1 { n1 } else { n2 };
            let (t, amp) = match dir {
                Direction::Lower if k > 0 => (k - 1, k),
                Direction::Raise if k < n => (k + 1, k + 1),
                _ => continue,
            };
            let (o1, o2) = if mode == 1 { (t, n2) } else { (n1, t) };
            o.entries.insert((basis.index(o1, o2), basis.index(n1, n2)), Surd::sqrt_int(amp as u128));
        }
        o
    }
    /// `ell1 b1+ b1- + ell2 b2+ b2- + 1` built from exact ladders.
    pub fn hamiltonian_from_ladders(basis: FockBasis, c: &Coupling) -> Self {
        let n1 = ExactOperator::ladder(basis, 1, Direction::Raise).mul(&ExactOperator::ladder(basis, 1, Direction::Lower));
        let n2 = ExactOperator::ladder(basis, 2, Direction::Raise).mul(&ExactOperator::ladder(basis, 2, Direction::Lower));
        n1.scale_q(c.ell1()).add(&n2.scale_q(c.ell2())).add(&ExactOperator::identity(basis))
    }
    pub fn basis(&self) -> FockBasis {
        self.basis
    }
    pub fn entry(&self, out: (usize, usize), inp: (usize, usize)) -> Surd {
        self.entries.get(&(self.basis.index(out.0, out.1), self.basis.index(inp.0, inp.1))).cloned().unwrap_or_default()
    }
    /// Diagonal entry when it is rational.
    pub fn diagonal_q(&self, n1: usize, n2: usize) -> Option<Q> {
        let i = self.basis.index(n1, n2);
        match self.entries.get(&(i, i)) {
            None => Some(Q::from_integer(0)),
            Some(s) => s.as_q(),
        }
    }
    pub fn offdiagonal_count(&self) -> usize {
        self.entries.keys().filter(|(i, j)| i != j).count()
    }
    pub fn scale_q(&self, x: Q) -> Self {
        let mut o = ExactOperator::zero(self.basis);
        if x != Q::from_integer(0) {
            for (k, v) in &self.entries {
                o.entries.insert(*k, v.scale_q(x));
            }
        }
        o
    }
    pub fn add(&self, other: &ExactOperator) -> Self {
        let mut o = self.clone();
        for (k, v) in &other.entries {
            let s = o.entries.remove(k).unwrap_or_default() + v.clone();
            if !s.is_zero() {
                o.entries.insert(*k, s);
            }
        }
        o
    }
    pub fn mul(&self, other: &ExactOperator) -> Self {
        assert_eq!(self.basis, other.basis);
        let mut by_row: BTreeMap<usize, Vec<(usize, &Surd)>> = BTreeMap::new();
        for ((k, j), v) in &other.entries {
            by_row.entry(*k).or_default().push((*j, v));
        }
        let mut acc: BTreeMap<(usize, usize), Surd> = BTreeMap::new();
        for ((i, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    let e = acc.entry((*i, *j)).or_default();
                    *e += &(a * *b);
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        ExactOperator { basis: self.basis, entries: acc }
    }
    pub fn to_fock(&self, label: &str) -> FockOperator {
        let mut m = CMatrix::zeros(self.basis.dim());
        for ((i, j), v) in &self.entries {
            m.set(*i, *j, v.to_c64());
        }
        FockOperator::from_matrix(self.basis, m, label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn number_operator_is_exact() {
        let b = FockBasis::new(5).unwrap();
        let n = ExactOperator::ladder(b, 2, Direction::Raise).mul(&ExactOperator::ladder(b, 2, Direction::Lower));
        for (a, c) in b.states() {
            assert_eq!(n.diagonal_q(a, c), Some(Q::from_integer(c as i128)));
        }
        assert_eq!(n.offdiagonal_count(), 0);
        let h = ExactOperator::hamiltonian_from_ladders(b, &Coupling::new(q(1, 3)));
        assert_eq!(h.diagonal_q(1, 0), Some(q(7, 3)));
        assert_eq!(h.diagonal_q(0, 2), Some(q(7, 3)));
    }
}
