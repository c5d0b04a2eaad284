//! Truncated two-mode Fock space.
//!
//! States `|n1, n2>` with `0 <= n_i <= N` are stored row-major over `(n1, n2)`.
//! Identities are asserted only on an [`InteriorMask`], away from the truncation edge.

mod degeneracy;
mod exact;
mod hidden;
mod similarity;
mod unitary;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::coupling::Coupling;
use crate::error::{invalid, Result};
use crate::linalg::{expm, CMatrix};
use crate::report::{Check, Report};
use crate::scalar::{q_to_f64, qi, Q};

pub use degeneracy::{degeneracy_classes, energy_exact, hidden_orbits, verify_degeneracy_orbits, ClassExtent, DegeneracyClass};
pub use exact::ExactOperator;
pub use hidden::{hidden_coefficient, hidden_operator, verify_hidden_coefficients, verify_hidden_termination, HiddenDirection};
pub use similarity::{quantum_cbt_images, verify_quantum_cbt, weyl_quantize, LinearImages};
pub use unitary::{amode_ladder, rni_hamiltonian, su2_generators, unitary_bridge_u, verify_unitary_equivalence};

/// Magnitude below which entries are dropped from sparse listings.
pub const PRUNE: f64 = 1e-14;
/// Cutoff used by verification suites.
pub const DEFAULT_CUTOFF: usize = 12;
/// Cutoff used for spectrum tables.
pub const TABLE_CUTOFF: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FockBasis {
    cutoff: usize,
}

impl FockBasis {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(invalid("Fock cutoff must be positive"));
        }
        Ok(FockBasis { cutoff })
    }
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }
    pub fn dim(&self) -> usize {
        (self.cutoff + 1) * (self.cutoff + 1)
    }
    #[inline]
    pub fn index(&self, n1: usize, n2: usize) -> usize {
        debug_assert!(n1 <= self.cutoff && n2 <= self.cutoff);
        n1 * (self.cutoff + 1) + n2
    }
    #[inline]
    pub fn state(&self, idx: usize) -> (usize, usize) {
        (idx / (self.cutoff + 1), idx % (self.cutoff + 1))
    }
    pub fn contains(&self, n1: i64, n2: i64) -> bool {
        n1 >= 0 && n2 >= 0 && n1 as usize <= self.cutoff && n2 as usize <= self.cutoff
    }
    pub fn states(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim()).map(move |i| self.state(i))
    }
}

/// Columns `{n1 + m1 <= N, n2 + m2 <= N}`, optionally also `n1 + n2 + total <= N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InteriorMask {
    pub m1: usize,
    pub m2: usize,
    pub total: Option<usize>,
}

impl InteriorMask {
    pub fn margin(k: usize) -> Self {
        InteriorMask { m1: k, m2: k, total: None }
    }
    pub fn per_mode(m1: usize, m2: usize) -> Self {
        InteriorMask { m1, m2, total: None }
    }
    /// States with `n1 + n2 <= N - k`.
    pub fn total(k: usize) -> Self {
        InteriorMask { m1: 0, m2: 0, total: Some(k) }
    }
    pub fn contains(&self, b: &FockBasis, n1: usize, n2: usize) -> bool {
        let n = b.cutoff();
        n1 + self.m1 <= n && n2 + self.m2 <= n && self.total.map_or(true, |k| n1 + n2 + k <= n)
    }
    pub fn columns(&self, b: &FockBasis) -> Vec<usize> {
        (0..b.dim()).filter(|&i| {
            let (n1, n2) = b.state(i);
            self.contains(b, n1, n2)
        }).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

/// Dense complex operator on a [`FockBasis`].
#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    basis: FockBasis,
    mat: CMatrix,
    pub label: String,
}

impl FockOperator {
    pub fn from_matrix(basis: FockBasis, mat: CMatrix, label: impl Into<String>) -> Self {
        assert_eq!(mat.dim(), basis.dim());
        FockOperator { basis, mat, label: label.into() }
    }
    pub fn zero(basis: FockBasis) -> Self {
        FockOperator::from_matrix(basis, CMatrix::zeros(basis.dim()), "0")
    }
    pub fn identity(basis: FockBasis) -> Self {
        FockOperator::from_matrix(basis, CMatrix::identity(basis.dim()), "I")
    }
    pub fn diagonal(basis: FockBasis, f: impl Fn(usize, usize) -> Complex64, label: impl Into<String>) -> Self {
        let d: Vec<Complex64> = basis.states().map(|(a, b)| f(a, b)).collect();
        FockOperator::from_matrix(basis, CMatrix::from_diag(&d), label)
    }
    pub fn basis(&self) -> FockBasis {
        self.basis
    }
    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }
    pub fn labeled(mut self, l: impl Into<String>) -> Self {
        self.label = l.into();
        self
    }
    /// `<out| A |in>`
    pub fn element(&self, out: (usize, usize), inp: (usize, usize)) -> Complex64 {
        self.mat.get(self.basis.index(out.0, out.1), self.basis.index(inp.0, inp.1))
    }
    /// Image of a basis state as a pruned list of `(state, amplitude)`.
    pub fn apply_state(&self, n1: usize, n2: usize) -> Vec<((usize, usize), Complex64)> {
        let j = self.basis.index(n1, n2);
        (0..self.basis.dim())
            .filter_map(|i| {
                let v = self.mat.get(i, j);
                (v.norm() > PRUNE).then(|| (self.basis.state(i), v))
            })
            .collect()
    }
    /// Entries above the pruning threshold as `(out, in, value)`.
    pub fn nonzeros(&self) -> Vec<((usize, usize), (usize, usize), Complex64)> {
        let d = self.basis.dim();
        let mut v = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let x = self.mat.get(i, j);
                if x.norm() > PRUNE {
                    v.push((self.basis.state(i), self.basis.state(j), x));
                }
            }
        }
        v
    }
    pub fn adjoint(&self) -> Self {
        FockOperator::from_matrix(self.basis, self.mat.adjoint(), format!("({})^dag", self.label))
    }
    pub fn scale(&self, c: Complex64) -> Self {
        FockOperator::from_matrix(self.basis, self.mat.scale(c), self.label.clone())
    }
    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }
    pub fn pow(&self, k: u32) -> Self {
        let mut r = FockOperator::identity(self.basis);
        for _ in 0..k {
            r = &r * self;
        }
        r.labeled(format!("({})^{}", self.label, k))
    }
    fn check_basis(&self, o: &FockOperator) -> Result<()> {
        if self.basis != o.basis {
            return Err(invalid("operators live on different Fock bases"));
        }
        Ok(())
    }
    /// Residual bound `||(A - B) P||` with `P` the projector on the mask columns.
    pub fn masked_residual(&self, o: &FockOperator, mask: &InteriorMask) -> Result<f64> {
        self.check_basis(o)?;
        let d = &self.mat - &o.mat;
        Ok(d.column_norm_bound(&mask.columns(&self.basis)))
    }
    /// Residual bound of `P (A - B) P`.
    pub fn block_residual(&self, o: &FockOperator, mask: &InteriorMask) -> Result<f64> {
        self.check_basis(o)?;
        let d = &self.mat - &o.mat;
        let c = mask.columns(&self.basis);
        Ok(d.block_norm_bound(&c, &c))
    }
}

impl Add for &FockOperator {
    type Output = FockOperator;
    fn add(self, o: &FockOperator) -> FockOperator {
        assert_eq!(self.basis, o.basis);
        FockOperator::from_matrix(self.basis, &self.mat + &o.mat, format!("{} + {}", self.label, o.label))
    }
}
impl Sub for &FockOperator {
    type Output = FockOperator;
    fn sub(self, o: &FockOperator) -> FockOperator {
        assert_eq!(self.basis, o.basis);
        FockOperator::from_matrix(self.basis, &self.mat - &o.mat, format!("{} - {}", self.label, o.label))
    }
}
impl Mul for &FockOperator {
    type Output = FockOperator;
    fn mul(self, o: &FockOperator) -> FockOperator {
        assert_eq!(self.basis, o.basis);
        FockOperator::from_matrix(self.basis, self.mat.matmul(&o.mat), format!("{} {}", self.label, o.label))
    }
}

/// `b_mode^-` or `b_mode^+`, `mode` in `{1, 2}`.
pub fn ladder(basis: FockBasis, mode: u8, dir: Direction) -> Result<FockOperator> {
    if mode != 1 && mode != 2 {
        return Err(invalid("mode must be 1 or 2"));
    }
    let n = basis.cutoff();
    let mut m = CMatrix::zeros(basis.dim());
    for (n1, n2) in basis.states() {
        let k = if mode == 1 { n1 } else { n2 };
        let (t, amp) = match dir {
            Direction::Lower if k > 0 => (k - 1, libm::sqrt(k as f64)),
            Direction::Raise if k < n => (k + 1, libm::sqrt((k + 1) as f64)),
            _ => continue,
        };
        let (o1, o2) = if mode == 1 { (t, n2) } else { (n1, t) };
        m.set(basis.index(o1, o2), basis.index(n1, n2), Complex64::new(amp, 0.0));
    }
    let label = format!("b{}{}", mode, if dir == Direction::Raise { "+" } else { "-" });
    Ok(FockOperator::from_matrix(basis, m, label))
}

pub fn number(basis: FockBasis, mode: u8) -> FockOperator {
    FockOperator::diagonal(basis, |a, b| Complex64::new(if mode == 1 { a } else { b } as f64, 0.0), format!("N{}", mode))
}

/// `hbar omega (ell1 n1 + ell2 n2 + 1)` on the diagonal.
pub fn hamiltonian(basis: FockBasis, c: &Coupling, hbar_omega: f64) -> FockOperator {
    FockOperator::diagonal(basis, |a, b| Complex64::new(hbar_omega * q_to_f64(&energy_exact(c, a, b)), 0.0), format!("H_g({})", c.g()))
}

/// `hbar (n1 - n2)` on the diagonal.
pub fn angular_momentum(basis: FockBasis, hbar: f64) -> FockOperator {
    FockOperator::diagonal(basis, |a, b| Complex64::new(hbar * (a as f64 - b as f64), 0.0), "p_phi")
}

pub fn commutator(a: &FockOperator, b: &FockOperator) -> Result<FockOperator> {
    a.check_basis(b)?;
    Ok(FockOperator::from_matrix(a.basis, a.mat.commutator(&b.mat), format!("[{}, {}]", a.label, b.label)))
}

/// Commutator columns on the mask vanish to `tol`.
pub fn verify_commutes(h: &FockOperator, x: &FockOperator, mask: &InteriorMask, tol: f64) -> Result<Report> {
    let c = commutator(h, x)?;
    let r = c.masked_residual(&FockOperator::zero(h.basis), mask)?;
    let mut rep = Report::new(format!("[{}, {}] = 0", h.label, x.label));
    rep.push(Check::tol(format!("[{}, {}]=0", h.label, x.label), format!("{:.3e}", r), "0", r, tol).with_anchor("hidden-commutator"));
    Ok(rep)
}

pub fn matrix_exponential(a: &FockOperator) -> Result<FockOperator> {
    Ok(FockOperator::from_matrix(a.basis, expm(&a.mat)?, format!("exp({})", a.label)))
}

/// Canonical ladder commutators on the interior.
pub fn verify_ladder_algebra(basis: FockBasis, tol: f64) -> Result<Report> {
    let mut rep = Report::new("ladder algebra");
    let mask = InteriorMask::margin(1);
    let id = FockOperator::identity(basis);
    let zero = FockOperator::zero(basis);
    let ops: Vec<(u8, Direction)> = alloc::vec![(1, Direction::Lower), (1, Direction::Raise), (2, Direction::Lower), (2, Direction::Raise)];
    for (i, a) in ops.iter().enumerate() {
        for b in ops.iter().skip(i + 1) {
            let la = ladder(basis, a.0, a.1)?;
            let lb = ladder(basis, b.0, b.1)?;
            let c = commutator(&la, &lb)?;
            let want = if a.0 == b.0 && a.1 == Direction::Lower && b.1 == Direction::Raise { &id } else { &zero };
            let r = c.masked_residual(want, &mask)?;
            rep.push(Check::tol(format!("[{}, {}]", la.label, lb.label), format!("{:.3e}", r), if core::ptr::eq(want, &id) { "I" } else { "0" }, r, tol).with_anchor("ladder-algebra"));
        }
    }
    Ok(rep)
}

/// Exact spectrum check: the diagonal of the exact ladder-built Hamiltonian equals the energy formula.
pub fn verify_spectrum_exact(basis: FockBasis, c: &Coupling) -> Report {
    let h = ExactOperator::hamiltonian_from_ladders(basis, c);
    let mut rep = Report::new(format!("exact spectrum at g={}", c.g()));
    let mut bad = 0usize;
    for (n1, n2) in basis.states() {
        let want = energy_exact(c, n1, n2);
        if h.diagonal_q(n1, n2) != Some(want) {
            bad += 1;
        }
    }
    let offdiag = h.offdiagonal_count();
    rep.push(Check::exact(
        format!("E(n1,n2)=ell1 n1+ell2 n2+1 for n<={}", basis.cutoff()),
        format!("{} mismatches, {} off-diagonal entries", bad, offdiag),
        "0 mismatches, 0 off-diagonal entries",
        (bad + offdiag) as f64,
    ).with_anchor("spectrum"));
    rep
}

/// Spectrum of `H_g` in units of `hbar omega`, exact.
pub fn spectrum_table(basis: FockBasis, c: &Coupling) -> Vec<(usize, usize, Q)> {
    basis.states().map(|(a, b)| (a, b, energy_exact(c, a, b))).collect()
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub(crate) fn q_int(n: usize) -> Q {
    qi(n as i128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn ladder_examples() {
        let b = FockBasis::new(4).unwrap();
        let l = ladder(b, 1, Direction::Lower).unwrap();
        assert_eq!(l.apply_state(1, 0), alloc::vec![((0, 0), c(1.0))]);
        let l2 = ladder(b, 2, Direction::Lower).unwrap();
        assert!(l2.apply_state(0, 0).is_empty());
        let r2 = ladder(b, 2, Direction::Raise).unwrap();
        let out = r2.apply_state(0, 1);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0, (0, 2));
        assert!((out[0].1.re - libm::sqrt(2.0)).abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_examples() {
        let b = FockBasis::new(3).unwrap();
        let h = hamiltonian(b, &Coupling::new(q(1, 2)), 1.0);
        assert_eq!(h.element((0, 0), (0, 0)), c(1.0));
        assert_eq!(h.element((1, 0), (1, 0)), c(2.5));
        let h3 = hamiltonian(b, &Coupling::new(qi(3)), 1.0);
        assert_eq!(h3.element((0, 1), (0, 1)), c(-1.0));
        let p = angular_momentum(b, 1.0);
        assert_eq!(p.element((2, 1), (2, 1)), c(1.0));
        let cm = commutator(&h, &p).unwrap();
        assert_eq!(cm.matrix().max_abs(), 0.0);
    }

    #[test]
    fn ladder_algebra_interior() {
        let r = verify_ladder_algebra(FockBasis::new(6).unwrap(), 1e-12).unwrap();
        assert!(r.pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn exact_spectrum() {
        for g in [q(1, 3), qi(3), qi(0), q(-7, 5)] {
            assert!(verify_spectrum_exact(FockBasis::new(8).unwrap(), &Coupling::new(g)).pass());
        }
    }
}
