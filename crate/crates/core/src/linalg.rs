//! Small dense complex matrices with a deterministic product order.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);

/// Square row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![C0; n * n] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = C1;
        }
        m
    }
    pub fn from_diag(d: &[Complex64]) -> Self {
        let mut m = CMatrix::zeros(d.len());
        for (i, v) in d.iter().enumerate() {
            m.data[i * d.len() + i] = *v;
        }
        m
    }
    pub fn from_rows(n: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), n * n);
        CMatrix { n, data }
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }
    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] += v;
    }
    pub fn scale(&self, c: Complex64) -> Self {
        CMatrix { n: self.n, data: self.data.iter().map(|v| v * c).collect() }
    }
    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        m
    }
    pub fn matmul(&self, o: &CMatrix) -> CMatrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut r = CMatrix::zeros(n);
        for i in 0..n {
            let row = &mut r.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C0 {
                    continue;
                }
                let orow = &o.data[k * n..(k + 1) * n];
                for j in 0..n {
                    row[j] += a * orow[j];
                }
            }
        }
        r
    }
    pub fn commutator(&self, o: &CMatrix) -> CMatrix {
        &self.matmul(o) - &o.matmul(self)
    }
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        (0..n).map(|i| (0..n).fold(C0, |a, k| a + self.data[i * n + k] * v[k])).collect()
    }
    /// Induced 1-norm (max column sum).
    pub fn norm1(&self) -> f64 {
        let n = self.n;
        (0..n).map(|j| (0..n).map(|i| self.data[i * n + j].norm()).sum::<f64>()).fold(0.0, f64::max)
    }
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
    /// Frobenius norm of the columns selected by `cols`, an upper bound on the
    /// operator norm of the restriction to their span.
    pub fn column_norm_bound(&self, cols: &[usize]) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for &j in cols {
            for i in 0..n {
                s += self.data[i * n + j].norm_sqr();
            }
        }
        libm::sqrt(s)
    }
    /// Frobenius norm of the sub-block `rows x cols`.
    pub fn block_norm_bound(&self, rows: &[usize], cols: &[usize]) -> f64 {
        let mut s = 0.0;
        for &i in rows {
            for &j in cols {
                s += self.get(i, j).norm_sqr();
            }
        }
        libm::sqrt(s)
    }
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }
    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, o: &CMatrix) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}
impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, o: &CMatrix) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}
impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, o: &CMatrix) -> CMatrix {
        self.matmul(o)
    }
}

/// Norm above which the exponential is refused.
pub const EXPM_NORM_GUARD: f64 = 1e6;

/// `e^A` by scaling and squaring with a Taylor kernel (relative tolerance about 1e-16 per step).
pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    if !a.is_finite() {
        return Err(Error::NonFinite("matrix exponential input".into()));
    }
    let nrm = a.norm1();
    if nrm > EXPM_NORM_GUARD {
        return Err(Error::Divergent(nrm));
    }
    let mut s = 0u32;
    while nrm / (1u64 << s) as f64 > 0.5 {
        s += 1;
    }
    let scaled = a.scale_re(1.0 / (1u64 << s) as f64);
    let n = a.dim();
    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1..=40 {
        term = term.matmul(&scaled).scale_re(1.0 / k as f64);
        sum = &sum + &term;
        if term.max_abs() <= 1e-18 * sum.max_abs() {
            break;
        }
    }
    for _ in 0..s {
        sum = sum.matmul(&sum);
    }
    if !sum.is_finite() {
        return Err(Error::Divergent(f64::INFINITY));
    }
    Ok(sum)
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &CMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = a.dim();
    let mut m: Vec<Vec<Complex64>> = (0..n).map(|i| (0..n).map(|j| a.get(i, j)).chain(core::iter::once(b[i])).collect()).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].norm().partial_cmp(&m[j][c].norm()).unwrap_or(core::cmp::Ordering::Equal)).unwrap();
        if m[p][c].norm() < 1e-300 {
            return Err(Error::Unsupported("singular linear system".into()));
        }
        m.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                if f != C0 {
                    for k in c..=n {
                        let v = m[c][k];
                        m[r][k] -= f * v;
                    }
                }
            }
        }
    }
    Ok((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_zero_and_diag() {
        let z = CMatrix::zeros(3);
        assert_eq!(expm(&z).unwrap(), CMatrix::identity(3));
        let d = CMatrix::from_diag(&[Complex64::new(0.0, 0.3), Complex64::new(0.0, -1.7)]);
        let e = expm(&d).unwrap();
        assert!((e.get(0, 0) - Complex64::new(libm::cos(0.3), libm::sin(0.3))).norm() < 1e-14);
        assert!((e.get(1, 1) - Complex64::new(libm::cos(1.7), -libm::sin(1.7))).norm() < 1e-14);
        assert!(e.get(0, 1).norm() == 0.0);
    }

    #[test]
    fn expm_guard() {
        let big = CMatrix::identity(2).scale_re(1e7);
        assert!(matches!(expm(&big), Err(Error::Divergent(_))));
    }

    #[test]
    fn solve_small() {
        let a = CMatrix::from_rows(2, vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0)]);
        let x = solve(&a, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
        let r = a.apply(&x);
        assert!((r[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14 && r[1].norm() < 1e-14);
    }
}
