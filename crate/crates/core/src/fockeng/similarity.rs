//! The quantum bridge as a similarity transformation on linear operators.
//!
//! Conjugation by `exp(c G)` with `G` quadratic maps the span of `(x1, x2, p1, p2)` into
//! itself; its matrix is `exp(c ad_G)`. The images are then realised on the Fock space,
//! and quadratic operators are rebuilt from them by symmetric ordering.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use super::{c, ladder, Direction, FockBasis, FockOperator, InteriorMask};
use crate::error::{invalid, Result};
use crate::linalg::{expm, CMatrix};
use crate::phasealg::{canonical, canonical_in_circular, classical_cbt, poisson_bracket, Basis, Params, PhasePoly};
use crate::report::{Check, Report};
use crate::scalar::{q_to_f64, Gq, Q};

/// Images of the canonical variables, each a combination of `(x1, x2, p1, p2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearImages {
    pub params: Params,
    pub hbar: f64,
    /// Row `j`: coefficients of the image of canonical variable `j`.
    pub rows: [[Complex64; 4]; 4],
}

fn unit(j: usize) -> [u8; 4] {
    let mut e = [0u8; 4];
    e[j] = 1;
    e
}

/// Coefficients of a linear polynomial in the canonical basis.
fn linear_coeffs(p: &PhasePoly) -> Result<[Complex64; 4]> {
    let p = p.to_basis(Basis::Canonical).at_time_zero();
    let mut out = [Complex64::zero(); 4];
    for (e, _, v) in p.terms() {
        match e.iter().position(|&k| k == 1) {
            Some(j) if e.iter().map(|&k| k as u32).sum::<u32>() == 1 => out[j] += v.to_c64(),
            _ => return Err(invalid("expected a homogeneous linear polynomial")),
        }
    }
    Ok(out)
}

/// `ad_G` on the linear span: row `j` holds `{G, v_j}`.
fn ad_matrix(g: &PhasePoly) -> Result<CMatrix> {
    let p = g.params();
    let mut m = CMatrix::zeros(4);
    for j in 0..4 {
        let v = PhasePoly::var(Basis::Canonical, p, j);
        let row = linear_coeffs(&poisson_bracket(g, &v))?;
        for (k, x) in row.iter().enumerate() {
            m.set(j, k, *x);
        }
    }
    Ok(m)
}

impl LinearImages {
    pub fn identity(params: Params, hbar: f64) -> Self {
        let mut rows = [[Complex64::zero(); 4]; 4];
        for (j, r) in rows.iter_mut().enumerate() {
            r[j] = c(1.0);
        }
        LinearImages { params, hbar, rows }
    }
    /// Image of an arbitrary linear combination of canonical variables.
    pub fn image_of(&self, v: [Complex64; 4]) -> [Complex64; 4] {
        let mut out = [Complex64::zero(); 4];
        for j in 0..4 {
            for k in 0..4 {
                out[k] += v[j] * self.rows[j][k];
            }
        }
        out
    }
    /// Fock realisation of `sum_k v_k X_k` with `X_k` the quantum canonical operators.
    pub fn fock_linear(&self, basis: FockBasis, v: [Complex64; 4]) -> Result<FockOperator> {
        let circ = canonical_in_circular(self.params);
        let ladders = [
            ladder(basis, 1, Direction::Raise)?,
            ladder(basis, 1, Direction::Lower)?,
            ladder(basis, 2, Direction::Raise)?,
            ladder(basis, 2, Direction::Lower)?,
        ];
        let sh = libm::sqrt(self.hbar);
        let mut out = FockOperator::zero(basis);
        for (k, vk) in v.iter().enumerate() {
            if vk.is_zero() {
                continue;
            }
            for (l, lad) in ladders.iter().enumerate() {
                let coef = circ[k].coeff(unit(l), Q::zero()).to_c64();
                if !coef.is_zero() {
                    out = &out + &lad.scale(vk * coef * sh);
                }
            }
        }
        Ok(out)
    }
    /// Fock realisation of the image of canonical variable `j`.
    pub fn fock_image(&self, basis: FockBasis, j: usize) -> Result<FockOperator> {
        self.fock_linear(basis, self.rows[j])
    }
}

/// Linear images under the quantum bridge, from `exp` of the `ad` matrices of the
/// dilatation (parameter `-ln 2`), free Hamiltonian (`i/(2 omega)`) and `K0` (`-i omega`), in that order.
pub fn quantum_cbt_images(params: Params, hbar: f64) -> Result<LinearImages> {
    let w = q_to_f64(&params.omega);
    let ed = expm(&ad_matrix(&canonical::dilatation(params))?.scale_re(-core::f64::consts::LN_2))?;
    let eh = expm(&ad_matrix(&canonical::free_hamiltonian(params))?.scale(Complex64::new(0.0, 0.5 / w)))?;
    let ek = expm(&ad_matrix(&canonical::special_conformal(params))?.scale(Complex64::new(0.0, -w)))?;
    let e = ed.matmul(&eh).matmul(&ek);
    let mut rows = [[Complex64::zero(); 4]; 4];
    for (j, r) in rows.iter_mut().enumerate() {
        for (k, x) in r.iter_mut().enumerate() {
            *x = e.get(j, k);
        }
    }
    Ok(LinearImages { params, hbar, rows })
}

/// Distinct orderings of a multiset of variable indices.
fn orderings(counts: &mut [u8; 4], word: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
    if word.len() == len {
        out.push(word.clone());
        return;
    }
    for k in 0..4 {
        if counts[k] > 0 {
            counts[k] -= 1;
            word.push(k);
            orderings(counts, word, len, out);
            word.pop();
            counts[k] += 1;
        }
    }
}

/// Symmetrically ordered quantisation of a canonical-basis polynomial at `t = 0`, with each
/// canonical variable replaced by its image.
pub fn weyl_quantize(poly: &PhasePoly, images: &LinearImages, basis: FockBasis) -> Result<FockOperator> {
    let p = poly.to_basis(Basis::Canonical).at_time_zero();
    let ops: Vec<FockOperator> = (0..4).map(|j| images.fock_image(basis, j)).collect::<Result<_>>()?;
    let mut out = FockOperator::zero(basis);
    for (e, _, v) in p.terms() {
        let deg: usize = e.iter().map(|&k| k as usize).sum();
        if deg > 6 {
            return Err(invalid("symmetric ordering is limited to degree 6"));
        }
        let mut words = Vec::new();
        orderings(&mut e.clone(), &mut Vec::new(), deg, &mut words);
        let mut sum = FockOperator::zero(basis);
        for w in &words {
            let mut prod = FockOperator::identity(basis);
            for &k in w {
                prod = &prod * &ops[k];
            }
            sum = &sum + &prod;
        }
        out = &out + &sum.scale(v.to_c64() / words.len() as f64);
    }
    Ok(out.labeled(format!("W[{}]", poly.to_string_short())))
}

/// Quantum check of the bridge triple and of the linear relations for `p_-+`, `xi_+-`.
pub fn verify_quantum_cbt(params: Params, hbar: f64, basis: FockBasis, tol: f64) -> Result<Report> {
    let mut rep = Report::new("quantum bridge similarity");
    let img = quantum_cbt_images(params, hbar)?;
    let w = q_to_f64(&params.omega);
    let m = q_to_f64(&params.m);

    // numeric ad-exponential against the exact finite flows
    let mut worst = 0.0f64;
    for j in 0..4 {
        let exact = linear_coeffs(&classical_cbt(&PhasePoly::var(Basis::Canonical, params, j)))?;
        for k in 0..4 {
            worst = worst.max((exact[k] - img.rows[j][k]).norm());
        }
    }
    rep.push(Check::tol("linear images: exp(ad) = exact flows", format!("{:.3e}", worst), "0", worst, tol).with_anchor("quantum-bridge"));

    let b1m = ladder(basis, 1, Direction::Lower)?;
    let b1p = ladder(basis, 1, Direction::Raise)?;
    let b2m = ladder(basis, 2, Direction::Lower)?;
    let b2p = ladder(basis, 2, Direction::Raise)?;
    let n1 = &b1p * &b1m;
    let n2 = &b2p * &b2m;
    let id = FockOperator::identity(basis);

    let h = canonical::free_hamiltonian(params);
    let d = canonical::dilatation(params).scale_gq(Gq::i());
    let k = canonical::special_conformal(params);
    let jm = (&b1m * &b2m).scale_re(-w * hbar);
    let j0 = (&(&n1 + &n2) + &id).scale_re(hbar / 2.0);
    let jp = (&b1p * &b2p).scale_re(hbar / w);
    let mask = InteriorMask::margin(2);
    for (name, src, want) in [("S H S^-1 = -omega J-", &h, &jm), ("S iD S^-1 = J0", &d, &j0), ("S K S^-1 = J+/omega", &k, &jp)] {
        let lhs = weyl_quantize(src, &img, basis)?;
        let r = lhs.masked_residual(want, &mask)?;
        rep.push(Check::tol(name, format!("{:.3e}", r), "0", r, tol).with_anchor("quantum-bridge"));
    }

    // p_-+ = p1 -+ i p2, xi_+- = m (x1 +- i x2) at t = 0
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::zero();
    let one = c(1.0);
    let sp = libm::sqrt(2.0 * m * hbar * w);
    let sx = libm::sqrt(2.0 * m * hbar / w);
    let lin = [
        ("S p- S^-1 = -i sqrt(2 m hbar omega) b1-", [z, z, one, -i], b1m.scale(-i * sp)),
        ("S p+ S^-1 = -i sqrt(2 m hbar omega) b2-", [z, z, one, i], b2m.scale(-i * sp)),
        ("S xi+ S^-1 = sqrt(2 m hbar/omega) b1+", [c(m), i * m, z, z], b1p.scale_re(sx)),
        ("S xi- S^-1 = sqrt(2 m hbar/omega) b2+", [c(m), -i * m, z, z], b2p.scale_re(sx)),
    ];
    let mask1 = InteriorMask::margin(1);
    for (name, v, want) in lin {
        let lhs = img.fock_linear(basis, img.image_of(v))?;
        let r = lhs.masked_residual(&want, &mask1)?;
        rep.push(Check::tol(name, format!("{:.3e}", r), "0", r, tol).with_anchor("quantum-bridge"));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn bridge_triple_unit_params() {
        let r = verify_quantum_cbt(Params::default(), 1.0, FockBasis::new(6).unwrap(), 1e-10).unwrap();
        assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn bridge_triple_general_params() {
        let p = Params { m: q(3, 2), omega: q(5, 7) };
        let r = verify_quantum_cbt(p, 0.7, FockBasis::new(6).unwrap(), 1e-10).unwrap();
        assert!(r.pass(), "{:#?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn weyl_of_oscillator_has_zero_point() {
        let p = Params::default();
        let b = FockBasis::new(4).unwrap();
        let h = weyl_quantize(&canonical::oscillator(p), &LinearImages::identity(p, 1.0), b).unwrap();
        assert!((h.element((0, 0), (0, 0)) - c(1.0)).norm() < 1e-14);
        assert!((h.element((1, 2), (1, 2)) - c(4.0)).norm() < 1e-14);
    }
}
