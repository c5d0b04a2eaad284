//! Gauss-Hermite quadrature for inner products of closed-form states.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{eigenstate, Scalar, Units, WaveState};
use crate::error::{Error, Result};

/// Default number of nodes per axis.
pub const QUAD_ORDER: usize = 40;

/// Nodes and weights for `int f(u) exp(-u^2) du`, by Newton iteration on the
/// orthonormal Hermite recurrence.
pub fn gauss_hermite(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 || n > 200 {
        return Err(Error::InvalidParameter(alloc::format!("quadrature order {} outside 1..=200", n)));
    }
    let pim4 = libm::pow(core::f64::consts::PI, -0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..(n + 1) / 2 {
        z = match i {
            0 => libm::sqrt(2.0 * nf + 1.0) - 1.85575 * libm::pow(2.0 * nf + 1.0, -0.16667),
            1 => z - 1.14 * libm::pow(nf, 0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        let mut converged = false;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * libm::sqrt(2.0 / jf) * p2 - libm::sqrt((jf - 1.0) / jf) * p3;
            }
            pp = libm::sqrt(2.0 * nf) * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if libm::fabs(z - z1) <= 1e-15 * libm::fabs(z).max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NonFinite("Gauss-Hermite Newton iteration did not converge".into()));
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    Ok((x, w))
}

/// `<a|b> = int conj(a) b dx1 dx2` with nodes scaled by `kappa`, so products of
/// polynomials with `exp(-kappa^2 r^2)` are integrated exactly up to degree `2 order - 1`.
pub fn inner_product<S: Scalar>(a: &WaveState<S>, b: &WaveState<S>, order: usize) -> Result<Complex64> {
    let (u, w) = gauss_hermite(order)?;
    let k = a.units.kappa_f64();
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..order {
        for j in 0..order {
            let (x1, x2) = (u[i] / k, u[j] / k);
            let (pa, ga) = a.eval_parts(x1, x2);
            let (pb, gb) = b.eval_parts(x1, x2);
            let e = ga.conj() + gb + Complex64::new(u[i] * u[i] + u[j] * u[j], 0.0);
            sum += pa.conj() * pb * e.exp() * (w[i] * w[j]);
        }
    }
    Ok(sum / (k * k))
}

/// `<Psi_{n1,n2}|Psi_{l1,l2}>` by quadrature; refuses an order that is not exact.
pub fn orthonormality(n: (u32, u32), l: (u32, u32), units: &Units, order: usize) -> Result<Complex64> {
    let degree = (n.0 + n.1 + l.0 + l.1) as usize;
    if 2 * order < degree + 1 {
        return Err(Error::QuadratureOrder { order, degree });
    }
    inner_product(&eigenstate(n.0, n.1, units).to_c64(), &eigenstate(l.0, l.1, units).to_c64(), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn weights_sum_to_sqrt_pi() {
        for n in [2usize, 5, 20, 40, 80] {
            let (x, w) = gauss_hermite(n).unwrap();
            let s: f64 = w.iter().sum();
            assert!((s - libm::sqrt(core::f64::consts::PI)).abs() < 1e-13, "n={} s={}", n, s);
            let m2: f64 = x.iter().zip(&w).map(|(a, b)| a * a * b).sum();
            assert!((m2 - libm::sqrt(core::f64::consts::PI) / 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn orthonormal_examples() {
        let u = Units::default();
        assert!((orthonormality((0, 0), (0, 0), &u, 10).unwrap() - 1.0).norm() < 1e-12);
        assert!(orthonormality((1, 0), (0, 1), &u, 10).unwrap().norm() < 1e-12);
        assert!((orthonormality((2, 1), (2, 1), &u, 10).unwrap() - 1.0).norm() < 1e-8);
        let g = Units::new(q(2, 1), q(3, 1), q(1, 2)).unwrap();
        assert!((orthonormality((3, 2), (3, 2), &g, 12).unwrap() - 1.0).norm() < 1e-10);
        assert!(matches!(orthonormality((6, 6), (6, 6), &u, 4), Err(Error::QuadratureOrder { .. })));
    }
}
