//! Cyclic Jacobi eigenvalue iteration for small dense complex Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues of the n×n Hermitian matrix stored row-major in `a`, ascending.
///
/// Each rotation first rotates the phase of the pivot `a[p][q]` away, then
/// applies a real Jacobi rotation, so the update is the unitary similarity
/// `G* A G` with `G = [[c, s], [-s e^{-iφ}, c e^{-iφ}]]` on the (p, q) plane.
pub fn hermitian_eigenvalues(a: &[Complex64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n, "matrix storage does not match dimension");
    let mut m = a.to_vec();
    for i in 0..n {
        m[i * n + i] = Complex64::new(m[i * n + i].re, 0.0);
    }
    let scale = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let threshold = f64::EPSILON * f64::EPSILON * scale * scale;

    let off = |m: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += m[i * n + j].norm_sqr();
            }
        }
        s
    };

    let mut sweeps = 0;
    while off(&m) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r; // e^{iφ}
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;

                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;

                // A ← A G (columns p, q)
                for i in 0..n {
                    let x = m[i * n + p];
                    let y = m[i * n + q];
                    m[i * n + p] = x * g_pp + y * g_qp;
                    m[i * n + q] = x * g_pq + y * g_qq;
                }
                // A ← G* A (rows p, q)
                for j in 0..n {
                    let x = m[p * n + j];
                    let y = m[q * n + j];
                    m[p * n + j] = g_pp.conj() * x + g_qp.conj() * y;
                    m[q * n + j] = g_pq.conj() * x + g_qq.conj() * y;
                }
                m[p * n + q] = Complex64::new(0.0, 0.0);
                m[q * n + p] = Complex64::new(0.0, 0.0);
                m[p * n + p].im = 0.0;
                m[q * n + q].im = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn scalar() {
        assert_eq!(hermitian_eigenvalues(&[c(-1.0, 0.0)], 1).unwrap(), vec![-1.0]);
    }

    #[test]
    fn pauli_y() {
        let e = hermitian_eigenvalues(&[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)], 2).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-15 && (e[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pendant_chain_at_zero() {
        // λ² + (2/3)λ − 1/3 = 0 → {−1, 1/3}
        let s = -1.0 / 3f64.sqrt();
        let m = [c(-2.0 / 3.0, 0.0), c(s, 0.0), c(s, 0.0), c(0.0, 0.0)];
        let e = hermitian_eigenvalues(&m, 2).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-15);
        assert!((e[1] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn trace_and_frobenius_preserved() {
        // 4×4 complex Hermitian with known invariants
        let raw = [
            [c(1.0, 0.0), c(0.5, 0.25), c(-0.3, 0.1), c(0.0, 0.7)],
            [c(0.0, 0.0), c(-0.4, 0.0), c(0.2, -0.6), c(0.1, 0.1)],
            [c(0.0, 0.0), c(0.0, 0.0), c(0.9, 0.0), c(-0.5, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.2, 0.0)],
        ];
        let n = 4;
        let mut m = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            for j in i..n {
                m[i * n + j] = raw[i][j];
                m[j * n + i] = raw[i][j].conj();
            }
        }
        let e = hermitian_eigenvalues(&m, n).unwrap();
        let trace: f64 = (0..n).map(|i| m[i * n + i].re).sum();
        let frob: f64 = m.iter().map(|z| z.norm_sqr()).sum();
        assert!((e.iter().sum::<f64>() - trace).abs() < 1e-13);
        assert!((e.iter().map(|x| x * x).sum::<f64>() - frob).abs() < 1e-13);
        assert!(e.windows(2).all(|w| w[0] <= w[1]));
    }
}
