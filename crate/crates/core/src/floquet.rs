//! Floquet fiber matrices Δ(ϑ) of the normalized Laplacian and their band values.
//!
//! An edge `(v_j, v_k + τ)` couples `j` to `k` with the Bloch phase
//! `e^{i⟨τ, ϑ⟩}`; each coupling is weighted by `−1/√(ϰ_j ϰ_k)`. A loop
//! contributes both orientations to the diagonal, i.e. `−2cos⟨τ, ϑ⟩/ϰ_j`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::graph::FundamentalGraph;

/// ν×ν Hermitian Floquet matrix at quasimomentum `theta`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberMatrix {
    pub theta: Vec<f64>,
    pub size: usize,
    pub entries: Vec<Complex64>,
}

impl FiberMatrix {
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.size + k]
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.entries, self.size)
    }
}

/// Sorted band values λ_1(ϑ) ≤ … ≤ λ_ν(ϑ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandValues {
    pub theta: Vec<f64>,
    pub lambdas: Vec<f64>,
}

pub fn fiber_matrix(g: &FundamentalGraph, theta: &[f64]) -> Result<FiberMatrix> {
    if theta.len() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: theta.len() });
    }
    let n = g.num_vertices();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for e in g.edges() {
        let phase: f64 = e.tau.iter().zip(theta).map(|(&t, &x)| t as f64 * x).sum();
        let z = Complex64::from_polar(1.0, phase);
        entries[e.j * n + e.k] += z;
        entries[e.k * n + e.j] += z.conj();
    }
    let deg = g.degrees();
    for j in 0..n {
        for k in 0..n {
            entries[j * n + k] *= -1.0 / ((deg[j] * deg[k]) as f64).sqrt();
        }
        entries[j * n + j].im = 0.0;
    }
    Ok(FiberMatrix { theta: theta.to_vec(), size: n, entries })
}

pub fn band_values(g: &FundamentalGraph, theta: &[f64]) -> Result<BandValues> {
    let lambdas = fiber_matrix(g, theta)?.eigenvalues()?;
    Ok(BandValues { theta: theta.to_vec(), lambdas })
}

/// `‖Δ(0)u + u‖` for the normalized ground state `u ∝ (√ϰ_n)`.
pub fn ground_state_residual(g: &FundamentalGraph) -> f64 {
    let m = fiber_matrix(g, &vec![0.0; g.dim()]).expect("dimension matches");
    let n = g.num_vertices();
    let norm = (g.degrees().iter().sum::<usize>() as f64).sqrt();
    let u: Vec<f64> = g.degrees().iter().map(|&k| (k as f64).sqrt() / norm).collect();
    (0..n)
        .map(|j| {
            let row: Complex64 = (0..n).map(|k| m.get(j, k) * u[k]).sum();
            (row + u[j]).norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::graph::{builtin, BUILTIN_NAMES};

    #[test]
    fn z_lattice_dispersion() {
        let g = builtin("z1_lattice").unwrap();
        for &t in &[0.0, 0.3, PI / 2.0, 2.0, PI] {
            let m = fiber_matrix(&g, &[t]).unwrap();
            assert!((m.get(0, 0).re + t.cos()).abs() < 1e-15);
        }
        assert!(band_values(&g, &[PI / 2.0]).unwrap().lambdas[0].abs() < 1e-15);
    }

    #[test]
    fn pendant_entries() {
        let g = builtin("z_pendant").unwrap();
        let t = 0.7;
        let m = fiber_matrix(&g, &[t]).unwrap();
        let s = -1.0 / 3f64.sqrt();
        assert!((m.get(0, 0) - Complex64::new(-2.0 / 3.0 * t.cos(), 0.0)).norm() < 1e-15);
        assert!((m.get(0, 1) - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert!((m.get(1, 0) - Complex64::new(s, 0.0)).norm() < 1e-15);
        assert_eq!(m.get(1, 1), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn pendant_closed_form() {
        let g = builtin("z_pendant").unwrap();
        for i in 0..20 {
            let t = -PI + i as f64 * 0.31;
            let c = t.cos();
            let root = (c * c / 9.0 + 1.0 / 3.0).sqrt();
            let l = band_values(&g, &[t]).unwrap().lambdas;
            assert!((l[0] - (-c / 3.0 - root)).abs() < 1e-14);
            assert!((l[1] - (-c / 3.0 + root)).abs() < 1e-14);
        }
    }

    #[test]
    fn hexagonal_at_zero_and_dirac_point() {
        let g = builtin("hexagonal").unwrap();
        let m = fiber_matrix(&g, &[0.0, 0.0]).unwrap();
        assert!((m.get(0, 1).re + 1.0).abs() < 1e-15);
        assert_eq!(m.get(0, 0), Complex64::new(0.0, 0.0));
        let l = band_values(&g, &[0.0, 0.0]).unwrap().lambdas;
        assert!((l[0] + 1.0).abs() < 1e-15 && (l[1] - 1.0).abs() < 1e-15);
        let l = band_values(&g, &[2.0 * PI / 3.0, 4.0 * PI / 3.0]).unwrap().lambdas;
        assert!(l[0].abs() < 1e-15 && l[1].abs() < 1e-15);
        for &(a, b) in &[(0.4, -1.1), (2.0, 0.5), (-3.0, 3.0)] {
            let mag = (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, a) + Complex64::from_polar(1.0, b))
                .norm()
                / 3.0;
            let l = band_values(&g, &[a, b]).unwrap().lambdas;
            assert!((l[0] + mag).abs() < 1e-14 && (l[1] - mag).abs() < 1e-14);
        }
    }

    #[test]
    fn two_pendants_middle_band_is_zero() {
        let g = builtin("z_two_pendants").unwrap();
        for i in 0..16 {
            let l = band_values(&g, &[-PI + i as f64 * 0.4]).unwrap().lambdas;
            assert!(l[1].abs() < 1e-14);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let g = builtin("hexagonal").unwrap();
        assert_eq!(fiber_matrix(&g, &[0.0]), Err(Error::DimensionMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn ground_state_at_zero() {
        for name in BUILTIN_NAMES {
            let g = builtin(name).unwrap();
            let l = band_values(&g, &vec![0.0; g.dim()]).unwrap().lambdas;
            assert!((l[0] + 1.0).abs() < 1e-12, "{name}");
            assert!(ground_state_residual(&g) <= 1e-12, "{name}");
        }
    }

    #[test]
    fn structural_hermiticity_and_conjugation() {
        for name in BUILTIN_NAMES {
            let g = builtin(name).unwrap();
            let theta: Vec<f64> = (0..g.dim()).map(|i| 0.37 + 1.1 * i as f64).collect();
            let neg: Vec<f64> = theta.iter().map(|x| -x).collect();
            let shifted: Vec<f64> = theta.iter().enumerate().map(|(i, x)| x + 2.0 * PI * (i as f64 + 1.0)).collect();
            let m = fiber_matrix(&g, &theta).unwrap();
            let mn = fiber_matrix(&g, &neg).unwrap();
            let ms = fiber_matrix(&g, &shifted).unwrap();
            let n = m.size;
            for j in 0..n {
                for k in 0..n {
                    assert_eq!(m.get(j, k), m.get(k, j).conj());
                    assert!((mn.get(j, k) - m.get(j, k).conj()).norm() < 1e-15);
                    assert!((ms.get(j, k) - m.get(j, k)).norm() < 1e-12);
                }
            }
            let a = m.eigenvalues().unwrap();
            let b = mn.eigenvalues().unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-13);
                assert!(x.abs() <= 1.0 + 1e-10);
            }
        }
    }
}
