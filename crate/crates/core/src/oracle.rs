//! Brute-force ground truth on the discrete torus Γ/(Nℤ)^d.
//!
//! The finite normalized Laplacian is assembled directly from the edge list
//! (no Bloch phases) and diagonalized with a real symmetric solver; its
//! spectrum must coincide with the Floquet bands sampled at ϑ ∈ (2π/N)ℤ^d.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::floquet::band_values;
use crate::graph::FundamentalGraph;

/// Largest torus (in vertices) the oracle will assemble.
pub const SIZE_CAP: usize = 4096;

#[derive(Debug, Clone)]
pub struct TorusGraph {
    pub n: usize,
    pub matrix: DMatrix<f64>,
}

fn torus_size(g: &FundamentalGraph, n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("torus size {n} < 3")));
    }
    let size = (n as u64)
        .checked_pow(g.dim() as u32)
        .and_then(|c| c.checked_mul(g.num_vertices() as u64))
        .filter(|&s| s <= SIZE_CAP as u64)
        .ok_or(Error::SizeCap { size: n.saturating_pow(g.dim() as u32).saturating_mul(g.num_vertices()), cap: SIZE_CAP })?;
    Ok(size as usize)
}

/// True when the torus with `n` cells per dimension is within [`SIZE_CAP`].
pub fn fits(g: &FundamentalGraph, n: usize) -> bool {
    torus_size(g, n).is_ok()
}

impl TorusGraph {
    pub fn new(g: &FundamentalGraph, n: usize) -> Result<Self> {
        let size = torus_size(g, n)?;
        let d = g.dim();
        let nu = g.num_vertices();
        let cells = size / nu;
        let index = |v: usize, cell: &[usize]| {
            let mut c = 0;
            for &x in cell.iter().rev() {
                c = c * n + x;
            }
            c * nu + v
        };
        let mut adj = DMatrix::<f64>::zeros(size, size);
        let mut cell = vec![0usize; d];
        for flat in 0..cells {
            let mut rem = flat;
            for x in cell.iter_mut() {
                *x = rem % n;
                rem /= n;
            }
            for e in g.edges() {
                let far: Vec<usize> =
                    cell.iter().zip(&e.tau).map(|(&c, &t)| (c as i64 + t).rem_euclid(n as i64) as usize).collect();
                let a = index(e.j, &cell);
                let b = index(e.k, &far);
                adj[(a, b)] += 1.0;
                adj[(b, a)] += 1.0;
            }
        }
        let deg: Vec<f64> = (0..size).map(|i| g.degrees()[i % nu] as f64).collect();
        let matrix = DMatrix::from_fn(size, size, |i, j| -adj[(i, j)] / (deg[i] * deg[j]).sqrt());
        Ok(Self { n, matrix })
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut e: Vec<f64> = SymmetricEigen::new(self.matrix.clone()).eigenvalues.iter().copied().collect();
        e.sort_by(f64::total_cmp);
        e
    }
}

/// Largest N in {8, 6, 4, 3} whose torus fits under [`SIZE_CAP`].
pub fn default_n(g: &FundamentalGraph) -> Option<usize> {
    [8, 6, 4, 3].into_iter().find(|&n| fits(g, n))
}

/// Sorted spectrum of the finite torus with `n` cells per dimension.
pub fn torus_eigenvalues(g: &FundamentalGraph, n: usize) -> Result<Vec<f64>> {
    Ok(TorusGraph::new(g, n)?.eigenvalues())
}

/// Sorted multiset {λ_k(2πm/N)} over all bands k and m ∈ {0..N−1}^d.
pub fn floquet_multiset(g: &FundamentalGraph, n: usize) -> Result<Vec<f64>> {
    let d = g.dim();
    let cells = n.pow(d as u32);
    let mut out = Vec::with_capacity(cells * g.num_vertices());
    for flat in 0..cells {
        let mut rem = flat;
        let theta: Vec<f64> = (0..d)
            .map(|_| {
                let m = rem % n;
                rem /= n;
                2.0 * PI * m as f64 / n as f64
            })
            .collect();
        out.extend(band_values(g, &theta)?.lambdas);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Largest elementwise gap between the sorted Floquet and torus multisets.
pub fn compare_with_floquet(g: &FundamentalGraph, n: usize) -> Result<f64> {
    let torus = torus_eigenvalues(g, n)?;
    let floquet = floquet_multiset(g, n)?;
    debug_assert_eq!(torus.len(), floquet.len());
    Ok(torus.iter().zip(&floquet).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}
