//! Band intervals of the discrete Laplacian over the torus T^d.
//!
//! Band functions are sampled on a uniform grid (plus ϑ = 0 and ϑ = (π,…,π)),
//! then each grid extremum is polished by cyclic coordinate-wise
//! golden-section search. On loop graphs the lower endpoints are λ_n(0)
//! exactly, and at a precise point ϑ₀ the upper endpoints are λ_n(ϑ₀); those
//! values replace the numeric ones and the two are cross-checked.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::floquet::{band_values, BandValues};
use crate::graph::{find_precise_point, is_loop_graph, FundamentalGraph};
use crate::interval::{Interval, IntervalSet};

pub const DEFAULT_FLAT_TOL: f64 = 1e-8;
/// Bands closer than this are treated as touching when forming unions.
pub const DEFAULT_MERGE_TOL: f64 = 1e-9;
/// Allowed disagreement between a shortcut endpoint and its numeric estimate.
pub const SHORTCUT_TOL: f64 = 1e-6;

const GOLDEN_WIDTH: f64 = 1e-12;
const GOLDEN_MAX_PROBES: usize = 200;

/// Default grid resolution per dimension.
pub fn default_grid(dim: usize) -> usize {
    match dim {
        1 => 256,
        2 => 64,
        _ => 24,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandOptions {
    /// Samples per dimension; `None` picks [`default_grid`].
    pub grid: Option<usize>,
    pub flat_tol: f64,
    pub merge_tol: f64,
    pub refine: bool,
    /// Upper bound on coordinate sweeps during refinement.
    pub max_cycles: usize,
}

impl Default for BandOptions {
    fn default() -> Self {
        Self { grid: None, flat_tol: DEFAULT_FLAT_TOL, merge_tol: DEFAULT_MERGE_TOL, refine: true, max_cycles: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralBand {
    /// 1-based band index.
    pub index: usize,
    pub lo: f64,
    pub hi: f64,
    pub is_flat: bool,
    pub arg_lo: Vec<f64>,
    pub arg_hi: Vec<f64>,
}

impl SpectralBand {
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Lower,
    Upper,
}

/// Comparison between a closed-form endpoint (loop graphs) and the numeric one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShortcutCheck {
    pub band: usize,
    pub endpoint: Endpoint,
    pub shortcut: f64,
    pub numeric: f64,
}

impl ShortcutCheck {
    pub fn deviation(&self) -> f64 {
        (self.shortcut - self.numeric).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandTable {
    pub bands: Vec<SpectralBand>,
    pub grid_resolution: usize,
    pub refined: bool,
    pub shortcuts: Vec<ShortcutCheck>,
}

/// Flat band μ carried by band `band` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatBand {
    pub value: f64,
    pub band: usize,
}

fn grid_points(dim: usize, n: usize) -> Vec<Vec<f64>> {
    let step = 2.0 * PI / n as f64;
    let total = n.pow(dim as u32);
    let mut pts = Vec::with_capacity(total + 2);
    for flat in 0..total {
        let mut rem = flat;
        let mut p = Vec::with_capacity(dim);
        for _ in 0..dim {
            p.push(step * (rem % n) as f64 - PI);
            rem /= n;
        }
        pts.push(p);
    }
    pts.push(vec![0.0; dim]);
    pts.push(vec![PI; dim]);
    pts
}

/// Band values on the grid `{2πm/N − π}` followed by the two mandatory
/// points ϑ = 0 and ϑ = (π,…,π).
pub fn sample_bands(g: &FundamentalGraph, n_per_dim: usize) -> Result<Vec<BandValues>> {
    if n_per_dim < 2 {
        return Err(Error::InvalidArgument(format!("grid resolution {n_per_dim} < 2")));
    }
    grid_points(g.dim(), n_per_dim).into_par_iter().map(|p| band_values(g, &p)).collect()
}

fn band_value(g: &FundamentalGraph, theta: &[f64], band: usize) -> f64 {
    band_values(g, theta).map(|b| b.lambdas[band]).unwrap_or(f64::NAN)
}

/// Golden-section minimization of `f` on `[a, b]`; returns the best probe.
fn golden_min(f: &mut impl FnMut(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    let mut probes = 2;
    while b - a > GOLDEN_WIDTH && probes < GOLDEN_MAX_PROBES {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
            if f1 < best.1 {
                best = (x1, f1);
            }
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
            if f2 < best.1 {
                best = (x2, f2);
            }
        }
        probes += 1;
    }
    best
}

/// Minimizes `sign · λ_band` starting from `start` by cyclic coordinate
/// golden-section search in windows of one grid cell. Never returns a value
/// worse than the start.
fn refine_extremum(
    g: &FundamentalGraph,
    band: usize,
    sign: f64,
    start: (Vec<f64>, f64),
    cell: f64,
    max_cycles: usize,
) -> (Vec<f64>, f64) {
    let (mut x, mut fx) = (start.0, sign * start.1);
    for _ in 0..max_cycles {
        let before = fx;
        for c in 0..x.len() {
            let mut probe = x.clone();
            let mut f = |t: f64| {
                probe[c] = t;
                sign * band_value(g, &probe, band)
            };
            let (t, ft) = golden_min(&mut f, x[c] - cell, x[c] + cell);
            if ft < fx {
                x[c] = t;
                fx = ft;
            }
        }
        if !(fx < before) {
            break;
        }
    }
    (x, sign * fx)
}

/// Computes σ_n = [λ_n^-, λ_n^+] for every band.
pub fn band_intervals(g: &FundamentalGraph, opts: &BandOptions) -> Result<BandTable> {
    let n = opts.grid.unwrap_or_else(|| default_grid(g.dim()));
    let samples = sample_bands(g, n)?;
    let nu = g.num_vertices();
    let cell = 2.0 * PI / n as f64;

    // grid extrema; ties resolve to the earliest sample for determinism
    let mut starts = Vec::with_capacity(nu);
    for b in 0..nu {
        let mut lo = (&samples[0].theta, samples[0].lambdas[b]);
        let mut hi = lo;
        for s in &samples[1..] {
            let v = s.lambdas[b];
            if v < lo.1 {
                lo = (&s.theta, v);
            }
            if v > hi.1 {
                hi = (&s.theta, v);
            }
        }
        starts.push(((lo.0.clone(), lo.1), (hi.0.clone(), hi.1)));
    }

    let extremes: Vec<((Vec<f64>, f64), (Vec<f64>, f64))> = if opts.refine {
        starts
            .into_par_iter()
            .enumerate()
            .map(|(b, (lo, hi))| {
                (
                    refine_extremum(g, b, 1.0, lo, cell, opts.max_cycles),
                    refine_extremum(g, b, -1.0, hi, cell, opts.max_cycles),
                )
            })
            .collect()
    } else {
        starts
    };

    let loop_graph = is_loop_graph(g);
    let zero = vec![0.0; g.dim()];
    let at_zero = if loop_graph { Some(band_values(g, &zero)?.lambdas) } else { None };
    let precise = if loop_graph { find_precise_point(g)? } else { None };
    let at_precise = match &precise {
        Some(p) => Some(band_values(g, p)?.lambdas),
        None => None,
    };

    let mut bands = Vec::with_capacity(nu);
    let mut shortcuts = Vec::new();
    for (b, ((mut arg_lo, mut lo), (mut arg_hi, mut hi))) in extremes.into_iter().enumerate() {
        if let Some(z) = &at_zero {
            shortcuts.push(ShortcutCheck { band: b + 1, endpoint: Endpoint::Lower, shortcut: z[b], numeric: lo });
            lo = z[b];
            arg_lo = zero.clone();
        }
        if let (Some(p), Some(vals)) = (&precise, &at_precise) {
            shortcuts.push(ShortcutCheck { band: b + 1, endpoint: Endpoint::Upper, shortcut: vals[b], numeric: hi });
            hi = vals[b];
            arg_hi = p.clone();
        }
        if hi < lo {
            // only reachable through rounding on a flat band
            hi = lo;
        }
        bands.push(SpectralBand { index: b + 1, lo, hi, is_flat: hi - lo <= opts.flat_tol, arg_lo, arg_hi });
    }
    Ok(BandTable { bands, grid_resolution: n, refined: opts.refine, shortcuts })
}

/// Bands of width at most `tol`, reported by their midpoint.
pub fn detect_flat_bands(t: &BandTable, tol: f64) -> Result<Vec<FlatBand>> {
    let mut out = Vec::new();
    for b in &t.bands {
        if b.hi - b.lo <= tol {
            let value = 0.5 * (b.lo + b.hi);
            if value.abs() >= 1.0 - tol {
                return Err(Error::FlatBandAtEdge(value));
            }
            out.push(FlatBand { value, band: b.index });
        }
    }
    Ok(out)
}

/// σ(Δ) as a union of segments; flat bands appear as isolated points only
/// when no segment covers them.
pub fn union(t: &BandTable, merge_tol: f64) -> IntervalSet {
    IntervalSet::from_intervals(
        t.bands.iter().map(|b| {
            if b.is_flat {
                Interval::point(0.5 * (b.lo + b.hi))
            } else {
                Interval::new(b.lo, b.hi)
            }
        }),
        merge_tol,
    )
}
