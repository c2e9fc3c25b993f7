//! Transfer of the discrete spectrum to the equilateral quantum graph.
//!
//! A point λ ∈ σ(Δ) corresponds to z = arccos(−λ) ∈ [0, π] in the spectrum
//! of the momentum operator Ω = √Δ_M restricted to [0, π]. Every πn is a
//! Dirichlet flat band of √Δ_M. On the half-line the momentum spectrum is
//! the reflection-symmetric, 2π-periodic extension of σ(Ω); squaring gives
//! σ(Δ_M).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{gaps_with_points, Gap, Interval, IntervalSet};
use crate::spectrum::{BandTable, FlatBand};

/// Band endpoints may leave [−1, 1] by this much before they are rejected.
pub const ENDPOINT_CLAMP_TOL: f64 = 1e-10;
/// Tolerance for deciding whether a flat band sits on the ac spectrum.
pub const PLACEMENT_TOL: f64 = 1e-9;

const ARG_CLAMP_TOL: f64 = 1e-12;
/// Band endpoints this close to ±1 are taken as ±1; arccos turns an
/// O(ε) error there into O(√ε).
const EDGE_SNAP_TOL: f64 = 1e-13;

fn clamp_to(x: f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if x < lo - tol || x > hi + tol || x.is_nan() {
        return Err(Error::OutOfRange { value: x, lo, hi });
    }
    Ok(x.clamp(lo, hi))
}

/// φ(z) = −cos z on [0, π].
pub fn phi(z: f64) -> Result<f64> {
    Ok(-clamp_to(z, 0.0, PI, ARG_CLAMP_TOL)?.cos())
}

/// φ⁻¹(λ) = arccos(−λ) on [−1, 1].
pub fn phi_inv(lambda: f64) -> Result<f64> {
    Ok((-clamp_to(lambda, -1.0, 1.0, ARG_CLAMP_TOL)?).acos())
}

fn endpoint_to_z(lambda: f64) -> Result<f64> {
    let l = clamp_to(lambda, -1.0, 1.0, ENDPOINT_CLAMP_TOL)?;
    if 1.0 - l.abs() <= EDGE_SNAP_TOL {
        return Ok(if l < 0.0 { 0.0 } else { PI });
    }
    phi_inv(l)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FlatSource {
    /// Image of a flat band of the discrete Laplacian (1-based band index).
    Discrete { band: usize },
    /// Dirichlet eigenvalue πn of a single edge.
    Dirichlet { n: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    Embedded,
    InGap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatPoint {
    pub value: f64,
    pub source: FlatSource,
    pub placement: Placement,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaBand {
    pub index: usize,
    pub lo: f64,
    pub hi: f64,
    pub is_flat: bool,
}

impl OmegaBand {
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Spectrum of Ω on [0, π].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaSpectrum {
    pub bands: Vec<OmegaBand>,
    pub flat_bands: Vec<FlatPoint>,
    pub ac_set: IntervalSet,
    pub gaps: Vec<Gap>,
}

impl OmegaSpectrum {
    /// Placement of the Dirichlet flat band π.
    pub fn pi_placement(&self) -> Placement {
        self.flat_bands
            .iter()
            .find(|f| matches!(f.source, FlatSource::Dirichlet { n: 1 }))
            .map(|f| f.placement)
            .expect("π is always listed")
    }

    /// σ(Ω) including flat bands as isolated points.
    pub fn full_set(&self) -> IntervalSet {
        IntervalSet::from_intervals(
            self.ac_set
                .intervals()
                .iter()
                .copied()
                .chain(self.flat_bands.iter().map(|f| Interval::point(f.value))),
            0.0,
        )
    }
}

fn placement(ac: &IntervalSet, z: f64) -> Placement {
    if ac.segment_contains(z, PLACEMENT_TOL) {
        Placement::Embedded
    } else {
        Placement::InGap
    }
}

/// Maps the discrete band table through φ⁻¹ and attaches the flat bands,
/// including the Dirichlet flat band π.
pub fn omega_spectrum(t: &BandTable, flats: &[FlatBand], merge_tol: f64) -> Result<OmegaSpectrum> {
    let mut bands = Vec::with_capacity(t.bands.len());
    for b in &t.bands {
        bands.push(OmegaBand { index: b.index, lo: endpoint_to_z(b.lo)?, hi: endpoint_to_z(b.hi)?, is_flat: b.is_flat });
    }
    let ac_set = IntervalSet::from_intervals(
        bands.iter().filter(|b| !b.is_flat).map(|b| Interval::new(b.lo, b.hi)),
        merge_tol,
    );
    let mut flat_bands = Vec::with_capacity(flats.len() + 1);
    for f in flats {
        let z = endpoint_to_z(f.value)?;
        flat_bands.push(FlatPoint { value: z, source: FlatSource::Discrete { band: f.band }, placement: placement(&ac_set, z) });
    }
    flat_bands.push(FlatPoint { value: PI, source: FlatSource::Dirichlet { n: 1 }, placement: placement(&ac_set, PI) });
    let points: Vec<f64> = flat_bands.iter().map(|f| f.value).collect();
    let gaps = gaps_with_points(&ac_set, Interval::new(0.0, PI), &points, merge_tol.max(PLACEMENT_TOL));
    Ok(OmegaSpectrum { bands, flat_bands, ac_set, gaps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralDomain {
    /// Spectrum of √Δ_M.
    Momentum,
    /// Spectrum of Δ_M.
    Energy,
}

/// Spectrum of √Δ_M or Δ_M on `[0, cutoff]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnfoldedSpectrum {
    pub domain: SpectralDomain,
    pub cutoff: f64,
    pub ac_set: IntervalSet,
    pub flat_bands: Vec<FlatPoint>,
    /// A band was cut by the cutoff.
    pub truncated: bool,
}

impl UnfoldedSpectrum {
    /// Gaps strictly between two ac segments (the cutoff does not close a gap).
    pub fn interior_gaps(&self) -> Vec<Gap> {
        let segs: Vec<&Interval> = self.ac_set.segments().collect();
        segs.windows(2)
            .map(|w| Gap {
                lo: w[0].hi,
                hi: w[1].lo,
                flat_bands: self
                    .flat_bands
                    .iter()
                    .map(|f| f.value)
                    .filter(|&v| v >= w[0].hi && v <= w[1].lo && f64::max(v - w[0].hi, w[1].lo - v) > 0.0)
                    .collect(),
            })
            .collect()
    }
}

/// Unfolds σ(Ω) to σ(√Δ_M) ∩ [0, z_max].
pub fn unfold_momentum(o: &OmegaSpectrum, z_max: f64) -> Result<UnfoldedSpectrum> {
    if !(z_max > 0.0) || !z_max.is_finite() {
        return Err(Error::InvalidArgument(format!("cutoff {z_max} must be positive")));
    }
    let period = 2.0 * PI;
    let periods = (z_max / period).floor() as usize;
    let mut pieces = Vec::new();
    let mut truncated = false;
    for k in 0..=periods {
        let shift = period * k as f64;
        for s in o.ac_set.segments() {
            for (lo, hi) in [(s.lo + shift, s.hi + shift), (period - s.hi + shift, period - s.lo + shift)] {
                if lo > z_max {
                    continue;
                }
                if hi > z_max {
                    truncated = true;
                }
                pieces.push(Interval::new(lo, hi.min(z_max)));
            }
        }
    }
    let ac_set = IntervalSet::from_intervals(pieces, PLACEMENT_TOL);
    // a piece cut exactly where the next period continues it is not a truncation
    truncated &= ac_set.max().is_some_and(|m| m >= z_max);
    truncated &= !o.ac_set.segments().any(|s| s.lo == 0.0 && (z_max / period).fract() == 0.0);

    let mut flat_bands = Vec::new();
    for k in 0..=periods {
        let shift = period * k as f64;
        for f in &o.flat_bands {
            if let FlatSource::Discrete { .. } = f.source {
                for v in [f.value + shift, period - f.value + shift] {
                    if v <= z_max {
                        flat_bands.push(FlatPoint { value: v, source: f.source, placement: placement(&ac_set, v) });
                    }
                }
            }
        }
    }
    let mut n = 1u32;
    while PI * n as f64 <= z_max * (1.0 + 1e-15) {
        let v = PI * n as f64;
        flat_bands.push(FlatPoint { value: v, source: FlatSource::Dirichlet { n }, placement: placement(&ac_set, v) });
        n += 1;
    }
    flat_bands.sort_by(|a, b| a.value.total_cmp(&b.value));
    flat_bands.dedup_by(|a, b| (a.value - b.value).abs() <= PLACEMENT_TOL);
    Ok(UnfoldedSpectrum { domain: SpectralDomain::Momentum, cutoff: z_max, ac_set, flat_bands, truncated })
}

/// σ(Δ_M) from σ(√Δ_M) by squaring.
pub fn energy_spectrum(u: &UnfoldedSpectrum) -> Result<UnfoldedSpectrum> {
    if u.domain != SpectralDomain::Momentum {
        return Err(Error::InvalidArgument("energy spectrum needs a momentum-domain input".into()));
    }
    Ok(UnfoldedSpectrum {
        domain: SpectralDomain::Energy,
        cutoff: u.cutoff * u.cutoff,
        ac_set: u.ac_set.map_increasing(|z| z * z),
        flat_bands: u.flat_bands.iter().map(|f| FlatPoint { value: f.value * f.value, ..f.clone() }).collect(),
        truncated: u.truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builtin;
    use crate::spectrum::{band_intervals, detect_flat_bands, BandOptions, DEFAULT_FLAT_TOL, DEFAULT_MERGE_TOL};

    fn omega(name: &str) -> OmegaSpectrum {
        let t = band_intervals(&builtin(name).unwrap(), &BandOptions::default()).unwrap();
        let f = detect_flat_bands(&t, DEFAULT_FLAT_TOL).unwrap();
        omega_spectrum(&t, &f, DEFAULT_MERGE_TOL).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_inv(-1.0).unwrap(), 0.0);
        assert!((phi_inv(-1.0 / 3.0).unwrap() - 1.230_959_417_340_774_7).abs() < 1e-15);
        assert!((phi_inv(1.0 / 3.0).unwrap() - 1.910_633_236_249_018_6).abs() < 1e-15);
        assert!((phi_inv(1.0 / 3.0).unwrap().cos() + 1.0 / 3.0).abs() < 1e-15);
        assert!(phi(PI / 2.0).unwrap().abs() < 1e-16);
        assert_eq!(phi_inv(1.0 + 1e-13).unwrap(), PI);
        assert!(phi_inv(1.0 + 1e-9).is_err());
        assert!(phi(-1e-6).is_err());
    }

    #[test]
    fn pendant_omega() {
        let o = omega("z_pendant");
        let a = (1.0f64 / 3.0).acos();
        let b = (-1.0f64 / 3.0).acos();
        assert_eq!(o.ac_set.intervals().len(), 2);
        assert!(o.ac_set.intervals()[0].lo.abs() < 1e-9);
        assert!((o.ac_set.intervals()[0].hi - a).abs() < 1e-9);
        assert!((o.ac_set.intervals()[1].lo - b).abs() < 1e-9);
        assert!((o.ac_set.intervals()[1].hi - PI).abs() < 1e-9);
        assert_eq!(o.gaps.len(), 1);
        assert!((o.gaps[0].lo - 1.230959).abs() < 1e-6 && (o.gaps[0].hi - 1.910633).abs() < 1e-6);
        assert_eq!(o.pi_placement(), Placement::Embedded);
    }

    #[test]
    fn triangular_omega() {
        let o = omega("triangular");
        assert!((o.ac_set.max().unwrap() - 2.0 * PI / 3.0).abs() < 1e-6);
        assert_eq!(o.gaps.len(), 1);
        assert!((o.gaps[0].hi - PI).abs() < 1e-15);
        assert_eq!(o.gaps[0].flat_bands, vec![PI]);
        assert_eq!(o.pi_placement(), Placement::InGap);
    }

    #[test]
    fn two_pendants_omega() {
        let o = omega("z_two_pendants");
        let s = o.ac_set.intervals();
        assert!((s[0].hi - PI / 3.0).abs() < 1e-9 && (s[1].lo - 2.0 * PI / 3.0).abs() < 1e-9);
        let half = o.flat_bands.iter().find(|f| matches!(f.source, FlatSource::Discrete { .. })).unwrap();
        assert!((half.value - PI / 2.0).abs() < 1e-9);
        assert_eq!(half.placement, Placement::InGap);
        assert_eq!(o.gaps.len(), 1);
        assert_eq!(o.gaps[0].flat_bands.len(), 1);
        assert_eq!(o.pi_placement(), Placement::Embedded);
        assert_eq!(o.ac_set.intervals()[0].lo, 0.0);
    }

    #[test]
    fn lattice_unfolding() {
        let o = omega("z1_lattice");
        let u = unfold_momentum(&o, 4.0 * PI).unwrap();
        assert_eq!(u.ac_set.intervals(), &[Interval::new(0.0, 4.0 * PI)]);
        let vals: Vec<f64> = u.flat_bands.iter().map(|f| f.value).collect();
        assert_eq!(vals, vec![PI, 2.0 * PI, 3.0 * PI, 4.0 * PI]);
        assert!(u.flat_bands.iter().all(|f| f.placement == Placement::Embedded));
        assert!(!u.truncated);
        let e = energy_spectrum(&u).unwrap();
        assert!((e.ac_set.max().unwrap() - 16.0 * PI * PI).abs() < 1e-12);
        assert!((e.flat_bands[0].value - 9.8696).abs() < 1e-4);
        assert!(energy_spectrum(&e).is_err());
    }

    #[test]
    fn pendant_unfolding() {
        let o = omega("z_pendant");
        let u = unfold_momentum(&o, 2.0 * PI).unwrap();
        // reflection of the gap (1.230959, 1.910633) about π
        let expect = [(0.0, 1.230959), (1.910633, 4.372552), (5.052226, 2.0 * PI)];
        assert_eq!(u.ac_set.intervals().len(), 3);
        for (iv, (a, b)) in u.ac_set.intervals().iter().zip(expect) {
            assert!((iv.lo - a).abs() < 1e-6 && (iv.hi - b).abs() < 1e-6, "{iv:?}");
        }
        let e = energy_spectrum(&unfold_momentum(&o, 4.0 * PI).unwrap()).unwrap();
        let gaps = e.interior_gaps();
        assert!((gaps[0].lo - 1.515261).abs() < 1e-3 && (gaps[0].hi - 3.650518).abs() < 1e-3);
        assert!((gaps[1].lo - 19.119212).abs() < 1e-3 && (gaps[1].hi - 25.525).abs() < 1e-3);
    }

    #[test]
    fn restriction_to_first_period() {
        for name in ["z_pendant", "triangular", "hexagonal", "z_two_pendants"] {
            let o = omega(name);
            let u = unfold_momentum(&o, PI).unwrap();
            assert_eq!(u.ac_set, o.ac_set, "{name}");
            let a: Vec<f64> = u.flat_bands.iter().map(|f| f.value).collect();
            let mut b: Vec<f64> = o.flat_bands.iter().map(|f| f.value).collect();
            b.sort_by(f64::total_cmp);
            assert_eq!(a, b, "{name}");
        }
    }

    #[test]
    fn truncation_is_flagged() {
        let o = omega("z_pendant");
        assert!(unfold_momentum(&o, 3.0).unwrap().truncated);
        assert!(!unfold_momentum(&o, 1.5).unwrap().truncated);
    }
}
