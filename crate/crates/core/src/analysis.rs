//! End-to-end pipeline: classification, bands, momentum and energy spectra,
//! and certification of every estimate.

use std::f64::consts::PI;

use crate::cattaneo::{energy_spectrum, omega_spectrum, unfold_momentum, OmegaSpectrum, UnfoldedSpectrum};
use crate::error::{Error, Result};
use crate::estimates::{self, CertificationReport, CheckRecord, CheckStatus};
use crate::floquet::{band_values, ground_state_residual};
use crate::graph::{check_connected, classify, Classification, FundamentalGraph};
use crate::interval::{Gap, Interval, IntervalSet};
use crate::oracle;
use crate::spectrum::{band_intervals, detect_flat_bands, union, BandOptions, BandTable, FlatBand};

/// Oracle agreement required between torus and Floquet multisets.
pub const ORACLE_TOL: f64 = 1e-8;
/// Samples per family in the random preimage suite.
pub const PROPERTY_SAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    pub bands: BandOptions,
    /// Momentum cutoff for σ(√Δ_M).
    pub z_max: f64,
    /// Energy cutoff for σ(Δ_M).
    pub e_max: f64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { bands: BandOptions::default(), z_max: 4.0 * PI, e_max: 16.0 * PI * PI }
    }
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub graph: FundamentalGraph,
    pub classification: Classification,
    pub table: BandTable,
    pub flats: Vec<FlatBand>,
    /// σ(Δ).
    pub discrete: IntervalSet,
    pub discrete_gaps: Vec<Gap>,
    pub omega: OmegaSpectrum,
    pub momentum: UnfoldedSpectrum,
    pub energy: UnfoldedSpectrum,
    pub warnings: Vec<String>,
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive, got {x}")))
    }
}

pub fn analyze(graph: FundamentalGraph, opts: &AnalysisOptions) -> Result<Analysis> {
    check_positive("z_max", opts.z_max)?;
    check_positive("e_max", opts.e_max)?;
    check_positive("flat tolerance", opts.bands.flat_tol)?;
    check_connected(&graph)?;
    let classification = classify(&graph);
    let table = band_intervals(&graph, &opts.bands)?;
    let flats = detect_flat_bands(&table, opts.bands.flat_tol)?;
    let discrete = union(&table, opts.bands.merge_tol);
    let discrete_gaps = discrete.gaps(Interval::new(-1.0, 1.0), opts.bands.merge_tol);
    let omega = omega_spectrum(&table, &flats, opts.bands.merge_tol)?;
    let momentum = unfold_momentum(&omega, opts.z_max)?;
    let mut energy = energy_spectrum(&unfold_momentum(&omega, opts.e_max.sqrt())?)?;
    energy.cutoff = opts.e_max;

    let mut warnings = Vec::new();
    if graph.dim() == 1 {
        warnings.push("d = 1: Dirichlet points πn are listed but not verified to be flat bands".to_string());
    }
    if classification.is_loop_graph && classification.precise_point.is_none() {
        warnings.push("loop graph without a precise point in {0, π}^d: upper band endpoints are numeric".to_string());
    }
    Ok(Analysis { graph, classification, table, flats, discrete, discrete_gaps, omega, momentum, energy, warnings })
}

/// Every estimate and identity, in canonical order.
pub fn certify(a: &Analysis) -> Result<CertificationReport> {
    let g = &a.graph;
    let c = &a.classification;
    let beta = c.beta;
    let mut checks = vec![estimates::check_shortcuts(&a.table)];
    let lambda1 = band_values(g, &vec![0.0; g.dim()])?.lambdas[0];
    checks.push(estimates::check_ground_state(lambda1, ground_state_residual(g)));
    checks.push(estimates::check_flat_band_range(&a.flats, 1e-8));
    checks.extend(estimates::check_band_estimate(&a.table, &a.omega));
    checks.push(estimates::check_total_estimate(beta, &a.discrete, &a.omega));
    checks.push(estimates::check_band_sum_bound(beta, &a.table, &a.discrete));
    checks.extend(estimates::check_gap_sum(&a.omega, beta));
    checks.push(estimates::check_infinite_gaps(beta, &a.discrete, &a.omega));
    checks.push(estimates::check_preimage_chain(&a.discrete.clip(-1.0, 1.0))?);
    checks.extend(estimates::check_loop_identities(g, c, &a.table, &a.omega)?);
    checks.push(estimates::check_gap_count(a.discrete_gaps.len(), &a.omega));
    checks.push(estimates::check_first_omega_band(&a.omega));
    checks.push(estimates::check_full_spectrum(&a.discrete, &a.omega));
    checks.extend(estimates::check_bipartite_properties(g, c, &a.discrete, &a.flats, &a.omega)?);
    checks.push(estimates::check_unfolded_gap_growth(&a.energy));
    Ok(CertificationReport { checks, seed: None })
}

/// Oracle agreement at `n` cells per dimension (largest that fits when
/// `None`).
pub fn check_oracle(g: &FundamentalGraph, n: Option<usize>) -> Result<CheckRecord> {
    let n = match n {
        Some(n) => n,
        None => match oracle::default_n(g) {
            Some(n) => n,
            None => {
                return Ok(CheckRecord {
                    name: "oracle_equivalence".into(),
                    statement: "Floquet grid multiset = finite torus spectrum".into(),
                    lhs: vec![],
                    rhs: vec![],
                    tolerance: ORACLE_TOL,
                    status: CheckStatus::Skipped,
                    detail: format!("precondition failed: torus within {} vertices", oracle::SIZE_CAP),
                })
            }
        },
    };
    let dev = oracle::compare_with_floquet(g, n)?;
    Ok(CheckRecord {
        name: "oracle_equivalence".into(),
        statement: "Floquet grid multiset = finite torus spectrum".into(),
        lhs: vec![dev],
        rhs: vec![ORACLE_TOL],
        tolerance: ORACLE_TOL,
        status: if dev <= ORACLE_TOL { CheckStatus::Pass } else { CheckStatus::Fail },
        detail: format!("N = {n}"),
    })
}

/// Full certification plus the oracle comparison and the seeded random
/// preimage suite.
pub fn verify(a: &Analysis, oracle_n: Option<usize>, seed: u64) -> Result<CertificationReport> {
    let mut report = certify(a)?;
    report.checks.push(check_oracle(&a.graph, oracle_n)?);
    report.checks.extend(estimates::preimage_random_suite(seed, PROPERTY_SAMPLES)?);
    report.seed = Some(seed);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{builtin, BUILTIN_NAMES};

    #[test]
    fn builtins_certify() {
        for name in BUILTIN_NAMES {
            let a = analyze(builtin(name).unwrap(), &AnalysisOptions::default()).unwrap();
            let r = certify(&a).unwrap();
            let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed()).collect();
            assert!(failed.is_empty(), "{name}: {failed:#?}");
        }
    }

    #[test]
    fn check_names_are_unique() {
        let a = analyze(builtin("z_pendant").unwrap(), &AnalysisOptions::default()).unwrap();
        let r = certify(&a).unwrap();
        let mut names: Vec<_> = r.checks.iter().map(|c| c.name.as_str()).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
    }

    #[test]
    fn expected_skips() {
        let a = analyze(builtin("z1_lattice").unwrap(), &AnalysisOptions::default()).unwrap();
        let r = certify(&a).unwrap();
        assert_eq!(r.get("infinite_gaps").unwrap().status, CheckStatus::Skipped);
        assert_eq!(r.get("gap_sum_bound").unwrap().status, CheckStatus::Skipped);
        let a = analyze(builtin("hexagonal").unwrap(), &AnalysisOptions::default()).unwrap();
        let r = certify(&a).unwrap();
        for name in ["loop_lower_endpoints", "precise_upper_endpoints", "precise_band_sum", "precise_omega_band_sum"] {
            assert_eq!(r.get(name).unwrap().status, CheckStatus::Skipped, "{name}");
        }
        let a = analyze(builtin("triangular").unwrap(), &AnalysisOptions::default()).unwrap();
        let r = certify(&a).unwrap();
        assert_eq!(r.get("loop_lower_endpoints").unwrap().status, CheckStatus::Pass);
        assert_eq!(r.get("precise_band_sum").unwrap().status, CheckStatus::Skipped);
    }

    #[test]
    fn rejects_disconnected() {
        let g = crate::graph::parse_graph("dim 1\nvertex a\nedge a a 2\n").unwrap();
        assert!(matches!(analyze(g, &AnalysisOptions::default()), Err(Error::PeriodicDisconnected { .. })));
    }
}
