//! Serializable report of an [`Analysis`] and its text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::cattaneo::{FlatPoint, FlatSource, OmegaBand, Placement, UnfoldedSpectrum};
use crate::estimates::{CertificationReport, CheckStatus};
use crate::interval::{Gap, Interval};
use crate::spectrum::{FlatBand, SpectralBand};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub is_loop_graph: bool,
    pub precise_point: Option<Vec<f64>>,
    pub gamma_bipartite: bool,
    pub gamma_f_bipartite: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnfoldedReport {
    pub cutoff: f64,
    pub segments: Vec<Interval>,
    pub gaps: Vec<Gap>,
    pub flat_bands: Vec<FlatPoint>,
    pub truncated: bool,
}

impl From<&UnfoldedSpectrum> for UnfoldedReport {
    fn from(u: &UnfoldedSpectrum) -> Self {
        Self {
            cutoff: u.cutoff,
            segments: u.ac_set.intervals().to_vec(),
            gaps: u.interior_gaps(),
            flat_bands: u.flat_bands.clone(),
            truncated: u.truncated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub input: String,
    pub dim: usize,
    pub num_vertices: usize,
    pub grid_resolution: usize,
    pub classification: ClassificationReport,
    /// Exact rational, e.g. "2/3".
    pub beta: String,
    pub beta_decimal: f64,
    pub discrete_bands: Vec<SpectralBand>,
    pub discrete_flat_bands: Vec<FlatBand>,
    pub discrete_spectrum: Vec<Interval>,
    pub discrete_gaps: Vec<Gap>,
    pub omega_bands: Vec<OmegaBand>,
    pub omega_flat_bands: Vec<FlatPoint>,
    pub omega_spectrum: Vec<Interval>,
    pub omega_gaps: Vec<Gap>,
    pub pi_flat_band: Placement,
    pub momentum_spectrum: UnfoldedReport,
    pub energy_spectrum: UnfoldedReport,
    pub certification: CertificationReport,
    pub all_passed: bool,
    pub warnings: Vec<String>,
}

impl SpectrumReport {
    pub fn new(input: impl Into<String>, a: &Analysis, certification: CertificationReport) -> Self {
        let c = &a.classification;
        Self {
            input: input.into(),
            dim: a.graph.dim(),
            num_vertices: a.graph.num_vertices(),
            grid_resolution: a.table.grid_resolution,
            classification: ClassificationReport {
                is_loop_graph: c.is_loop_graph,
                precise_point: c.precise_point.clone(),
                gamma_bipartite: c.gamma_bipartite,
                gamma_f_bipartite: c.gamma_f_bipartite,
            },
            beta: c.beta.to_string(),
            beta_decimal: c.beta.value(),
            discrete_bands: a.table.bands.clone(),
            discrete_flat_bands: a.flats.clone(),
            discrete_spectrum: a.discrete.intervals().to_vec(),
            discrete_gaps: a.discrete_gaps.clone(),
            omega_bands: a.omega.bands.clone(),
            omega_flat_bands: a.omega.flat_bands.clone(),
            omega_spectrum: a.omega.ac_set.intervals().to_vec(),
            omega_gaps: a.omega.gaps.clone(),
            pi_flat_band: a.omega.pi_placement(),
            momentum_spectrum: (&a.momentum).into(),
            energy_spectrum: (&a.energy).into(),
            all_passed: certification.all_passed(),
            certification,
            warnings: a.warnings.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.9}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

fn interval(i: &Interval) -> String {
    if i.is_degenerate() {
        format!("{{{}}}", num(i.lo))
    } else {
        format!("[{}, {}]", num(i.lo), num(i.hi))
    }
}

fn gap(g: &Gap) -> String {
    let mut s = format!("({}, {})", num(g.lo), num(g.hi));
    if !g.flat_bands.is_empty() {
        let pts: Vec<String> = g.flat_bands.iter().map(|&p| num(p)).collect();
        write!(s, " containing {}", pts.join(", ")).unwrap();
    }
    s
}

fn list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    if items.is_empty() {
        "none".to_string()
    } else {
        items.iter().map(f).collect::<Vec<_>>().join(" ∪ ")
    }
}

fn flat_point(f: &FlatPoint) -> String {
    let src = match f.source {
        FlatSource::Discrete { band } => format!("band {band}"),
        FlatSource::Dirichlet { n } => format!("Dirichlet n={n}"),
    };
    let place = match f.placement {
        Placement::Embedded => "embedded",
        Placement::InGap => "in gap",
    };
    format!("{} ({src}, {place})", num(f.value))
}

fn status(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Skipped => "SKIP",
    }
}

/// Pass/fail table of a certification report.
pub fn render_checks(c: &CertificationReport) -> String {
    let width = c.checks.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in &c.checks {
        write!(out, "  {} {:width$}  {}", status(r.status), r.name, r.statement).unwrap();
        if !r.detail.is_empty() {
            write!(out, "  [{}]", r.detail).unwrap();
        }
        out.push('\n');
    }
    let failed = c.checks.iter().filter(|r| r.status == CheckStatus::Fail).count();
    let skipped = c.checks.iter().filter(|r| r.status == CheckStatus::Skipped).count();
    writeln!(out, "  {} checks, {failed} failed, {skipped} skipped", c.checks.len()).unwrap();
    if let Some(seed) = c.seed {
        writeln!(out, "  seed {seed}").unwrap();
    }
    out
}

/// Human-readable report; numbers at 9 decimal places.
pub fn render_text(r: &SpectrumReport) -> String {
    let mut out = String::new();
    let c = &r.classification;
    writeln!(out, "graph: {} (d = {}, ν = {}, grid {})", r.input, r.dim, r.num_vertices, r.grid_resolution).unwrap();
    writeln!(out, "loop graph: {}", c.is_loop_graph).unwrap();
    let precise = match &c.precise_point {
        Some(p) => format!("({})", p.iter().map(|&x| num(x)).collect::<Vec<_>>().join(", ")),
        None => "none".to_string(),
    };
    writeln!(out, "precise point: {precise}").unwrap();
    writeln!(out, "bipartite Γ: {}, bipartite Γ_f: {}", c.gamma_bipartite, c.gamma_f_bipartite).unwrap();
    writeln!(out, "β = {} = {}", r.beta, num(r.beta_decimal)).unwrap();

    writeln!(out, "\ndiscrete bands:").unwrap();
    for b in &r.discrete_bands {
        let flat = if b.is_flat { "  flat" } else { "" };
        writeln!(out, "  {:>3}  [{}, {}]  |σ| = {}{flat}", b.index, num(b.lo), num(b.hi), num(b.len())).unwrap();
    }
    writeln!(out, "flat bands: {}", list(&r.discrete_flat_bands, |f| format!("{} (band {})", num(f.value), f.band))).unwrap();
    writeln!(out, "σ(Δ) = {}", list(&r.discrete_spectrum, interval)).unwrap();
    writeln!(out, "gaps: {}", list(&r.discrete_gaps, gap)).unwrap();

    writeln!(out, "\nΩ bands:").unwrap();
    for b in &r.omega_bands {
        let flat = if b.is_flat { "  flat" } else { "" };
        writeln!(out, "  {:>3}  [{}, {}]  |σ| = {}{flat}", b.index, num(b.lo), num(b.hi), num(b.len())).unwrap();
    }
    writeln!(out, "flat bands: {}", list(&r.omega_flat_bands, flat_point)).unwrap();
    writeln!(out, "σ_ac(Ω) = {}", list(&r.omega_spectrum, interval)).unwrap();
    writeln!(out, "gaps: {}", list(&r.omega_gaps, gap)).unwrap();

    for (label, u) in [("√Δ_M", &r.momentum_spectrum), ("Δ_M", &r.energy_spectrum)] {
        let cut = if u.truncated { ", truncated" } else { "" };
        writeln!(out, "\nσ_ac({label}) ∩ [0, {}]{cut}:", num(u.cutoff)).unwrap();
        writeln!(out, "  {}", list(&u.segments, interval)).unwrap();
        writeln!(out, "  gaps: {}", list(&u.gaps, gap)).unwrap();
        writeln!(out, "  flat bands: {}", list(&u.flat_bands, flat_point)).unwrap();
    }

    writeln!(out, "\ncertification:").unwrap();
    out.push_str(&render_checks(&r.certification));
    for w in &r.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{analyze, certify, AnalysisOptions};
    use crate::graph::builtin;

    fn report(name: &str) -> SpectrumReport {
        let a = analyze(builtin(name).unwrap(), &AnalysisOptions::default()).unwrap();
        let c = certify(&a).unwrap();
        SpectrumReport::new(name, &a, c)
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for name in ["z_pendant", "triangular", "c4_pendant_chain"] {
            let json = report(name).to_json();
            let again = SpectrumReport::from_json(&json).unwrap().to_json();
            assert_eq!(json, again);
        }
    }

    #[test]
    fn schema_fields() {
        let v: serde_json::Value = serde_json::from_str(&report("z_pendant").to_json()).unwrap();
        assert_eq!(v["beta"], "2/3");
        assert_eq!(v["pi_flat_band"], "embedded");
        assert_eq!(v["all_passed"], true);
        let g = &v["omega_gaps"][0];
        assert!((g["lo"].as_f64().unwrap() - 1.230959417).abs() < 1e-9);
        assert!((g["hi"].as_f64().unwrap() - 1.910633236).abs() < 1e-9);
        let v: serde_json::Value = serde_json::from_str(&report("triangular").to_json()).unwrap();
        assert!(v["classification"]["precise_point"].is_null());
        assert_eq!(v["pi_flat_band"], "in_gap");
    }

    #[test]
    fn text_uses_json_values() {
        let r = report("z_pendant");
        let text = render_text(&r);
        assert!(text.contains("β = 2/3 = 0.666666667"));
        assert!(text.contains(&format!("{:.9}", r.omega_gaps[0].lo)));
        assert!(!text.contains("FAIL"));
    }
}
