//! Certified inequalities and identities for band and gap measures.
//!
//! Each check yields a [`CheckRecord`]: the compared quantities, the
//! tolerance, and a pass/fail/skip status. Checks whose hypotheses do not
//! hold are recorded as skipped with the failing precondition, never
//! omitted.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cattaneo::{phi_inv, FlatSource, OmegaSpectrum, Placement, UnfoldedSpectrum};
use crate::error::Result;
use crate::floquet::band_values;
use crate::graph::{Beta, Classification, FundamentalGraph};
use crate::interval::{Interval, IntervalSet};
use crate::spectrum::{BandTable, FlatBand, SHORTCUT_TOL};

/// Analytic identities.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Slack added to the larger side of an inequality.
pub const INEQUALITY_TOL: f64 = 1e-9;
/// Pure-function chain for preimage measures.
pub const PREIMAGE_TOL: f64 = 1e-12;
/// Hausdorff distance for spectral symmetry.
pub const SYMMETRY_TOL: f64 = 1e-6;
pub const GROUND_STATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// What is asserted, in symbols.
    pub statement: String,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub tolerance: f64,
    pub status: CheckStatus,
    /// Skip precondition or failure detail.
    pub detail: String,
}

impl CheckRecord {
    fn new(name: impl Into<String>, statement: &str, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            statement: statement.to_string(),
            lhs: Vec::new(),
            rhs: Vec::new(),
            tolerance,
            status: CheckStatus::Pass,
            detail: String::new(),
        }
    }

    fn skipped(mut self, precondition: &str) -> Self {
        self.status = CheckStatus::Skipped;
        self.detail = format!("precondition failed: {precondition}");
        self
    }

    /// Records `lhs[i] ≤ rhs[i] + tol` for every pair.
    fn leq(mut self, pairs: &[(f64, f64)]) -> Self {
        for &(a, b) in pairs {
            self.lhs.push(a);
            self.rhs.push(b);
            if !(a <= b + self.tolerance) {
                self.status = CheckStatus::Fail;
                self.detail = format!("{a} > {b}");
            }
        }
        self
    }

    /// Records `|lhs[i] − rhs[i]| ≤ tol` for every pair.
    fn eq(mut self, pairs: &[(f64, f64)]) -> Self {
        for &(a, b) in pairs {
            self.lhs.push(a);
            self.rhs.push(b);
            if !((a - b).abs() <= self.tolerance) {
                self.status = CheckStatus::Fail;
                self.detail = format!("|{a} − {b}| = {:e}", (a - b).abs());
            }
        }
        self
    }

    fn require(mut self, ok: bool, detail: impl Into<String>) -> Self {
        if !ok {
            self.status = CheckStatus::Fail;
            self.detail = detail.into();
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub checks: Vec<CheckRecord>,
    /// Seed of the random preimage suite, when it ran.
    pub seed: Option<u64>,
}

impl CertificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Symmetric comparison set 𝔖_* = [−1, −λ_*] ∪ [λ_*, 1] of measure `m`,
/// with preimage [0, z_*] ∪ [π − z_*, π] under φ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarSet {
    pub lambda_star: f64,
    pub z_star: f64,
}

impl StarSet {
    pub fn preimage_measure(&self) -> f64 {
        2.0 * self.z_star
    }
}

pub fn star_set(m: f64) -> Result<StarSet> {
    if !(0.0..=2.0).contains(&m) {
        return Err(crate::error::Error::OutOfRange { value: m, lo: 0.0, hi: 2.0 });
    }
    let lambda_star = 1.0 - m / 2.0;
    Ok(StarSet { lambda_star, z_star: lambda_star.acos() })
}

/// |φ⁻¹(s)| for s ⊆ [−1, 1].
pub fn preimage_measure(s: &IntervalSet) -> Result<f64> {
    let mut total = 0.0;
    for i in s.segments() {
        total += phi_inv(i.hi)? - phi_inv(i.lo)?;
    }
    Ok(total)
}

/// |s| ≤ |φ⁻¹(s)| ≤ |φ⁻¹(𝔖_*)| ≤ (π/√2)|s|^{1/2}.
pub fn check_preimage_chain(s: &IntervalSet) -> Result<CheckRecord> {
    let m = s.measure();
    let pre = preimage_measure(s)?;
    let star = star_set(m.min(2.0))?.preimage_measure();
    let bound = PI * FRAC_1_SQRT_2 * m.sqrt();
    Ok(CheckRecord::new("preimage_chain", "|S| ≤ |φ⁻¹(S)| ≤ |φ⁻¹(S*)| ≤ (π/√2)|S|^½", PREIMAGE_TOL)
        .leq(&[(m, pre), (pre, star), (star, bound)]))
}

/// Per band: |σ_n(Δ)| ≤ |σ_n(Ω)| ≤ (π/√2)|σ_n(Δ)|^{1/2}.
pub fn check_band_estimate(t: &BandTable, o: &OmegaSpectrum) -> Vec<CheckRecord> {
    t.bands
        .iter()
        .zip(&o.bands)
        .map(|(d, w)| {
            let ld = d.len();
            let lw = w.len();
            CheckRecord::new(
                format!("band_estimate[{}]", d.index),
                "|σ_n(Δ)| ≤ |σ_n(Ω)| ≤ (π/√2)|σ_n(Δ)|^½",
                INEQUALITY_TOL,
            )
            .leq(&[(ld, lw), (lw, PI * FRAC_1_SQRT_2 * ld.sqrt())])
        })
        .collect()
}

/// |σ(Δ)| ≤ |σ(Ω)| ≤ (π/√2)|σ(Δ)|^{1/2} ≤ π√β.
pub fn check_total_estimate(beta: Beta, discrete: &IntervalSet, o: &OmegaSpectrum) -> CheckRecord {
    let md = discrete.measure();
    let mo = o.ac_set.measure();
    let mid = PI * FRAC_1_SQRT_2 * md.sqrt();
    let top = PI * beta.value().sqrt();
    CheckRecord::new("total_measure_chain", "|σ(Δ)| ≤ |σ(Ω)| ≤ (π/√2)|σ(Δ)|^½ ≤ π√β", INEQUALITY_TOL)
        .leq(&[(md, mo), (mo, mid), (mid, top)])
}

/// |σ(Δ)| ≤ Σ|σ_n(Δ)| ≤ 2β.
pub fn check_band_sum_bound(beta: Beta, t: &BandTable, discrete: &IntervalSet) -> CheckRecord {
    let sum: f64 = t.bands.iter().map(|b| b.len()).sum();
    CheckRecord::new("band_sum_bound", "|σ(Δ)| ≤ Σ|σ_n(Δ)| ≤ 2β", INEQUALITY_TOL)
        .leq(&[(discrete.measure(), sum), (sum, 2.0 * beta.value())])
}

/// Σ|γ_n(Ω)| = π − |σ(Ω)| and Σ|γ_n(Ω)| ≥ π(1 − √β).
pub fn check_gap_sum(o: &OmegaSpectrum, beta: Beta) -> Vec<CheckRecord> {
    let total: f64 = o.gaps.iter().map(|g| g.len()).sum();
    let identity = CheckRecord::new("gap_sum_identity", "Σ|γ_n(Ω)| = π − |σ(Ω)|", IDENTITY_TOL)
        .eq(&[(total, PI - o.ac_set.measure())]);
    let bound = CheckRecord::new("gap_sum_bound", "Σ|γ_n(Ω)| ≥ π(1 − √β)", INEQUALITY_TOL);
    let bound = if o.gaps.is_empty() && beta.value() >= 1.0 {
        bound.skipped("σ(Ω) has gaps or β < 1")
    } else {
        bound.leq(&[(PI * (1.0 - beta.value().sqrt()), total)])
    };
    vec![identity, bound]
}

/// β < 1 ⇒ |σ(Δ)| < 2 and σ(Ω) has a gap, hence σ(Δ_M) has infinitely many gaps.
pub fn check_infinite_gaps(beta: Beta, discrete: &IntervalSet, o: &OmegaSpectrum) -> CheckRecord {
    let rec = CheckRecord::new("infinite_gaps", "β < 1 ⇒ |σ(Δ)| < 2 and σ(Ω) has a gap", INEQUALITY_TOL);
    if beta.value() >= 1.0 {
        return rec.skipped("β < 1");
    }
    let m = discrete.measure();
    let mut rec = rec.require(m < 2.0 - INEQUALITY_TOL, format!("|σ(Δ)| = {m} is not below 2"));
    rec.lhs = vec![m, o.gaps.len() as f64];
    rec.rhs = vec![2.0, 1.0];
    rec.require(!o.gaps.is_empty(), "σ(Ω) has no gap")
}

/// Loop graphs: −cos z_n^- = λ_n(0). Precise loop graphs additionally:
/// −cos z_n^+ = λ_n(ϑ₀), Σ|σ_n(Δ)| = 2β and 2β ≤ Σ|σ_n(Ω)|.
pub fn check_loop_identities(
    g: &FundamentalGraph,
    class: &Classification,
    t: &BandTable,
    o: &OmegaSpectrum,
) -> Result<Vec<CheckRecord>> {
    let lower = CheckRecord::new("loop_lower_endpoints", "−cos z_n^- = λ_n(0)", IDENTITY_TOL);
    let upper = CheckRecord::new("precise_upper_endpoints", "−cos z_n^+ = λ_n(ϑ₀)", IDENTITY_TOL);
    let sum = CheckRecord::new("precise_band_sum", "Σ|σ_n(Δ)| = 2β", IDENTITY_TOL);
    let omega_sum = CheckRecord::new("precise_omega_band_sum", "2β ≤ Σ|σ_n(Ω)|", INEQUALITY_TOL);
    if !class.is_loop_graph {
        return Ok(vec![
            lower.skipped("loop graph"),
            upper.skipped("loop graph"),
            sum.skipped("loop graph"),
            omega_sum.skipped("loop graph"),
        ]);
    }
    let at_zero = band_values(g, &vec![0.0; g.dim()])?.lambdas;
    let pairs: Vec<(f64, f64)> = o.bands.iter().zip(&at_zero).map(|(b, &l)| (-b.lo.cos(), l)).collect();
    let lower = lower.eq(&pairs);
    let Some(p) = &class.precise_point else {
        let why = "precise point in {0, π}^d";
        return Ok(vec![lower, upper.skipped(why), sum.skipped(why), omega_sum.skipped(why)]);
    };
    let at_p = band_values(g, p)?.lambdas;
    let pairs: Vec<(f64, f64)> = o.bands.iter().zip(&at_p).map(|(b, &l)| (-b.hi.cos(), l)).collect();
    let two_beta = 2.0 * class.beta.value();
    let band_sum: f64 = t.bands.iter().map(|b| b.len()).sum();
    let omega_band_sum: f64 = o.bands.iter().map(|b| b.len()).sum();
    Ok(vec![
        lower,
        upper.eq(&pairs),
        sum.eq(&[(band_sum, two_beta)]),
        omega_sum.leq(&[(two_beta, omega_band_sum)]),
    ])
}

/// Loop-graph shortcut endpoints agree with the numerically refined extrema.
pub fn check_shortcuts(t: &BandTable) -> CheckRecord {
    let rec = CheckRecord::new("loop_shortcut_consistency", "λ_n(0), λ_n(ϑ₀) agree with numeric extrema", SHORTCUT_TOL);
    if t.shortcuts.is_empty() {
        return rec.skipped("loop graph");
    }
    rec.eq(&t.shortcuts.iter().map(|s| (s.shortcut, s.numeric)).collect::<Vec<_>>())
}

/// λ₁(0) = −1 with ground state (√ϰ_n).
pub fn check_ground_state(lambda1_at_zero: f64, residual: f64) -> CheckRecord {
    let mut rec = CheckRecord::new("ground_state", "λ₁(0) = −1, ‖Δ(0)u + u‖ = 0", GROUND_STATE_TOL)
        .eq(&[(lambda1_at_zero, -1.0), (residual, 0.0)]);
    if residual > GROUND_STATE_TOL {
        rec.status = CheckStatus::Fail;
    }
    rec
}

/// No flat band at ±1.
pub fn check_flat_band_range(flats: &[FlatBand], flat_tol: f64) -> CheckRecord {
    let worst = flats.iter().map(|f| f.value.abs()).fold(0.0, f64::max);
    let mut rec = CheckRecord::new("flat_band_range", "|μ_k| < 1", flat_tol);
    rec.lhs = vec![worst];
    rec.rhs = vec![1.0 - flat_tol];
    rec.require(worst < 1.0 - flat_tol, format!("flat band at {worst}"))
}

/// Gap count of Δ (hull [−1, 1]) equals gap count of Ω (hull [0, π]).
pub fn check_gap_count(discrete_gaps: usize, o: &OmegaSpectrum) -> CheckRecord {
    let mut rec = CheckRecord::new("gap_count_correspondence", "#gaps(Δ) = #gaps(Ω)", 0.0);
    rec.lhs = vec![discrete_gaps as f64];
    rec.rhs = vec![o.gaps.len() as f64];
    rec.require(discrete_gaps == o.gaps.len(), "gap counts differ")
}

/// σ_1(Ω) = [0, z_1^+] and 0 ∈ σ_ac(Ω).
pub fn check_first_omega_band(o: &OmegaSpectrum) -> CheckRecord {
    let lo = o.bands.first().map_or(f64::NAN, |b| b.lo);
    CheckRecord::new("first_omega_band", "z_1^- = 0", IDENTITY_TOL)
        .eq(&[(lo, 0.0)])
        .require(o.ac_set.segment_contains(0.0, IDENTITY_TOL), "0 ∉ σ_ac(Ω)")
}

/// |σ(Ω)| = π iff |σ(Δ)| = 2.
pub fn check_full_spectrum(discrete: &IntervalSet, o: &OmegaSpectrum) -> CheckRecord {
    let md = discrete.measure();
    let mo = o.ac_set.measure();
    let full_d = (md - 2.0).abs() <= IDENTITY_TOL;
    let full_o = (mo - PI).abs() <= IDENTITY_TOL;
    let mut rec = CheckRecord::new("full_spectrum_equivalence", "σ(Ω) = [0, π] ⇔ σ(Δ) = [−1, 1]", IDENTITY_TOL);
    rec.lhs = vec![md];
    rec.rhs = vec![mo];
    rec.require(full_d == full_o, format!("|σ(Δ)| = {md}, |σ(Ω)| = {mo}"))
}

fn open_omega_set(o: &OmegaSpectrum) -> IntervalSet {
    IntervalSet::from_intervals(
        o.ac_set.intervals().iter().copied().chain(
            o.flat_bands
                .iter()
                .filter(|f| matches!(f.source, FlatSource::Discrete { .. }))
                .map(|f| Interval::point(f.value)),
        ),
        0.0,
    )
}

/// Symmetry, Dirichlet placement and flat-band consequences of bipartiteness.
pub fn check_bipartite_properties(
    g: &FundamentalGraph,
    class: &Classification,
    discrete: &IntervalSet,
    flats: &[FlatBand],
    o: &OmegaSpectrum,
) -> Result<Vec<CheckRecord>> {
    let bip = class.gamma_bipartite;
    let expect = if bip { "symmetric (Γ bipartite)" } else { "asymmetric (Γ not bipartite)" };

    let hd = discrete.hausdorff(&discrete.reflect(0.0));
    let mut delta = CheckRecord::new("delta_symmetry", "σ(Δ) = −σ(Δ) ⇔ Γ bipartite", SYMMETRY_TOL);
    delta.lhs = vec![hd];
    delta.rhs = vec![SYMMETRY_TOL];
    let delta = delta.require((hd <= SYMMETRY_TOL) == bip, format!("expected {expect}, Hausdorff distance {hd:e}"));

    let os = open_omega_set(o);
    let ho = os.hausdorff(&os.reflect(PI));
    let mut omega = CheckRecord::new("omega_symmetry", "σ(Ω) ∩ (0, π) symmetric about π/2 ⇔ Γ bipartite", SYMMETRY_TOL);
    omega.lhs = vec![ho];
    omega.rhs = vec![SYMMETRY_TOL];
    let omega = omega.require((ho <= SYMMETRY_TOL) == bip, format!("expected {expect}, Hausdorff distance {ho:e}"));

    let placement = o.pi_placement();
    let dist = o.ac_set.clip(0.0, PI).segments().map(|s| (PI - s.hi).max(0.0)).fold(f64::INFINITY, f64::min);
    let mut pi = CheckRecord::new("dirichlet_pi_placement", "π ∈ σ_ac(Ω) if Γ bipartite, else π lies in a gap", IDENTITY_TOL);
    pi.lhs = vec![dist];
    pi.rhs = vec![0.0];
    let want = if bip { Placement::Embedded } else { Placement::InGap };
    let pi = pi.require(placement == want, format!("π is {placement:?}, expected {want:?}"));

    let fb = CheckRecord::new("fundamental_bipartite_flat", "Γ_f bipartite, ν odd ⇒ μ = 0 and z = π/2 flat", 1e-8);
    let fb = if class.gamma_f_bipartite && g.num_vertices() % 2 == 1 {
        let mu = flats.iter().map(|f| f.value.abs()).fold(f64::INFINITY, f64::min);
        let z = o
            .flat_bands
            .iter()
            .filter(|f| matches!(f.source, FlatSource::Discrete { .. }))
            .map(|f| (f.value - PI / 2.0).abs())
            .fold(f64::INFINITY, f64::min);
        fb.eq(&[(mu, 0.0), (z, 0.0)])
    } else {
        fb.skipped("Γ_f bipartite and ν odd")
    };

    let lb = CheckRecord::new("loop_bipartite_endpoints", "−cos z_n^- = λ_n(0), cos z_n^+ = λ_{ν−n+1}(0)", IDENTITY_TOL);
    let lb = if class.is_loop_graph && bip {
        let at_zero = band_values(g, &vec![0.0; g.dim()])?.lambdas;
        let nu = at_zero.len();
        let mut pairs = Vec::with_capacity(2 * nu);
        for (n, b) in o.bands.iter().enumerate() {
            pairs.push((-b.lo.cos(), at_zero[n]));
            pairs.push((b.hi.cos(), at_zero[nu - n - 1]));
        }
        lb.eq(&pairs)
    } else {
        lb.skipped("loop graph with Γ bipartite")
    };

    Ok(vec![delta, omega, pi, fb, lb])
}

/// Energy-domain gaps of the same momentum family grow strictly from one
/// period to the next.
pub fn check_unfolded_gap_growth(energy: &UnfoldedSpectrum) -> CheckRecord {
    let rec = CheckRecord::new("unfolded_gap_growth", "|γ| strictly increasing along periods of σ(Δ_M)", 0.0);
    let gaps = energy.interior_gaps();
    if gaps.is_empty() {
        return rec.skipped("σ(Δ_M) has a gap below the cutoff");
    }
    // family key: position of the momentum gap modulo 2π
    let mut families: Vec<(f64, Vec<f64>)> = Vec::new();
    for g in &gaps {
        let key = g.lo.sqrt().rem_euclid(2.0 * PI);
        match families.iter_mut().find(|(k, _)| (k - key).abs() < 1e-7) {
            Some((_, lens)) => lens.push(g.len()),
            None => families.push((key, vec![g.len()])),
        }
    }
    let mut pairs = Vec::new();
    for (_, lens) in &families {
        for w in lens.windows(2) {
            pairs.push((w[0], w[1]));
        }
    }
    let mut rec = rec;
    for &(a, b) in &pairs {
        rec.lhs.push(a);
        rec.rhs.push(b);
        if !(a < b) {
            rec.status = CheckStatus::Fail;
            rec.detail = format!("gap length {a} followed by {b}");
        }
    }
    rec
}

/// Seeded random property suite for the preimage chain: `count` single
/// intervals and `count` unions of up to four disjoint intervals in [−1, 1].
pub fn preimage_random_suite(seed: u64, count: usize) -> Result<Vec<CheckRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = |name: &str, max_parts: usize| -> Result<CheckRecord> {
        let mut failures = 0usize;
        let mut worst: f64 = f64::NEG_INFINITY;
        for _ in 0..count {
            let parts = rng.gen_range(1..=max_parts);
            let mut pts: Vec<f64> = (0..2 * parts).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            pts.sort_by(f64::total_cmp);
            let set = IntervalSet::from_intervals(pts.chunks(2).map(|c| Interval::new(c[0], c[1])), 0.0);
            let rec = check_preimage_chain(&set)?;
            for (a, b) in rec.lhs.iter().zip(&rec.rhs) {
                worst = worst.max(a - b);
            }
            if !rec.passed() {
                failures += 1;
            }
        }
        let mut rec = CheckRecord::new(name, "|S| ≤ |φ⁻¹(S)| ≤ |φ⁻¹(S*)| ≤ (π/√2)|S|^½ on random S", PREIMAGE_TOL);
        rec.lhs = vec![failures as f64, worst];
        rec.rhs = vec![0.0, PREIMAGE_TOL];
        rec.detail = format!("seed {seed}, {count} samples, largest link excess {worst:e}");
        if failures > 0 {
            rec.status = CheckStatus::Fail;
        }
        Ok(rec)
    };
    let singles = run("preimage_random_intervals", 1)?;
    let unions = run("preimage_random_unions", 4)?;
    let full = IntervalSet::from_intervals([Interval::new(-1.0, 1.0)], 0.0);
    let pre = preimage_measure(&full)?;
    let equality = CheckRecord::new("preimage_upper_bound_attained", "|φ⁻¹([−1, 1])| = (π/√2)·2^½", PREIMAGE_TOL)
        .eq(&[(pre, PI * FRAC_1_SQRT_2 * 2f64.sqrt()), (pre, PI)]);
    Ok(vec![singles, unions, equality])
}

#[cfg(test)]
mod tests {
    use num_rational::Ratio;

    use super::*;

    fn set(v: &[(f64, f64)]) -> IntervalSet {
        IntervalSet::from_intervals(v.iter().map(|&(a, b)| Interval::new(a, b)), 0.0)
    }

    #[test]
    fn star_examples() {
        let s = star_set(2.0).unwrap();
        assert_eq!(s.lambda_star, 0.0);
        assert!((s.preimage_measure() - PI).abs() < 1e-15);
        let s = star_set(0.0).unwrap();
        assert_eq!((s.lambda_star, s.preimage_measure()), (1.0, 0.0));
        let s = star_set(4.0 / 3.0).unwrap();
        assert!((s.lambda_star - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.preimage_measure() - 2.461919).abs() < 1e-6);
        assert!(star_set(2.5).is_err());
    }

    #[test]
    fn preimage_examples() {
        assert!((preimage_measure(&set(&[(-1.0, 1.0)])).unwrap() - PI).abs() < 1e-15);
        let third = 1.0 / 3.0;
        assert!((preimage_measure(&set(&[(-1.0, -third), (third, 1.0)])).unwrap() - 2.461919).abs() < 1e-6);
        assert_eq!(preimage_measure(&set(&[(0.0, 0.0)])).unwrap(), 0.0);
    }

    #[test]
    fn preimage_chain_examples() {
        let r = check_preimage_chain(&set(&[(0.9, 1.0)])).unwrap();
        assert!(r.passed());
        let expect = [0.1, 0.451027, 0.635121, 0.702481];
        let chain = [r.lhs[0], r.lhs[1], r.lhs[2], r.rhs[2]];
        for (a, b) in chain.iter().zip(expect) {
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
        let r = check_preimage_chain(&set(&[(-1.0, 1.0)])).unwrap();
        assert!(r.passed());
        for v in r.lhs[1..].iter().chain(&r.rhs) {
            assert!((v - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn preimage_suite_passes() {
        let recs = preimage_random_suite(7, 200).unwrap();
        assert!(recs.iter().all(CheckRecord::passed), "{recs:?}");
    }

    #[test]
    fn gap_sum_skip_rule() {
        let o = OmegaSpectrum {
            bands: vec![],
            flat_bands: vec![],
            ac_set: set(&[(0.0, PI)]),
            gaps: vec![],
        };
        let recs = check_gap_sum(&o, Beta(Ratio::from_integer(1)));
        assert_eq!(recs[0].status, CheckStatus::Pass);
        assert_eq!(recs[1].status, CheckStatus::Skipped);
    }

    #[test]
    fn failing_inequality_is_reported() {
        let r = CheckRecord::new("x", "a ≤ b", 1e-9).leq(&[(1.0, 0.5)]);
        assert_eq!(r.status, CheckStatus::Fail);
        let r = CheckRecord::new("x", "a ≤ b", 1e-9).leq(&[(0.5 + 1e-10, 0.5)]);
        assert_eq!(r.status, CheckStatus::Pass);
    }
}
