//! Fundamental cells of ℤ^d-periodic graphs.
//!
//! A periodic graph is stored as its quotient by the translation group: ν
//! named vertices plus unoriented edges `(v_j, v_k + τ)` where the integer
//! shift τ records the cell of the far endpoint. Edges with τ ≠ 0 are the
//! bridges of the cell.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{sublattice_index, Gf2System};

/// An unoriented edge `(v_j, v_k + tau)` of the fundamental cell.
///
/// Constructed through [`EdgeSpec::new`], which picks the canonical
/// orientation: `j ≤ k`, and for `j == k` the lexicographically larger of
/// `τ` and `−τ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub j: usize,
    pub k: usize,
    pub tau: Vec<i64>,
}

impl EdgeSpec {
    pub fn new(j: usize, k: usize, tau: Vec<i64>) -> Self {
        if j > k {
            return Self { j: k, k: j, tau: tau.iter().map(|t| -t).collect() };
        }
        if j == k {
            let neg: Vec<i64> = tau.iter().map(|t| -t).collect();
            if neg > tau {
                return Self { j, k, tau: neg };
            }
        }
        Self { j, k, tau }
    }

    pub fn is_bridge(&self) -> bool {
        self.tau.iter().any(|&t| t != 0)
    }
}

/// Quotient Γ_f = Γ/ℤ^d with derived vertex degrees and bridge degrees.
///
/// Vertices are kept sorted by name and edges in canonical order, so two
/// descriptions of the same cell compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalGraph {
    dim: usize,
    vertices: Vec<String>,
    edges: Vec<EdgeSpec>,
    degrees: Vec<usize>,
    bridge_degrees: Vec<usize>,
}

impl FundamentalGraph {
    /// Builds a canonical graph from vertex names and `(j, k, τ)` triples
    /// indexing into `vertices`.
    pub fn new(
        dim: usize,
        vertices: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize, Vec<i64>)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        for w in order.windows(2) {
            if vertices[w[0]] == vertices[w[1]] {
                return Err(Error::DuplicateVertex { name: vertices[w[0]].clone() });
            }
        }
        let mut new_index = vec![0; vertices.len()];
        for (pos, &old) in order.iter().enumerate() {
            new_index[old] = pos;
        }
        let sorted_names: Vec<String> = order.iter().map(|&i| vertices[i].clone()).collect();

        let mut canon = Vec::new();
        for (j, k, tau) in edges {
            if j >= vertices.len() || k >= vertices.len() {
                return Err(Error::InvalidArgument(format!("edge endpoint index out of range ({j}, {k})")));
            }
            if tau.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: tau.len() });
            }
            canon.push(EdgeSpec::new(new_index[j], new_index[k], tau));
        }
        canon.sort();

        let nu = sorted_names.len();
        let mut degrees = vec![0; nu];
        let mut bridge_degrees = vec![0; nu];
        for e in &canon {
            degrees[e.j] += 1;
            degrees[e.k] += 1;
            if e.is_bridge() {
                bridge_degrees[e.j] += 1;
                bridge_degrees[e.k] += 1;
            }
        }
        if let Some(n) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::IsolatedVertex { name: sorted_names[n].clone() });
        }
        Ok(Self { dim, vertices: sorted_names, edges: canon, degrees, bridge_degrees })
    }

    /// Number of periods d.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of fundamental vertices ν.
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeSpec] {
        &self.edges
    }

    /// Degrees ϰ_n; a cell-internal loop counts twice.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Bridge degrees β_n.
    pub fn bridge_degrees(&self) -> &[usize] {
        &self.bridge_degrees
    }

    pub fn bridges(&self) -> impl Iterator<Item = &EdgeSpec> {
        self.edges.iter().filter(|e| e.is_bridge())
    }

    /// Serializes to the line-based graph format in canonical form.
    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for v in &self.vertices {
            let _ = writeln!(out, "vertex {v}");
        }
        for e in &self.edges {
            let _ = write!(out, "edge {} {}", self.vertices[e.j], self.vertices[e.k]);
            for t in &e.tau {
                let _ = write!(out, " {t}");
            }
            out.push('\n');
        }
        out
    }

    /// Applies an integer change of basis `τ ↦ U τ` to every shift vector.
    pub fn transform_shifts(&self, u: &[Vec<i64>]) -> Result<Self> {
        if u.len() != self.dim || u.iter().any(|r| r.len() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: u.len() });
        }
        let edges = self.edges.iter().map(|e| {
            let tau = u.iter().map(|row| row.iter().zip(&e.tau).map(|(a, b)| a * b).sum()).collect();
            (e.j, e.k, tau)
        });
        Self::new(self.dim, self.vertices.clone(), edges.collect::<Vec<_>>())
    }
}

impl fmt::Display for FundamentalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the line-based graph format:
///
/// ```text
/// # comment
/// dim 1
/// vertex a
/// vertex b
/// edge a b 0
/// edge a a 1
/// ```
pub fn parse_graph(text: &str) -> Result<FundamentalGraph> {
    let mut dim: Option<usize> = None;
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize, Vec<i64>)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        // (column, token) pairs, 1-based columns
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, c) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            if c.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((content[..s].chars().count() + 1, &content[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        let Some(&(kw_col, keyword)) = tokens.first() else { continue };
        let syntax = |column: usize, message: String| Error::Syntax { line: line_no, column, message };

        match (keyword, dim) {
            ("dim", None) => {
                if tokens.len() != 2 {
                    return Err(syntax(kw_col, "expected `dim <d>`".into()));
                }
                let (c, t) = tokens[1];
                match t.parse::<usize>() {
                    Ok(d) if d >= 1 => dim = Some(d),
                    _ => return Err(syntax(c, format!("invalid dimension `{t}`"))),
                }
            }
            (_, None) => return Err(syntax(kw_col, "first line must be `dim <d>`".into())),
            ("dim", Some(_)) => return Err(syntax(kw_col, "duplicate `dim` line".into())),
            ("vertex", Some(_)) => {
                if !edges.is_empty() {
                    return Err(syntax(kw_col, "vertex declared after edges".into()));
                }
                if tokens.len() != 2 {
                    return Err(syntax(kw_col, "expected `vertex <name>`".into()));
                }
                let (c, name) = tokens[1];
                if !is_identifier(name) {
                    return Err(syntax(c, format!("invalid vertex name `{name}`")));
                }
                if names.iter().any(|n| n == name) {
                    return Err(Error::DuplicateVertex { name: name.to_string() });
                }
                names.push(name.to_string());
            }
            ("edge", Some(d)) => {
                if tokens.len() < 3 {
                    return Err(syntax(kw_col, "expected `edge <u> <v> <t1> ... <td>`".into()));
                }
                let lookup = |name: &str| {
                    names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| Error::UndeclaredVertex { name: name.to_string() })
                };
                let j = lookup(tokens[1].1)?;
                let k = lookup(tokens[2].1)?;
                if tokens.len() - 3 != d {
                    return Err(Error::DimensionMismatch { expected: d, found: tokens.len() - 3 });
                }
                let mut tau = Vec::with_capacity(d);
                for &(c, t) in &tokens[3..] {
                    tau.push(t.parse::<i64>().map_err(|_| syntax(c, format!("invalid integer `{t}`")))?);
                }
                edges.push((j, k, tau));
            }
            (other, Some(_)) => return Err(syntax(kw_col, format!("unknown keyword `{other}`"))),
        }
    }
    let dim = dim.ok_or(Error::Syntax { line: 1, column: 1, message: "missing `dim` line".into() })?;
    FundamentalGraph::new(dim, names, edges)
}

/// β = Σ β_n / ϰ_n, exact and as a float.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Beta(pub Ratio<i64>);

impl Beta {
    pub fn value(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn compute_beta(g: &FundamentalGraph) -> Beta {
    let sum = g
        .bridge_degrees()
        .iter()
        .zip(g.degrees())
        .map(|(&b, &k)| Ratio::new(b as i64, k as i64))
        .fold(Ratio::from_integer(0), |acc, r| acc + r);
    Beta(sum)
}

/// Verifies that the whole periodic graph Γ is connected: Γ_f must be
/// connected and the cycle shift vectors must generate ℤ^d.
pub fn check_connected(g: &FundamentalGraph) -> Result<()> {
    let nu = g.num_vertices();
    let d = g.dim();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nu];
    for (idx, e) in g.edges().iter().enumerate() {
        adj[e.j].push((idx, e.k));
        if e.j != e.k {
            adj[e.k].push((idx, e.j));
        }
    }
    let mut potential: Vec<Option<Vec<i64>>> = vec![None; nu];
    let mut tree_edge = vec![false; g.edges().len()];
    potential[0] = Some(vec![0; d]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let pv = potential[v].clone().unwrap();
        for &(idx, w) in &adj[v] {
            if potential[w].is_some() {
                continue;
            }
            let e = &g.edges()[idx];
            // crossing (j, k, τ) from j gives p(k) = p(j) + τ, from k the reverse
            let pw: Vec<i64> = if e.j == v {
                pv.iter().zip(&e.tau).map(|(a, t)| a + t).collect()
            } else {
                pv.iter().zip(&e.tau).map(|(a, t)| a - t).collect()
            };
            potential[w] = Some(pw);
            tree_edge[idx] = true;
            queue.push_back(w);
        }
    }
    if potential.iter().any(Option::is_none) {
        return Err(Error::FundamentalDisconnected);
    }
    let cycles: Vec<Vec<i64>> = g
        .edges()
        .iter()
        .zip(&tree_edge)
        .filter(|(_, &t)| !t)
        .map(|(e, _)| {
            let pj = potential[e.j].as_ref().unwrap();
            let pk = potential[e.k].as_ref().unwrap();
            (0..d).map(|i| e.tau[i] + pj[i] - pk[i]).collect()
        })
        .collect();
    match sublattice_index(&cycles, d) {
        Some(1) => Ok(()),
        index => Err(Error::PeriodicDisconnected { index }),
    }
}

/// True iff every bridge joins a vertex to one of its own translates.
pub fn is_loop_graph(g: &FundamentalGraph) -> bool {
    g.bridges().all(|e| e.j == e.k)
}

/// Searches a precise point ϑ₀ ∈ {0, π}^d: ⟨τ(e), ϑ₀⟩/π odd for every bridge.
///
/// Only the half-period corners are searched, so `None` means "no precise
/// point in {0, π}^d" rather than "not precise".
pub fn find_precise_point(g: &FundamentalGraph) -> Result<Option<Vec<f64>>> {
    if !is_loop_graph(g) {
        return Err(Error::NotLoopGraph);
    }
    let mut shifts: Vec<&Vec<i64>> = g.bridges().map(|e| &e.tau).collect();
    shifts.sort();
    shifts.dedup();
    let mut sys = Gf2System::new(g.dim());
    for tau in shifts {
        sys.push((0..g.dim()).filter(|&i| tau[i].rem_euclid(2) == 1), true);
    }
    Ok(sys.solve().map(|x| {
        x.into_iter().map(|b| if b { std::f64::consts::PI } else { 0.0 }).collect()
    }))
}

/// Periodic 2-coloring witness: vertex `(v_n, m)` gets color `colors[n] + ⟨parity, m⟩ mod 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteWitness {
    pub colors: Vec<u8>,
    pub parity: Vec<u8>,
}

/// Decides whether the infinite periodic graph Γ is bipartite, looking for a
/// coloring `colors[v] + ⟨parity, n⟩ mod 2` of the vertex `v + n`.
///
/// Exact for connected Γ; a disconnected Γ may have bipartite colorings
/// that are not of this form.
pub fn is_bipartite_periodic(g: &FundamentalGraph) -> Option<BipartiteWitness> {
    let nu = g.num_vertices();
    let d = g.dim();
    let mut sys = Gf2System::new(nu + d);
    for e in g.edges() {
        let parity = (0..d).filter(|&i| e.tau[i].rem_euclid(2) == 1).map(|i| nu + i);
        sys.push([e.j, e.k].into_iter().chain(parity), true);
    }
    sys.solve().map(|x| BipartiteWitness {
        colors: x[..nu].iter().map(|&b| b as u8).collect(),
        parity: x[nu..].iter().map(|&b| b as u8).collect(),
    })
}

/// Ordinary 2-coloring of the fundamental multigraph Γ_f, ignoring shifts.
/// Any edge with `j == k` (including bridges folded onto a loop) rules it out.
pub fn is_bipartite_fundamental(g: &FundamentalGraph) -> Option<Vec<u8>> {
    let nu = g.num_vertices();
    if g.edges().iter().any(|e| e.j == e.k) {
        return None;
    }
    let mut adj = vec![Vec::new(); nu];
    for e in g.edges() {
        adj[e.j].push(e.k);
        adj[e.k].push(e.j);
    }
    let mut color: Vec<Option<u8>> = vec![None; nu];
    for s in 0..nu {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for &w in &adj[v] {
                match color[w] {
                    None => {
                        color[w] = Some(1 - c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// Combinatorial classification of a periodic graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub is_loop_graph: bool,
    pub precise_point: Option<Vec<f64>>,
    pub gamma_bipartite: bool,
    pub gamma_f_bipartite: bool,
    pub beta: Beta,
}

pub fn classify(g: &FundamentalGraph) -> Classification {
    let is_loop = is_loop_graph(g);
    let precise_point = if is_loop { find_precise_point(g).ok().flatten() } else { None };
    Classification {
        is_loop_graph: is_loop,
        precise_point,
        gamma_bipartite: is_bipartite_periodic(g).is_some(),
        gamma_f_bipartite: is_bipartite_fundamental(g).is_some(),
        beta: compute_beta(g),
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "z1_lattice",
    "z2_lattice",
    "z3_lattice",
    "hexagonal",
    "triangular",
    "z_pendant",
    "z_two_pendants",
    "c4_pendant_chain",
];

/// Test corpus of small periodic graphs. The cubic lattices are also
/// reachable as `zd_lattice(d)`.
pub fn builtin(name: &str) -> Result<FundamentalGraph> {
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let lattice = |d: usize| {
        let edges = (0..d).map(|i| {
            let mut tau = vec![0; d];
            tau[i] = 1;
            (0, 0, tau)
        });
        FundamentalGraph::new(d, names(&["a"]), edges.collect::<Vec<_>>())
    };
    match name {
        "z1_lattice" | "zd_lattice(1)" => lattice(1),
        "z2_lattice" | "zd_lattice(2)" => lattice(2),
        "z3_lattice" | "zd_lattice(3)" => lattice(3),
        "hexagonal" => FundamentalGraph::new(
            2,
            names(&["a", "b"]),
            vec![(0, 1, vec![0, 0]), (1, 0, vec![1, 0]), (1, 0, vec![0, 1])],
        ),
        "triangular" => FundamentalGraph::new(
            2,
            names(&["a"]),
            vec![(0, 0, vec![1, 0]), (0, 0, vec![0, 1]), (0, 0, vec![1, 1])],
        ),
        "z_pendant" => FundamentalGraph::new(1, names(&["a", "b"]), vec![(0, 1, vec![0]), (0, 0, vec![1])]),
        "z_two_pendants" => FundamentalGraph::new(
            1,
            names(&["a", "b", "c"]),
            vec![(0, 1, vec![0]), (0, 2, vec![0]), (0, 0, vec![1])],
        ),
        "c4_pendant_chain" => FundamentalGraph::new(
            1,
            names(&["v1", "v2", "v3", "v4", "v5"]),
            vec![
                (0, 1, vec![0]),
                (1, 2, vec![0]),
                (2, 3, vec![0]),
                (3, 0, vec![0]),
                (1, 4, vec![0]),
                (1, 0, vec![1]),
            ],
        ),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}
