//! Finite simple graphs, the standard families, the text file format, and
//! explicit Cartesian products.
//!
//! Product vertices are numbered in mixed radix with the first factor most
//! significant, so `(c_1, ..., c_n)` maps to `((c_1 * m_2 + c_2) * m_3 + ...)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Default limit on the number of vertices an explicit product may have.
pub const DEFAULT_MAX_VERTICES: usize = 1 << 20;

/// Undirected simple graph with sorted adjacency lists. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Complete,
    Path,
    Cycle,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Path => "path",
            Family::Cycle => "cycle",
        }
    }

    pub fn generate(self, m: usize) -> Result<Graph> {
        generate(self, m)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complete" => Ok(Family::Complete),
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            other => Err(Error::InvalidParameter(format!("unknown graph family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `K_m`, `P_m` or `C_m`, with path and cycle vertices numbered along the structure.
pub fn generate(family: Family, m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
    }
    let mut edges = Vec::new();
    match family {
        Family::Complete => {
            for u in 0..m {
                for v in u + 1..m {
                    edges.push((u, v));
                }
            }
        }
        Family::Path => edges.extend((1..m).map(|v| (v - 1, v))),
        Family::Cycle => {
            if m < 3 {
                return Err(Error::InvalidParameter(format!("cycle needs m >= 3, got {m}")));
            }
            edges.extend((1..m).map(|v| (v - 1, v)));
            edges.push((m - 1, 0));
        }
    }
    let mut g = Graph::from_edges(m, edges)?;
    g.label = Some(format!("{family}:{m}"));
    Ok(g)
}

/// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    let mut g = Graph::from_edges(10, edges).expect("petersen edges are valid");
    g.label = Some("petersen".into());
    g
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(m: usize, edges: I) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); m];
        for (u, v) in edges {
            if u >= m || v >= m {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{m}"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    fn from_adjacency_unchecked(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adj,
            edge_count,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        let m = self.vertex_count();
        let mut seen = vec![false; m];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == m
    }

    /// Neighborhoods as single-word bitmasks, available for graphs of at most 64 vertices.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        if self.vertex_count() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|l| l.iter().fold(0u64, |acc, &v| acc | 1 << v))
                .collect(),
        )
    }

    /// Number of edges with exactly one endpoint in `a`.
    pub fn edge_boundary(&self, a: &VertexSet) -> usize {
        assert_eq!(a.universe(), self.vertex_count(), "vertex set universe mismatch");
        a.iter()
            .map(|u| self.adj[u].iter().filter(|&&v| !a.contains(v)).count())
            .sum()
    }

    /// Writes the graph in the text file format accepted by [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("label", &self.label)
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edge_count)
            .finish()
    }
}

/// Number of edges with exactly one endpoint in `a`.
pub fn edge_boundary(g: &Graph, a: &VertexSet) -> usize {
    g.edge_boundary(a)
}

/// Parses the text graph format: the first nonblank line holds the vertex count,
/// each further nonblank line an edge `u v`. Lines starting with `#` are comments.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut m: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match m {
            None => {
                if fields.len() != 1 {
                    return Err(err(format!("expected vertex count, got {line:?}")));
                }
                let count: usize = fields[0]
                    .parse()
                    .map_err(|_| err(format!("bad vertex count {:?}", fields[0])))?;
                if count == 0 {
                    return Err(err("vertex count must be positive".into()));
                }
                m = Some(count);
            }
            Some(count) => {
                if fields.len() != 2 {
                    return Err(err(format!("expected \"u v\", got {line:?}")));
                }
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| err(format!("bad vertex index {s:?}")))
                };
                let (u, v) = (parse(fields[0])?, parse(fields[1])?);
                if u >= count || v >= count {
                    return Err(err(format!("vertex index out of range 0..{count} in {line:?}")));
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                edges.push((u, v));
            }
        }
    }
    let m = m.ok_or(Error::Parse {
        line: 1,
        message: "missing vertex count".into(),
    })?;
    Graph::from_edges(m, edges)
}

/// An ordered, nonempty list of factor graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpec {
    factors: Vec<Graph>,
}

impl ProductSpec {
    pub fn new(factors: Vec<Graph>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter("product needs at least one factor".into()));
        }
        Ok(ProductSpec { factors })
    }

    pub fn power(g: &Graph, n: usize) -> Result<Self> {
        Self::new(vec![g.clone(); n])
    }

    pub fn factors(&self) -> &[Graph] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.factors.iter().map(Graph::vertex_count).collect()
    }

    /// Exact vertex count, saturating at `u128::MAX`.
    pub fn vertex_count(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, g| acc.saturating_mul(g.vertex_count() as u128))
    }

    pub fn log_vertex_count(&self) -> f64 {
        self.factors.iter().map(|g| (g.vertex_count() as f64).ln()).sum()
    }

    /// Concatenation of two products, used for `SPEC x SPEC`.
    pub fn concat(mut self, other: ProductSpec) -> Self {
        self.factors.extend(other.factors);
        self
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.factors.len());
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, g)| acc * g.vertex_count() + c)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.factors.len()];
        for (slot, g) in coords.iter_mut().zip(&self.factors).rev() {
            let m = g.vertex_count();
            *slot = index % m;
            index /= m;
        }
        coords
    }

    fn check_cap(&self, cap: usize) -> Result<usize> {
        let required = self.vertex_count();
        if required > cap as u128 {
            return Err(Error::CapExceeded {
                what: "product materialization",
                required,
                cap: cap as u128,
            });
        }
        Ok(required as usize)
    }

    /// The set `A_1 x ... x A_n` inside the explicit product.
    pub fn product_set(&self, sets: &[VertexSet], cap: usize) -> Result<VertexSet> {
        if sets.len() != self.factors.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} factor sets, got {}",
                self.factors.len(),
                sets.len()
            )));
        }
        for (i, (s, g)) in sets.iter().zip(&self.factors).enumerate() {
            if s.universe() != g.vertex_count() {
                return Err(Error::InvalidParameter(format!(
                    "factor set {i} has universe {} but factor has {} vertices",
                    s.universe(),
                    g.vertex_count()
                )));
            }
        }
        let total = self.check_cap(cap)?;
        let mut out = VertexSet::empty(total);
        let members: Vec<Vec<usize>> = sets.iter().map(VertexSet::to_vec).collect();
        if members.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        let mut pick = vec![0usize; members.len()];
        loop {
            let coords: Vec<usize> = pick.iter().zip(&members).map(|(&p, m)| m[p]).collect();
            out.insert(self.encode(&coords));
            let mut i = members.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < members[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }
}

/// Materializes `G_1 x ... x G_n` with the default vertex cap.
pub fn cartesian_product(spec: &ProductSpec) -> Result<Graph> {
    cartesian_product_capped(spec, DEFAULT_MAX_VERTICES)
}

pub fn cartesian_product_capped(spec: &ProductSpec, cap: usize) -> Result<Graph> {
    let total = spec.check_cap(cap)?;
    let sizes = spec.sizes();
    // stride[i] = product of sizes after factor i
    let mut stride = vec![1usize; sizes.len()];
    for i in (0..sizes.len().saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * sizes[i + 1];
    }
    let mut adj = vec![Vec::new(); total];
    for (v, list) in adj.iter_mut().enumerate() {
        for (i, g) in spec.factors.iter().enumerate() {
            let c = v / stride[i] % sizes[i];
            let base = v - c * stride[i];
            list.extend(g.neighbors(c).iter().map(|&w| base + w * stride[i]));
        }
    }
    let label = spec
        .factors
        .iter()
        .map(|g| g.label().unwrap_or("G").to_string())
        .collect::<Vec<_>>()
        .join(" x ");
    Ok(Graph::from_adjacency_unchecked(adj).with_label(label))
}
