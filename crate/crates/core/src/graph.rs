//! Simple graphs, commuting graphs of rings, second neighborhoods and the
//! clique-union normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bitset::{iter_ones, BitMatrix};
use crate::error::{Error, Result};
use crate::ring::{center, FiniteRing};

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug)]
pub struct SimpleGraph {
    adj: BitMatrix,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: BitMatrix::new(n),
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.adj.set(u, v);
                g.adj.set(v, u);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for v in 1..n {
            g.adj.set(v - 1, v);
            g.adj.set(v, v - 1);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        self.adj.set(u, v);
        self.adj.set(v, u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.dim()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_ones(self.adj.row(v))
    }

    pub(crate) fn neighbor_row(&self, v: usize) -> &[u64] {
        self.adj.row(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row_count(v)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidGraph("relabeling is not a permutation".into()));
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Self::from_edges(n, &edges)
    }

    /// Edge-list text: `n m` then one `u v` line per edge with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidGraph(format!("not a vertex index: '{t}'")))
        });
        let mut next = |what: &str| {
            tokens
                .next()
                .unwrap_or_else(|| Err(Error::InvalidGraph(format!("missing {what}"))))
        };
        let n = next("vertex count")?;
        let m = next("edge count")?;
        let mut g = Self::new(n);
        for _ in 0..m {
            let u = next("edge endpoint")?;
            let v = next("edge endpoint")?;
            if u >= v || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) must satisfy 0 <= u < v < {n}"
                )));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            g.add_edge(u, v)?;
        }
        if tokens.next().is_some() {
            return Err(Error::InvalidGraph(format!("more than {m} edges listed")));
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let json = GraphJson {
            n: self.n(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&json).expect("graph json")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: GraphJson = serde_json::from_str(text)?;
        let mut g = Self::new(json.n);
        for [u, v] in json.edges {
            let (u, v) = (u.min(v), u.max(v));
            if u == v || v >= json.n {
                return Err(Error::InvalidGraph(format!("invalid edge ({u}, {v})")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Reads either format; JSON when the first non-blank character is `{`.
    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        if text.trim_start().starts_with('{') {
            Self::from_json(&text)
        } else {
            Self::parse_edge_list(&text)
        }
    }
}

/// Commuting graph: non-central elements in ascending index order, adjacent
/// when they commute.
pub fn commuting_graph(ring: &FiniteRing) -> Result<SimpleGraph> {
    let z = center(ring);
    let vertices: Vec<usize> = (0..ring.order()).filter(|&x| !z.contains(x)).collect();
    if vertices.is_empty() {
        return Err(Error::CommutativeRing);
    }
    let mut g = SimpleGraph::new(vertices.len());
    for (i, &a) in vertices.iter().enumerate() {
        for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
            if ring.commutes(a, b) {
                g.adj.set(i, j);
                g.adj.set(j, i);
            }
        }
    }
    let labels = vertices.iter().map(|&x| ring.label(x)).collect();
    g.with_labels(labels)
}

fn check_vertex(g: &SimpleGraph, v: usize) -> Result<()> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(())
}

fn second_neighborhood_row(g: &SimpleGraph, v: usize) -> Vec<u64> {
    let mut row = vec![0u64; g.n().div_ceil(64)];
    for u in g.neighbors(v) {
        for (acc, w) in row.iter_mut().zip(g.neighbor_row(u)) {
            *acc |= w;
        }
    }
    if !row.is_empty() {
        row[v / 64] &= !(1 << (v % 64));
    }
    row
}

/// N²(v): the union of the neighborhoods of v's neighbors, with v removed.
pub fn second_neighborhood(g: &SimpleGraph, v: usize) -> Result<Vec<usize>> {
    check_vertex(g, v)?;
    Ok(iter_ones(&second_neighborhood_row(g, v)).collect())
}

/// δ₂(v): sum of degrees over N²(v).
pub fn delta2(g: &SimpleGraph, v: usize) -> Result<u64> {
    check_vertex(g, v)?;
    let degrees = g.degrees();
    Ok(delta2_with(g, v, &degrees))
}

fn delta2_with(g: &SimpleGraph, v: usize, degrees: &[usize]) -> u64 {
    iter_ones(&second_neighborhood_row(g, v))
        .map(|x| degrees[x] as u64)
        .sum()
}

pub fn delta2_all(g: &SimpleGraph) -> Vec<u64> {
    let degrees = g.degrees();
    (0..g.n()).map(|v| delta2_with(g, v, &degrees)).collect()
}

/// One `count x K_size` term of a clique union.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CliquePart {
    pub size: u64,
    pub count: u64,
}

/// `l_1 K_{m_1} ∪ ... ∪ l_r K_{m_r}` with strictly increasing sizes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliqueUnion {
    parts: Vec<CliquePart>,
}

impl CliqueUnion {
    /// Builds the normal form from `(size, count)` pairs: equal sizes merge,
    /// zero counts vanish. Sizes must be positive, and the union must keep
    /// its MSN energy `2 Σ l (m-1)^3` within `i64`.
    pub fn new(parts: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut merged: BTreeMap<u64, u64> = BTreeMap::new();
        for (size, count) in parts {
            if size == 0 {
                return Err(Error::InvalidCliqueUnion("clique size must be at least 1".into()));
            }
            if count == 0 {
                continue;
            }
            let slot = merged.entry(size).or_insert(0);
            *slot = slot
                .checked_add(count)
                .ok_or_else(|| Error::Overflow("clique count".into()))?;
        }
        let union = Self {
            parts: merged
                .into_iter()
                .map(|(size, count)| CliquePart { size, count })
                .collect(),
        };
        union.checked_msn_energy()?;
        union.checked_vertex_count()?;
        Ok(union)
    }

    pub fn from_sizes(sizes: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::new(sizes.into_iter().map(|s| (s, 1)))
    }

    pub fn parts(&self) -> &[CliquePart] {
        &self.parts
    }

    pub fn vertex_count(&self) -> u64 {
        self.parts.iter().map(|p| p.size * p.count).sum()
    }

    fn checked_vertex_count(&self) -> Result<u64> {
        self.parts
            .iter()
            .try_fold(0u64, |acc, p| acc.checked_add(p.size.checked_mul(p.count)?))
            .ok_or_else(|| Error::Overflow("clique union vertex count".into()))
    }

    fn checked_msn_energy(&self) -> Result<i64> {
        let overflow = || Error::Overflow("clique union MSN energy".into());
        let mut total: i64 = 0;
        for p in &self.parts {
            let k = i64::try_from(p.size - 1).map_err(|_| overflow())?;
            let l = i64::try_from(p.count).map_err(|_| overflow())?;
            let term = k
                .checked_pow(3)
                .and_then(|c| c.checked_mul(l))
                .and_then(|c| c.checked_mul(2))
                .ok_or_else(overflow)?;
            total = total.checked_add(term).ok_or_else(overflow)?;
        }
        Ok(total)
    }

    /// Number of connected components.
    pub fn component_count(&self) -> u64 {
        self.parts.iter().map(|p| p.count).sum()
    }

    /// `true` for a single complete graph `K_n` (including `K_1`).
    pub fn is_single_clique(&self) -> bool {
        self.component_count() == 1
    }

    /// The disjoint union itself, components laid out in part order.
    pub fn to_graph(&self) -> Result<SimpleGraph> {
        let n = usize::try_from(self.vertex_count())
            .map_err(|_| Error::Overflow("graph size".into()))?;
        let mut g = SimpleGraph::new(n);
        let mut start = 0usize;
        for part in &self.parts {
            for _ in 0..part.count {
                let size = part.size as usize;
                for u in start..start + size {
                    for v in u + 1..start + size {
                        g.adj.set(u, v);
                        g.adj.set(v, u);
                    }
                }
                start += size;
            }
        }
        Ok(g)
    }
}

impl fmt::Display for CliqueUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("empty");
        }
        let terms: Vec<String> = self
            .parts
            .iter()
            .map(|p| format!("{}K{}", p.count, p.size))
            .collect();
        f.write_str(&terms.join(" u "))
    }
}

impl Serialize for CliqueUnion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[u64; 2]> = self.parts.iter().map(|p| [p.size, p.count]).collect();
        pairs.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliqueDecomposition {
    Union(CliqueUnion),
    /// Two vertices of one component that are not adjacent.
    NotCliqueUnion { witness: (usize, usize) },
}

impl CliqueDecomposition {
    pub fn union(&self) -> Option<&CliqueUnion> {
        match self {
            CliqueDecomposition::Union(u) => Some(u),
            CliqueDecomposition::NotCliqueUnion { .. } => None,
        }
    }
}

/// Connected components of `g`, each sorted, ordered by smallest vertex.
pub fn connected_components(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

pub fn clique_decomposition(g: &SimpleGraph) -> CliqueDecomposition {
    let mut sizes = Vec::new();
    for comp in connected_components(g) {
        let size = comp.len();
        if let Some(&u) = comp.iter().find(|&&u| g.degree(u) + 1 != size) {
            let v = comp
                .iter()
                .copied()
                .find(|&v| v != u && !g.has_edge(u, v))
                .expect("a vertex short of full degree has a non-neighbor in its component");
            return CliqueDecomposition::NotCliqueUnion { witness: (u, v) };
        }
        sizes.push(size as u64);
    }
    CliqueDecomposition::Union(
        CliqueUnion::from_sizes(sizes).expect("graph-sized clique unions fit in i64"),
    )
}
