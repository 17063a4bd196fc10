//! Graphs, orientations, finite abelian groups, and the counting oracles
//! for coupled multicolorings and coupled multicommodity flows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod coupled;
pub use coupled::{
    count_coupled_colorings, count_coupled_colorings_seq, count_coupled_flows,
    count_coupled_flows_naive, count_coupled_flows_oriented, count_coupled_flows_seq,
    coupled_chromatic_poly, coupled_flow_poly, flow_poly_via_chain, flow_poly_via_tutte,
    is_coupled_coloring, is_coupled_flow, verify_coloring_oracle, verify_flow_oracle,
    ColorAssignment, FlowAssignment,
};

/// Undirected multigraph. Loops and parallel edges are allowed; vertex
/// indices run in `0..vertices`.
///
/// JSON form: `{"vertices": 3, "edges": [[0,1],[1,2],[0,2]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidParameters(format!(
                    "edge ({u},{v}) out of range for {vertices} vertices"
                )));
            }
        }
        if edges.len() > 63 {
            return Err(Error::InvalidParameters(format!(
                "{} edges exceed the 63-element ground set cap",
                edges.len()
            )));
        }
        Ok(Graph { vertices, edges })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let g: Graph =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
        Graph::new(g.vertices, g.edges)
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// No loops and no repeated vertex pair.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &self.edges {
            if u == v {
                return false;
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return false;
            }
        }
        true
    }

    /// Number of connected components of `(V, A)` where `A` is the edge
    /// subset selected by `mask`. Isolated vertices count.
    pub fn components_masked(&self, mask: u64) -> usize {
        let mut dsu = Dsu::new(self.vertices);
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                dsu.union(u, v);
            }
        }
        dsu.count_roots()
    }

    /// `rk(A) = |V| - c(A)`.
    pub fn rank_masked(&self, mask: u64) -> usize {
        self.vertices - self.components_masked(mask)
    }

    pub fn components(&self, edge_subset: &[usize]) -> Result<usize> {
        Ok(self.components_masked(self.subset_mask(edge_subset)?))
    }

    pub fn graph_rank(&self, edge_subset: &[usize]) -> Result<usize> {
        Ok(self.rank_masked(self.subset_mask(edge_subset)?))
    }

    fn subset_mask(&self, edge_subset: &[usize]) -> Result<u64> {
        let mut mask = 0u64;
        for &e in edge_subset {
            if e >= self.edges.len() {
                return Err(Error::Contract(format!("edge index {e} out of range")));
            }
            mask |= 1 << e;
        }
        Ok(mask)
    }

    /// Bitmask selecting every edge.
    pub fn full_mask(&self) -> u64 {
        if self.edges.is_empty() {
            0
        } else {
            (1u64 << self.edges.len()) - 1
        }
    }

    /// Components of the whole graph.
    pub fn num_components(&self) -> usize {
        self.components_masked(self.full_mask())
    }

    /// Each edge `{a,b}` oriented from the smaller to the larger endpoint;
    /// loops stay `(v,v)`.
    pub fn default_orientation(&self) -> Orientation {
        Orientation {
            arcs: self
                .edges
                .iter()
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect(),
        }
    }

    /// Deterministic pseudo-random re-orientation; `seed` selects which
    /// edges flip.
    pub fn orientation_seeded(&self, seed: u64) -> Orientation {
        let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
        let mut next = || {
            // splitmix64
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        Orientation {
            arcs: self
                .edges
                .iter()
                .map(|&(u, v)| if next() & 1 == 1 { (v, u) } else { (u, v) })
                .collect(),
        }
    }
}

/// An orientation of a graph's edges: per-edge `(tail, head)` pairs whose
/// underlying undirected edges match the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub arcs: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn matches(&self, g: &Graph) -> bool {
        self.arcs.len() == g.edges.len()
            && self.arcs.iter().zip(&g.edges).all(|(&(t, h), &(u, v))| {
                (t, h) == (u, v) || (t, h) == (v, u)
            })
    }
}

/// Finite abelian group given as a product of cyclic factors, e.g. `Z4` or
/// `Z2xZ2`. Elements are mixed-radix encoded in `0..order`, added
/// component-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

impl AbelianGroup {
    pub fn cyclic(n: u32) -> Result<Self> {
        AbelianGroup::product(vec![n])
    }

    pub fn product(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(Error::InvalidParameters(
                "abelian group needs at least one nonzero cyclic factor".into(),
            ));
        }
        Ok(AbelianGroup { factors })
    }

    /// Parses `"Z6"` or `"Z2xZ3"` (case-insensitive).
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in text.split(['x', 'X']) {
            let part = part.trim();
            let digits = part
                .strip_prefix('Z')
                .or_else(|| part.strip_prefix('z'))
                .ok_or_else(|| {
                    Error::Parse(format!("group factor {part:?} must look like Z<n>"))
                })?;
            let n: u32 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("group factor {part:?} must look like Z<n>")))?;
            if n == 0 {
                return Err(Error::Parse("Z0 is not a group".into()));
            }
            factors.push(n);
        }
        AbelianGroup::product(factors)
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&f| f as u64).product()
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let mut out = 0u64;
        let mut scale = 1u64;
        let (mut a, mut b) = (a, b);
        for &f in &self.factors {
            let f = f as u64;
            out += ((a % f + b % f) % f) * scale;
            a /= f;
            b /= f;
            scale *= f;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let mut out = 0u64;
        let mut scale = 1u64;
        let mut a = a;
        for &f in &self.factors {
            let f = f as u64;
            out += ((f - a % f) % f) * scale;
            a /= f;
            scale *= f;
        }
        out
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let g = self.parent[self.parent[x] as usize];
            self.parent[x] = g;
            x = g as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb as u32;
        }
    }

    fn count_roots(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}
