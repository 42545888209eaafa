//! Finite simple graphs with brute-force colouring oracles.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

/// An undirected graph without loops. Vertex names are tokens of ASCII
/// letters, digits, `_` and `-`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleGraph {
    names: Vec<String>,
    #[serde(skip)]
    adj: Vec<Vec<bool>>,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeColour {
    Red,
    Blue,
}

impl EdgeColour {
    pub fn other(self) -> EdgeColour {
        match self {
            EdgeColour::Red => EdgeColour::Blue,
            EdgeColour::Blue => EdgeColour::Red,
        }
    }
}

/// A colour for every edge, keyed by `(u, v)` with `u < v`.
pub type EdgeColouring = BTreeMap<(usize, usize), EdgeColour>;

pub(crate) fn valid_vertex_name(s: &str) -> bool {
    !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

impl SimpleGraph {
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if !valid_vertex_name(n) {
                return Err(Error::InvalidGraph(format!("bad vertex name `{n}`")));
            }
            if index.insert(n.as_str(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{n}`")));
            }
        }
        let look = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex `{}`", s.as_ref())))
        };
        let pairs = edges
            .iter()
            .map(|(u, v)| Ok((look(u)?, look(v)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut g = SimpleGraph::from_edges(0, &[])?;
        g.names = names;
        g.adj = vec![vec![false; g.names.len()]; g.names.len()];
        for (u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// A graph on vertices named `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph {
            names: (0..n).map(|i| i.to_string()).collect(),
            adj: vec![vec![false; n]; n],
            edges: Vec::new(),
        };
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range")));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at `{}`", self.names[u])));
        }
        if !self.adj[u][v] {
            self.adj[u][v] = true;
            self.adj[v][u] = true;
            self.edges.push((u.min(v), u.max(v)));
            self.edges.sort_unstable();
        }
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges).expect("valid edges")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("valid edges")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((0, n - 1));
        }
        Self::from_edges(n, &edges).expect("valid edges")
    }

    /// The graph on `0..n` whose edges are the set bits of `mask` over the
    /// pairs `u < v` in lexicographic order.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        Self::from_edges(n, &edges).expect("valid edges")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_complete(&self) -> bool {
        let n = self.len();
        self.edges.len() == n * n.saturating_sub(1) / 2
    }

    /// Adds an isolated vertex and returns its index.
    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if !valid_vertex_name(name) || self.vertex(name).is_some() {
            return Err(Error::InvalidGraph(format!("cannot add vertex `{name}`")));
        }
        self.names.push(name.to_string());
        for row in &mut self.adj {
            row.push(false);
        }
        self.adj.push(vec![false; self.names.len()]);
        Ok(self.names.len() - 1)
    }

    /// Whether some `t` vertices are pairwise non-adjacent.
    pub fn has_independent_set(&self, t: usize) -> bool {
        fn rec(g: &SimpleGraph, chosen: &mut Vec<usize>, from: usize, t: usize) -> bool {
            if chosen.len() == t {
                return true;
            }
            (from..g.len()).any(|v| {
                if chosen.iter().any(|&u| g.adj[u][v]) {
                    return false;
                }
                chosen.push(v);
                let ok = rec(g, chosen, v + 1, t);
                chosen.pop();
                ok
            })
        }
        rec(self, &mut Vec::new(), 0, t)
    }

    pub fn is_proper_colouring(&self, colours: &[usize], k: usize) -> bool {
        colours.len() == self.len()
            && colours.iter().all(|&c| c < k)
            && self.edges.iter().all(|&(u, v)| colours[u] != colours[v])
    }

    /// A proper vertex colouring with at most `k` colours, found by
    /// backtracking; colours are introduced in order.
    pub fn colouring(&self, k: usize) -> Option<Vec<usize>> {
        fn rec(g: &SimpleGraph, col: &mut Vec<usize>, k: usize, used: usize) -> bool {
            let v = col.len();
            if v == g.len() {
                return true;
            }
            for c in 0..k.min(used + 1) {
                if (0..v).all(|u| !g.adj[u][v] || col[u] != c) {
                    col.push(c);
                    if rec(g, col, k, used.max(c + 1)) {
                        return true;
                    }
                    col.pop();
                }
            }
            false
        }
        let mut col = Vec::with_capacity(self.len());
        rec(self, &mut col, k, 0).then_some(col)
    }

    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for &(u, v) in &self.edges {
            for w in v + 1..self.len() {
                if self.adj[u][w] && self.adj[v][w] {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn is_triangle_free_colouring(&self, c: &EdgeColouring) -> bool {
        c.len() == self.edges.len()
            && self.edges.iter().all(|e| c.contains_key(e))
            && self
                .triangles()
                .iter()
                .all(|&(u, v, w)| !(c[&(u, v)] == c[&(v, w)] && c[&(u, v)] == c[&(u, w)]))
    }

    /// A red/blue edge colouring with no monochromatic triangle.
    pub fn triangle_free_colouring(&self) -> Option<EdgeColouring> {
        let tris = self.triangles();
        // Triangles indexed by their largest edge in the edge order.
        let pos: HashMap<(usize, usize), usize> =
            self.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut closing: Vec<Vec<[usize; 3]>> = vec![Vec::new(); self.edges.len()];
        for (u, v, w) in tris {
            let mut es = [pos[&(u, v)], pos[&(v, w)], pos[&(u, w)]];
            es.sort_unstable();
            closing[es[2]].push(es);
        }
        fn rec(i: usize, col: &mut Vec<EdgeColour>, closing: &[Vec<[usize; 3]>]) -> bool {
            if i == closing.len() {
                return true;
            }
            for c in [EdgeColour::Red, EdgeColour::Blue] {
                col.push(c);
                let ok = closing[i]
                    .iter()
                    .all(|t| !(col[t[0]] == c && col[t[1]] == c));
                if ok && rec(i + 1, col, closing) {
                    return true;
                }
                col.pop();
            }
            false
        }
        let mut col = Vec::new();
        rec(0, &mut col, &closing).then(|| self.edges.iter().copied().zip(col).collect())
    }
}

/// Canonical form up to isomorphism: the least adjacency mask over all
/// vertex orders. Only for small graphs.
pub fn canonical_mask(g: &SimpleGraph) -> u64 {
    let n = g.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mut mask = 0u64;
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if g.adj[perm[u]][perm[v]] {
                    mask |= 1 << i;
                }
                i += 1;
            }
        }
        best = best.min(mask);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// One graph per isomorphism class on `n` vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= 7, "too many graphs to enumerate");
    let pairs = n * n.saturating_sub(1) / 2;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..1u64 << pairs {
        let g = SimpleGraph::from_mask(n, mask);
        if seen.insert(canonical_mask(&g)) {
            out.push(g);
        }
    }
    out
}
