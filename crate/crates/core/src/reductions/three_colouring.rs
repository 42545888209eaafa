//! Graph 3-colourability to qualitative representability.
//!
//! The graph is padded with isolated vertices and extended by an apex `∞`
//! adjacent to every vertex; a qualitative representation then exists
//! exactly when the extended graph is 4-colourable.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Atom, AtomStructure, Triple};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::representation::Representation;

use super::graph::SimpleGraph;
use super::{family_of, fresh_name, structure_from_forbidden};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Id,
    /// Edge atom of the extended graph, indices over `V ∪ {∞}`.
    S(usize, usize),
    Gap,
    /// One of the three colouring atoms `a`, `b`, `c`.
    Col(u8),
    Y,
    N,
    YConv,
    NConv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Graph,
    Colour,
}

impl Kind {
    fn sides(self) -> Option<(Side, Side)> {
        use Side::*;
        match self {
            Kind::Id => None,
            Kind::S(..) | Kind::Gap => Some((Graph, Graph)),
            Kind::Col(_) => Some((Colour, Colour)),
            Kind::Y | Kind::N => Some((Graph, Colour)),
            Kind::YConv | Kind::NConv => Some((Colour, Graph)),
        }
    }
}

#[derive(Debug, Clone)]
pub enum ThreeColouringReduction {
    /// The graph has no edges, so one colour suffices.
    TriviallyColourable,
    Instance(ThreeColouringInstance),
}

#[derive(Debug, Clone)]
pub struct ThreeColouringInstance {
    structure: Arc<AtomStructure>,
    original: SimpleGraph,
    padded: SimpleGraph,
    apex: String,
    kinds: Vec<Kind>,
    edge_atom: HashMap<(usize, usize), Atom>,
    y: Atom,
    n: Atom,
    colours: [Atom; 3],
    gap: Atom,
}

/// Isolated vertices to add so that the graph has an independent set of
/// size five and every edge has a common non-neighbour (which also gives a
/// triangle with exactly one edge).
fn padding_needed(g: &SimpleGraph) -> usize {
    let for_independence = (0..=5).find(|&t| g.has_independent_set(5 - t)).unwrap_or(5);
    let every_edge_open = g.edges().iter().all(|&(u, v)| {
        (0..g.len()).any(|w| w != u && w != v && !g.has_edge(u, w) && !g.has_edge(v, w))
    });
    for_independence.max(usize::from(!every_edge_open))
}

pub fn reduce_three_colouring(g: &SimpleGraph) -> ThreeColouringReduction {
    if g.edges().is_empty() {
        return ThreeColouringReduction::TriviallyColourable;
    }
    let mut padded = g.clone();
    for _ in 0..padding_needed(g) {
        let name = fresh_name(padded.names(), "pad");
        padded.add_vertex(&name).expect("fresh name");
    }
    ThreeColouringReduction::Instance(ThreeColouringInstance::build(g.clone(), padded))
}

impl ThreeColouringInstance {
    fn build(original: SimpleGraph, padded: SimpleGraph) -> Self {
        let m = padded.len();
        let apex = fresh_name(padded.names(), "inf");
        let vname = |v: usize| if v == m { apex.as_str() } else { padded.names()[v].as_str() };
        let is_edge = |u: usize, v: usize| u != v && (u == m || v == m || padded.has_edge(u, v));

        let mut names = vec!["1'".to_string()];
        let mut kinds = vec![Kind::Id];
        let mut edge_atom = HashMap::new();
        for u in 0..=m {
            for v in 0..=m {
                if is_edge(u, v) {
                    edge_atom.insert((u, v), names.len());
                    names.push(format!("s[{},{}]", vname(u), vname(v)));
                    kinds.push(Kind::S(u, v));
                }
            }
        }
        let mut push = |name: &str, k: Kind| {
            names.push(name.to_string());
            kinds.push(k);
            names.len() - 1
        };
        let gap = push("g", Kind::Gap);
        let colours = [push("a", Kind::Col(0)), push("b", Kind::Col(1)), push("c", Kind::Col(2))];
        let y = push("y", Kind::Y);
        let n = push("n", Kind::N);
        let yc = push("y^", Kind::YConv);
        let nc = push("n^", Kind::NConv);

        let mut converse: Vec<Atom> = (0..names.len()).collect();
        for (&(u, v), &a) in &edge_atom {
            converse[a] = edge_atom[&(v, u)];
        }
        converse[y] = yc;
        converse[yc] = y;
        converse[n] = nc;
        converse[nc] = n;

        let literal = |t: Triple| literal_family(&kinds, m, &is_edge, t);
        let structure = structure_from_forbidden(names, converse, 0, |t| literal(t).is_some());
        ThreeColouringInstance {
            structure: Arc::new(structure),
            original,
            padded,
            apex,
            kinds,
            edge_atom,
            y,
            n,
            colours,
            gap,
        }
    }

    pub fn structure(&self) -> &Arc<AtomStructure> {
        &self.structure
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.original
    }

    /// The input graph with the padding vertices appended.
    pub fn padded_graph(&self) -> &SimpleGraph {
        &self.padded
    }

    pub fn padding(&self) -> usize {
        self.padded.len() - self.original.len()
    }

    pub fn apex_name(&self) -> &str {
        &self.apex
    }

    /// The forbidden family that excludes `t`, if any.
    pub fn forbidden_family(&self, t: Triple) -> Option<&'static str> {
        let m = self.padded.len();
        let is_edge = |u: usize, v: usize| u != v && (u == m || v == m || self.padded.has_edge(u, v));
        family_of(self.structure.converse_map(), t, |t| {
            literal_family(&self.kinds, m, &is_edge, t)
        })
    }

    /// The witness network for a proper 3-colouring of the input graph:
    /// the extended graph plus four colour nodes.
    pub fn colouring_to_witness(&self, colouring: &[usize]) -> Result<Network> {
        if !self.original.is_proper_colouring(colouring, 3) {
            return Err(Error::InvalidColouring(
                "expected a proper colouring with colours 0, 1, 2".into(),
            ));
        }
        let m = self.padded.len();
        let mut colour = colouring.to_vec();
        colour.resize(m, 0);
        colour.push(3);

        let mut nodes: Vec<String> = self.padded.names().to_vec();
        nodes.push(self.apex.clone());
        for i in 1..=4 {
            let name = fresh_name(&nodes, &format!("colour{i}"));
            nodes.push(name);
        }
        let s = &self.structure;
        let mut net = Network::new(s.clone(), &nodes)?;
        let one = |a: Atom| s.set_of([a]);
        for u in 0..=m {
            for v in 0..=m {
                if u == v {
                    continue;
                }
                let a = self.edge_atom.get(&(u, v)).copied().unwrap_or(self.gap);
                net.set_label(u, v, one(a));
            }
            for (i, g) in (m + 1..m + 5).enumerate() {
                let a = if colour[u] == i { self.y } else { self.n };
                net.set_edge(u, g, one(a));
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                // Opposite edges of the tetrahedron share a label.
                let c = match (i, j) {
                    (0, 1) | (2, 3) => 0,
                    (0, 2) | (1, 3) => 1,
                    _ => 2,
                };
                net.set_edge(m + 1 + i, m + 1 + j, one(self.colours[c]));
            }
        }
        Ok(net)
    }

    /// Reads a proper 3-colouring of the input graph off a representation
    /// of the instance, using the unique `y` edge leaving each graph node.
    pub fn extract_colouring(&self, rep: &Representation) -> Result<Vec<usize>> {
        if !Arc::ptr_eq(rep.structure(), &self.structure) && **rep.structure() != *self.structure {
            return Err(Error::NotReductionShape("different atom structure".into()));
        }
        let m = self.padded.len();
        let k = rep.len();
        let apex_edge = |a: Atom| match self.kinds[a] {
            Kind::S(u, v) if u == m => Some(v),
            _ => None,
        };
        let apex = (0..k)
            .find(|&x| (0..k).any(|y| apex_edge(rep.atom_at(x, y)).is_some()))
            .ok_or_else(|| Error::NotReductionShape("no edge leaves the apex".into()))?;
        let mut point = vec![usize::MAX; m];
        for y in 0..k {
            if let Some(v) = apex_edge(rep.atom_at(apex, y)) {
                if point[v] != usize::MAX {
                    return Err(Error::NotReductionShape(format!(
                        "two points stand for vertex `{}`",
                        self.padded.names()[v]
                    )));
                }
                point[v] = y;
            }
        }
        let yes = |x: usize| -> Result<usize> {
            let mut it = (0..k).filter(|&z| rep.atom_at(x, z) == self.y);
            match (it.next(), it.next()) {
                (Some(z), None) => Ok(z),
                _ => Err(Error::NotReductionShape(format!(
                    "point `{}` does not have exactly one `y` edge",
                    rep.base()[x]
                ))),
            }
        };
        let apex_colour = yes(apex)?;
        let mut palette: Vec<usize> = Vec::new();
        let mut out = Vec::with_capacity(self.original.len());
        for (v, &p) in point.iter().take(self.original.len()).enumerate() {
            if p == usize::MAX {
                return Err(Error::NotReductionShape(format!(
                    "vertex `{}` is not represented",
                    self.padded.names()[v]
                )));
            }
            let z = yes(p)?;
            if z == apex_colour {
                return Err(Error::NotReductionShape("a vertex shares the apex colour".into()));
            }
            let c = palette.iter().position(|&q| q == z).unwrap_or_else(|| {
                palette.push(z);
                palette.len() - 1
            });
            out.push(c);
        }
        if !self.original.is_proper_colouring(&out, 3) {
            return Err(Error::NotReductionShape("recovered colouring is not proper".into()));
        }
        Ok(out)
    }
}

fn literal_family(
    kinds: &[Kind],
    m: usize,
    is_edge: &dyn Fn(usize, usize) -> bool,
    (a, b, c): Triple,
) -> Option<&'static str> {
    use Kind::*;
    let (ka, kb, kc) = (kinds[a], kinds[b], kinds[c]);
    if ka == Id && b != c {
        return Some("identity-law");
    }
    if let (Some((i, j)), Some((j2, k2)), Some((i3, k3))) = (ka.sides(), kb.sides(), kc.sides()) {
        if !(i == i3 && j == j2 && k2 == k3) {
            return Some("side-mismatch");
        }
    }
    if matches!((ka, kc), (Col(_), Col(_))) && a == b {
        return Some("colour-triangle");
    }
    if let (S(_, v), S(v2, _)) = (ka, kb) {
        if v != v2 {
            return Some("node-mismatch");
        }
    }
    if let (S(u, v), S(v2, w), Gap) = (ka, kb, kc) {
        if v == v2 && (u == w || is_edge(u, w)) {
            return Some("gap-on-edge");
        }
    }
    if let (S(x, _), S(..) | Gap, Gap) = (ka, kb, kc) {
        if x == m {
            return Some("apex-adjacent");
        }
    }
    if matches!((ka, kb, kc), (Y, Col(_), Y)) {
        return Some("one-colour");
    }
    if matches!((ka, kb, kc), (S(..), Y, Y)) {
        return Some("adjacent-colours");
    }
    None
}
