//! Monochromatic-triangle avoidance to feeble representability.
//!
//! A witness network consists of two copies of the graph, each with an
//! auxiliary node, joined by `×` edges; one copy carries the edge colouring
//! and the other its dual.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Atom, AtomStructure, Triple};
use crate::error::{Error, Result};
use crate::network::Network;
use crate::representation::Representation;

use super::graph::{EdgeColour, EdgeColouring, SimpleGraph};
use super::{family_of, fresh_name, structure_from_forbidden};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Id,
    Cross,
    Edge(EdgeColour, usize, usize),
    Gap,
    P(usize),
    Q(usize),
    PConv(usize),
    QConv(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Graph,
    Aux,
}

impl Kind {
    fn sides(self) -> Option<(Side, Side)> {
        use Side::*;
        match self {
            Kind::Id | Kind::Cross => None,
            Kind::Edge(..) | Kind::Gap => Some((Graph, Graph)),
            Kind::P(_) | Kind::Q(_) => Some((Aux, Graph)),
            Kind::PConv(_) | Kind::QConv(_) => Some((Graph, Aux)),
        }
    }
}

#[derive(Debug, Clone)]
pub enum TriangleReduction {
    /// A complete graph on six or more vertices: every 2-colouring has a
    /// monochromatic triangle.
    KnownNo,
    Instance(TriangleInstance),
}

#[derive(Debug, Clone)]
pub struct TriangleInstance {
    structure: Arc<AtomStructure>,
    original: SimpleGraph,
    /// `original` plus isolated padding vertices.
    padded: SimpleGraph,
    apex: String,
    kinds: Vec<Kind>,
    edge_atom: HashMap<(EdgeColour, usize, usize), Atom>,
    cross: Atom,
    gap: Atom,
    p: Vec<Atom>,
    q: Vec<Atom>,
}

/// Builds the instance. The gap atom needs a non-edge, so a complete graph
/// on fewer than six vertices gets one isolated vertex, which changes
/// neither its edges nor the answer. Six or more mutually adjacent
/// vertices are a known negative instance.
pub fn reduce_monochromatic_triangle(g: &SimpleGraph) -> Result<TriangleReduction> {
    if g.is_complete() {
        if g.len() >= 6 {
            return Ok(TriangleReduction::KnownNo);
        }
        let mut padded = g.clone();
        padded.add_vertex(&fresh_name(g.names(), "pad"))?;
        return Ok(TriangleReduction::Instance(TriangleInstance::build(g.clone(), padded)));
    }
    Ok(TriangleReduction::Instance(TriangleInstance::build(g.clone(), g.clone())))
}

impl TriangleInstance {
    fn build(original: SimpleGraph, padded: SimpleGraph) -> Self {
        let n = padded.len();
        let name = |v: usize| padded.names()[v].as_str();
        let mut names = vec!["1'".to_string(), "x".to_string()];
        let mut kinds = vec![Kind::Id, Kind::Cross];
        let mut edge_atom = HashMap::new();
        for c in [EdgeColour::Red, EdgeColour::Blue] {
            let letter = if c == EdgeColour::Red { "r" } else { "b" };
            for u in 0..n {
                for v in 0..n {
                    if padded.has_edge(u, v) {
                        edge_atom.insert((c, u, v), names.len());
                        names.push(format!("{letter}[{},{}]", name(u), name(v)));
                        kinds.push(Kind::Edge(c, u, v));
                    }
                }
            }
        }
        let gap = names.len();
        names.push("g".into());
        kinds.push(Kind::Gap);
        let mut family = |prefix: &str, k: fn(usize) -> Kind| -> Vec<Atom> {
            (0..n)
                .map(|u| {
                    names.push(format!("{prefix}[{}]", name(u)));
                    kinds.push(k(u));
                    names.len() - 1
                })
                .collect()
        };
        let p = family("p", Kind::P);
        let q = family("q", Kind::Q);
        let pc = family("p^", Kind::PConv);
        let qc = family("q^", Kind::QConv);

        let mut converse: Vec<Atom> = (0..names.len()).collect();
        for (&(c, u, v), &a) in &edge_atom {
            converse[a] = edge_atom[&(c, v, u)];
        }
        for u in 0..n {
            converse[p[u]] = pc[u];
            converse[pc[u]] = p[u];
            converse[q[u]] = qc[u];
            converse[qc[u]] = q[u];
        }
        let structure = structure_from_forbidden(names, converse, 0, |t| {
            literal_family(&kinds, &padded, t).is_some()
        });
        TriangleInstance {
            structure: Arc::new(structure),
            apex: fresh_name(padded.names(), "inf"),
            original,
            padded,
            kinds,
            edge_atom,
            cross: 1,
            gap,
            p,
            q,
        }
    }

    pub fn structure(&self) -> &Arc<AtomStructure> {
        &self.structure
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.original
    }

    /// The input graph with the padding vertices appended; the edges are
    /// the same.
    pub fn padded_graph(&self) -> &SimpleGraph {
        &self.padded
    }

    pub fn padding(&self) -> usize {
        self.padded.len() - self.original.len()
    }

    pub fn forbidden_family(&self, t: Triple) -> Option<&'static str> {
        family_of(self.structure.converse_map(), t, |t| {
            literal_family(&self.kinds, &self.padded, t)
        })
    }

    /// The two-copy witness network for a colouring with no monochromatic
    /// triangle.
    pub fn colouring_to_witness(&self, colouring: &EdgeColouring) -> Result<Network> {
        if !self.padded.is_triangle_free_colouring(colouring) {
            return Err(Error::InvalidColouring(
                "every edge needs a colour and no triangle may be monochromatic".into(),
            ));
        }
        let n = self.padded.len();
        let mut nodes: Vec<String> = self.padded.names().to_vec();
        nodes.push(self.apex.clone());
        let primed: Vec<String> = nodes.iter().map(|x| format!("{x}'")).collect();
        nodes.extend(primed);
        let half = n + 1;
        let s = &self.structure;
        let mut net = Network::new(s.clone(), &nodes)?;
        let one = |a: Atom| s.set_of([a]);
        for x in 0..half {
            for y in 0..half {
                net.set_label(x, half + y, one(self.cross));
                net.set_label(half + y, x, one(self.cross));
            }
        }
        for (copy, off) in [(false, 0), (true, half)] {
            for u in 0..n {
                let aux = if copy { self.q[u] } else { self.p[u] };
                net.set_edge(off + n, off + u, one(aux));
                for v in 0..n {
                    if u == v {
                        continue;
                    }
                    let a = if self.padded.has_edge(u, v) {
                        let c = colouring[&(u.min(v), u.max(v))];
                        let c = if copy { c.other() } else { c };
                        self.edge_atom[&(c, u, v)]
                    } else {
                        self.gap
                    };
                    net.set_label(off + u, off + v, one(a));
                }
            }
        }
        Ok(net)
    }

    /// Reads an edge colouring off a representation of the instance, using
    /// the copy that contains a `p` edge.
    pub fn extract_colouring(&self, rep: &Representation) -> Result<EdgeColouring> {
        if !Arc::ptr_eq(rep.structure(), &self.structure) && **rep.structure() != *self.structure {
            return Err(Error::NotReductionShape("different atom structure".into()));
        }
        let k = rep.len();
        let p_of = |a: Atom| match self.kinds[a] {
            Kind::P(u) => Some(u),
            _ => None,
        };
        let aux = (0..k)
            .find(|&x| (0..k).any(|y| p_of(rep.atom_at(x, y)).is_some()))
            .ok_or_else(|| Error::NotReductionShape("no `p` edge".into()))?;
        let n = self.padded.len();
        let mut point = vec![usize::MAX; n];
        for y in 0..k {
            if let Some(u) = p_of(rep.atom_at(aux, y)) {
                if point[u] != usize::MAX {
                    return Err(Error::NotReductionShape(format!(
                        "two points stand for vertex `{}`",
                        self.padded.names()[u]
                    )));
                }
                point[u] = y;
            }
        }
        if let Some(u) = point.iter().position(|&p| p == usize::MAX) {
            return Err(Error::NotReductionShape(format!(
                "vertex `{}` is not represented",
                self.padded.names()[u]
            )));
        }
        let mut out = EdgeColouring::new();
        for &(u, v) in self.padded.edges() {
            match self.kinds[rep.atom_at(point[u], point[v])] {
                Kind::Edge(c, u2, v2) if (u2, v2) == (u, v) => {
                    out.insert((u, v), c);
                }
                _ => {
                    return Err(Error::NotReductionShape(format!(
                        "edge ({}, {}) has no colour atom",
                        self.padded.names()[u],
                        self.padded.names()[v]
                    )))
                }
            }
        }
        if !self.padded.is_triangle_free_colouring(&out) {
            return Err(Error::NotReductionShape(
                "recovered colouring has a monochromatic triangle".into(),
            ));
        }
        Ok(out)
    }
}

fn literal_family(kinds: &[Kind], g: &SimpleGraph, (a, b, c): Triple) -> Option<&'static str> {
    use Kind::*;
    let (ka, kb, kc) = (kinds[a], kinds[b], kinds[c]);
    if ka == Id && b != c {
        return Some("identity-law");
    }
    let crosses = [ka, kb, kc].iter().filter(|&&k| k == Cross).count();
    if crosses == 3 || (ka == Cross && crosses == 1) {
        return Some("bipartite");
    }
    if let (Some((_, j)), Some((j2, _))) = (ka.sides(), kb.sides()) {
        if j != j2 {
            return Some("side-mismatch");
        }
    }
    match (ka, kb, kc) {
        (P(u), Edge(_, u1, v), P(v1)) | (Q(u), Edge(_, u1, v), Q(v1)) if u != u1 || v != v1 => {
            return Some("vertex-index")
        }
        (P(u), Gap, P(v)) | (Q(u), Gap, Q(v)) if u == v || g.has_edge(u, v) => {
            return Some("gap-on-edge")
        }
        (P(_), _, Q(_)) => return Some("copies-apart"),
        (Edge(c1, u, v), Edge(c2, v2, w), Edge(c3, u3, w3))
            if c1 == c2 && c2 == c3 && v == v2 && (u, w) == (u3, w3) =>
        {
            return Some("monochromatic-triangle")
        }
        _ => {}
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance(g: &SimpleGraph) -> TriangleInstance {
        match reduce_monochromatic_triangle(g).unwrap() {
            TriangleReduction::Instance(i) => i,
            TriangleReduction::KnownNo => panic!("not complete"),
        }
    }

    fn witness_rep(inst: &TriangleInstance, c: &EdgeColouring) -> Representation {
        let net = inst.colouring_to_witness(c).unwrap();
        assert!(net.check_consistent().ok(), "{}", net.check_consistent());
        Representation::quotient(&net).unwrap().0
    }

    #[test]
    fn path_instance_round_trip() {
        let g = SimpleGraph::path(3);
        let inst = instance(&g);
        assert!(inst.structure().validate().ok());
        let c = EdgeColouring::from([((0, 1), EdgeColour::Red), ((1, 2), EdgeColour::Blue)]);
        let rep = witness_rep(&inst, &c);
        assert_eq!(rep.len(), 8);
        let report = rep.verify_feeble();
        assert!(report.ok(), "{report}");
        assert_eq!(inst.extract_colouring(&rep).unwrap(), c);
    }

    #[test]
    fn complete_graphs() {
        assert!(matches!(
            reduce_monochromatic_triangle(&SimpleGraph::complete(6)),
            Ok(TriangleReduction::KnownNo)
        ));
        let TriangleReduction::Instance(inst) = reduce_monochromatic_triangle(&SimpleGraph::complete(5)).unwrap() else {
            panic!("K5 is a positive instance")
        };
        assert_eq!(inst.padding(), 1);
        let c = inst.graph().triangle_free_colouring().unwrap();
        let rep = witness_rep(&inst, &c);
        assert!(rep.verify_feeble().ok());
        assert_eq!(inst.extract_colouring(&rep).unwrap(), c);
    }

    #[test]
    fn single_non_edge() {
        let g = SimpleGraph::from_edges(2, &[]).unwrap();
        let inst = instance(&g);
        let rep = witness_rep(&inst, &EdgeColouring::new());
        assert_eq!(rep.len(), 6);
        assert!(rep.verify_feeble().ok());
    }

    #[test]
    fn monochromatic_colouring_is_rejected() {
        let g = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = instance(&g);
        let red: EdgeColouring = g.edges().iter().map(|&e| (e, EdgeColour::Red)).collect();
        assert!(inst.colouring_to_witness(&red).is_err());
        let ok = g.triangle_free_colouring().unwrap();
        let rep = witness_rep(&inst, &ok);
        assert!(rep.verify_feeble().ok());
        assert_eq!(inst.extract_colouring(&rep).unwrap(), ok);
    }

    #[test]
    fn families_are_reported() {
        let g = SimpleGraph::path(3);
        let inst = instance(&g);
        let s = inst.structure().clone();
        let at = |n: &str| s.atom(n).unwrap();
        assert_eq!(inst.forbidden_family((at("x"), at("x"), at("x"))), Some("bipartite"));
        assert_eq!(inst.forbidden_family((at("p[0]"), at("g"), at("q[2]"))), Some("copies-apart"));
        assert_eq!(inst.forbidden_family((at("p[0]"), at("r[0,1]"), at("p[1]"))), None);
        assert_eq!(
            inst.forbidden_family((at("p[0]"), at("r[0,1]"), at("p[2]"))),
            Some("vertex-index")
        );
        // p^[u] ; p[u] is exactly the identity.
        let comp = s.compose_atoms(at("p^[0]"), at("p[0]"));
        assert_eq!(s.set_names(comp), vec!["1'"]);
    }
}
