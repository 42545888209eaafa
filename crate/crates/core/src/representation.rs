//! Finite representations stored as complete atomic labellings.
//!
//! A [`Representation`] assigns one atom to every ordered pair of base
//! points. It is kept quotiented: identity atoms appear on the diagonal and
//! nowhere else, so distinct points are never identified by the labelling.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Atom, AtomStructure, Triple};
use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::network::Network;
use crate::report::ValidationReport;

pub mod rule {
    pub use crate::network::rule::{CONVERSE_PAIR, LOOP_SUBIDENTITY, TRIANGLE};
    pub const QUOTIENTED: &str = "quotiented";
    pub const UNWITNESSED_ATOM: &str = "unwitnessed-atom";
    pub const UNWITNESSED_TRIPLE: &str = "unwitnessed-triple";
    pub const STRONG_COMPOSITION: &str = "strong-composition";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Feeble,
    Qualitative,
    Strong,
}

impl RepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RepKind::Feeble => "feeble",
            RepKind::Qualitative => "qualitative",
            RepKind::Strong => "strong",
        }
    }
}

impl std::str::FromStr for RepKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "feeble" => Ok(RepKind::Feeble),
            "qualitative" => Ok(RepKind::Qualitative),
            "strong" => Ok(RepKind::Strong),
            other => Err(format!("unknown representation kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    structure: Arc<AtomStructure>,
    base: Vec<String>,
    atoms: Vec<Atom>,
}

/// `(a∘b) ∩ (c∘d)` and `(a;b)·(c;d)` disagree on emptiness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StarWitness {
    pub a: Atom,
    pub b: Atom,
    pub c: Atom,
    pub d: Atom,
    /// Whether the concrete intersection is empty (the abstract meet then
    /// is not).
    pub concrete_empty: bool,
}

impl Representation {
    /// Checks the canonical-form invariants: loops are identity atoms,
    /// off-diagonal labels are not, and `λ(y,x)` is the converse of `λ(x,y)`.
    pub fn new(structure: Arc<AtomStructure>, base: Vec<String>, atoms: Vec<Atom>) -> Result<Self> {
        let k = base.len();
        if atoms.len() != k * k {
            return Err(Error::MalformedRepresentation(
                "matrix does not match base size".into(),
            ));
        }
        if let Some(&a) = atoms.iter().find(|&&a| a >= structure.len()) {
            return Err(Error::MalformedRepresentation(format!(
                "atom index {a} out of range"
            )));
        }
        let uniq: BTreeSet<&String> = base.iter().collect();
        if uniq.len() != k {
            return Err(Error::MalformedRepresentation("duplicate base point".into()));
        }
        for x in 0..k {
            for y in 0..k {
                let a = atoms[x * k + y];
                if (x == y) != structure.is_identity_atom(a) {
                    return Err(Error::MalformedRepresentation(format!(
                        "pair ({}, {}) is labelled `{}`; identity atoms must label exactly the diagonal",
                        base[x],
                        base[y],
                        structure.name(a)
                    )));
                }
                if atoms[y * k + x] != structure.converse_atom(a) {
                    return Err(Error::MalformedRepresentation(format!(
                        "labels of ({0}, {1}) and ({1}, {0}) are not converse",
                        base[x], base[y]
                    )));
                }
            }
        }
        Ok(Representation {
            structure,
            base,
            atoms,
        })
    }

    /// Builds from a labelling function on point indices.
    pub fn from_fn(
        structure: Arc<AtomStructure>,
        base: Vec<String>,
        f: impl Fn(usize, usize) -> Atom,
    ) -> Result<Self> {
        let k = base.len();
        let atoms = (0..k * k).map(|i| f(i / k, i % k)).collect();
        Self::new(structure, base, atoms)
    }

    pub fn structure(&self) -> &Arc<AtomStructure> {
        &self.structure
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    #[inline]
    pub fn atom_at(&self, x: usize, y: usize) -> Atom {
        self.atoms[x * self.len() + y]
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn to_network(&self) -> Network {
        let n = self.structure.len();
        let labels = self
            .atoms
            .iter()
            .map(|&a| AtomSet::singleton(n, a))
            .collect();
        Network::from_labels(self.structure.clone(), self.base.clone(), labels)
            .expect("dimensions agree")
    }

    /// Pairs labelled by some member of `x`.
    pub fn pairs_of(&self, x: &AtomSet) -> Vec<(usize, usize)> {
        let k = self.len();
        (0..k * k)
            .filter(|&i| x.contains(self.atoms[i]))
            .map(|i| (i / k, i % k))
            .collect()
    }

    /// Quotients a consistent atomic network by `x ~ y iff λ(x,y) ≤ 1'`.
    /// Returns the representation and the class of every node.
    pub fn quotient(net: &Network) -> Result<(Representation, Vec<usize>)> {
        if !net.is_atomic() {
            return Err(Error::InconsistentNetwork("network is not atomic".into()));
        }
        let report = net.check_consistent();
        if !report.ok() {
            return Err(Error::InconsistentNetwork(report.to_string()));
        }
        let s = net.structure();
        let k = net.len();
        let mut class = vec![usize::MAX; k];
        let mut reps = Vec::new();
        for x in 0..k {
            if class[x] != usize::MAX {
                continue;
            }
            class[x] = reps.len();
            for y in x + 1..k {
                if s.is_identity_atom(net.atom_at(x, y).expect("atomic")) {
                    class[y] = reps.len();
                }
            }
            reps.push(x);
        }
        // Consistency makes ~ a congruence; check that labels agree on classes.
        for x in 0..k {
            for y in 0..k {
                let a = net.atom_at(x, y).expect("atomic");
                let b = net.atom_at(reps[class[x]], reps[class[y]]).expect("atomic");
                if a != b {
                    return Err(Error::InconsistentNetwork(format!(
                        "label of ({}, {}) differs on its class",
                        net.nodes()[x],
                        net.nodes()[y]
                    )));
                }
            }
        }
        let base = reps.iter().map(|&x| net.nodes()[x].clone()).collect();
        let q = reps.len();
        let atoms = (0..q * q)
            .map(|i| net.atom_at(reps[i / q], reps[i % q]).expect("atomic"))
            .collect();
        Ok((Representation::new(s.clone(), base, atoms)?, class))
    }

    /// The representation restricted to the listed points.
    pub fn restrict(&self, keep: &[usize]) -> Representation {
        let base = keep.iter().map(|&x| self.base[x].clone()).collect();
        let atoms = keep
            .iter()
            .flat_map(|&x| keep.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.atom_at(x, y))
            .collect();
        Representation {
            structure: self.structure.clone(),
            base,
            atoms,
        }
    }

    /// Every atom triple realised by a triangle `(x,y,z)`, repeats included.
    pub fn realised_triples(&self) -> BTreeSet<Triple> {
        let k = self.len();
        let mut out = BTreeSet::new();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    out.insert((self.atom_at(x, y), self.atom_at(y, z), self.atom_at(x, z)));
                }
            }
        }
        out
    }

    fn consistency_report(&self) -> ValidationReport {
        let s = &*self.structure;
        let k = self.len();
        let mut report = ValidationReport::new();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let t = (self.atom_at(x, y), self.atom_at(y, z), self.atom_at(x, z));
                    if !s.is_consistent(t.0, t.1, t.2) {
                        report.push(
                            rule::TRIANGLE,
                            vec![self.base[x].clone(), self.base[y].clone(), self.base[z].clone()],
                            format!("realises forbidden triple {}", s.fmt_triple(t)),
                        );
                    }
                }
            }
        }
        report
    }

    fn witness_atoms(&self, report: &mut ValidationReport) {
        let s = &*self.structure;
        let seen: BTreeSet<Atom> = self.atoms.iter().copied().collect();
        for a in s.atoms() {
            if !seen.contains(&a) {
                report.push(
                    rule::UNWITNESSED_ATOM,
                    vec![s.name(a).to_string()],
                    "atom labels no pair",
                );
            }
        }
    }

    /// Consistent atomic labelling in which every atom labels some pair.
    pub fn verify_feeble(&self) -> ValidationReport {
        let mut report = self.consistency_report();
        self.witness_atoms(&mut report);
        report
    }

    /// Consistent atomic labelling in which every consistent triple is
    /// realised by some triangle.
    pub fn verify_qualitative(&self) -> ValidationReport {
        let s = &*self.structure;
        let mut report = self.consistency_report();
        self.witness_atoms(&mut report);
        let realised = self.realised_triples();
        for t in s.triples() {
            if !realised.contains(&t) {
                report.push(
                    rule::UNWITNESSED_TRIPLE,
                    s.triple_names(t),
                    format!("consistent triple {} has no triangle", s.fmt_triple(t)),
                );
            }
        }
        report
    }

    /// Qualitative, and every pair `(x,z)` labelled below `a;b` has a point
    /// `y` with `(x,y)` labelled `a` and `(y,z)` labelled `b`.
    pub fn verify_strong(&self) -> ValidationReport {
        let s = &*self.structure;
        let mut report = self.verify_qualitative();
        let k = self.len();
        let n = s.len();
        for x in 0..k {
            for z in 0..k {
                let mut through = vec![false; n * n];
                for y in 0..k {
                    through[self.atom_at(x, y) * n + self.atom_at(y, z)] = true;
                }
                let c = self.atom_at(x, z);
                for a in 0..n {
                    for b in 0..n {
                        if s.is_consistent(a, b, c) && !through[a * n + b] {
                            report.push(
                                rule::STRONG_COMPOSITION,
                                vec![self.base[x].clone(), self.base[z].clone()],
                                format!(
                                    "`{}` lies below {};{} but no point splits the pair",
                                    s.name(c),
                                    s.name(a),
                                    s.name(b)
                                ),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    pub fn verify(&self, kind: RepKind) -> ValidationReport {
        match kind {
            RepKind::Feeble => self.verify_feeble(),
            RepKind::Qualitative => self.verify_qualitative(),
            RepKind::Strong => self.verify_strong(),
        }
    }

    /// Relational composition `a∘b` for every atom pair, as bit rows over
    /// base pairs.
    fn concrete_compositions(&self) -> Vec<AtomSet> {
        let k = self.len();
        let n = self.structure.len();
        let mut rel = vec![AtomSet::empty(k * k); n * n];
        for x in 0..k {
            for y in 0..k {
                let a = self.atom_at(x, y);
                for z in 0..k {
                    rel[a * n + self.atom_at(y, z)].insert(x * k + z);
                }
            }
        }
        rel
    }

    fn require_qualitative(&self) -> Result<()> {
        let r = self.verify_qualitative();
        if r.ok() {
            Ok(())
        } else {
            Err(Error::NotQualitative(r.to_string()))
        }
    }

    /// Compares `(a∘b) ∩ (c∘d) = ∅` with `(a;b)·(c;d) = 0` for one quadruple.
    pub fn star_mismatch_at(&self, a: Atom, b: Atom, c: Atom, d: Atom) -> Result<Option<StarWitness>> {
        self.require_qualitative()?;
        let n = self.structure.len();
        let rel = self.concrete_compositions();
        Ok(self.star_cell(&rel, n, (a, b, c, d)))
    }

    fn star_cell(&self, rel: &[AtomSet], n: usize, (a, b, c, d): (Atom, Atom, Atom, Atom)) -> Option<StarWitness> {
        let s = &*self.structure;
        let concrete_empty = !rel[a * n + b].intersects(&rel[c * n + d]);
        let abstract_zero = !s.compose_atoms(a, b).intersects(s.compose_atoms(c, d));
        (concrete_empty != abstract_zero).then_some(StarWitness {
            a,
            b,
            c,
            d,
            concrete_empty,
        })
    }

    /// The condition that two composable atom pairs share a concrete
    /// triangle edge exactly when their abstract compositions overlap.
    /// Returns the least failing quadruple, or `None` if it holds.
    pub fn check_star(&self) -> Result<Option<StarWitness>> {
        self.require_qualitative()?;
        let n = self.structure.len();
        let rel = self.concrete_compositions();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if let Some(w) = self.star_cell(&rel, n, (a, b, c, d)) {
                            return Ok(Some(w));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Maps the nodes of `net` into the base so that every pair lands on a
    /// permitted atom. Exhaustive backtracking; `None` if impossible.
    pub fn embed_network(&self, net: &Network) -> Result<Option<Vec<usize>>> {
        if !Arc::ptr_eq(&self.structure, net.structure()) && *self.structure != **net.structure() {
            return Err(Error::StructureMismatch);
        }
        let k = net.len();
        let q = self.len();
        let mut assignment = vec![usize::MAX; k];
        let candidates: Vec<Vec<usize>> = (0..k)
            .map(|x| {
                (0..q)
                    .filter(|&p| net.label(x, x).contains(self.atom_at(p, p)))
                    .collect()
            })
            .collect();
        if self.embed_rec(net, &candidates, &mut assignment, 0) {
            Ok(Some(assignment))
        } else {
            Ok(None)
        }
    }

    fn embed_rec(
        &self,
        net: &Network,
        candidates: &[Vec<usize>],
        assignment: &mut [usize],
        placed: usize,
    ) -> bool {
        let k = net.len();
        if placed == k {
            return true;
        }
        // Most constrained unplaced node: fewest surviving candidates, then
        // most specific labels.
        let mut best: Option<(usize, usize, usize, Vec<usize>)> = None;
        for x in (0..k).filter(|&x| assignment[x] == usize::MAX) {
            let ok: Vec<usize> = candidates[x]
                .iter()
                .copied()
                .filter(|&p| {
                    (0..k).filter(|&y| assignment[y] != usize::MAX).all(|y| {
                        let py = assignment[y];
                        net.label(x, y).contains(self.atom_at(p, py))
                            && net.label(y, x).contains(self.atom_at(py, p))
                    })
                })
                .collect();
            let spec: usize = (0..k).map(|y| net.label(x, y).len()).sum();
            if best
                .as_ref()
                .is_none_or(|(_, n, sp, _)| ok.len() < *n || (ok.len() == *n && spec < *sp))
            {
                best = Some((x, ok.len(), spec, ok));
            }
        }
        let (x, _, _, ok) = best.expect("an unplaced node remains");
        for p in ok {
            assignment[x] = p;
            if self.embed_rec(net, candidates, assignment, placed + 1) {
                return true;
            }
        }
        assignment[x] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn entry_rep(key: &str, i: usize) -> Representation {
        catalog::get(key).unwrap().representations[i].1.clone()
    }

    fn chain(k: usize) -> Representation {
        let s = Arc::new(catalog::point_algebra());
        let (eq, lt, gt) = (0, 1, 2);
        Representation::from_fn(s, (0..k).map(|i| i.to_string()).collect(), |x, y| {
            match x.cmp(&y) {
                std::cmp::Ordering::Equal => eq,
                std::cmp::Ordering::Less => lt,
                std::cmp::Ordering::Greater => gt,
            }
        })
        .unwrap()
    }

    #[test]
    fn chain_is_qualitative_not_strong() {
        let c = chain(4);
        assert!(c.verify_qualitative().ok());
        assert!(c.verify_feeble().ok());
        assert!(c.verify_strong().has_rule(rule::STRONG_COMPOSITION));
    }

    #[test]
    fn k4_is_strong_and_restriction_is_not() {
        let k4 = entry_rep("ra2565", 0);
        assert!(k4.verify_strong().ok(), "{}", k4.verify_strong());
        let three = entry_rep("ra2565", 1);
        assert!(three.verify_qualitative().ok());
        let r = three.verify_strong();
        assert!(!r.ok());
        assert!(k4.check_star().unwrap().is_none());
    }

    #[test]
    fn two_point_theta_is_feeble_only() {
        let theta = entry_rep("ex1", 1);
        assert!(theta.verify_feeble().ok());
        let r = theta.verify_qualitative();
        assert!(r.has_rule(rule::UNWITNESSED_TRIPLE));
        let s = theta.structure();
        let a = s.atom("a").unwrap();
        assert!(r
            .violations
            .iter()
            .all(|v| v.subject.iter().filter(|n| *n == "a").count() >= 1));
        assert!(!theta.realised_triples().contains(&(a, a, a)));
    }

    #[test]
    fn star_fails_on_pentagon() {
        let n5 = entry_rep("mckenzie", 0);
        let s = n5.structure().clone();
        let at = |n| s.atom(n).unwrap();
        let w = n5
            .star_mismatch_at(at("b"), at("a"), at("b"), at("a^"))
            .unwrap()
            .expect("pentagon mismatch");
        assert!(w.concrete_empty);
        assert_eq!(
            s.compose_atoms(at("b"), at("a"))
                .intersection(s.compose_atoms(at("b"), at("a^"))),
            s.set_named(&["b"]).unwrap()
        );
        assert!(n5.check_star().unwrap().is_some());
    }

    #[test]
    fn star_fails_on_double_chain() {
        // x<z inside one chain is reachable through # twice but never as
        // < followed by #, although (a;b)·(b;b) = a.
        let dc = entry_rep("mckenzie", 1);
        let s = dc.structure().clone();
        let at = |n| s.atom(n).unwrap();
        let w = dc.check_star().unwrap().expect("mismatch");
        assert_eq!((w.a, w.b, w.c, w.d), (at("a"), at("b"), at("b"), at("b")));
        assert!(w.concrete_empty);
    }

    #[test]
    fn star_requires_qualitative() {
        let theta = entry_rep("ex1", 1);
        assert!(matches!(theta.check_star(), Err(Error::NotQualitative(_))));
    }

    #[test]
    fn quotient_collapses_identity_edges() {
        let s = Arc::new(catalog::ex1());
        let mut n = Network::new(s.clone(), &["x", "y"]).unwrap();
        n.constrain("x", "y", &["e"]).unwrap();
        n.set_label(0, 0, s.set_named(&["e"]).unwrap());
        n.set_label(1, 1, s.set_named(&["e"]).unwrap());
        let (r, class) = Representation::quotient(&n).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(class, vec![0, 0]);
    }

    #[test]
    fn quotient_of_representation_is_itself() {
        for e in catalog::all() {
            for (_, r) in &e.representations {
                let (q, class) = Representation::quotient(&r.to_network()).unwrap();
                assert_eq!(&q, r);
                assert_eq!(class, (0..r.len()).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn embeddings_into_chains() {
        let c4 = chain(4);
        let s = c4.structure().clone();
        let mut n = Network::new(s.clone(), &["a", "b", "c", "d"]).unwrap();
        n.constrain("c", "a", &["<"]).unwrap();
        n.constrain("a", "b", &["<", ">"]).unwrap();
        n.constrain("c", "b", &["<", "="]).unwrap();
        n.constrain("c", "d", &["<"]).unwrap();
        n.constrain("d", "b", &["<"]).unwrap();
        n.constrain("a", "d", &["<", ">"]).unwrap();
        let emb = c4.embed_network(&n).unwrap().expect("fits in four points");
        for x in 0..4 {
            for y in 0..4 {
                assert!(n.label(x, y).contains(c4.atom_at(emb[x], emb[y])));
            }
        }
        // The chain solution c<d<a<b is among the valid embeddings.
        let chain_solution = [2, 3, 0, 1];
        assert!((0..4).all(|x| (0..4)
            .all(|y| n.label(x, y).contains(c4.atom_at(chain_solution[x], chain_solution[y])))));
        assert_eq!(chain(3).embed_network(&n).unwrap(), None);
        let single = Network::new(s, &["x"]).unwrap();
        assert_eq!(c4.embed_network(&single).unwrap(), Some(vec![0]));
    }

    #[test]
    fn rejects_identity_off_diagonal() {
        let s = Arc::new(catalog::point_algebra());
        assert!(Representation::new(s, vec!["0".into(), "1".into()], vec![0, 0, 0, 0]).is_err());
    }
}
