//! Atom structures and their complex algebras.
//!
//! An [`AtomStructure`] is the finite presentation `(X, E, ˘, C)` of an atomic
//! non-associative algebra: a list of atoms, the set `E` of atoms below the
//! identity, the converse involution, and the set `C` of consistent triples
//! `(a, b, c)` meaning `c ≤ a;b`. Every operation of the complex algebra is
//! computed from these four pieces by set arithmetic on atom indices.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::report::ValidationReport;

pub type Atom = usize;
pub type Triple = (Atom, Atom, Atom);

pub mod rule {
    pub const CONVERSE_INVOLUTION: &str = "converse-involution";
    pub const PEIRCEAN_CLOSURE: &str = "peircean-closure";
    pub const IDENTITY_LAW: &str = "identity-law";
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomStructure {
    names: Vec<String>,
    index: HashMap<String, Atom>,
    identity: AtomSet,
    converse: Vec<Atom>,
    /// `comp[a * n + b]` holds every `c` with `(a, b, c)` consistent.
    comp: Vec<AtomSet>,
}

impl AtomStructure {
    /// Builds a structure from raw parts. Only syntactic well-formedness is
    /// checked here (unique names, total maps, indices in range); the
    /// algebraic axioms are checked by [`AtomStructure::validate`].
    pub fn new(
        names: Vec<String>,
        identity: impl IntoIterator<Item = Atom>,
        converse: Vec<Atom>,
        triples: impl IntoIterator<Item = Triple>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedStructure("no atoms".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::MalformedStructure(format!(
                    "atom name `{name}` must be a non-empty token"
                )));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::MalformedStructure(format!(
                    "duplicate atom name `{name}`"
                )));
            }
        }
        if converse.len() != n {
            return Err(Error::MalformedStructure(
                "converse map must be defined on every atom".into(),
            ));
        }
        if let Some(&bad) = converse.iter().find(|&&c| c >= n) {
            return Err(Error::MalformedStructure(format!(
                "converse maps to atom index {bad} out of range"
            )));
        }
        let mut id = AtomSet::empty(n);
        for e in identity {
            if e >= n {
                return Err(Error::MalformedStructure(format!(
                    "identity atom index {e} out of range"
                )));
            }
            id.insert(e);
        }
        let mut comp = vec![AtomSet::empty(n); n * n];
        for (a, b, c) in triples {
            if a >= n || b >= n || c >= n {
                return Err(Error::MalformedStructure(format!(
                    "triple ({a}, {b}, {c}) out of range"
                )));
            }
            comp[a * n + b].insert(c);
        }
        Ok(AtomStructure {
            names,
            index,
            identity: id,
            converse,
            comp,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn atoms(&self) -> std::ops::Range<Atom> {
        0..self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Atom) -> &str {
        &self.names[a]
    }

    pub fn atom(&self, name: &str) -> Option<Atom> {
        self.index.get(name).copied()
    }

    pub fn atom_or_err(&self, name: &str) -> Result<Atom> {
        self.atom(name).ok_or_else(|| Error::UnknownAtom {
            name: name.to_string(),
            location: None,
        })
    }

    /// The identity atoms `E`.
    pub fn identity(&self) -> &AtomSet {
        &self.identity
    }

    pub fn is_identity_atom(&self, a: Atom) -> bool {
        self.identity.contains(a)
    }

    pub fn converse_atom(&self, a: Atom) -> Atom {
        self.converse[a]
    }

    pub fn converse_map(&self) -> &[Atom] {
        &self.converse
    }

    #[inline]
    pub fn is_consistent(&self, a: Atom, b: Atom, c: Atom) -> bool {
        self.comp[a * self.len() + b].contains(c)
    }

    /// `a;b` for atoms.
    #[inline]
    pub fn compose_atoms(&self, a: Atom, b: Atom) -> &AtomSet {
        &self.comp[a * self.len() + b]
    }

    /// All consistent triples in lexicographic order.
    pub fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        let n = self.len();
        (0..n).flat_map(move |a| {
            (0..n).flat_map(move |b| self.comp[a * n + b].iter().map(move |c| (a, b, c)))
        })
    }

    pub fn triple_count(&self) -> usize {
        self.comp.iter().map(AtomSet::len).sum()
    }

    pub fn empty_set(&self) -> AtomSet {
        AtomSet::empty(self.len())
    }

    pub fn full_set(&self) -> AtomSet {
        AtomSet::full(self.len())
    }

    pub fn set_of(&self, atoms: impl IntoIterator<Item = Atom>) -> AtomSet {
        AtomSet::from_indices(self.len(), atoms)
    }

    /// Atom set from names; errors on an unknown name.
    pub fn set_named<S: AsRef<str>>(&self, names: &[S]) -> Result<AtomSet> {
        let mut s = self.empty_set();
        for name in names {
            s.insert(self.atom_or_err(name.as_ref())?);
        }
        Ok(s)
    }

    pub fn set_names(&self, s: &AtomSet) -> Vec<String> {
        s.iter().map(|a| self.names[a].clone()).collect()
    }

    /// Complex-algebra composition of atom sets.
    pub fn compose_sets(&self, x: &AtomSet, y: &AtomSet) -> AtomSet {
        let mut out = self.empty_set();
        for a in x.iter() {
            for b in y.iter() {
                out.union_with(self.compose_atoms(a, b));
            }
        }
        out
    }

    pub fn converse_set(&self, x: &AtomSet) -> AtomSet {
        AtomSet::from_indices(self.len(), x.iter().map(|a| self.converse[a]))
    }

    pub fn complement_set(&self, x: &AtomSet) -> AtomSet {
        self.full_set().difference(x)
    }

    /// The six Peircean transforms of a triple, duplicates collapsed.
    pub fn peircean_transforms(&self, (a, b, c): Triple) -> BTreeSet<Triple> {
        let cv = |x: Atom| self.converse[x];
        [
            (a, b, c),
            (b, cv(c), cv(a)),
            (c, cv(b), a),
            (cv(a), c, b),
            (cv(b), cv(a), cv(c)),
            (cv(c), a, cv(b)),
        ]
        .into_iter()
        .collect()
    }

    /// Lexicographically least member of the Peircean orbit of `t`.
    pub fn orbit_representative(&self, t: Triple) -> Triple {
        *self
            .peircean_transforms(t)
            .iter()
            .next()
            .expect("orbit contains the triple itself")
    }

    /// One representative per Peircean orbit of consistent triples, sorted.
    pub fn consistent_orbits(&self) -> Vec<Triple> {
        let mut seen = BTreeSet::new();
        for t in self.triples() {
            seen.insert(self.orbit_representative(t));
        }
        seen.into_iter().collect()
    }

    /// Adds every Peircean transform of every consistent triple.
    pub fn close_peircean(&mut self) {
        let all: Vec<Triple> = self.triples().collect();
        let n = self.len();
        for t in all {
            for (a, b, c) in self.peircean_transforms(t) {
                self.comp[a * n + b].insert(c);
            }
        }
    }

    /// Checks the conditions under which `(X, E, ˘, C)` is the atom
    /// structure of a non-associative algebra: converse is an involution,
    /// `C` is closed under the Peircean transforms, and for all atoms
    /// `a = b` iff some identity atom `e` has `(e, a, b) ∈ C`.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        for a in self.atoms() {
            let ca = self.converse[a];
            if self.converse[ca] != a {
                report.push(
                    rule::CONVERSE_INVOLUTION,
                    vec![self.names[a].clone(), self.names[ca].clone()],
                    format!(
                        "converse of converse of `{}` is `{}`",
                        self.names[a], self.names[self.converse[ca]]
                    ),
                );
            }
        }
        let cv = |x: Atom| self.converse[x];
        for (a, b, c) in self.triples() {
            for (p, q, r) in [(cv(b), cv(a), cv(c)), (cv(c), a, cv(b))] {
                if !self.is_consistent(p, q, r) {
                    report.push(
                        rule::PEIRCEAN_CLOSURE,
                        self.triple_names((p, q, r)),
                        format!(
                            "{} is consistent but its transform {} is not",
                            self.fmt_triple((a, b, c)),
                            self.fmt_triple((p, q, r))
                        ),
                    );
                }
            }
        }
        for a in self.atoms() {
            for b in self.atoms() {
                let witness = self.identity.iter().find(|&e| self.is_consistent(e, a, b));
                match (a == b, witness) {
                    (true, None) => report.push(
                        rule::IDENTITY_LAW,
                        vec![self.names[a].clone()],
                        format!(
                            "no identity atom e has (e, {0}, {0}) consistent",
                            self.names[a]
                        ),
                    ),
                    (false, Some(e)) => report.push(
                        rule::IDENTITY_LAW,
                        self.triple_names((e, a, b)),
                        format!(
                            "{} is consistent for distinct atoms",
                            self.fmt_triple((e, a, b))
                        ),
                    ),
                    _ => {}
                }
            }
        }
        report
    }

    pub fn triple_names(&self, (a, b, c): Triple) -> Vec<String> {
        vec![
            self.names[a].clone(),
            self.names[b].clone(),
            self.names[c].clone(),
        ]
    }

    pub fn fmt_triple(&self, (a, b, c): Triple) -> String {
        format!("({}, {}, {})", self.names[a], self.names[b], self.names[c])
    }

    pub fn fmt_set(&self, s: &AtomSet) -> String {
        if s.is_empty() {
            return "0".into();
        }
        format!("{{{}}}", self.set_names(s).join(","))
    }

    // ---- algebraic properties -------------------------------------------

    /// Checks `(a;b);c = a;(b;c)` for one atom triple and returns the least
    /// atom on which the two sides differ.
    pub fn associativity_defect_at(&self, a: Atom, b: Atom, c: Atom) -> Option<AssociativityWitness> {
        let single = |x| AtomSet::singleton(self.len(), x);
        let left = self.compose_sets(self.compose_atoms(a, b), &single(c));
        let right = self.compose_sets(&single(a), self.compose_atoms(b, c));
        if left == right {
            return None;
        }
        let mut diff = left.difference(&right);
        diff.union_with(&right.difference(&left));
        let d = diff.first().expect("sides differ");
        Some(AssociativityWitness {
            a,
            b,
            c,
            d,
            d_in_left: left.contains(d),
        })
    }

    /// Lexicographically least atom triple on which associativity fails.
    /// Checking atoms suffices because composition is completely additive.
    pub fn non_associative_witness(&self) -> Option<AssociativityWitness> {
        for a in self.atoms() {
            for b in self.atoms() {
                for c in self.atoms() {
                    if let Some(w) = self.associativity_defect_at(a, b, c) {
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.non_associative_witness().is_none()
    }

    fn semi_assoc_fails_at(&self, x: Atom) -> bool {
        let one = self.full_set();
        let x = AtomSet::singleton(self.len(), x);
        let one_one = self.compose_sets(&one, &one);
        self.compose_sets(&x, &one_one) != self.compose_sets(&self.compose_sets(&x, &one), &one)
    }

    /// Least atom `x` with `x;(1;1) ≠ (x;1);1`.
    pub fn semi_associativity_witness(&self) -> Option<Atom> {
        self.atoms().find(|&x| self.semi_assoc_fails_at(x))
    }

    pub fn is_semi_associative(&self) -> bool {
        self.semi_associativity_witness().is_none()
    }

    /// Least identity atom `e` with `e;(1;1) ≠ (e;1);1`.
    pub fn weak_associativity_witness(&self) -> Option<Atom> {
        self.identity.iter().find(|&e| self.semi_assoc_fails_at(e))
    }

    pub fn is_weakly_associative(&self) -> bool {
        self.weak_associativity_witness().is_none()
    }

    /// Least pair of atoms whose composition is zero.
    pub fn integrality_witness(&self) -> Option<(Atom, Atom)> {
        for a in self.atoms() {
            for b in self.atoms() {
                if self.compose_atoms(a, b).is_empty() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_integral(&self) -> bool {
        self.integrality_witness().is_none()
    }

    pub fn identity_is_atom(&self) -> bool {
        self.identity.len() == 1
    }

    // ---- element views ----------------------------------------------------

    pub fn element(&self, members: AtomSet) -> Element<'_> {
        Element {
            structure: self,
            members,
        }
    }

    pub fn element_named<S: AsRef<str>>(&self, names: &[S]) -> Result<Element<'_>> {
        Ok(self.element(self.set_named(names)?))
    }

    pub fn identity_element(&self) -> Element<'_> {
        self.element(self.identity.clone())
    }

    pub fn top(&self) -> Element<'_> {
        self.element(self.full_set())
    }

    pub fn bottom(&self) -> Element<'_> {
        self.element(self.empty_set())
    }
}

/// `((a;b);c)` and `(a;(b;c))` differ on atom `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AssociativityWitness {
    pub a: Atom,
    pub b: Atom,
    pub c: Atom,
    pub d: Atom,
    /// Whether `d` lies below the left-nested side.
    pub d_in_left: bool,
}

/// An element of the complex algebra over a structure.
#[derive(Debug, Clone)]
pub struct Element<'s> {
    structure: &'s AtomStructure,
    members: AtomSet,
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.structure, other.structure) && self.members == other.members
    }
}

impl Eq for Element<'_> {}

impl<'s> Element<'s> {
    pub fn structure(&self) -> &'s AtomStructure {
        self.structure
    }

    pub fn members(&self) -> &AtomSet {
        &self.members
    }

    pub fn into_members(self) -> AtomSet {
        self.members
    }

    pub fn is_zero(&self) -> bool {
        self.members.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.structure.set_names(&self.members)
    }

    fn same(&self, other: &Element<'_>) -> Result<()> {
        if std::ptr::eq(self.structure, other.structure) {
            Ok(())
        } else {
            Err(Error::StructureMismatch)
        }
    }

    pub fn compose(&self, other: &Element<'_>) -> Result<Element<'s>> {
        self.same(other)?;
        Ok(self
            .structure
            .element(self.structure.compose_sets(&self.members, &other.members)))
    }

    pub fn converse(&self) -> Element<'s> {
        self.structure
            .element(self.structure.converse_set(&self.members))
    }

    pub fn complement(&self) -> Element<'s> {
        self.structure
            .element(self.structure.complement_set(&self.members))
    }

    pub fn union(&self, other: &Element<'_>) -> Result<Element<'s>> {
        self.same(other)?;
        Ok(self.structure.element(self.members.union(&other.members)))
    }

    pub fn intersect(&self, other: &Element<'_>) -> Result<Element<'s>> {
        self.same(other)?;
        Ok(self
            .structure
            .element(self.members.intersection(&other.members)))
    }

    pub fn leq(&self, other: &Element<'_>) -> Result<bool> {
        self.same(other)?;
        Ok(self.members.is_subset(&other.members))
    }
}

impl std::fmt::Display for Element<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.structure.fmt_set(&self.members))
    }
}

/// Incremental construction of a structure by atom names.
#[derive(Debug, Clone)]
pub struct StructureBuilder {
    names: Vec<String>,
    identity: Vec<String>,
    converse: Vec<(String, String)>,
    triples: Vec<(String, String, String)>,
    forbidden: bool,
}

impl StructureBuilder {
    pub fn new<S: AsRef<str>>(atoms: &[S]) -> Self {
        StructureBuilder {
            names: atoms.iter().map(|s| s.as_ref().to_string()).collect(),
            identity: Vec::new(),
            converse: Vec::new(),
            triples: Vec::new(),
            forbidden: false,
        }
    }

    pub fn identity<S: AsRef<str>>(mut self, atoms: &[S]) -> Self {
        self.identity
            .extend(atoms.iter().map(|s| s.as_ref().to_string()));
        self
    }

    /// Declares `a` and `b` converse to each other. Unlisted atoms are
    /// self-converse.
    pub fn converse(mut self, a: &str, b: &str) -> Self {
        self.converse.push((a.to_string(), b.to_string()));
        self
    }

    /// Table entry: `row ; col` equals the join of `result`.
    pub fn table<S: AsRef<str>>(mut self, row: &str, col: &str, result: &[S]) -> Self {
        for r in result {
            self.triples
                .push((row.to_string(), col.to_string(), r.as_ref().to_string()));
        }
        self
    }

    pub fn triple(mut self, a: &str, b: &str, c: &str) -> Self {
        self.triples
            .push((a.to_string(), b.to_string(), c.to_string()));
        self
    }

    /// Interpret the recorded triples as the forbidden ones; `C` becomes
    /// their complement.
    pub fn forbidden(mut self) -> Self {
        self.forbidden = true;
        self
    }

    pub fn build(self) -> Result<AtomStructure> {
        let index: HashMap<&str, Atom> = self
            .names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let look = |s: &str| {
            index.get(s).copied().ok_or_else(|| Error::UnknownAtom {
                name: s.to_string(),
                location: None,
            })
        };
        let n = self.names.len();
        let mut converse: Vec<Atom> = (0..n).collect();
        for (a, b) in &self.converse {
            let (a, b) = (look(a)?, look(b)?);
            converse[a] = b;
            converse[b] = a;
        }
        let identity = self
            .identity
            .iter()
            .map(|s| look(s))
            .collect::<Result<Vec<_>>>()?;
        let listed = self
            .triples
            .iter()
            .map(|(a, b, c)| Ok((look(a)?, look(b)?, look(c)?)))
            .collect::<Result<BTreeSet<Triple>>>()?;
        let triples: Vec<Triple> = if self.forbidden {
            let mut out = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !listed.contains(&(a, b, c)) {
                            out.push((a, b, c));
                        }
                    }
                }
            }
            out
        } else {
            listed.into_iter().collect()
        };
        AtomStructure::new(self.names, identity, converse, triples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn point() -> AtomStructure {
        catalog::point_algebra()
    }

    #[test]
    fn point_algebra_compositions() {
        let s = point();
        let lt = s.element_named(&["<"]).unwrap();
        let gt = s.element_named(&[">"]).unwrap();
        assert_eq!(lt.compose(&lt).unwrap().names(), vec!["<"]);
        assert_eq!(lt.compose(&gt).unwrap(), s.top());
        assert!(lt.compose(&s.bottom()).unwrap().is_zero());
    }

    #[test]
    fn structure_mismatch_is_reported() {
        let p = point();
        let q = point();
        let x = p.element_named(&["<"]).unwrap();
        let y = q.element_named(&["<"]).unwrap();
        assert!(matches!(x.compose(&y), Err(Error::StructureMismatch)));
    }

    #[test]
    fn converse_and_booleans() {
        let s = catalog::ra2565();
        let ab = s.element_named(&["a", "b"]).unwrap();
        assert_eq!(ab.converse(), ab);
        assert_eq!(s.top().complement(), s.bottom());
        let p = point();
        let lt = p.element_named(&["<"]).unwrap();
        assert_eq!(lt.converse().names(), vec![">"]);
        assert!(lt.leq(&p.top()).unwrap());
    }

    #[test]
    fn transforms_of_self_converse_triple_are_permutations() {
        let s = catalog::ra2565();
        let (a, b, c) = (s.atom("a").unwrap(), s.atom("b").unwrap(), s.atom("c").unwrap());
        let orbit = s.peircean_transforms((a, b, c));
        let perms: BTreeSet<Triple> = [
            (a, b, c),
            (b, c, a),
            (c, b, a),
            (a, c, b),
            (b, a, c),
            (c, a, b),
        ]
        .into_iter()
        .collect();
        assert_eq!(orbit, perms);
        let id = s.atom("1'").unwrap();
        assert_eq!(s.peircean_transforms((id, id, id)).len(), 1);
    }

    #[test]
    fn transform_orbit_matches_generator_fixpoint() {
        // Closure under the two generating transforms, computed by iteration.
        let s = catalog::ex4();
        let cv = |x: Atom| s.converse_atom(x);
        for t in [
            (s.atom("a").unwrap(), s.atom("a^").unwrap(), s.atom("e").unwrap()),
            (s.atom("a").unwrap(), s.atom("e'").unwrap(), s.atom("a").unwrap()),
        ] {
            let mut seen = BTreeSet::from([t]);
            let mut frontier = vec![t];
            while let Some((a, b, c)) = frontier.pop() {
                for u in [(cv(b), cv(a), cv(c)), (cv(c), a, cv(b))] {
                    if seen.insert(u) {
                        frontier.push(u);
                    }
                }
            }
            assert_eq!(s.peircean_transforms(t), seen);
            assert!(seen.len() <= 6);
        }
    }

    #[test]
    fn identity_law_violation_is_named() {
        let s = StructureBuilder::new(&["e", "a"])
            .identity(&["e"])
            .table("e", "e", &["e"])
            .table("a", "e", &["a"])
            .table("a", "a", &["e", "a"])
            .build()
            .unwrap();
        // (e, a, a) is missing, so `a` has no identity witness.
        let r = s.validate();
        assert!(!r.ok());
        assert!(r.has_rule(rule::IDENTITY_LAW));
    }

    #[test]
    fn closing_repairs_missing_transforms() {
        let mut s = StructureBuilder::new(&["=", "<", ">"])
            .identity(&["="])
            .converse("<", ">")
            .table("=", "=", &["="])
            .table("=", "<", &["<"])
            .table("=", ">", &[">"])
            .table("<", "<", &["<"])
            .table("<", ">", &["=", "<", ">"])
            .build()
            .unwrap();
        assert!(s.validate().has_rule(rule::PEIRCEAN_CLOSURE));
        s.close_peircean();
        assert!(s.validate().ok(), "{}", s.validate());
        assert_eq!(s, point());
    }

    #[test]
    fn forbidden_builder_complements() {
        let s = StructureBuilder::new(&["1'", "x"])
            .identity(&["1'"])
            .triple("1'", "1'", "x")
            .triple("1'", "x", "1'")
            .triple("x", "1'", "1'")
            .forbidden()
            .build()
            .unwrap();
        assert_eq!(s.triple_count(), 5);
        assert!(s.validate().ok());
    }
}
