//! Bounded search for finite qualitative and feeble representations, and
//! qualitative satisfiability of networks.
//!
//! The search works on a domain network over at most `max_base` points.
//! Each *requirement* (a Peircean orbit of consistent triples, or a converse
//! pair of atoms for feeble search) must be realised by some triangle. At
//! every node the unrealised requirement with the fewest feasible placements
//! is branched on; placements use already active points or the lowest-index
//! fresh points, which makes the search complete up to renaming of points.
//! Once every requirement is realised, the remaining edges among active
//! points are completed by backtracking. Every choice is followed by
//! path-consistency propagation.

use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;
use smallvec::SmallVec;

use crate::algebra::{Atom, AtomStructure, Triple};
use crate::atomset::AtomSet;
use crate::network::{self, Network};
use crate::representation::{RepKind, Representation};

/// Default cap on the number of points searched when no bound is given.
pub const DEFAULT_MAX_BASE: usize = 64;
pub const DEFAULT_NODE_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest base searched; `None` means the sound bound, capped at
    /// [`DEFAULT_MAX_BASE`].
    pub max_base: Option<usize>,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Search only bases of exactly `max_base` points.
    pub exact_base: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_base: None,
            node_limit: Some(DEFAULT_NODE_LIMIT),
            time_limit: None,
            exact_base: false,
        }
    }
}

impl SearchBudget {
    pub fn max_base(n: usize) -> Self {
        SearchBudget {
            max_base: Some(n),
            ..Self::default()
        }
    }

    pub fn exact(n: usize) -> Self {
        SearchBudget {
            max_base: Some(n),
            exact_base: true,
            ..Self::default()
        }
    }

    pub fn unlimited_nodes(mut self) -> Self {
        self.node_limit = None;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchStatus {
    Found(Representation),
    /// No representation of any size: the search covered the sound bound.
    NoneExhaustive,
    /// Nothing found, but the bound searched is below the sound bound or a
    /// resource limit was hit. `SearchStats::exhausted` tells which.
    NoneWithinBudget,
    /// The consistent triple admits no consistent configuration of at most
    /// three points, so no representation realises it.
    Obstructed(Triple),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
    /// Base size searched.
    pub max_base: usize,
    /// Size below which a witness exists whenever any does.
    pub sound_bound: usize,
    /// Whether the search space up to `max_base` was fully explored.
    pub exhausted: bool,
    pub exact_base: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetVerdict {
    /// The quotiented witness and the point assigned to each network node.
    Sat {
        representation: Representation,
        embedding: Vec<usize>,
    },
    Unsat,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetOutcome {
    pub verdict: NetVerdict,
    pub stats: SearchStats,
}

/// Slots of a pattern and the atom each slot pair must carry.
#[derive(Debug, Clone)]
struct Pattern {
    slots: usize,
    edges: SmallVec<[(usize, usize, Atom); 3]>,
}

#[derive(Debug, Clone)]
struct Requirement {
    triple: Triple,
    pattern: Pattern,
}

/// Points forced equal by identity atoms share a slot.
fn triple_pattern(s: &AtomStructure, (a, b, c): Triple) -> Pattern {
    let x = 0;
    let y = if s.is_identity_atom(a) { x } else { 1 };
    let z = if s.is_identity_atom(b) {
        y
    } else if s.is_identity_atom(c) {
        x
    } else {
        y + 1
    };
    let mut edges: SmallVec<[(usize, usize, Atom); 3]> = SmallVec::new();
    for e in [(x, y, a), (y, z, b), (x, z, c)] {
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Pattern {
        slots: x.max(y).max(z) + 1,
        edges,
    }
}

fn atom_pattern(s: &AtomStructure, a: Atom) -> Pattern {
    if s.is_identity_atom(a) {
        Pattern {
            slots: 1,
            edges: SmallVec::from_slice(&[(0, 0, a)]),
        }
    } else {
        Pattern {
            slots: 2,
            edges: SmallVec::from_slice(&[(0, 1, a)]),
        }
    }
}

fn qualitative_requirements(s: &AtomStructure) -> Vec<Requirement> {
    s.consistent_orbits()
        .into_iter()
        .map(|t| Requirement {
            triple: t,
            pattern: triple_pattern(s, t),
        })
        .collect()
}

fn feeble_requirements(s: &AtomStructure) -> Vec<Requirement> {
    s.atoms()
        .filter(|&a| a <= s.converse_atom(a))
        .map(|a| Requirement {
            triple: (a, a, a),
            pattern: atom_pattern(s, a),
        })
        .collect()
}

/// Whether a pattern has any consistent atomic realisation on its own
/// slots, trying every loop label.
fn pattern_realisable(s: &Arc<AtomStructure>, p: &Pattern) -> bool {
    let names: Vec<String> = (0..p.slots).map(|i| i.to_string()).collect();
    let mut net = Network::new(s.clone(), &names).expect("distinct names");
    for &(x, y, a) in &p.edges {
        let single = AtomSet::singleton(s.len(), a);
        let cur = net.label(x, y).intersection(&single);
        net.set_label(x, y, cur);
        let conv = net.label(y, x).intersection(&s.converse_set(&single));
        net.set_label(y, x, conv);
    }
    let ids = s.identity().clone();
    for i in 0..p.slots {
        let l = net.label(i, i).intersection(&ids);
        net.set_label(i, i, l);
    }
    net.atomic_refinements().next().is_some()
}

/// Least consistent orbit with no consistent realisation on at most three
/// points.
pub fn obstruction(s: &Arc<AtomStructure>) -> Option<Triple> {
    qualitative_requirements(s)
        .into_iter()
        .find(|r| !pattern_realisable(s, &r.pattern))
        .map(|r| r.triple)
}

enum Stop {
    Budget,
}

struct Search<'a> {
    s: &'a AtomStructure,
    reqs: Vec<Requirement>,
    stride: usize,
    /// Points `0..fixed` are network nodes and never removed.
    fixed: usize,
    exact: bool,
    nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
}

#[derive(Clone)]
struct State {
    labels: Vec<AtomSet>,
    active: usize,
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> Result<(), Stop> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            return Err(Stop::Budget);
        }
        if self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Stop::Budget);
        }
        Ok(())
    }

    fn label<'s>(&self, st: &'s State, x: usize, y: usize) -> &'s AtomSet {
        &st.labels[x * self.stride + y]
    }

    /// Visits slot assignments of `p`. With `determined` only active points
    /// whose labels are already the required atoms are used; otherwise fresh
    /// points may be introduced in order. The visitor returns `false` to stop.
    fn placements(
        &self,
        st: &State,
        p: &Pattern,
        determined: bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let mut slots = vec![usize::MAX; p.slots];
        self.place_slot(st, p, determined, 0, 0, &mut slots, visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn place_slot(
        &self,
        st: &State,
        p: &Pattern,
        determined: bool,
        i: usize,
        fresh: usize,
        slots: &mut [usize],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if i == p.slots {
            return visit(slots);
        }
        let limit = if determined {
            st.active
        } else {
            (st.active + fresh + 1).min(self.stride)
        };
        for pt in 0..limit {
            if slots[..i].contains(&pt) {
                continue;
            }
            slots[i] = pt;
            let fits = p.edges.iter().all(|&(u, v, a)| {
                if u.max(v) != i {
                    return true;
                }
                let l = self.label(st, slots[u], slots[v]);
                if determined {
                    l.single() == Some(a)
                } else {
                    l.contains(a)
                }
            });
            if fits {
                let f = if pt >= st.active { fresh + 1 } else { fresh };
                if !self.place_slot(st, p, determined, i + 1, f, slots, visit) {
                    slots[i] = usize::MAX;
                    return false;
                }
            }
        }
        slots[i] = usize::MAX;
        true
    }

    fn is_realised(&self, st: &State, r: &Requirement) -> bool {
        let mut found = false;
        self.placements(st, &r.pattern, true, &mut |_| {
            found = true;
            false
        });
        found
    }

    fn count_placements(&self, st: &State, r: &Requirement, cap: usize) -> usize {
        let mut n = 0;
        self.placements(st, &r.pattern, false, &mut |_| {
            n += 1;
            n < cap
        });
        n
    }

    fn activate(&self, st: &mut State, upto: usize, queue: &mut Vec<(usize, usize)>) {
        for p in st.active..upto {
            for q in 0..upto {
                queue.push((p, q));
                queue.push((q, p));
            }
        }
        st.active = st.active.max(upto);
    }

    fn apply(&self, st: &State, p: &Pattern, slots: &[usize]) -> Option<State> {
        let mut next = st.clone();
        let mut queue = Vec::new();
        let top = slots.iter().copied().max().unwrap_or(0) + 1;
        if top > next.active {
            self.activate(&mut next, top, &mut queue);
        }
        let n = self.s.len();
        for &(u, v, a) in &p.edges {
            let (x, y) = (slots[u], slots[v]);
            next.labels[x * self.stride + y].intersect_with(&AtomSet::singleton(n, a));
            next.labels[y * self.stride + x]
                .intersect_with(&AtomSet::singleton(n, self.s.converse_atom(a)));
            queue.push((x, y));
            queue.push((y, x));
        }
        network::propagate(self.s, self.stride, next.active, &mut next.labels, queue)
            .ok()
            .map(|()| next)
    }

    fn search(&mut self, st: State) -> Result<Option<State>, Stop> {
        self.tick()?;
        let mut best: Option<(usize, usize)> = None;
        for (i, r) in self.reqs.iter().enumerate() {
            if self.is_realised(&st, r) {
                continue;
            }
            let cap = best.map_or(usize::MAX, |(_, n)| n);
            let n = self.count_placements(&st, r, cap);
            if n == 0 {
                return Ok(None);
            }
            if n < cap {
                best = Some((i, n));
            }
        }
        let Some((ri, _)) = best else {
            let mut st = st;
            if self.exact && st.active < self.stride {
                let mut queue = Vec::new();
                self.activate(&mut st, self.stride, &mut queue);
                if network::propagate(self.s, self.stride, st.active, &mut st.labels, queue)
                    .is_err()
                {
                    return Ok(None);
                }
            }
            return self.complete(st);
        };
        let pattern = self.reqs[ri].pattern.clone();
        let mut options = Vec::new();
        self.placements(&st, &pattern, false, &mut |slots| {
            options.push(slots.to_vec());
            true
        });
        for slots in options {
            if let Some(next) = self.apply(&st, &pattern, &slots) {
                if let Some(done) = self.search(next)? {
                    return Ok(Some(done));
                }
            }
        }
        Ok(None)
    }

    fn complete(&mut self, st: State) -> Result<Option<State>, Stop> {
        self.tick()?;
        let m = st.active;
        let mut best: Option<(usize, (usize, usize))> = None;
        for x in 0..m {
            for y in x..m {
                let n = self.label(&st, x, y).len();
                if n > 1 && best.is_none_or(|(b, _)| n < b) {
                    best = Some((n, (x, y)));
                }
            }
        }
        let Some((_, (x, y))) = best else {
            return Ok(Some(st));
        };
        let n = self.s.len();
        for a in self.label(&st, x, y).clone().iter() {
            let mut next = st.clone();
            next.labels[x * self.stride + y] = AtomSet::singleton(n, a);
            next.labels[y * self.stride + x] = AtomSet::singleton(n, self.s.converse_atom(a));
            if network::propagate(self.s, self.stride, m, &mut next.labels, vec![(x, y), (y, x)])
                .is_ok()
            {
                if let Some(done) = self.complete(next)? {
                    return Ok(Some(done));
                }
            }
        }
        Ok(None)
    }

    fn initial_state(&self, fixed_labels: Option<&Network>) -> Option<State> {
        let s = self.s;
        let m = self.stride;
        let mut off = s.full_set();
        off.difference_with(s.identity());
        let mut labels = vec![off; m * m];
        for x in 0..m {
            labels[x * m + x] = s.identity().clone();
        }
        let mut active = 0;
        if let Some(net) = fixed_labels {
            let k = net.len();
            for x in 0..k {
                for y in 0..k {
                    labels[x * m + y] = net.label(x, y).clone();
                }
            }
            let mut sub: Vec<AtomSet> = (0..k * k).map(|i| net.labels()[i].clone()).collect();
            network::initial_restrict(s, k, &mut sub).ok()?;
            for x in 0..k {
                for y in 0..k {
                    labels[x * m + y] = sub[x * k + y].clone();
                }
            }
            network::propagate(s, m, k, &mut labels, network::all_edges(k)).ok()?;
            active = k;
        }
        Some(State { labels, active })
    }

    fn to_network(&self, st: &State, names: &[String]) -> Network {
        let m = st.active;
        let labels = (0..m * m)
            .map(|i| st.labels[(i / m) * self.stride + i % m].clone())
            .collect();
        Network::from_labels(Arc::new(self.s.clone()), names[..m].to_vec(), labels)
            .expect("dimensions agree")
    }
}

fn point_names(m: usize, fixed: Option<&Network>) -> Vec<String> {
    let mut names: Vec<String> = fixed.map(|n| n.nodes().to_vec()).unwrap_or_default();
    let mut i = 0;
    while names.len() < m {
        let cand = format!("p{i}");
        if !names.contains(&cand) {
            names.push(cand);
        }
        i += 1;
    }
    names
}

/// Removes points one at a time while the verifier still accepts.
fn shrink(rep: Representation, kind: RepKind, keep_first: usize) -> Representation {
    let mut cur = rep;
    let mut i = keep_first;
    while i < cur.len() {
        let keep: Vec<usize> = (0..cur.len()).filter(|&p| p != i).collect();
        let smaller = cur.restrict(&keep);
        if smaller.verify(kind).ok() {
            cur = smaller;
        } else {
            i += 1;
        }
    }
    cur
}

fn sound_bound(reqs: &[Requirement]) -> usize {
    reqs.iter().map(|r| r.pattern.slots).sum::<usize>().max(1)
}

fn run_rep_search(
    s: &Arc<AtomStructure>,
    kind: RepKind,
    reqs: Vec<Requirement>,
    budget: SearchBudget,
) -> SearchOutcome {
    let start = Instant::now();
    let bound = sound_bound(&reqs);
    let m = match (budget.max_base, budget.exact_base) {
        (Some(b), true) => b,
        (Some(b), false) => b.min(bound),
        (None, _) => bound.min(DEFAULT_MAX_BASE),
    }
    .max(1);
    let mut search = Search {
        s,
        reqs,
        stride: m,
        fixed: 0,
        exact: budget.exact_base,
        nodes: 0,
        node_limit: budget.node_limit,
        deadline: budget.time_limit.map(|t| start + t),
    };
    let mut stats = SearchStats {
        max_base: m,
        sound_bound: bound,
        exact_base: budget.exact_base,
        ..SearchStats::default()
    };
    let init = search.initial_state(None).expect("fresh domains are consistent");
    let result = search.search(init);
    stats.nodes = search.nodes;
    let status = match result {
        Ok(Some(st)) => {
            let names = point_names(st.active, None);
            let net = search.to_network(&st, &names);
            let (rep, _) = Representation::quotient(&net).expect("search yields consistent atomic networks");
            let rep = if budget.exact_base {
                rep
            } else {
                shrink(rep, kind, search.fixed)
            };
            let names = point_names(rep.len(), None);
            let rep = Representation::new(s.clone(), names, rep.atoms().to_vec())
                .expect("renaming preserves form");
            assert!(rep.verify(kind).ok(), "search certificate failed verification");
            stats.exhausted = false;
            SearchStatus::Found(rep)
        }
        Ok(None) => {
            stats.exhausted = true;
            if !budget.exact_base && m >= bound {
                SearchStatus::NoneExhaustive
            } else {
                SearchStatus::NoneWithinBudget
            }
        }
        Err(Stop::Budget) => SearchStatus::NoneWithinBudget,
    };
    stats.elapsed = start.elapsed();
    SearchOutcome { status, stats }
}

/// Searches for a finite qualitative representation.
pub fn find_qualitative_rep(s: &Arc<AtomStructure>, budget: SearchBudget) -> SearchOutcome {
    if let Some(t) = obstruction(s) {
        return SearchOutcome {
            status: SearchStatus::Obstructed(t),
            stats: SearchStats {
                exhausted: true,
                ..SearchStats::default()
            },
        };
    }
    run_rep_search(s, RepKind::Qualitative, qualitative_requirements(s), budget)
}

/// Searches for a finite feeble representation.
pub fn find_feeble_rep(s: &Arc<AtomStructure>, budget: SearchBudget) -> SearchOutcome {
    run_rep_search(s, RepKind::Feeble, feeble_requirements(s), budget)
}

/// Decides whether `net` embeds into some finite qualitative representation.
pub fn decide_qual_sat(s: &Arc<AtomStructure>, net: &Network, budget: SearchBudget) -> NetOutcome {
    let start = Instant::now();
    let reqs = qualitative_requirements(s);
    let k = net.len();
    let bound = k + sound_bound(&reqs);
    let mut stats = SearchStats {
        sound_bound: bound,
        ..SearchStats::default()
    };
    if net.labels().iter().any(AtomSet::is_empty) || obstruction(s).is_some() {
        stats.exhausted = true;
        return NetOutcome {
            verdict: NetVerdict::Unsat,
            stats,
        };
    }
    let m = budget
        .max_base
        .map_or(bound.min(DEFAULT_MAX_BASE.max(k)), |b| b.min(bound))
        .max(k)
        .max(1);
    stats.max_base = m;
    let mut search = Search {
        s,
        reqs,
        stride: m,
        fixed: k,
        exact: false,
        nodes: 0,
        node_limit: budget.node_limit,
        deadline: budget.time_limit.map(|t| start + t),
    };
    let verdict = match search.initial_state(Some(net)) {
        None => {
            stats.exhausted = true;
            NetVerdict::Unsat
        }
        Some(init) => match search.search(init) {
            Ok(Some(st)) => {
                let names = point_names(st.active, Some(net));
                let atomic = search.to_network(&st, &names);
                let (rep, class) =
                    Representation::quotient(&atomic).expect("search yields consistent atomic networks");
                assert!(rep.verify_qualitative().ok(), "search certificate failed verification");
                let embedding = class[..k].to_vec();
                for x in 0..k {
                    for y in 0..k {
                        assert!(net.label(x, y).contains(rep.atom_at(embedding[x], embedding[y])));
                    }
                }
                NetVerdict::Sat {
                    representation: rep,
                    embedding,
                }
            }
            Ok(None) => {
                stats.exhausted = true;
                if m >= bound {
                    NetVerdict::Unsat
                } else {
                    NetVerdict::Unknown
                }
            }
            Err(Stop::Budget) => NetVerdict::Unknown,
        },
    };
    stats.nodes = search.nodes;
    stats.elapsed = start.elapsed();
    NetOutcome { verdict, stats }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn arc(s: AtomStructure) -> Arc<AtomStructure> {
        Arc::new(s)
    }

    #[test]
    fn ex4_is_obstructed_at_a_a_a() {
        let s = arc(catalog::ex4());
        let out = find_qualitative_rep(&s, SearchBudget::default());
        let a = s.atom("a").unwrap();
        assert_eq!(out.status, SearchStatus::Obstructed((a, a, a)));
    }

    #[test]
    fn ex4_has_two_point_feeble_rep() {
        let s = arc(catalog::ex4());
        let out = find_feeble_rep(&s, SearchBudget::default());
        match out.status {
            SearchStatus::Found(r) => {
                assert_eq!(r.len(), 2);
                assert!(r.verify_feeble().ok());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ex1_found_on_three_points() {
        let s = arc(catalog::ex1());
        match find_qualitative_rep(&s, SearchBudget::default()).status {
            SearchStatus::Found(r) => assert_eq!(r.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ra2565_found_within_four() {
        let s = arc(catalog::ra2565());
        match find_qualitative_rep(&s, SearchBudget::max_base(4)).status {
            SearchStatus::Found(r) => assert!(r.len() == 3 || r.len() == 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ra2565_feeble_stays_small() {
        let s = arc(catalog::ra2565());
        for m in 1..=7 {
            if let SearchStatus::Found(r) = find_feeble_rep(&s, SearchBudget::max_base(m)).status {
                assert!(r.len() <= 4);
            }
        }
        let out = find_feeble_rep(&s, SearchBudget::exact(5));
        assert_eq!(out.status, SearchStatus::NoneWithinBudget);
        assert!(out.stats.exhausted);
    }

    #[test]
    fn point_algebra_feeble_on_two_points() {
        let s = arc(catalog::point_algebra());
        match find_feeble_rep(&s, SearchBudget::default()).status {
            SearchStatus::Found(r) => assert_eq!(r.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mckenzie_needs_five_points() {
        let s = arc(catalog::mckenzie());
        let none = find_qualitative_rep(&s, SearchBudget::max_base(4));
        assert_eq!(none.status, SearchStatus::NoneWithinBudget);
        assert!(none.stats.exhausted);
        match find_qualitative_rep(&s, SearchBudget::default()).status {
            SearchStatus::Found(r) => assert!(r.len() >= 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_label_is_unsat() {
        let s = arc(catalog::point_algebra());
        let mut n = Network::new(s.clone(), &["x", "y"]).unwrap();
        n.set_edge(0, 1, s.empty_set());
        assert_eq!(
            decide_qual_sat(&s, &n, SearchBudget::default()).verdict,
            NetVerdict::Unsat
        );
    }

    #[test]
    fn a_cycle_over_ex1_is_sat() {
        let s = arc(catalog::ex1());
        let mut n = Network::new(s.clone(), &["0", "1"]).unwrap();
        n.constrain("0", "1", &["a"]).unwrap();
        match decide_qual_sat(&s, &n, SearchBudget::default()).verdict {
            NetVerdict::Sat {
                representation,
                embedding,
            } => {
                assert!(representation.verify_qualitative().ok());
                assert_ne!(embedding[0], embedding[1]);
            }
            other => panic!("{other:?}"),
        }
    }
}
