//! Constraint networks over an atom structure.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::algebra::{Atom, AtomStructure};
use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::report::ValidationReport;

pub mod rule {
    pub const LOOP_SUBIDENTITY: &str = "loop-subidentity";
    pub const TRIANGLE: &str = "triangle";
    pub const CONVERSE_PAIR: &str = "converse-pair";
    pub const NONZERO: &str = "nonzero";
}

/// A complete labelling of ordered node pairs by elements of one complex
/// algebra. Labels are stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    structure: Arc<AtomStructure>,
    nodes: Vec<String>,
    labels: Vec<AtomSet>,
}

/// Why path-consistency refinement failed: the label of `(x, z)` became
/// empty while revising it against `λ(x,y);λ(y,z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inconsistency {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refinement {
    Refined(Network),
    Inconsistent(Inconsistency),
}

impl Network {
    /// A network with the default labels: loops `1'`, everything else `1`.
    pub fn new<S: AsRef<str>>(structure: Arc<AtomStructure>, nodes: &[S]) -> Result<Self> {
        let names: Vec<String> = nodes.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.clone(), i).is_some() {
                return Err(Error::MalformedNetwork(format!("duplicate node `{n}`")));
            }
        }
        let k = names.len();
        let mut labels = vec![structure.full_set(); k * k];
        for i in 0..k {
            labels[i * k + i] = structure.identity().clone();
        }
        Ok(Network {
            structure,
            nodes: names,
            labels,
        })
    }

    /// Builds a network from a dense row-major label matrix.
    pub fn from_labels(
        structure: Arc<AtomStructure>,
        nodes: Vec<String>,
        labels: Vec<AtomSet>,
    ) -> Result<Self> {
        if labels.len() != nodes.len() * nodes.len() {
            return Err(Error::MalformedNetwork(
                "label matrix does not match node count".into(),
            ));
        }
        let mut net = Network::new(structure, &nodes)?;
        net.labels = labels;
        Ok(net)
    }

    pub fn structure(&self) -> &Arc<AtomStructure> {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn node_or_err(&self, name: &str) -> Result<usize> {
        self.node(name).ok_or_else(|| Error::UnknownNode {
            name: name.to_string(),
            location: None,
        })
    }

    pub fn label(&self, x: usize, y: usize) -> &AtomSet {
        &self.labels[x * self.len() + y]
    }

    pub fn labels(&self) -> &[AtomSet] {
        &self.labels
    }

    /// Sets `λ(x,y)` only.
    pub fn set_label(&mut self, x: usize, y: usize, s: AtomSet) {
        let k = self.len();
        self.labels[x * k + y] = s;
    }

    /// Sets `λ(x,y)` and `λ(y,x)` to the converse.
    pub fn set_edge(&mut self, x: usize, y: usize, s: AtomSet) {
        let c = self.structure.converse_set(&s);
        self.set_label(x, y, s);
        self.set_label(y, x, c);
    }

    /// `set_edge` by names.
    pub fn constrain<S: AsRef<str>>(&mut self, x: &str, y: &str, atoms: &[S]) -> Result<()> {
        let (i, j) = (self.node_or_err(x)?, self.node_or_err(y)?);
        let s = self.structure.set_named(atoms)?;
        self.set_edge(i, j, s);
        Ok(())
    }

    pub fn atom_at(&self, x: usize, y: usize) -> Option<Atom> {
        self.label(x, y).single()
    }

    pub fn is_atomic(&self) -> bool {
        self.labels.iter().all(|l| l.single().is_some())
    }

    /// Checks conditions (a) loops below `1'`, (b) no triangle forces zero
    /// (repeated nodes included), (c) `λ(x,y)·λ(y,x)˘ ≠ 0` and (d) no label
    /// is zero. Every violation is reported.
    pub fn check_consistent(&self) -> ValidationReport {
        let s = &*self.structure;
        let k = self.len();
        let mut report = ValidationReport::new();
        let name = |x: usize| self.nodes[x].clone();
        for x in 0..k {
            if !self.label(x, x).is_subset(s.identity()) {
                report.push(
                    rule::LOOP_SUBIDENTITY,
                    vec![name(x)],
                    format!(
                        "loop label {} is not below the identity",
                        s.fmt_set(self.label(x, x))
                    ),
                );
            }
        }
        for x in 0..k {
            for y in 0..k {
                let xy = self.label(x, y);
                for z in 0..k {
                    let comp = s.compose_sets(xy, self.label(y, z));
                    if !comp.intersects(self.label(x, z)) {
                        report.push(
                            rule::TRIANGLE,
                            vec![name(x), name(y), name(z)],
                            format!(
                                "{};{} does not meet {}",
                                s.fmt_set(xy),
                                s.fmt_set(self.label(y, z)),
                                s.fmt_set(self.label(x, z))
                            ),
                        );
                    }
                }
            }
        }
        for x in 0..k {
            for y in 0..k {
                if !self
                    .label(x, y)
                    .intersects(&s.converse_set(self.label(y, x)))
                {
                    report.push(
                        rule::CONVERSE_PAIR,
                        vec![name(x), name(y)],
                        format!(
                            "{} is disjoint from the converse of {}",
                            s.fmt_set(self.label(x, y)),
                            s.fmt_set(self.label(y, x))
                        ),
                    );
                }
                if self.label(x, y).is_empty() {
                    report.push(rule::NONZERO, vec![name(x), name(y)], "label is zero");
                }
            }
        }
        report
    }

    /// Least node triple `(x,y,z)` with `λ(x,z) ≰ λ(x,y);λ(y,z)`.
    pub fn path_consistency_witness(&self) -> Option<(usize, usize, usize)> {
        let s = &*self.structure;
        let k = self.len();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let comp = s.compose_sets(self.label(x, y), self.label(y, z));
                    if !self.label(x, z).is_subset(&comp) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_path_consistent(&self) -> bool {
        self.path_consistency_witness().is_none()
    }

    /// Greatest path-consistent refinement, or the triangle whose revision
    /// emptied a label.
    pub fn refine_path_consistent(&self) -> Refinement {
        let mut labels = self.labels.clone();
        let k = self.len();
        match initial_restrict(&self.structure, k, &mut labels)
            .and_then(|()| propagate(&self.structure, k, k, &mut labels, all_edges(k)))
        {
            Ok(()) => Refinement::Refined(Network {
                structure: self.structure.clone(),
                nodes: self.nodes.clone(),
                labels,
            }),
            Err(w) => Refinement::Inconsistent(w),
        }
    }

    /// All consistent atomic refinements, depth first. Edges are branched on
    /// fewest-atoms first and each choice is followed by path-consistency
    /// propagation, so no inconsistent partial labelling survives.
    pub fn atomic_refinements(&self) -> AtomicRefinements {
        let k = self.len();
        let mut labels = self.labels.clone();
        let ok = initial_restrict(&self.structure, k, &mut labels)
            .and_then(|()| propagate(&self.structure, k, k, &mut labels, all_edges(k)))
            .is_ok();
        let mut stack = Vec::new();
        if ok {
            stack.push(Frame::new(k, labels));
        }
        AtomicRefinements {
            structure: self.structure.clone(),
            nodes: self.nodes.clone(),
            stack,
        }
    }

    /// The subnetwork induced by the listed nodes, in that order.
    pub fn restrict(&self, keep: &[usize]) -> Network {
        let k = self.len();
        let mut labels = Vec::with_capacity(keep.len() * keep.len());
        for &x in keep {
            for &y in keep {
                labels.push(self.labels[x * k + y].clone());
            }
        }
        Network {
            structure: self.structure.clone(),
            nodes: keep.iter().map(|&x| self.nodes[x].clone()).collect(),
            labels,
        }
    }
}

pub(crate) fn all_edges(k: usize) -> Vec<(usize, usize)> {
    let mut q = Vec::with_capacity(k * k);
    for x in 0..k {
        for y in 0..k {
            q.push((x, y));
        }
    }
    q
}

/// Loops meet `1'` and every label meets the converse of its reverse.
pub(crate) fn initial_restrict(
    s: &AtomStructure,
    k: usize,
    labels: &mut [AtomSet],
) -> std::result::Result<(), Inconsistency> {
    for x in 0..k {
        labels[x * k + x].intersect_with(s.identity());
        if labels[x * k + x].is_empty() {
            return Err(Inconsistency { x, y: x, z: x });
        }
    }
    for x in 0..k {
        for y in 0..k {
            let c = s.converse_set(&labels[y * k + x]);
            labels[x * k + y].intersect_with(&c);
            if labels[x * k + y].is_empty() {
                return Err(Inconsistency { x, y: x, z: y });
            }
        }
    }
    Ok(())
}

/// Revises labels of the first `active` nodes of a row-major matrix with
/// row length `stride` until every triangle is closed. The queue holds the
/// edges whose labels changed.
pub(crate) fn propagate(
    s: &AtomStructure,
    stride: usize,
    active: usize,
    labels: &mut [AtomSet],
    initial: Vec<(usize, usize)>,
) -> std::result::Result<(), Inconsistency> {
    let mut queued = vec![false; stride * stride];
    let mut queue = VecDeque::with_capacity(initial.len());
    for (x, y) in initial {
        if !queued[x * stride + y] {
            queued[x * stride + y] = true;
            queue.push_back((x, y));
        }
    }
    // Intersects λ(x,z) with `bound`, keeping λ(z,x) its converse.
    let revise = |labels: &mut [AtomSet],
                      queue: &mut VecDeque<(usize, usize)>,
                      queued: &mut [bool],
                      (x, y, z): (usize, usize, usize),
                      bound: &AtomSet|
     -> std::result::Result<(), Inconsistency> {
        let idx = x * stride + z;
        if labels[idx].is_subset(bound) {
            return Ok(());
        }
        labels[idx].intersect_with(bound);
        if labels[idx].is_empty() {
            return Err(Inconsistency { x, y, z });
        }
        let conv = s.converse_set(&labels[idx]);
        labels[z * stride + x].intersect_with(&conv);
        for (p, q) in [(x, z), (z, x)] {
            if !queued[p * stride + q] {
                queued[p * stride + q] = true;
                queue.push_back((p, q));
            }
        }
        Ok(())
    };
    while let Some((i, j)) = queue.pop_front() {
        queued[i * stride + j] = false;
        for k in 0..active {
            let b = s.compose_sets(&labels[i * stride + j], &labels[j * stride + k]);
            revise(labels, &mut queue, &mut queued, (i, j, k), &b)?;
            let b = s.compose_sets(&labels[k * stride + i], &labels[i * stride + j]);
            revise(labels, &mut queue, &mut queued, (k, i, j), &b)?;
        }
    }
    Ok(())
}

struct Frame {
    labels: Vec<AtomSet>,
    edge: Option<(usize, usize)>,
    choices: Vec<Atom>,
    next: usize,
}

impl Frame {
    fn new(k: usize, labels: Vec<AtomSet>) -> Frame {
        let mut best: Option<(usize, (usize, usize))> = None;
        for x in 0..k {
            for y in x..k {
                let n = labels[x * k + y].len();
                if n > 1 && best.is_none_or(|(b, _)| n < b) {
                    best = Some((n, (x, y)));
                }
            }
        }
        let edge = best.map(|(_, e)| e);
        let choices = edge
            .map(|(x, y)| labels[x * k + y].iter().collect())
            .unwrap_or_default();
        Frame {
            labels,
            edge,
            choices,
            next: 0,
        }
    }
}

/// Iterator returned by [`Network::atomic_refinements`].
pub struct AtomicRefinements {
    structure: Arc<AtomStructure>,
    nodes: Vec<String>,
    stack: Vec<Frame>,
}

impl Iterator for AtomicRefinements {
    type Item = Network;

    fn next(&mut self) -> Option<Network> {
        let s = &*self.structure;
        let k = self.nodes.len();
        while let Some(top) = self.stack.last_mut() {
            let Some((x, y)) = top.edge else {
                let frame = self.stack.pop().expect("non-empty");
                return Some(Network {
                    structure: self.structure.clone(),
                    nodes: self.nodes.clone(),
                    labels: frame.labels,
                });
            };
            if top.next == top.choices.len() {
                self.stack.pop();
                continue;
            }
            let a = top.choices[top.next];
            top.next += 1;
            let mut labels = top.labels.clone();
            labels[x * k + y] = AtomSet::singleton(s.len(), a);
            labels[y * k + x] = AtomSet::singleton(s.len(), s.converse_atom(a));
            if propagate(s, k, k, &mut labels, vec![(x, y), (y, x)]).is_ok() {
                self.stack.push(Frame::new(k, labels));
            }
        }
        None
    }
}
