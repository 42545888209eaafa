//! Bounded search for herds refuting an equation.
//!
//! Small bases are searched exhaustively over every herd and every
//! assignment of block unions to the variables; larger bases are sampled
//! with a seeded generator.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::herd::{self, Herd, Relation, MAX_HERD_BASE};
use super::term::{Equation, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidityOptions {
    pub max_base: usize,
    pub seed: u64,
    /// Largest number of (herd, assignment) pairs searched exhaustively on
    /// one base size.
    pub exhaustive_limit: u64,
    pub samples_per_base: u64,
}

impl Default for ValidityOptions {
    fn default() -> Self {
        ValidityOptions {
            max_base: 4,
            seed: 0,
            exhaustive_limit: 1 << 22,
            samples_per_base: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub herd: Herd,
    pub lhs: Relation,
    pub rhs: Relation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Validity {
    ValidUpTo {
        /// Every herd on at most this many points was checked.
        exhaustive: usize,
        /// Random herds were drawn up to this base size.
        sampled: usize,
        samples: u64,
        /// The exhaustive bound reaches three times the equation length,
        /// which settles validity over all qualitative representations.
        certified: bool,
    },
    Counterexample(Counterexample),
}

/// All herds on `k` points: converse-invariant partitions of `D×D` in which
/// the identity is a union of blocks. `None` if there are too many to list.
pub fn all_herds(k: usize) -> Option<Vec<Vec<Relation>>> {
    let diag: Vec<usize> = (0..k).map(|x| x * k + x).collect();
    let off: Vec<usize> = (0..k * k).filter(|i| i / k != i % k).collect();
    if off.len() > 8 {
        return None;
    }
    let conv = |i: usize| (i % k) * k + i / k;
    let mut out = Vec::new();
    for dp in set_partitions(diag.len()) {
        for op in set_partitions(off.len()) {
            let mut blocks = group(&diag, &dp);
            let off_blocks = group(&off, &op);
            let closed = off_blocks.iter().all(|&b| {
                let c = (0..k * k)
                    .filter(|&i| b >> i & 1 == 1)
                    .fold(0u64, |m, i| m | 1 << conv(i));
                off_blocks.contains(&c)
            });
            if closed {
                blocks.extend(off_blocks);
                out.push(blocks);
            }
        }
    }
    Some(out)
}

fn group(elems: &[usize], labels: &[usize]) -> Vec<Relation> {
    let n = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut blocks = vec![0u64; n];
    for (&e, &l) in elems.iter().zip(labels) {
        blocks[l] |= 1 << e;
    }
    blocks
}

/// Restricted growth strings of length `n`.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, n: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for l in 0..=max + usize::from(!cur.is_empty()) {
            if cur.is_empty() && l > 0 {
                break;
            }
            cur.push(l);
            let m = if cur.len() == 1 { 0 } else { max.max(l) };
            rec(cur, n, m, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        rec(&mut Vec::with_capacity(n), n, 0, &mut out);
    }
    out
}

fn differs(h: &Herd, eq: &Equation) -> Option<Counterexample> {
    let l = h.eval(&eq.lhs).expect("all variables assigned");
    let r = h.eval(&eq.rhs).expect("all variables assigned");
    (l != r).then(|| Counterexample {
        herd: h.clone(),
        lhs: l,
        rhs: r,
    })
}

fn assignments_of(vars: &[String], blocks: &[Relation], code: u64) -> BTreeMap<String, Relation> {
    let nb = blocks.len();
    vars.iter()
        .enumerate()
        .map(|(vi, v)| {
            let bits = code >> (vi * nb);
            let r = (0..nb)
                .filter(|b| bits >> b & 1 == 1)
                .fold(0, |m, b| m | blocks[b]);
            (v.clone(), r)
        })
        .collect()
}

fn random_herd(rng: &mut ChaCha8Rng, k: usize) -> Vec<Relation> {
    let mut blocks: BTreeMap<(u8, usize, u8), Relation> = BTreeMap::new();
    for x in 0..k {
        let l = rng.random_range(0..k);
        *blocks.entry((0, l, 0)).or_default() |= 1 << (x * k + x);
    }
    let pairs = k * (k - 1) / 2;
    if pairs > 0 {
        let classes = rng.random_range(1..=pairs);
        let symmetric: Vec<bool> = (0..classes).map(|_| rng.random_bool(0.5)).collect();
        for x in 0..k {
            for y in x + 1..k {
                let l = rng.random_range(0..classes);
                let (fwd, back) = if symmetric[l] {
                    (2, 2)
                } else if rng.random_bool(0.5) {
                    (0, 1)
                } else {
                    (1, 0)
                };
                *blocks.entry((1, l, fwd)).or_default() |= 1 << (x * k + y);
                *blocks.entry((1, l, back)).or_default() |= 1 << (y * k + x);
            }
        }
    }
    blocks.into_values().collect()
}

pub fn check_validity(eq: &Equation, opts: ValidityOptions) -> Validity {
    let vars = eq.variables();
    let max_base = opts.max_base.clamp(1, MAX_HERD_BASE);
    let mut exhaustive = 0;
    let mut k = 1;
    while k <= max_base {
        let Some(herds) = all_herds(k) else { break };
        let total: u64 = herds
            .iter()
            .map(|b| 1u64.checked_shl((b.len() * vars.len()) as u32).unwrap_or(u64::MAX))
            .fold(0u64, |a, b| a.saturating_add(b));
        if total > opts.exhaustive_limit {
            break;
        }
        for blocks in herds {
            let codes = 1u64 << (blocks.len() * vars.len());
            for code in 0..codes {
                let asg = assignments_of(&vars, &blocks, code);
                let h = Herd::from_blocks(k, blocks.clone(), asg).expect("enumerated herds are valid");
                if let Some(c) = differs(&h, eq) {
                    assert!(reverify(eq, &c), "counterexample failed re-evaluation");
                    return Validity::Counterexample(c);
                }
            }
        }
        exhaustive = k;
        k += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut samples = 0;
    let mut sampled = exhaustive;
    for k in exhaustive + 1..=max_base {
        for _ in 0..opts.samples_per_base {
            let blocks = random_herd(&mut rng, k);
            let asg = vars
                .iter()
                .map(|v| {
                    let r = blocks
                        .iter()
                        .filter(|_| rng.random_bool(0.5))
                        .fold(0, |m, &b| m | b);
                    (v.clone(), r)
                })
                .collect();
            let h = Herd::from_blocks(k, blocks, asg).expect("sampled herds are valid");
            samples += 1;
            if let Some(c) = differs(&h, eq) {
                assert!(reverify(eq, &c), "counterexample failed re-evaluation");
                return Validity::Counterexample(c);
            }
        }
        sampled = k;
    }
    Validity::ValidUpTo {
        exhaustive,
        sampled,
        samples,
        certified: exhaustive >= 3 * eq.size(),
    }
}

type PairSet = BTreeSet<(usize, usize)>;

/// Evaluates both sides again with explicit pair sets and checks that the
/// herd axioms hold, without going through the bitmask evaluator.
pub fn reverify(eq: &Equation, c: &Counterexample) -> bool {
    let h = &c.herd;
    let k = h.base();
    let blocks: Vec<PairSet> = h
        .blocks()
        .iter()
        .map(|&b| herd::pairs(k, b).into_iter().collect())
        .collect();
    let all: PairSet = (0..k).flat_map(|x| (0..k).map(move |y| (x, y))).collect();
    let id: PairSet = (0..k).map(|x| (x, x)).collect();
    let union: PairSet = blocks.iter().flatten().copied().collect();
    let total: usize = blocks.iter().map(BTreeSet::len).sum();
    if union != all || total != all.len() {
        return false;
    }
    let conv = |r: &PairSet| -> PairSet { r.iter().map(|&(x, y)| (y, x)).collect() };
    let cover = |r: &PairSet| -> PairSet {
        blocks
            .iter()
            .filter(|b| !b.is_disjoint(r))
            .flatten()
            .copied()
            .collect()
    };
    if cover(&id) != id || blocks.iter().any(|b| !blocks.contains(&conv(b))) {
        return false;
    }
    let asg: BTreeMap<&String, PairSet> = h
        .assignment()
        .iter()
        .map(|(v, &r)| (v, herd::pairs(k, r).into_iter().collect()))
        .collect();
    fn ev(
        t: &Term,
        all: &PairSet,
        id: &PairSet,
        asg: &BTreeMap<&String, PairSet>,
        cover: &dyn Fn(&PairSet) -> PairSet,
    ) -> PairSet {
        let go = |t: &Term| ev(t, all, id, asg, cover);
        match t {
            Term::Zero => PairSet::new(),
            Term::One => all.clone(),
            Term::Identity => id.clone(),
            Term::Var(v) => asg[v].clone(),
            Term::Complement(a) => all.difference(&go(a)).copied().collect(),
            Term::Converse(a) => go(a).iter().map(|&(x, y)| (y, x)).collect(),
            Term::Join(a, b) => go(a).union(&go(b)).copied().collect(),
            Term::Meet(a, b) => go(a).intersection(&go(b)).copied().collect(),
            Term::Compose(a, b) => {
                let (r, s) = (go(a), go(b));
                let comp: PairSet = r
                    .iter()
                    .flat_map(|&(x, y)| s.iter().filter(move |&&(y2, _)| y2 == y).map(move |&(_, z)| (x, z)))
                    .collect();
                cover(&comp)
            }
        }
    }
    let l = ev(&eq.lhs, &all, &id, &asg, &cover);
    let r = ev(&eq.rhs, &all, &id, &asg, &cover);
    let lhs: PairSet = herd::pairs(k, c.lhs).into_iter().collect();
    let rhs: PairSet = herd::pairs(k, c.rhs).into_iter().collect();
    l != r && l == lhs && r == rhs
}
