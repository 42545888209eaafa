//! Seeded generators and property checks shared by the property suite and
//! the acceptance run.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use qalg::network::Refinement;
use qalg::{catalog, AtomSet, AtomStructure, Network, RepKind, Representation, Triple};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = std::result::Result<(), String>;

/// Runs `check` on `cases` seeds drawn by a deterministic proptest runner
/// and returns the first failure with its seed.
pub fn run_cases(cases: u32, check: impl Fn(u64) -> Check) -> Check {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    for _ in 0..cases {
        let seed = proptest::num::u64::ANY
            .new_tree(&mut runner)
            .map_err(|e| e.to_string())?
            .current();
        check(seed).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok(())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The six Peircean transforms of a triple.
pub fn orbit(conv: &[usize], (a, b, c): Triple) -> [Triple; 6] {
    [
        (a, b, c),
        (b, conv[c], conv[a]),
        (c, conv[b], a),
        (conv[a], c, b),
        (conv[b], conv[a], conv[c]),
        (conv[c], a, conv[b]),
    ]
}

/// A random structure on one identity atom and one to four diversity
/// atoms. Consistent triples are the identity-law orbits plus a random
/// selection of whole diversity orbits.
pub fn random_structure(r: &mut impl Rng) -> AtomStructure {
    let d = r.random_range(1..=4);
    let n = d + 1;
    let mut conv: Vec<usize> = (0..n).collect();
    let mut a = 1;
    while a < n {
        if a + 1 < n && r.random_bool(0.5) {
            conv[a] = a + 1;
            conv[a + 1] = a;
            a += 2;
        } else {
            a += 1;
        }
    }
    let mut triples = BTreeSet::new();
    for a in 0..n {
        triples.extend(orbit(&conv, (0, a, a)));
    }
    let mut seen = BTreeSet::new();
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                if seen.contains(&(a, b, c)) {
                    continue;
                }
                let o = orbit(&conv, (a, b, c));
                seen.extend(o);
                if r.random_bool(0.6) {
                    triples.extend(o);
                }
            }
        }
    }
    let names = std::iter::once("1'".to_string())
        .chain((1..n).map(|i| format!("a{i}")))
        .collect();
    let s = AtomStructure::new(names, [0], conv, triples).expect("well-formed");
    assert!(s.validate().ok(), "generator produced an invalid structure");
    s
}

/// A catalog structure or a random one.
pub fn any_structure(r: &mut impl Rng) -> AtomStructure {
    if r.random_bool(0.3) {
        let key = catalog::KEYS.choose(r).expect("non-empty");
        (*catalog::get(key).expect("catalog").structure).clone()
    } else {
        random_structure(r)
    }
}

pub fn random_set(r: &mut impl Rng, s: &AtomStructure) -> AtomSet {
    s.set_of(s.atoms().filter(|_| r.random_bool(0.5)))
}

pub fn nonempty_subset(r: &mut impl Rng, s: &AtomStructure, within: &AtomSet) -> AtomSet {
    let members: Vec<usize> = within.iter().collect();
    let mut out = s.set_of(members.iter().copied().filter(|_| r.random_bool(0.5)));
    if out.is_empty() {
        out.insert(*members.choose(r).expect("non-empty"));
    }
    out
}

/// A network with random non-empty labels on every edge and random
/// subidentity loops.
pub fn random_network(r: &mut impl Rng, s: &Arc<AtomStructure>) -> Network {
    let k = r.random_range(2..=5);
    let nodes: Vec<String> = (0..k).map(|i| format!("n{i}")).collect();
    let mut net = Network::new(s.clone(), &nodes).expect("distinct nodes");
    let full = s.full_set();
    let id = s.identity().clone();
    for x in 0..k {
        net.set_label(x, x, nonempty_subset(r, s, &id));
        for y in x + 1..k {
            net.set_edge(x, y, nonempty_subset(r, s, &full));
        }
    }
    net
}

fn labels_leq(a: &Network, b: &Network) -> bool {
    a.labels().iter().zip(b.labels()).all(|(x, y)| x.is_subset(y))
}

/// `(x;y)·z ≠ 0 ⟺ (x˘;z)·y ≠ 0 ⟺ (z;y˘)·x ≠ 0`.
pub fn peircean_law(seed: u64) -> Check {
    let mut r = rng(seed);
    let s = any_structure(&mut r);
    let (x, y, z) = (random_set(&mut r, &s), random_set(&mut r, &s), random_set(&mut r, &s));
    let p = s.compose_sets(&x, &y).intersects(&z);
    let q = s.compose_sets(&s.converse_set(&x), &z).intersects(&y);
    let t = s.compose_sets(&z, &s.converse_set(&y)).intersects(&x);
    if p == q && q == t {
        Ok(())
    } else {
        Err(format!("{} {} {}: {p} {q} {t}", s.fmt_set(&x), s.fmt_set(&y), s.fmt_set(&z)))
    }
}

/// Composition distributes over joins on both sides.
pub fn additivity(seed: u64) -> Check {
    let mut r = rng(seed);
    let s = any_structure(&mut r);
    let (x, y, z) = (random_set(&mut r, &s), random_set(&mut r, &s), random_set(&mut r, &s));
    let xy = x.union(&y);
    let left = s.compose_sets(&xy, &z) == s.compose_sets(&x, &z).union(&s.compose_sets(&y, &z));
    let right = s.compose_sets(&z, &xy) == s.compose_sets(&z, &x).union(&s.compose_sets(&z, &y));
    if left && right {
        Ok(())
    } else {
        Err(format!("{} {} {}", s.fmt_set(&x), s.fmt_set(&y), s.fmt_set(&z)))
    }
}

/// Refining twice changes nothing; the result is path consistent and
/// below the input.
pub fn refine_idempotent(seed: u64) -> Check {
    let mut r = rng(seed);
    let s = Arc::new(any_structure(&mut r));
    let net = random_network(&mut r, &s);
    match net.refine_path_consistent() {
        Refinement::Inconsistent(_) => Ok(()),
        Refinement::Refined(once) => {
            if !once.is_path_consistent() || !labels_leq(&once, &net) {
                return Err("refinement is not a path-consistent subnetwork".into());
            }
            match once.refine_path_consistent() {
                Refinement::Refined(twice) if twice.labels() == once.labels() => Ok(()),
                _ => Err("second refinement changed the network".into()),
            }
        }
    }
}

/// Enlarging labels can only enlarge the refinement.
pub fn refine_monotone(seed: u64) -> Check {
    let mut r = rng(seed);
    let s = Arc::new(any_structure(&mut r));
    let small = random_network(&mut r, &s);
    let mut big = small.clone();
    let k = small.len();
    for x in 0..k {
        for y in x + 1..k {
            if r.random_bool(0.3) {
                let extra = random_set(&mut r, &s);
                big.set_edge(x, y, small.label(x, y).union(&extra));
            }
        }
    }
    match (small.refine_path_consistent(), big.refine_path_consistent()) {
        (Refinement::Refined(a), Refinement::Refined(b)) if !labels_leq(&a, &b) => {
            Err("refinement of the smaller network is not below".into())
        }
        (Refinement::Refined(_), Refinement::Inconsistent(_)) => {
            Err("larger network refined to inconsistency".into())
        }
        _ => Ok(()),
    }
}

/// Nodes placed on points of a known representation keep their true atom
/// through refinement.
pub fn refine_preserves_solutions(seed: u64) -> Check {
    let mut r = rng(seed);
    let entries = catalog::all();
    let e = entries.choose(&mut r).expect("non-empty");
    let (_, rep) = e.representations.choose(&mut r).expect("every entry has one");
    let s = rep.structure().clone();
    let k = r.random_range(2..=6);
    let place: Vec<usize> = (0..k).map(|_| r.random_range(0..rep.len())).collect();
    let nodes: Vec<String> = (0..k).map(|i| format!("n{i}")).collect();
    let mut net = Network::new(s.clone(), &nodes).expect("distinct nodes");
    let id = s.identity().clone();
    for x in 0..k {
        for y in x..k {
            let truth = rep.atom_at(place[x], place[y]);
            let pool = if x == y { &id } else { &s.full_set() };
            let mut label = nonempty_subset(&mut r, &s, pool);
            label.insert(truth);
            if x == y {
                net.set_label(x, x, label);
            } else {
                net.set_edge(x, y, label);
            }
        }
    }
    match net.refine_path_consistent() {
        Refinement::Inconsistent(w) => Err(format!("{}: satisfiable network refuted at {:?}", e.key, (w.x, w.y, w.z))),
        Refinement::Refined(n) => {
            for x in 0..k {
                for y in 0..k {
                    if !n.label(x, y).contains(rep.atom_at(place[x], place[y])) {
                        return Err(format!("{}: refinement dropped the solution at ({x}, {y})", e.key));
                    }
                }
            }
            Ok(())
        }
    }
}

/// Blowing a representation up with duplicated points and quotienting
/// recovers the restriction to the points used.
pub fn quotient_round_trip(seed: u64) -> Check {
    let mut r = rng(seed);
    let entries = catalog::all();
    let e = entries.choose(&mut r).expect("non-empty");
    let (_, rep) = e.representations.choose(&mut r).expect("every entry has one");
    let k = r.random_range(1..=8);
    let place: Vec<usize> = (0..k).map(|_| r.random_range(0..rep.len())).collect();
    let nodes: Vec<String> = (0..k).map(|i| format!("n{i}")).collect();
    let s = rep.structure().clone();
    let labels = (0..k * k)
        .map(|i| s.set_of([rep.atom_at(place[i / k], place[i % k])]))
        .collect();
    let net = Network::from_labels(s, nodes, labels).map_err(|e| e.to_string())?;
    let (q, class) = Representation::quotient(&net).map_err(|e| e.to_string())?;
    let mut used = Vec::new();
    for &p in &place {
        if !used.contains(&p) {
            used.push(p);
        }
    }
    if q.atoms() != rep.restrict(&used).atoms() {
        return Err(format!("{}: quotient differs from the restriction", e.key));
    }
    for x in 0..k {
        for y in 0..k {
            if (class[x] == class[y]) != (place[x] == place[y]) {
                return Err(format!("{}: classes disagree with placement", e.key));
            }
        }
    }
    Ok(())
}

/// A random labelling: either a perturbed restriction of a known
/// representation or a uniform random matrix.
fn random_candidate(r: &mut impl Rng) -> Option<Representation> {
    if r.random_bool(0.5) {
        let entries = catalog::all();
        let e = entries.choose(r).expect("non-empty");
        let (_, rep) = e.representations.choose(r).expect("every entry has one");
        let keep: Vec<usize> = (0..rep.len()).filter(|_| r.random_bool(0.7)).collect();
        if keep.is_empty() {
            return None;
        }
        let sub = rep.restrict(&keep);
        let k = sub.len();
        let s = sub.structure().clone();
        let mut atoms = sub.atoms().to_vec();
        if k >= 2 && r.random_bool(0.5) {
            let x = r.random_range(0..k);
            let y = (x + r.random_range(1..k)) % k;
            let a = r.random_range(0..s.len());
            atoms[x * k + y] = a;
            atoms[y * k + x] = s.converse_atom(a);
        }
        Representation::new(s, sub.base().to_vec(), atoms).ok()
    } else {
        let s = Arc::new(any_structure(r));
        let k = r.random_range(1..=4);
        let ids: Vec<usize> = s.identity().iter().collect();
        let mut atoms = vec![0; k * k];
        for x in 0..k {
            atoms[x * k + x] = *ids.choose(r).expect("identity is non-empty");
            for y in x + 1..k {
                let a = r.random_range(0..s.len());
                atoms[x * k + y] = a;
                atoms[y * k + x] = s.converse_atom(a);
            }
        }
        let base = (0..k).map(|i| format!("p{i}")).collect();
        Representation::new(s, base, atoms).ok()
    }
}

/// strong ⟹ qualitative ⟹ feeble on arbitrary labellings.
pub fn verifier_chain(seed: u64) -> Check {
    let mut r = rng(seed);
    let Some(rep) = random_candidate(&mut r) else {
        return Ok(());
    };
    let strong = rep.verify(RepKind::Strong).ok();
    let qual = rep.verify(RepKind::Qualitative).ok();
    let feeble = rep.verify(RepKind::Feeble).ok();
    if (!strong || qual) && (!qual || feeble) {
        Ok(())
    } else {
        Err(format!("strong={strong} qualitative={qual} feeble={feeble}"))
    }
}

/// The randomised suites, by name.
pub const SUITES: [(&str, fn(u64) -> Check); 7] = [
    ("peircean element law", peircean_law),
    ("additivity of composition", additivity),
    ("refine idempotence", refine_idempotent),
    ("refine monotonicity", refine_monotone),
    ("refine solution preservation", refine_preserves_solutions),
    ("quotient round trip", quotient_round_trip),
    ("strong => qualitative => feeble", verifier_chain),
];
