//! Built-in atom structures with known representations.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::{Atom, AtomStructure, StructureBuilder};
use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::representation::{RepKind, Representation};

pub const KEYS: [&str; 7] = ["point", "ex1", "ex2", "ra2565", "ex4", "mckenzie", "rcc5"];

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub structure: Arc<AtomStructure>,
    pub representations: Vec<(RepKind, Representation)>,
    pub description: &'static str,
}

pub fn get(key: &str) -> Result<CatalogEntry> {
    let (key, structure, description): (&'static str, AtomStructure, &'static str) = match key {
        "point" => ("point", point_algebra(), "point algebra of a linear order"),
        "ex1" => ("ex1", ex1(), "two identity atoms and one diversity atom; not weakly associative"),
        "ex2" => ("ex2", ex2(), "atomic identity, not integral, not semi-associative"),
        "ra2565" => ("ra2565", ra2565(), "three self-converse atoms composing by permutation; representable on four points"),
        "ex4" => ("ex4", ex4(), "feebly but not qualitatively representable"),
        "mckenzie" => ("mckenzie", mckenzie(), "associative, qualitatively but not strongly representable"),
        "rcc5" => ("rcc5", rcc5(), "region connection calculus with five base relations"),
        other => return Err(Error::UnknownCatalogKey(other.to_string())),
    };
    let structure = Arc::new(structure);
    let representations = representations_for(key, &structure);
    Ok(CatalogEntry {
        key,
        structure,
        representations,
        description,
    })
}

pub fn all() -> Vec<CatalogEntry> {
    KEYS.iter().map(|k| get(k).expect("built-in key")).collect()
}

/// `=`, `<`, `>` with the composition table of a linear order.
pub fn point_algebra() -> AtomStructure {
    StructureBuilder::new(&["=", "<", ">"])
        .identity(&["="])
        .converse("<", ">")
        .table("=", "=", &["="])
        .table("=", "<", &["<"])
        .table("=", ">", &[">"])
        .table("<", "=", &["<"])
        .table("<", "<", &["<"])
        .table("<", ">", &["=", "<", ">"])
        .table(">", "=", &[">"])
        .table(">", "<", &["=", "<", ">"])
        .table(">", ">", &[">"])
        .build()
        .expect("point algebra")
}

pub fn ex1() -> AtomStructure {
    StructureBuilder::new(&["e", "e'", "a"])
        .identity(&["e", "e'"])
        .table("e", "e", &["e"])
        .table("e", "a", &["a"])
        .table("e'", "e'", &["e'"])
        .table("e'", "a", &["a"])
        .table("a", "e", &["a"])
        .table("a", "e'", &["a"])
        .table("a", "a", &["e", "e'", "a"])
        .build()
        .expect("ex1")
}

pub fn ex2() -> AtomStructure {
    let one = ["1'", "a", "a'", "x"];
    StructureBuilder::new(&one)
        .identity(&["1'"])
        .table("1'", "1'", &["1'"])
        .table("1'", "a", &["a"])
        .table("1'", "a'", &["a'"])
        .table("1'", "x", &["x"])
        .table("a", "1'", &["a"])
        .table("a'", "1'", &["a'"])
        .table("x", "1'", &["x"])
        .table("a", "a", &["1'", "a"])
        .table("a", "x", &["x"])
        .table("a'", "a'", &["1'", "a'"])
        .table("a'", "x", &["x"])
        .table("x", "a", &["x"])
        .table("x", "a'", &["x"])
        .table("x", "x", &["1'", "a", "a'"])
        .build()
        .expect("ex2")
}

pub fn ra2565() -> AtomStructure {
    let mut b = StructureBuilder::new(&["1'", "a", "b", "c"]).identity(&["1'"]);
    for x in ["1'", "a", "b", "c"] {
        b = b.table("1'", x, &[x]).table(x, "1'", &[x]);
    }
    for x in ["a", "b", "c"] {
        b = b.table(x, x, &["1'"]);
    }
    for (x, y, z) in [("a", "b", "c"), ("b", "c", "a"), ("c", "a", "b")] {
        b = b.table(x, y, &[z]).table(y, x, &[z]);
    }
    b.build().expect("ra2565")
}

pub fn ex4() -> AtomStructure {
    StructureBuilder::new(&["e", "e'", "a", "a^"])
        .identity(&["e", "e'"])
        .converse("a", "a^")
        .table("e", "e", &["e"])
        .table("e", "a", &["a"])
        .table("e'", "e'", &["e'"])
        .table("e'", "a^", &["a^"])
        .table("a", "e'", &["a"])
        .table("a", "a", &["a"])
        .table("a", "a^", &["e", "a", "a^"])
        .table("a^", "e", &["a^"])
        .table("a^", "a", &["e'", "a", "a^"])
        .table("a^", "a^", &["a^"])
        .build()
        .expect("ex4")
}

pub fn mckenzie() -> AtomStructure {
    let all = ["1'", "a", "a^", "b"];
    let mut bld = StructureBuilder::new(&all)
        .identity(&["1'"])
        .converse("a", "a^");
    for x in all {
        bld = bld.table("1'", x, &[x]).table(x, "1'", &[x]);
    }
    bld.table("a", "a", &["a"])
        .table("a", "a^", &all)
        .table("a", "b", &["a", "b"])
        .table("a^", "a", &all)
        .table("a^", "a^", &["a^"])
        .table("a^", "b", &["a^", "b"])
        .table("b", "a", &["a", "b"])
        .table("b", "a^", &["a^", "b"])
        .table("b", "b", &["1'", "a", "a^"])
        .build()
        .expect("mckenzie")
}

pub fn rcc5() -> AtomStructure {
    let all = ["1'", "eps", "eps^", "pi", "delta"];
    let mut bld = StructureBuilder::new(&all)
        .identity(&["1'"])
        .converse("eps", "eps^");
    for x in all {
        bld = bld.table("1'", x, &[x]).table(x, "1'", &[x]);
    }
    bld.table("eps", "eps", &["eps"])
        .table("eps", "eps^", &all)
        .table("eps", "pi", &["eps", "pi", "delta"])
        .table("eps", "delta", &["delta"])
        .table("eps^", "eps", &["1'", "eps", "eps^", "pi"])
        .table("eps^", "eps^", &["eps^"])
        .table("eps^", "pi", &["eps^", "pi"])
        .table("eps^", "delta", &["eps^", "pi", "delta"])
        .table("pi", "eps", &["eps", "pi"])
        .table("pi", "eps^", &["eps^", "pi", "delta"])
        .table("pi", "pi", &all)
        .table("pi", "delta", &["eps^", "pi", "delta"])
        .table("delta", "eps", &["eps", "pi", "delta"])
        .table("delta", "eps^", &["delta"])
        .table("delta", "pi", &["eps", "pi", "delta"])
        .table("delta", "delta", &all)
        .build()
        .expect("rcc5")
}

/// The eleven regions over `{1..7}` on which the region calculus is
/// qualitatively represented.
pub const RCC5_REGIONS: [(&str, &[u8]); 11] = [
    ("A", &[1, 6]),
    ("B", &[1, 2, 3, 5, 6]),
    ("C", &[1, 2, 6]),
    ("D", &[1, 2, 3, 5, 6, 7]),
    ("E", &[1]),
    ("F", &[1, 2, 3, 5]),
    ("G", &[2, 3]),
    ("H", &[1, 4, 6]),
    ("I", &[1, 3]),
    ("J", &[1, 2, 3, 4, 5]),
    ("K", &[4, 5, 6]),
];

/// Base relation between two non-empty regions. Disjointness is tested
/// first, then proper inclusion either way; the remaining overlaps are `pi`.
pub fn rcc5_region_atom(s: &AtomStructure, x: &[u8], y: &[u8]) -> Result<Atom> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::InvalidGraph("regions must be non-empty".into()));
    }
    let x: BTreeSet<u8> = x.iter().copied().collect();
    let y: BTreeSet<u8> = y.iter().copied().collect();
    let name = if x == y {
        "1'"
    } else if x.is_disjoint(&y) {
        "delta"
    } else if x.is_subset(&y) {
        "eps"
    } else if y.is_subset(&x) {
        "eps^"
    } else {
        "pi"
    };
    s.atom_or_err(name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Syllogism {
    /// Every S is P.
    A,
    /// Some S is P.
    I,
    /// No S is P.
    E,
    /// Some S is not P.
    O,
}

/// The region-calculus element interpreting a categorical proposition
/// between two terms.
pub fn syllogism_element(s: &AtomStructure, form: Syllogism) -> Result<AtomSet> {
    let names: &[&str] = match form {
        Syllogism::A => &["1'", "eps"],
        Syllogism::I => &["1'", "eps", "eps^", "pi"],
        Syllogism::E => &["delta"],
        Syllogism::O => &["eps^", "pi", "delta"],
    };
    s.set_named(names)
}

fn names(prefix: &str, k: usize) -> Vec<String> {
    (0..k).map(|i| format!("{prefix}{i}")).collect()
}

fn rep(
    s: &Arc<AtomStructure>,
    base: Vec<String>,
    f: impl Fn(usize, usize) -> &'static str,
) -> Representation {
    Representation::from_fn(s.clone(), base, |x, y| {
        s.atom(f(x, y)).expect("catalog atom")
    })
    .expect("catalog representation")
}

/// Strict-order labelling `=`/`<`/`>` from a comparison on indices, with a
/// third atom for incomparable pairs.
fn order_rep(
    s: &Arc<AtomStructure>,
    base: &[&str],
    less: impl Fn(usize, usize) -> bool,
    names: [&'static str; 4],
) -> Representation {
    let [id, lt, gt, inc] = names;
    rep(
        s,
        base.iter().map(|b| b.to_string()).collect(),
        |x, y| {
            if x == y {
                id
            } else if less(x, y) {
                lt
            } else if less(y, x) {
                gt
            } else {
                inc
            }
        },
    )
}

/// One-factorisation of K4 by the three diversity atoms.
pub fn ra2565_k4(s: &Arc<AtomStructure>) -> Representation {
    rep(s, names("", 4), |x, y| {
        let (p, q) = (x.min(y), x.max(y));
        match (p, q) {
            _ if p == q => "1'",
            (1, 2) | (0, 3) => "a",
            (0, 1) | (2, 3) => "b",
            _ => "c",
        }
    })
}

pub fn n5(s: &Arc<AtomStructure>) -> Representation {
    // bot < x < y < top, bot < z < top; z incomparable to x and y.
    let lt = |p: usize, q: usize| {
        matches!(
            (p, q),
            (0, 1) | (0, 2) | (0, 3) | (0, 4) | (1, 2) | (1, 4) | (2, 4) | (3, 4)
        )
    };
    order_rep(s, &["bot", "x", "y", "z", "top"], lt, ["1'", "a", "a^", "b"])
}

pub fn double_chain(s: &Arc<AtomStructure>) -> Representation {
    // bot < a1 < b1 < c1 < top and bot < a2 < b2 < c2 < top.
    let base = ["bot", "a1", "b1", "c1", "a2", "b2", "c2", "top"];
    let chain = |p: usize| match p {
        1..=3 => Some((1, p)),
        4..=6 => Some((2, p - 3)),
        _ => None,
    };
    let lt = move |p: usize, q: usize| match (p, q) {
        (0, q) => q != 0,
        (p, 7) => p != 7,
        _ => match (chain(p), chain(q)) {
            (Some((c, i)), Some((d, j))) => c == d && i < j,
            _ => false,
        },
    };
    order_rep(s, &base, lt, ["1'", "a", "a^", "b"])
}

pub fn rcc5_regions(s: &Arc<AtomStructure>) -> Representation {
    Representation::from_fn(
        s.clone(),
        RCC5_REGIONS.iter().map(|(n, _)| n.to_string()).collect(),
        |x, y| rcc5_region_atom(s, RCC5_REGIONS[x].1, RCC5_REGIONS[y].1).expect("non-empty"),
    )
    .expect("region representation")
}

fn representations_for(key: &str, s: &Arc<AtomStructure>) -> Vec<(RepKind, Representation)> {
    match key {
        "point" => vec![(
            RepKind::Qualitative,
            order_rep(s, &["0", "1", "2", "3"], |x, y| x < y, ["=", "<", ">", "="]),
        )],
        "ex1" => vec![
            (
                RepKind::Qualitative,
                rep(s, names("", 3), |x, y| match (x, y) {
                    (0, 0) => "e",
                    _ if x == y => "e'",
                    _ => "a",
                }),
            ),
            (
                RepKind::Feeble,
                rep(s, names("", 2), |x, y| match (x, y) {
                    (0, 0) => "e",
                    (1, 1) => "e'",
                    _ => "a",
                }),
            ),
        ],
        "ex2" => vec![(
            RepKind::Qualitative,
            rep(
                s,
                ["0", "1", "2", "0'", "1'", "2'"].map(String::from).to_vec(),
                |x, y| match (x, y) {
                    _ if x == y => "1'",
                    _ if x < 3 && y < 3 => "a",
                    _ if x >= 3 && y >= 3 => "a'",
                    _ => "x",
                },
            ),
        )],
        "ra2565" => {
            let k4 = ra2565_k4(s);
            let three = k4.restrict(&[1, 2, 3]);
            vec![(RepKind::Strong, k4), (RepKind::Qualitative, three)]
        }
        "ex4" => vec![(
            RepKind::Feeble,
            rep(s, names("", 2), |x, y| match (x, y) {
                (0, 0) => "e",
                (1, 1) => "e'",
                (0, 1) => "a",
                _ => "a^",
            }),
        )],
        "mckenzie" => vec![
            (RepKind::Qualitative, n5(s)),
            (RepKind::Qualitative, double_chain(s)),
        ],
        "rcc5" => vec![(RepKind::Qualitative, rcc5_regions(s))],
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_structure_validates() {
        for e in all() {
            let r = e.structure.validate();
            assert!(r.ok(), "{}: {r}", e.key);
        }
    }

    #[test]
    fn every_listed_representation_verifies() {
        for e in all() {
            for (kind, r) in &e.representations {
                let rep = r.verify(*kind);
                assert!(rep.ok(), "{} {}: {rep}", e.key, kind.as_str());
            }
        }
    }

    #[test]
    fn unknown_key() {
        assert!(matches!(get("allen"), Err(Error::UnknownCatalogKey(_))));
    }

    #[test]
    fn catalog_sizes() {
        assert_eq!(get("point").unwrap().structure.len(), 3);
        assert_eq!(get("rcc5").unwrap().structure.len(), 5);
        assert_eq!(get("mckenzie").unwrap().structure.len(), 4);
        assert_eq!(get("rcc5").unwrap().representations[0].1.len(), 11);
    }

    #[test]
    fn region_atoms() {
        let s = rcc5();
        let region = |n: &str| RCC5_REGIONS.iter().find(|r| r.0 == n).unwrap().1;
        let name = |x, y| s.name(rcc5_region_atom(&s, region(x), region(y)).unwrap()).to_string();
        assert_eq!(name("E", "A"), "eps");
        assert_eq!(name("G", "H"), "delta");
        assert_eq!(name("A", "A"), "1'");
        assert!(rcc5_region_atom(&s, &[], &[1]).is_err());
    }

    #[test]
    fn syllogisms() {
        let s = rcc5();
        let el = |f| s.set_names(&syllogism_element(&s, f).unwrap());
        assert_eq!(el(Syllogism::A), vec!["1'", "eps"]);
        assert_eq!(el(Syllogism::E), vec!["delta"]);
        let i = syllogism_element(&s, Syllogism::I).unwrap();
        assert_eq!(s.complement_set(&i), syllogism_element(&s, Syllogism::E).unwrap());
    }
}
