//! Instance generators for the hardness reductions and the Monk family.
//!
//! Each reduction builds an atom structure from a graph, maps a colouring
//! of the graph to a consistent atomic network witnessing the structure,
//! and recovers a colouring from any verified representation.

mod graph;
mod monk;
mod three_colouring;
mod triangle;

pub use graph::{canonical_mask, graphs_up_to_isomorphism, EdgeColour, EdgeColouring, SimpleGraph};
pub use monk::{
    edges_needed, every_labelling_has_forbidden_triangle, monk_algebra, monk_no_feeble_certificate,
    ramsey_k, MonkCertificate,
};
pub use three_colouring::{reduce_three_colouring, ThreeColouringInstance, ThreeColouringReduction};
pub use triangle::{reduce_monochromatic_triangle, TriangleInstance, TriangleReduction};

use crate::algebra::{Atom, AtomStructure, Triple};

/// The six Peircean transforms of `(a, b, c)`.
fn orbit(conv: &[Atom], (a, b, c): Triple) -> [Triple; 6] {
    let v = |x: Atom| conv[x];
    [
        (a, b, c),
        (b, v(c), v(a)),
        (c, v(b), a),
        (v(a), c, b),
        (v(b), v(a), v(c)),
        (v(c), a, v(b)),
    ]
}

/// A structure whose consistent triples are those with no Peircean
/// transform matched by `forbidden`.
fn structure_from_forbidden(
    names: Vec<String>,
    converse: Vec<Atom>,
    identity: Atom,
    forbidden: impl Fn(Triple) -> bool,
) -> AtomStructure {
    let n = names.len();
    let mut seen = vec![false; n * n * n];
    let mut triples = Vec::new();
    let idx = |(a, b, c): Triple| (a * n + b) * n + c;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if seen[idx((a, b, c))] {
                    continue;
                }
                let orb = orbit(&converse, (a, b, c));
                let ok = !orb.iter().any(|&t| forbidden(t));
                for t in orb {
                    if !seen[idx(t)] {
                        seen[idx(t)] = true;
                        if ok {
                            triples.push(t);
                        }
                    }
                }
            }
        }
    }
    AtomStructure::new(names, [identity], converse, triples).expect("generated structure is well formed")
}

/// The first family tag matched by some transform of `t`.
fn family_of(conv: &[Atom], t: Triple, literal: impl Fn(Triple) -> Option<&'static str>) -> Option<&'static str> {
    orbit(conv, t).into_iter().find_map(literal)
}

/// `base` or `base` with a numeric suffix, avoiding `taken`.
fn fresh_name(taken: &[String], base: &str) -> String {
    if !taken.iter().any(|t| t == base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|c| !taken.iter().any(|t| t == c))
        .expect("unbounded")
}
