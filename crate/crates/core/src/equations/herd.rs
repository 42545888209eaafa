//! Herds: converse-closed boolean set algebras of relations containing the
//! identity, with weak composition.
//!
//! Relations on a base of at most eight points are `u64` masks, bit
//! `x * k + y` standing for the pair `(x, y)`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::representation::Representation;

use super::term::Term;

pub const MAX_HERD_BASE: usize = 8;

pub type Relation = u64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Herd {
    base: usize,
    /// Atoms of the boolean algebra, pairwise disjoint and covering `D×D`.
    blocks: Vec<Relation>,
    assignment: BTreeMap<String, Relation>,
}

pub fn full(k: usize) -> Relation {
    if k * k == 64 {
        u64::MAX
    } else {
        (1u64 << (k * k)) - 1
    }
}

pub fn identity(k: usize) -> Relation {
    (0..k).fold(0, |m, x| m | 1 << (x * k + x))
}

pub fn converse(k: usize, r: Relation) -> Relation {
    let mut out = 0;
    for x in 0..k {
        for y in 0..k {
            if r >> (x * k + y) & 1 == 1 {
                out |= 1 << (y * k + x);
            }
        }
    }
    out
}

pub fn compose(k: usize, r: Relation, s: Relation) -> Relation {
    let mut out = 0;
    for x in 0..k {
        for y in 0..k {
            if r >> (x * k + y) & 1 == 0 {
                continue;
            }
            // Row y of s, shifted to row x.
            let row = (s >> (y * k)) & ((1 << k) - 1);
            out |= row << (x * k);
        }
    }
    out
}

pub fn pairs(k: usize, r: Relation) -> Vec<(usize, usize)> {
    (0..k * k)
        .filter(|i| r >> i & 1 == 1)
        .map(|i| (i / k, i % k))
        .collect()
}

impl Herd {
    /// The herd generated by the assigned relations: pairs are grouped by
    /// their membership in every relation, its converse, and the identity.
    pub fn build(k: usize, assignment: BTreeMap<String, Relation>) -> Result<Herd> {
        if k == 0 || k > MAX_HERD_BASE {
            return Err(Error::Format {
                message: format!("herd base must have 1..={MAX_HERD_BASE} points"),
                location: None,
            });
        }
        let mut gens: Vec<Relation> = vec![identity(k)];
        for &r in assignment.values() {
            if r & !full(k) != 0 {
                return Err(Error::Format {
                    message: "relation mentions points outside the base".into(),
                    location: None,
                });
            }
            gens.push(r);
            gens.push(converse(k, r));
        }
        let blocks = partition_by(k, &gens);
        let h = Herd {
            base: k,
            blocks,
            assignment,
        };
        debug_assert!(h.check().is_ok());
        Ok(h)
    }

    /// A herd from an explicit block list; every assigned relation must be a
    /// union of blocks.
    pub fn from_blocks(
        k: usize,
        blocks: Vec<Relation>,
        assignment: BTreeMap<String, Relation>,
    ) -> Result<Herd> {
        let h = Herd {
            base: k,
            blocks,
            assignment,
        };
        h.check().map_err(|m| Error::Format {
            message: m,
            location: None,
        })?;
        Ok(h)
    }

    /// The herd of atom relations of a representation.
    pub fn from_representation(r: &Representation) -> Result<Herd> {
        let k = r.len();
        if k > MAX_HERD_BASE {
            return Err(Error::Format {
                message: format!("herd base must have at most {MAX_HERD_BASE} points"),
                location: None,
            });
        }
        let mut by_atom: BTreeMap<usize, Relation> = BTreeMap::new();
        for x in 0..k {
            for y in 0..k {
                *by_atom.entry(r.atom_at(x, y)).or_default() |= 1 << (x * k + y);
            }
        }
        Herd::from_blocks(k, by_atom.into_values().collect(), BTreeMap::new())
    }

    /// Checks that blocks partition `D×D`, the identity is a union of
    /// blocks, converse permutes blocks, and assignments are block unions.
    pub fn check(&self) -> std::result::Result<(), String> {
        let k = self.base;
        let mut seen = 0;
        for &b in &self.blocks {
            if b == 0 {
                return Err("empty block".into());
            }
            if seen & b != 0 {
                return Err("blocks overlap".into());
            }
            seen |= b;
        }
        if seen != full(k) {
            return Err("blocks do not cover every pair".into());
        }
        if !self.is_union_of_blocks(identity(k)) {
            return Err("identity is not a union of blocks".into());
        }
        for &b in &self.blocks {
            if !self.blocks.contains(&converse(k, b)) {
                return Err("converse of a block is not a block".into());
            }
        }
        for (v, &r) in &self.assignment {
            if !self.is_union_of_blocks(r) {
                return Err(format!("`{v}` is not a union of blocks"));
            }
        }
        Ok(())
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn blocks(&self) -> &[Relation] {
        &self.blocks
    }

    pub fn assignment(&self) -> &BTreeMap<String, Relation> {
        &self.assignment
    }

    pub fn with_assignment(&self, assignment: BTreeMap<String, Relation>) -> Herd {
        Herd {
            base: self.base,
            blocks: self.blocks.clone(),
            assignment,
        }
    }

    pub fn is_union_of_blocks(&self, r: Relation) -> bool {
        self.closure(r) == r
    }

    /// Least union of blocks containing `r`.
    pub fn closure(&self, r: Relation) -> Relation {
        self.blocks
            .iter()
            .filter(|&&b| b & r != 0)
            .fold(0, |m, &b| m | b)
    }

    /// Smallest herd element containing the relational composition.
    pub fn weak_compose(&self, r: Relation, s: Relation) -> Relation {
        self.closure(compose(self.base, r, s))
    }

    pub fn eval(&self, t: &Term) -> Result<Relation> {
        let k = self.base;
        Ok(match t {
            Term::Zero => 0,
            Term::One => full(k),
            Term::Identity => identity(k),
            Term::Var(v) => *self
                .assignment
                .get(v)
                .ok_or_else(|| Error::UnassignedVariable(v.clone()))?,
            Term::Complement(a) => full(k) & !self.eval(a)?,
            Term::Converse(a) => converse(k, self.eval(a)?),
            Term::Join(a, b) => self.eval(a)? | self.eval(b)?,
            Term::Meet(a, b) => self.eval(a)? & self.eval(b)?,
            Term::Compose(a, b) => self.weak_compose(self.eval(a)?, self.eval(b)?),
        })
    }
}

/// Classes of pairs with the same membership profile across `gens`.
fn partition_by(k: usize, gens: &[Relation]) -> Vec<Relation> {
    let mut classes: HashMap<Vec<bool>, Relation> = HashMap::new();
    let mut order = Vec::new();
    for i in 0..k * k {
        let profile: Vec<bool> = gens.iter().map(|g| g >> i & 1 == 1).collect();
        let e = classes.entry(profile.clone()).or_insert_with(|| {
            order.push(profile);
            0
        });
        *e |= 1 << i;
    }
    order.into_iter().map(|p| classes[&p]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::equations::term::parse_term;

    fn rel(k: usize, ps: &[(usize, usize)]) -> Relation {
        ps.iter().fold(0, |m, &(x, y)| m | 1 << (x * k + y))
    }

    #[test]
    fn single_pair_gives_three_blocks() {
        // Both loops have the same profile, so the diagonal stays whole.
        let h = Herd::build(2, BTreeMap::from([("x".into(), rel(2, &[(0, 1)]))])).unwrap();
        assert_eq!(h.blocks(), &[identity(2), rel(2, &[(0, 1)]), rel(2, &[(1, 0)])]);
        h.check().unwrap();
    }

    #[test]
    fn empty_assignment_has_two_blocks() {
        let h = Herd::build(2, BTreeMap::new()).unwrap();
        assert_eq!(h.blocks().len(), 2);
        let h1 = Herd::build(1, BTreeMap::from([("x".into(), 1)])).unwrap();
        assert_eq!(h1.blocks(), &[1]);
    }

    #[test]
    fn chain_composition() {
        let s = std::sync::Arc::new(catalog::point_algebra());
        let lt = s.atom("<").unwrap();
        let chain = Representation::from_fn(s.clone(), (0..4).map(|i| i.to_string()).collect(), |x, y| {
            match x.cmp(&y) {
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Less => lt,
                std::cmp::Ordering::Greater => s.converse_atom(lt),
            }
        })
        .unwrap();
        let h = Herd::from_representation(&chain).unwrap();
        let less: Relation = rel(4, &chain.pairs_of(&s.set_named(&["<"]).unwrap()));
        let h = h.with_assignment(BTreeMap::from([("x".into(), less)]));
        let r = h.eval(&parse_term("x;x").unwrap()).unwrap();
        assert_eq!(r, less);
        // The true composition only reaches pairs two apart.
        assert_ne!(compose(4, less, less), less);
        assert_eq!(h.eval(&parse_term("x;0").unwrap()).unwrap(), 0);
    }

    #[test]
    fn theta_composition_is_identity_part() {
        let e = catalog::get("ex1").unwrap();
        let theta = &e.representations[1].1;
        let h = Herd::from_representation(theta).unwrap();
        let a = rel(2, &[(0, 1), (1, 0)]);
        let h = h.with_assignment(BTreeMap::from([("a".into(), a)]));
        assert_eq!(h.eval(&parse_term("a;a").unwrap()).unwrap(), identity(2));
    }

    #[test]
    fn weak_composition_is_least_cover() {
        let h = Herd::build(3, BTreeMap::from([("x".into(), rel(3, &[(0, 1), (1, 2)]))])).unwrap();
        let x = h.assignment()["x"];
        let w = h.weak_compose(x, x);
        let c = compose(3, x, x);
        assert_eq!(w & c, c);
        for &b in h.blocks() {
            if w & b != 0 {
                assert!(b & c != 0);
            }
        }
    }
}
