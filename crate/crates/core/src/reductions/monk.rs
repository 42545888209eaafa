//! Monk algebras built from Ramsey numbers, with a combinatorial
//! certificate that small members have no feeble representation.

use serde::Serialize;

use crate::algebra::AtomStructure;
use crate::error::{Error, Result};

use super::structure_from_forbidden;

/// The least number of points that cannot be edge-coloured with `n`
/// colours avoiding monochromatic triangles, for the cases used here.
pub fn ramsey_k(n: usize) -> Option<usize> {
    match n {
        2 => Some(6),
        3 => Some(17),
        _ => None,
    }
}

/// Atoms: `1'`, `a0.k` for `k < K(K-1)/2` and `a{i}` for `0 < i < n`, all
/// self-converse. Every triple whose three atoms share a subscript is
/// forbidden, as are identity-law violations.
pub fn monk_algebra(n: usize, k: Option<usize>) -> Result<AtomStructure> {
    let k = match k.or_else(|| ramsey_k(n)) {
        Some(k) if n >= 1 => k,
        _ => return Err(Error::UnsupportedMonk(n)),
    };
    let zeros = k * k.saturating_sub(1) / 2;
    let mut names = vec!["1'".to_string()];
    // Subscript of every atom; the identity has none.
    let mut sub = vec![None];
    for j in 0..zeros {
        names.push(format!("a0.{j}"));
        sub.push(Some(0));
    }
    for i in 1..n {
        names.push(format!("a{i}"));
        sub.push(Some(i));
    }
    let conv = (0..names.len()).collect();
    Ok(structure_from_forbidden(names, conv, 0, |(a, b, c)| {
        (a == 0 && b != c) || (sub[a].is_some() && sub[a] == sub[b] && sub[b] == sub[c])
    }))
}

/// Least number of points whose undirected edges number at least `e`.
pub fn edges_needed(e: usize) -> usize {
    (0usize..).find(|&m| m * (m.saturating_sub(1)) / 2 >= e).expect("unbounded")
}

/// Checks every assignment of `colours` labels to the edges of `K_points`
/// and reports whether each one has a monochromatic triangle.
pub fn every_labelling_has_forbidden_triangle(points: usize, colours: usize) -> bool {
    let edges: Vec<(usize, usize)> = (0..points)
        .flat_map(|u| (u + 1..points).map(move |v| (u, v)))
        .collect();
    let idx = |u: usize, v: usize| edges.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let tris: Vec<[usize; 3]> = (0..points)
        .flat_map(|u| (u + 1..points).flat_map(move |v| (v + 1..points).map(move |w| (u, v, w))))
        .map(|(u, v, w)| [idx(u, v), idx(v, w), idx(u, w)])
        .collect();
    let total = (colours as u64).checked_pow(edges.len() as u32).expect("too many labellings");
    let mut lab = vec![0usize; edges.len()];
    (0..total).all(|mut code| {
        for l in lab.iter_mut() {
            *l = (code % colours as u64) as usize;
            code /= colours as u64;
        }
        tris.iter().any(|t| lab[t[0]] == lab[t[1]] && lab[t[1]] == lab[t[2]])
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonkCertificate {
    pub colours: usize,
    pub k: usize,
    /// Points needed to give each subscript-0 atom its own edge.
    pub points_needed: usize,
    pub labellings_checked: u64,
    pub all_have_forbidden_triangle: bool,
}

impl MonkCertificate {
    /// No feeble representation exists: witnessing every atom needs at
    /// least `k` points, and any `k` of them span a forbidden triangle.
    pub fn holds(&self) -> bool {
        self.points_needed >= self.k && self.all_have_forbidden_triangle
    }
}

/// Exhaustive certificate for `monk_algebra(n, k)`; feasible for `n = 2`.
pub fn monk_no_feeble_certificate(n: usize, k: Option<usize>) -> Result<MonkCertificate> {
    let k = k.or_else(|| ramsey_k(n)).ok_or(Error::UnsupportedMonk(n))?;
    let zeros = k * k.saturating_sub(1) / 2;
    Ok(MonkCertificate {
        colours: n,
        k,
        points_needed: edges_needed(zeros),
        labellings_checked: (n as u64).pow(zeros as u32),
        all_have_forbidden_triangle: every_labelling_has_forbidden_triangle(k, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{find_feeble_rep, SearchBudget, SearchStatus};
    use std::sync::Arc;

    #[test]
    fn atom_counts() {
        assert_eq!(monk_algebra(2, None).unwrap().len(), 17);
        assert_eq!(monk_algebra(3, None).unwrap().len(), 139);
        assert_eq!(monk_algebra(2, Some(3)).unwrap().len(), 5);
        assert!(matches!(monk_algebra(4, None), Err(Error::UnsupportedMonk(4))));
    }

    #[test]
    fn structures_validate() {
        assert!(monk_algebra(2, None).unwrap().validate().ok());
        assert!(monk_algebra(2, Some(3)).unwrap().validate().ok());
    }

    #[test]
    fn k6_certificate() {
        let c = monk_no_feeble_certificate(2, None).unwrap();
        assert_eq!(c.labellings_checked, 1 << 15);
        assert_eq!(c.points_needed, 6);
        assert!(c.holds());
        assert!(!every_labelling_has_forbidden_triangle(5, 2));
    }

    #[test]
    fn toy_variant_is_feebly_representable() {
        let s = Arc::new(monk_algebra(2, Some(3)).unwrap());
        let out = find_feeble_rep(&s, SearchBudget::max_base(10));
        let SearchStatus::Found(rep) = out.status else {
            panic!("{:?}", out.status)
        };
        assert!(rep.verify_feeble().ok());
    }
}
