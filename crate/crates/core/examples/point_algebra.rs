//! Build the point algebra of a linear order by hand, validate it and
//! reason about a small timeline with path consistency.

use std::sync::Arc;

use qalg::network::Refinement;
use qalg::{Network, Representation, StructureBuilder};

fn main() -> qalg::Result<()> {
    let s = StructureBuilder::new(&["=", "<", ">"])
        .identity(&["="])
        .converse("<", ">")
        .table("<", "<", &["<"])
        .table(">", ">", &[">"])
        .table("<", ">", &["=", "<", ">"])
        .table(">", "<", &["=", "<", ">"])
        .table("=", "<", &["<"])
        .table("=", ">", &[">"])
        .table("=", "=", &["="])
        .table("<", "=", &["<"])
        .table(">", "=", &[">"])
        .build()?;
    let report = s.validate();
    println!("point algebra valid: {}", report.ok());
    println!("associative: {}, integral: {}", s.is_associative(), s.is_integral());
    let s = Arc::new(s);

    let lt = s.element_named(&["<"])?;
    let gt = s.element_named(&[">"])?;
    println!("< ; > = {}", lt.compose(&gt)?);
    println!("< ; < = {}", lt.compose(&lt)?);

    let mut net = Network::new(s.clone(), &["wake", "coffee", "work", "lunch"])?;
    net.constrain("wake", "coffee", &["<"])?;
    net.constrain("coffee", "work", &["<", "="])?;
    net.constrain("work", "lunch", &["<"])?;
    match net.refine_path_consistent() {
        Refinement::Refined(r) => {
            for x in 0..r.len() {
                for y in x + 1..r.len() {
                    println!("  {} {} {}", r.nodes()[x], s.fmt_set(r.label(x, y)), r.nodes()[y]);
                }
            }
        }
        Refinement::Inconsistent(w) => println!("inconsistent at {:?}", (w.x, w.y, w.z)),
    }

    // The integers 0..5 with their natural order represent it
    // qualitatively. It is not strong: nothing lies between neighbours.
    let base: Vec<String> = (0..5).map(|i| i.to_string()).collect();
    let rep = Representation::from_fn(s.clone(), base, |x, y| match x.cmp(&y) {
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Greater => 2,
    })?;
    println!(
        "five points: qualitative={}, strong={}",
        rep.verify_qualitative().ok(),
        rep.verify_strong().ok()
    );
    Ok(())
}
