//! Reduce red/blue edge colouring without monochromatic triangles to
//! feeble representability.

use std::sync::Arc;

use qalg::reductions::{reduce_monochromatic_triangle, SimpleGraph, TriangleReduction};
use qalg::solver::{find_feeble_rep, SearchBudget, SearchStatus};
use qalg::Representation;

fn k5_minus_edge() -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..5)
        .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
        .filter(|&e| e != (0, 1))
        .collect();
    SimpleGraph::from_edges(5, &edges).expect("valid edges")
}

fn main() -> qalg::Result<()> {
    for (name, g) in [
        ("path", SimpleGraph::path(4)),
        ("5-cycle", SimpleGraph::cycle(5)),
        ("K5 minus an edge", k5_minus_edge()),
        ("K5", SimpleGraph::complete(5)),
        ("K6", SimpleGraph::complete(6)),
    ] {
        let inst = match reduce_monochromatic_triangle(&g)? {
            TriangleReduction::KnownNo => {
                println!("{name}: complete on six or more vertices, no colouring exists");
                continue;
            }
            TriangleReduction::Instance(i) => i,
        };
        let col = g.triangle_free_colouring().expect("colourable");
        let witness = inst.colouring_to_witness(&col)?;
        let (rep, _) = Representation::quotient(&witness)?;
        println!(
            "{name}: {} atoms, {} padding; colouring gives {} points, feeble={}",
            inst.structure().len(),
            inst.padding(),
            rep.len(),
            rep.verify_feeble().ok()
        );
        let back = inst.extract_colouring(&rep)?;
        println!("  round trip preserves the colouring: {}", back == col);
        if g.len() <= 4 {
            let s = Arc::new(inst.structure().clone());
            if let SearchStatus::Found(r) = find_feeble_rep(&s, SearchBudget::max_base(16)).status {
                println!("  solver: {} points", r.len());
            }
        }
    }
    Ok(())
}
