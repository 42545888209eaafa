//! Reduce graph 3-colouring to qualitative representability and go both
//! ways: colourings give representations, representations give colourings.

use std::sync::Arc;

use qalg::reductions::{reduce_three_colouring, SimpleGraph, ThreeColouringReduction};
use qalg::solver::{find_qualitative_rep, SearchBudget, SearchStatus};
use qalg::Representation;

fn main() -> qalg::Result<()> {
    let graphs = [
        ("triangle", SimpleGraph::complete(3)),
        ("5-cycle", SimpleGraph::cycle(5)),
        ("K4", SimpleGraph::complete(4)),
    ];
    for (name, g) in graphs {
        let inst = match reduce_three_colouring(&g) {
            ThreeColouringReduction::TriviallyColourable => {
                println!("{name}: trivially colourable");
                continue;
            }
            ThreeColouringReduction::Instance(i) => i,
        };
        println!(
            "{name}: {} atoms, {} padding vertices",
            inst.structure().len(),
            inst.padding()
        );
        match g.colouring(3) {
            Some(col) => {
                let witness = inst.colouring_to_witness(&col)?;
                let (rep, _) = Representation::quotient(&witness)?;
                println!("  colouring {col:?} gives a {}-point representation, qualitative={}", rep.len(), rep.verify_qualitative().ok());
                let s = Arc::new(inst.structure().clone());
                if let SearchStatus::Found(found) = find_qualitative_rep(&s, SearchBudget::max_base(16)).status {
                    println!("  solver found {} points; read back colouring {:?}", found.len(), inst.extract_colouring(&found)?);
                }
            }
            None => {
                let s = Arc::new(inst.structure().clone());
                let mut budget = SearchBudget::max_base(16);
                budget.node_limit = Some(2_000);
                let out = find_qualitative_rep(&s, budget);
                println!("  not 3-colourable; solver after {} nodes: {:?}", out.stats.nodes, matches!(out.status, SearchStatus::Found(_)));
            }
        }
    }
    Ok(())
}
