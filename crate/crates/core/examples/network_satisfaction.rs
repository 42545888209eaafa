//! Decide qualitative satisfiability of networks: path consistency is a
//! necessary test, the solver gives the exact answer with a certificate.

use std::sync::Arc;

use qalg::solver::{decide_qual_sat, NetVerdict, SearchBudget};
use qalg::{catalog, Network};

fn main() -> qalg::Result<()> {
    let s = catalog::get("rcc5")?.structure;
    let mut net = Network::new(Arc::clone(&s), &["house", "garden", "shed", "pond"])?;
    net.constrain("house", "garden", &["eps"])?;
    net.constrain("shed", "garden", &["eps"])?;
    net.constrain("house", "shed", &["delta"])?;
    net.constrain("pond", "garden", &["pi", "eps"])?;
    net.constrain("pond", "house", &["delta"])?;
    println!("path consistent: {}", net.is_path_consistent());

    let out = decide_qual_sat(&s, &net, SearchBudget::default());
    match out.verdict {
        NetVerdict::Sat { representation, embedding } => {
            println!("SAT on a {}-point representation", representation.len());
            for (i, &p) in embedding.iter().enumerate() {
                println!("  {} -> {}", net.nodes()[i], representation.base()[p]);
            }
            println!("certificate verifies: {}", representation.verify_qualitative().ok());
        }
        NetVerdict::Unsat => println!("UNSAT"),
        NetVerdict::Unknown => println!("UNKNOWN within budget"),
    }

    // Every atomic refinement of a small network, with its consistency.
    let mut small = Network::new(Arc::clone(&s), &["a", "b", "c"])?;
    small.constrain("a", "b", &["eps", "pi"])?;
    small.constrain("b", "c", &["eps"])?;
    for atomic in small.atomic_refinements().take(8) {
        let labels: Vec<String> = [(0, 1), (1, 2), (0, 2)]
            .iter()
            .map(|&(x, y)| s.fmt_set(atomic.label(x, y)))
            .collect();
        println!("  {} consistent={}", labels.join(" "), atomic.check_consistent().ok());
    }
    Ok(())
}
