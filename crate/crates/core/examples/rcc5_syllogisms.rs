//! Classical syllogisms read as RCC5 networks: part-of is `eps`, its
//! converse `eps^`, partial overlap `pi`, disjointness `delta`.

use qalg::network::Refinement;
use qalg::{catalog, Network};

fn conclude(premises: &[(&str, &str, &[&str])]) -> qalg::Result<()> {
    let s = catalog::get("rcc5")?.structure;
    let mut net = Network::new(s.clone(), &["S", "M", "P"])?;
    for (x, y, atoms) in premises {
        net.constrain(x, y, atoms)?;
    }
    let premises: Vec<String> = premises
        .iter()
        .map(|(x, y, a)| format!("{x} {{{}}} {y}", a.join(",")))
        .collect();
    match net.refine_path_consistent() {
        Refinement::Refined(r) => println!("{}  =>  S {} P", premises.join(", "), s.fmt_set(r.label(0, 2))),
        Refinement::Inconsistent(_) => println!("{}  =>  contradiction", premises.join(", ")),
    }
    Ok(())
}

fn main() -> qalg::Result<()> {
    // Barbara: all S are M, all M are P.
    conclude(&[("S", "M", &["eps", "1'"]), ("M", "P", &["eps", "1'"])])?;
    // Celarent: all S are M, no M is P.
    conclude(&[("S", "M", &["eps", "1'"]), ("M", "P", &["delta"])])?;
    // Darii: some S is M (overlap or containment either way), all M are P.
    conclude(&[("S", "M", &["1'", "eps", "eps^", "pi"]), ("M", "P", &["eps", "1'"])])?;
    // Undistributed middle: all S are M, all P are M; nothing follows.
    conclude(&[("S", "M", &["eps", "1'"]), ("P", "M", &["eps", "1'"])])?;
    // Contradiction: S inside M, M disjoint from P, P inside S.
    conclude(&[("S", "M", &["eps"]), ("M", "P", &["delta"]), ("P", "S", &["eps"])])?;
    Ok(())
}
