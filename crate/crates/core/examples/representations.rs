//! Check every built-in representation at each strength, and the star
//! property relating abstract and concrete composition.

use qalg::{catalog, RepKind};

fn main() -> qalg::Result<()> {
    for e in catalog::all() {
        for (claimed, rep) in &e.representations {
            let verdicts: Vec<String> = [RepKind::Feeble, RepKind::Qualitative, RepKind::Strong]
                .into_iter()
                .map(|k| format!("{}={}", k.as_str(), rep.verify(k).ok()))
                .collect();
            let star = match rep.check_star() {
                Ok(None) => "holds".to_string(),
                Ok(Some(w)) => {
                    let s = rep.structure();
                    format!("fails at ({}, {}, {}, {})", s.name(w.a), s.name(w.b), s.name(w.c), s.name(w.d))
                }
                Err(_) => "n/a".to_string(),
            };
            println!(
                "{:<9} {:>2} points, listed as {:<11} {}  star {star}",
                e.key,
                rep.len(),
                claimed.as_str(),
                verdicts.join(" ")
            );
        }
    }

    // A strong failure explained: the first violation of the McKenzie
    // representation.
    let m = catalog::get("mckenzie")?;
    let report = m.representations[0].1.verify_strong();
    if let Some(v) = report.violations.first() {
        println!("\nmckenzie strong check: [{}] {}", v.rule, v.message);
    }
    Ok(())
}
