//! Search for qualitative and feeble representations of the catalog
//! algebras.

use qalg::catalog;
use qalg::solver::{find_feeble_rep, find_qualitative_rep, SearchBudget, SearchOutcome, SearchStatus};

fn show(label: &str, key: &str, out: &SearchOutcome) {
    let s = catalog::get(key).unwrap().structure;
    let verdict = match &out.status {
        SearchStatus::Found(rep) => format!("FOUND on {} points", rep.len()),
        SearchStatus::NoneExhaustive => "NONE_EXHAUSTIVE".into(),
        SearchStatus::NoneWithinBudget if out.stats.exhausted => {
            format!("none on {} points (exhaustive)", out.stats.max_base)
        }
        SearchStatus::NoneWithinBudget => "NONE_WITHIN_BUDGET".into(),
        SearchStatus::Obstructed(t) => format!("OBSTRUCTED({})", s.fmt_triple(*t)),
    };
    println!("{label:<12} {key:<9} {verdict:<24} nodes={}", out.stats.nodes);
}

fn main() {
    for key in catalog::KEYS {
        let s = catalog::get(key).unwrap().structure;
        show("qualitative", key, &find_qualitative_rep(&s, SearchBudget::default()));
        show("feeble", key, &find_feeble_rep(&s, SearchBudget::default()));
    }

    // Below five points McKenzie's algebra has no qualitative
    // representation; the search proves it exhaustively.
    let m = catalog::get("mckenzie").unwrap().structure;
    for k in 3..=5 {
        show(&format!("exactly {k}"), "mckenzie", &find_qualitative_rep(&m, SearchBudget::exact(k)));
    }
}
