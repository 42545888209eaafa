//! Monk algebras: atoms indexed by colours, every monochromatic triangle
//! forbidden. Too few points force a monochromatic triangle by Ramsey's
//! theorem, so no feeble representation exists.

use std::sync::Arc;

use qalg::reductions::{monk_algebra, monk_no_feeble_certificate};
use qalg::solver::{find_feeble_rep, SearchBudget, SearchStatus};

fn main() -> qalg::Result<()> {
    let m2 = monk_algebra(2, None)?;
    println!("two colours: {} atoms, valid={}", m2.len(), m2.validate().ok());
    let cert = monk_no_feeble_certificate(2, None)?;
    println!(
        "checked {} labellings of K{}: every one has a forbidden triangle={}, needs {} points; no feeble representation: {}",
        cert.labellings_checked, cert.k, cert.all_have_forbidden_triangle, cert.points_needed, cert.holds()
    );
    println!("three colours: {} atoms", monk_algebra(3, None)?.len());

    // With K = 3 the obstruction disappears and the solver finds one.
    let toy = Arc::new(monk_algebra(2, Some(3))?);
    match find_feeble_rep(&toy, SearchBudget::max_base(10)).status {
        SearchStatus::Found(r) => println!("K = 3 variant: feeble representation on {} points", r.len()),
        other => println!("K = 3 variant: {other:?}"),
    }
    Ok(())
}
