//! Test equations of relation algebra against finite herds, where
//! composition is closed under the herd's blocks.

use qalg::equations::{check_validity, parse_equation, Validity, ValidityOptions};

fn main() -> qalg::Result<()> {
    let laws = [
        "1' ; x = x",
        "x^^ = x",
        "(x + y) ; z = x ; z + y ; z",
        "(x ; y)^ = y^ ; x^",
        "x ; (1 ; 1) = (x ; 1) ; 1",
        "x ; (y ; z) = (x ; y) ; z",
        "(x . 1') ; (y ; z) = ((x . 1') ; y) ; z",
    ];
    let opts = ValidityOptions { max_base: 3, ..Default::default() };
    for law in laws {
        let eq = parse_equation(law)?;
        match check_validity(&eq, opts) {
            Validity::ValidUpTo { exhaustive, .. } => {
                println!("{eq:<45} valid on every herd up to {exhaustive} points")
            }
            Validity::Counterexample(c) => {
                println!("{eq:<45} fails on a {}-point herd", c.herd.base())
            }
        }
    }
    Ok(())
}
