//! Tabulate the associativity-type properties of every catalog algebra,
//! with the least witness of each failure.

use qalg::catalog;

fn main() -> qalg::Result<()> {
    println!("{:<9} {:>5} {:>6} {:>6} {:>6} {:>8}", "algebra", "assoc", "semi", "weak", "integ", "1' atom");
    for e in catalog::all() {
        let s = &e.structure;
        let yn = |b: bool| if b { "yes" } else { "no" };
        println!(
            "{:<9} {:>5} {:>6} {:>6} {:>6} {:>8}",
            e.key,
            yn(s.is_associative()),
            yn(s.is_semi_associative()),
            yn(s.is_weakly_associative()),
            yn(s.is_integral()),
            yn(s.identity_is_atom()),
        );
    }
    println!();
    for e in catalog::all() {
        let s = &e.structure;
        if let Some(w) = s.non_associative_witness() {
            let side = if w.d_in_left { "(a;b);c" } else { "a;(b;c)" };
            println!(
                "{}: a={} b={} c={}, {} is only below {side}",
                e.key,
                s.name(w.a),
                s.name(w.b),
                s.name(w.c),
                s.name(w.d)
            );
        }
        if let Some(x) = s.semi_associativity_witness() {
            println!("{}: x;(1;1) != (x;1);1 at x={}", e.key, s.name(x));
        }
    }
    Ok(())
}
