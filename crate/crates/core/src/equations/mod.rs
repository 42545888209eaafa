//! Terms and equations in the relation-algebra signature, their evaluation
//! in complex algebras and in finite herds, and a bounded validity check.

pub mod herd;
pub mod term;
pub mod validity;

pub use herd::{Herd, Relation};
pub use term::{parse_equation, parse_term, Equation, Term};
pub use validity::{check_validity, Counterexample, Validity, ValidityOptions};
