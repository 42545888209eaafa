//! Finite non-associative relation algebras given by atom structures.
//!
//! The crate validates atom structures, reasons about constraint networks
//! over their complex algebras, searches for qualitative and feeble
//! representations, checks equations over finite herds of relations and
//! generates the hardness-reduction instances for representability.

pub mod algebra;
pub mod atomset;
pub mod catalog;
pub mod cli;
pub mod equations;
pub mod error;
pub mod format;
pub mod network;
pub mod reductions;
pub mod report;
pub mod representation;
pub mod solver;

pub use algebra::{Atom, AtomStructure, Element, StructureBuilder, Triple};
pub use atomset::AtomSet;
pub use error::{Error, Result};
pub use network::Network;
pub use report::ValidationReport;
pub use representation::{RepKind, Representation};
