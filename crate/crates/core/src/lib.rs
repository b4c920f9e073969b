pub mod chars;
pub mod construct;
pub mod diagram;
pub mod dot;
pub mod error;
pub mod group;
pub mod inductor;
pub mod oracle;
pub mod tight;
pub mod transfer;

pub use chars::{CharLattice, CharRef, CharSet, CharSetJson};
pub use diagram::{tr_of_diagram, tr_of_universe, Diagram, DiagramJson};
pub use dot::export_dot;
pub use error::{Error, Result};
pub use group::{GroupSpec, SubgroupId, SubgroupLattice};
pub use inductor::{check_subinductor_axioms, AxiomCheck, AxiomReport, Inductor, InductorJson};
pub use tight::{localize_tight_pairs, realize, verify_tight_pair, Certificate, Realization, TightPair, TightPairJson};
pub use transfer::{InteriorOperator, TransferSystem, TransferSystemJson, Violation};
