//! Minimal multiplication structures on the homology of the two algebra
//! families, their one-parameter families of modules, and the transfer
//! that produces the higher operations from a deformation retraction.

pub mod algebra;
pub mod module;
pub mod stasheff;
pub mod transfer;

pub use algebra::{algebra_a, algebra_b, AElem, AGen, MinimalAlgebra};
pub use module::{module_stasheff_defect, module_w, module_y, MGen, MElem, MinimalModule};
pub use stasheff::{stasheff_defect, AInfOps, StasheffViolation};
pub use transfer::{transfer, TransferComparison, TransferResult};
