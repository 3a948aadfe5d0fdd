//! The combinatorial pipeline: truncated nerve of the wS. construction, the
//! total crossed complex presentation, the reflections onto stable quadratic
//! modules, and the mechanical identification with the category presentation.

mod identify;
mod nerve;
mod presentation;

pub use identify::{identify, identify_against, IdentifyError, IdentifyReport, RelationTrace};
pub use nerve::{nerve_ws, Cell, Flag, NerveError, TruncatedBisimplicialSet};
pub use presentation::{
    phi_reflect, CrossedModulePresentation, PresenRow, TotalCxError, TotalPresentation,
};
