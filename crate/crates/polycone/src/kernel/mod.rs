//! The exact computational engine: rational linear programming, double
//! description between cone representations, and the one floating-point
//! oracle (second-order cone projection).

pub mod dd;
pub mod lp;
pub mod soc;

pub use dd::{convert_representation, dual_description, ConeRep};
pub use lp::{lp_solve, LinearConstraint, LinearProgram, LpOutcome, Sense, VarBound};
pub use soc::{soc_project, SocProjection, SOC_RELATIVE_ERROR_BOUND};

/// Which norm a distance computation uses.
///
/// `Linf` and `L1` are polyhedral: distances under them are exact rational
/// linear programs. `L2Approx` is served only by the analytic second-order
/// cone oracle ([`soc_project`]) and carries its documented error bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormTag {
    Linf,
    L1,
    L2Approx,
}

impl NormTag {
    /// Whether values computed under this norm are exact rationals.
    pub fn is_exact(self) -> bool {
        !matches!(self, NormTag::L2Approx)
    }
}
