//! Exact computational geometry of polyhedral cones and conic set algebra.
//!
//! The library turns a family of convex-analysis constructions into decision
//! procedures over exact rational arithmetic: dual cones and the bipolar
//! identity, primal/dual distance-to-cone formulas, boundedness of a set
//! relative to a cone (including the weaker dual notion certified through
//! inf-support functions), conic cancellation rules, the Rådström space of
//! formal differences of conic sets with its seminorm family, and Pareto
//! minimality with scalarization certificates.
//!
//! All core algorithms are generic over [`Scalar`], an ordered field from
//! num-traits. The intended instantiation is [`Rational`]
//! (arbitrary-precision, every answer exact); `f64` compiles against the same
//! code for rough experiments but carries no guarantees. The only deliberate
//! floating-point component is the second-order cone oracle in
//! [`kernel::soc`].
//!
//! Concurrency: every value is immutable after construction and every
//! operation is a pure function, so types are freely shared across threads.

pub mod cancellation;
pub mod cones;
pub mod error;
pub mod kernel;
mod matrix;
pub mod pareto;
pub mod radstrom;
pub mod sampling;
pub mod scalar;
pub mod sets;
pub mod vector;

pub use error::{Error, Result};
pub use kernel::NormTag;
pub use scalar::Scalar;
pub use vector::RVector;

pub use cones::{cone_distance, DistanceMode, DistanceResult, PolyhedralCone};
pub use sets::{
    barrier_cone_of, classify_boundedness, excess_on_functional, m_value, minkowski_add,
    recession_cone_of, set_includes, BoundednessReport, ConicSet, ExtendedReal, InfValue,
    MValue, SetRep,
};

/// Exact conic set (`cl conv(A + K)` represented through its data).
pub type RationalConicSet = sets::ConicSet<Rational>;

/// Arbitrary-precision rational scalar: the exact instantiation used by the
/// test suites, the sweeps and the CLI.
pub type Rational = num_rational::BigRational;

/// Exact point / functional.
pub type RationalVector = RVector<Rational>;

/// Exact polyhedral cone.
pub type RationalCone = cones::PolyhedralCone<Rational>;
