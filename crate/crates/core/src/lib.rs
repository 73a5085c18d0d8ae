//! Exact-arithmetic sheaf cohomology on del Pezzo surfaces.
//!
//! The crate computes exact (h0, h1, h2) tables for line bundles and
//! constructed rank-2 bundles on the plane, the quadric surface and blow-ups
//! of the plane in up to three points, decides the related intermediate
//! cohomology predicates (l-away, initialized, weakly Ulrich, supernatural),
//! classifies l-away line bundles by exhaustive enumeration, and runs a
//! registry of verifiers that recompute published classification data and
//! report agreements and discrepancies.
//!
//! Everything is integer arithmetic with checked overflow; a result is either
//! an exact number, a certified interval, or an error.

pub mod acm;
pub mod arith;
pub mod bundlecalc;
pub mod error;
pub mod geometry;
pub mod linecoh;
pub mod quiver;
pub mod report;

pub use acm::verify::{verify_all, verify_theorem, VerifyParams, REGISTRY};
pub use acm::{H1Profile, K0Bounds};
pub use bundlecalc::{Assumption, AssumptionSet, BundleExpr, DimValue, Spectrum, Window};
pub use error::{Error, Result};
pub use geometry::{DivisorClass, Surface, SurfaceKind};
pub use linecoh::CohomTriple;
pub use report::{Report, Verdict};
