//! Algorithms for group actions on curves and the intersection theory of
//! orbit divisors on quotient surfaces of product type.
//!
//! The pipeline starts from a finite group with a distinguished index-2
//! subgroup acting on a curve through a generating vector, checks that the
//! induced action on the product of the curve with itself is free, and then
//! computes numerical invariants, decomposes graph divisors into orbit
//! divisors with exact intersection numbers, detects exceptional curves, and
//! reports what is known about the minimal model.

pub mod cover;
pub mod divisors;
pub mod error;
pub mod group;
pub mod lifting;
pub mod mixed;
#[doc(hidden)]
pub mod oracle;
pub mod perm;
pub mod pipeline;
pub mod report;
pub mod scenario;
pub mod word;

pub use cover::{CoverData, GeneratingVector, SignatureType};
pub use divisors::{K2Verdict, MinimalModelReport, OrbitDivisor};
pub use error::{CoverError, DivisorError, GroupError, LiftError, MixedError, ScenarioError};
pub use lifting::LiftCandidate;
pub use group::{El, FiniteGroup, GroupMap, DEFAULT_GROUP_CAP};
pub use mixed::{BranchComponent, MixedDatum, SurfaceInvariants};
pub use perm::Perm;
pub use pipeline::{run_scenario, RunOptions};
pub use report::{branch_shorthand, Report, REPORT_SCHEMA_VERSION};
pub use scenario::{Expected, LiftDirective, Mode, Scenario};
pub use word::Word;
