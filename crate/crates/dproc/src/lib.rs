//! Analysis of declarative processes: unique-trace enumeration, stakeholder
//! utility vectors and ℓ2-based process comparison.
//!
//! A declarative process is an alphabet of activities plus a set of Declare
//! constraints; any activity sequence is a trace of the process unless a
//! constraint forbids it. This crate enumerates the duplicate-free traces of
//! such a process, scores them against stakeholder preference formulas and
//! compares several candidate processes by distance to the all-ones utility
//! ideal.

pub mod compare;
pub mod enumerate;
pub mod logic;
pub mod model;
pub mod report;
pub mod utility;

pub use compare::{compare, h_distance, ComparisonReport};
pub use enumerate::{enumeration_workload, unique_traces, EnumerationConfig, Strategy};
pub use logic::{parse_spec, ConstraintTemplate, Formula, Preference};
pub use model::{Activity, DeclarativeProcess, StakeholderSystem, Trace, TraceSet};
pub use utility::{good_traces, utility, utility_vector, UtilityVector};
