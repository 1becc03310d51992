//! End-to-end verification: fiber, torsions, vanishing sum, residue certification,
//! twisted index, and the JSON report.

mod khovanskii;
mod report;
mod selftest;
mod vanishing;

pub use khovanskii::{khovanskii_certify, khovanskii_certify_at, CROSS_TOL, RESIDUE_TOL};
pub use report::{C64, ComponentReport, ContainmentReport, IndexValue, KhovanskiiReport, PointReport, VerificationReport};
pub use selftest::{selftest, SelftestCase};
pub use vanishing::{fiber_systems, fiber_torsions, index_value, twisted_index, verify_vanishing, TorsionPoint, VerifyOptions};
