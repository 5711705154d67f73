//! Simulation and verification of production-angle-controlled path-entangled
//! ("pathangled") two-quanton states in single and double beam-splitter
//! Mach–Zehnder interferometers, with a Berry phase acquired on the left arm.
//!
//! Joint-detection statistics and CHSH correlations are computed two ways:
//! from first principles (unitary pipeline acting on the two-qubit state) and
//! from closed-form expressions. The [`analysis`] module cross-checks the two,
//! finds the critical production angle, and maps the region where local
//! hidden-variable models are violated.
//!
//! Conventions used throughout the crate:
//!
//! * angles are radians;
//! * two-qubit amplitudes are ordered `|00⟩, |01⟩, |10⟩, |11⟩` with the
//!   right-going particle as the first tensor factor and the left-going
//!   particle as the second;
//! * the joint detection index `(i, j)` pairs the right-arm detector `D_i`
//!   with the left-arm detector `D'_j`.

pub mod analysis;
pub mod correlations;
mod error;
pub mod linalg;
pub mod optics;
pub mod states;

pub use error::{Error, Result};

pub use analysis::{BellReport, Method, Region};
pub use correlations::{JointDistribution, KappaPair, SettingsQuad};
pub use linalg::{Mat2, Mat4, StateVec2, StateVec4};
pub use optics::{BerryPhase, BerryPlacement, InterferometerConfig, Scenario};
pub use states::{Concurrence, ProductionAngle};
