//! Critical angle, region classification, local-strategy bounds, settings
//! search, closed-form audits and parameter scans.

mod audit;
mod critical;
mod lhv;
mod optimize;
mod scan;

use std::fmt;

use crate::correlations::SettingsQuad;
use crate::optics::{BerryPhase, Scenario};
use crate::states::ProductionAngle;

pub use audit::{
    audit_closed_vs_sim, AnglePoint, AuditReport, Deviation, GridPoint, GridSpec, Landmark,
    AUDIT_TOL,
};
pub use critical::{classify_region, critical_angle, critical_angle_closed_form};
pub use lhv::{
    deterministic_strategies, lhv_deterministic_max, mixed_strategy_s, DeterministicStrategy,
};
pub use optimize::{golden_section_max, optimize_settings};
pub use scan::{scan, ScanRow};

/// Local hidden-variable bound on the CHSH value.
pub const LHV_BOUND: f64 = 2.0;
/// Half-width of the band around S = 2 classified as [`Region::Boundary`].
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Simulated,
    PaperClosedForm,
    Optimized,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Simulated => "simulated",
            Method::PaperClosedForm => "paper_closed_form",
            Method::Optimized => "optimized",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    LhvmCompatible,
    QuantumViolation,
    Boundary,
}

impl Region {
    pub fn classify(s: f64) -> Region {
        if (s - LHV_BOUND).abs() <= BOUNDARY_TOL {
            Region::Boundary
        } else if s > LHV_BOUND {
            Region::QuantumViolation
        } else {
            Region::LhvmCompatible
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Region::LhvmCompatible => "lhvm_compatible",
            Region::QuantumViolation => "quantum_violation",
            Region::Boundary => "boundary",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A CHSH value together with how and where it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellReport {
    pub s: f64,
    pub method: Method,
    pub scenario: Scenario,
    pub alpha: ProductionAngle,
    pub gamma: BerryPhase,
    pub settings: SettingsQuad,
    pub region: Region,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_thresholds() {
        assert_eq!(Region::classify(2.0), Region::Boundary);
        assert_eq!(Region::classify(2.0 + 5e-10), Region::Boundary);
        assert_eq!(Region::classify(2.0 - 5e-10), Region::Boundary);
        assert_eq!(Region::classify(2.0 + 2e-9), Region::QuantumViolation);
        assert_eq!(Region::classify(2.0 - 2e-9), Region::LhvmCompatible);
        assert_eq!(Region::classify(0.0), Region::LhvmCompatible);
    }
}
