use std::f64::consts::{FRAC_PI_4, SQRT_2};

use super::{BellReport, LHV_BOUND};
use crate::correlations::s_canonical_sim;
use crate::optics::{BerryPhase, Scenario};
use crate::states::ProductionAngle;
use crate::{Error, Result};

/// `(1/4) arccos(2√2 − 3)`.
pub fn critical_angle_closed_form() -> f64 {
    0.25 * (2.0 * SQRT_2 - 3.0).acos()
}

/// Production angle at which the canonical-settings CHSH value reaches 2 for
/// γ = 0, found by bisection on `(0, π/4]` until the bracket is no wider than
/// `tolerance`.
///
/// The objective is the simulated CHSH value, not the closed form, so the
/// whole pipeline is exercised.
pub fn critical_angle(tolerance: f64) -> Result<f64> {
    if !(tolerance > 0.0 && tolerance < 1e-3) {
        return Err(Error::InvalidArgument(format!(
            "bisection tolerance {tolerance} must lie in (0, 1e-3)"
        )));
    }
    let excess = |a: f64| -> Result<f64> {
        let r = s_canonical_sim(
            Scenario::SingleBs,
            ProductionAngle::new(a)?,
            BerryPhase::ZERO,
        )?;
        Ok(r.s - LHV_BOUND)
    };
    let (mut lo, mut hi) = (0.0, FRAC_PI_4);
    debug_assert!(excess(lo)? < 0.0 && excess(hi)? > 0.0);
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Canonical-settings CHSH value with its LHVM / quantum region.
pub fn classify_region(
    alpha: ProductionAngle,
    gamma: BerryPhase,
    scenario: Scenario,
) -> Result<BellReport> {
    s_canonical_sim(scenario, alpha, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Region;
    use approx::assert_abs_diff_eq;

    #[test]
    fn bisection_matches_closed_form() {
        let a = critical_angle(1e-12).unwrap();
        assert_abs_diff_eq!(a, critical_angle_closed_form(), epsilon = 1e-10);
        assert_abs_diff_eq!(a.to_degrees(), 24.9688, epsilon = 0.01);
        let coarse = critical_angle(1e-4).unwrap();
        assert!((coarse - critical_angle_closed_form()).abs() <= 1e-4);
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(critical_angle(0.0).is_err());
        assert!(critical_angle(0.01).is_err());
        assert!(critical_angle(f64::NAN).is_err());
    }

    #[test]
    fn region_examples() {
        let z = BerryPhase::ZERO;
        let at = |deg: f64| ProductionAngle::from_degrees(deg).unwrap();
        let r = classify_region(at(30.0), z, Scenario::SingleBs).unwrap();
        assert_eq!(r.region, Region::QuantumViolation);
        assert_abs_diff_eq!(r.s, SQRT_2 * 1.6, epsilon = 1e-12);
        let r = classify_region(at(10.0), z, Scenario::DoubleBs).unwrap();
        assert_eq!(r.region, Region::LhvmCompatible);
        assert_abs_diff_eq!(r.s, 1.502, epsilon = 1e-3);
        let ac = ProductionAngle::new(critical_angle_closed_form()).unwrap();
        for scenario in Scenario::ALL {
            assert_eq!(
                classify_region(ac, z, scenario).unwrap().region,
                Region::Boundary
            );
        }
    }
}
