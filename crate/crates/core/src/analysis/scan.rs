use rayon::prelude::*;

use super::Region;
use crate::correlations::{s_paper_value, s_sim, SettingsQuad};
use crate::optics::{BerryPhase, Scenario};
use crate::states::{concurrence_of_angle, ProductionAngle};
use crate::{Error, Result};

/// One (α, γ) sample of a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub alpha: f64,
    pub gamma: f64,
    pub concurrence: f64,
    pub s_sim: f64,
    pub s_paper: f64,
    pub region: Region,
}

fn check_axis(name: &str, axis: &[f64]) -> Result<()> {
    if axis.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("scan axis"));
    }
    if axis.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument(format!(
            "{name} axis must be sorted"
        )));
    }
    Ok(())
}

/// Evaluates S over the product of the two axes, α outer and γ inner.
///
/// `s_sim` uses the given settings; `s_paper` is the printed canonical-settings
/// closed form. Rows come back in row-major order whatever the thread count.
pub fn scan(
    scenario: Scenario,
    alpha_axis: &[f64],
    gamma_axis: &[f64],
    settings: SettingsQuad,
) -> Result<Vec<ScanRow>> {
    check_axis("alpha", alpha_axis)?;
    check_axis("gamma", gamma_axis)?;
    let alphas = alpha_axis
        .iter()
        .map(|&a| ProductionAngle::new(a))
        .collect::<Result<Vec<_>>>()?;

    let blocks: Vec<Vec<ScanRow>> = alphas
        .par_iter()
        .map(|&a| {
            let c = concurrence_of_angle(a);
            gamma_axis
                .iter()
                .map(|&gamma| {
                    let g = BerryPhase::new(gamma)?;
                    let report = s_sim(scenario, a, g, settings)?;
                    Ok(ScanRow {
                        alpha: a.radians(),
                        gamma,
                        concurrence: c.value(),
                        s_sim: report.s,
                        s_paper: s_paper_value(scenario, c, g),
                        region: report.region,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    #[test]
    fn alpha_sweep_at_zero_gamma() {
        let alphas: Vec<f64> = (0..=90).map(|k| f64::from(k).to_radians()).collect();
        let rows = scan(Scenario::SingleBs, &alphas, &[0.0], SettingsQuad::CANONICAL).unwrap();
        assert_eq!(rows.len(), 91);
        for r in &rows {
            assert_abs_diff_eq!(r.s_sim, SQRT_2 * (1.0 + r.concurrence), epsilon = 1e-10);
        }
        let best = rows
            .iter()
            .max_by(|a, b| a.s_sim.total_cmp(&b.s_sim))
            .unwrap();
        assert_abs_diff_eq!(best.alpha, FRAC_PI_4, epsilon = 1e-12);
    }

    #[test]
    fn gamma_sweep_at_max_entanglement() {
        let gammas: Vec<f64> = (0..=180).map(|k| f64::from(k).to_radians()).collect();
        let rows = scan(
            Scenario::SingleBs,
            &[FRAC_PI_4],
            &gammas,
            SettingsQuad::CANONICAL,
        )
        .unwrap();
        for r in &rows {
            assert_abs_diff_eq!(
                r.s_sim,
                2.0 * SQRT_2 * (2.0 * r.gamma).cos().abs(),
                epsilon = 1e-10
            );
        }
        // period π/2 in γ
        for k in 0..90 {
            assert_abs_diff_eq!(rows[k].s_sim, rows[k + 90].s_sim, epsilon = 1e-10);
        }
    }

    #[test]
    fn row_major_order_and_count() {
        let alphas = [0.1, 0.2, 0.3];
        let gammas = [0.0, 0.5];
        let rows = scan(
            Scenario::DoubleBs,
            &alphas,
            &gammas,
            SettingsQuad::CANONICAL,
        )
        .unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!((rows[1].alpha, rows[1].gamma), (0.1, 0.5));
        assert_eq!((rows[2].alpha, rows[2].gamma), (0.2, 0.0));
    }

    #[test]
    fn rejects_bad_axes() {
        let q = SettingsQuad::CANONICAL;
        assert!(scan(Scenario::SingleBs, &[0.2, 0.1], &[0.0], q).is_err());
        assert!(scan(Scenario::SingleBs, &[0.1], &[f64::NAN], q).is_err());
        assert!(matches!(
            scan(Scenario::SingleBs, &[FRAC_PI_2 + 0.1], &[0.0], q),
            Err(Error::AngleOutOfDomain(_))
        ));
    }
}
