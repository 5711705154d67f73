//! Derivative-free search for the retarder settings maximizing S.
//!
//! A full grid over the settings 4-torus seeds coordinate-wise golden-section
//! refinement. Everything runs sequentially with fixed budgets, so a given
//! argument list always produces the same bits.

use std::f64::consts::TAU;

use super::{BellReport, Method, Region};
use crate::correlations::{chsh_s, chsh_with, expectation_sim, s_canonical_sim, SettingsQuad};
use crate::optics::{BerryPhase, Scenario};
use crate::states::ProductionAngle;
use crate::{Error, Result};

const GOLDEN_ITERS: usize = 64;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on `[lo, hi]` by golden-section search with a fixed number
/// of iterations. Returns the best abscissa seen and its value.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, iters: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..iters {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

fn grid_search(table: &[f64], n: usize) -> ([usize; 4], f64) {
    let mut best = ([0; 4], f64::NEG_INFINITY);
    for l in 0..n {
        let row_l = &table[l * n..(l + 1) * n];
        for l2 in 0..n {
            let row_l2 = &table[l2 * n..(l2 + 1) * n];
            for r in 0..n {
                for r2 in 0..n {
                    let s = chsh_s(row_l[r], row_l[r2], row_l2[r], row_l2[r2]);
                    if s > best.1 {
                        best = ([l, r, l2, r2], s);
                    }
                }
            }
        }
    }
    best
}

/// Best CHSH value over the phase-shifter settings family for a fixed state
/// and Berry phase.
///
/// `coarse_steps` grid points per axis (at least 8) seed the search;
/// `refine_rounds` (at least 1) sweeps of golden-section line searches then
/// polish each coordinate in turn within one grid cell of the incumbent.
/// The result is never below the canonical-settings value.
pub fn optimize_settings(
    scenario: Scenario,
    alpha: ProductionAngle,
    gamma: BerryPhase,
    coarse_steps: usize,
    refine_rounds: usize,
) -> Result<BellReport> {
    if coarse_steps < 8 {
        return Err(Error::InvalidArgument(format!(
            "coarse_steps must be at least 8, got {coarse_steps}"
        )));
    }
    if refine_rounds < 1 {
        return Err(Error::InvalidArgument(
            "refine_rounds must be at least 1".into(),
        ));
    }

    let n = coarse_steps;
    let step = TAU / n as f64;
    let angle = |k: usize| k as f64 * step;
    let mut table = Vec::with_capacity(n * n);
    for l in 0..n {
        for r in 0..n {
            table.push(expectation_sim(scenario, alpha, gamma, angle(l), angle(r))?);
        }
    }
    let (idx, grid_best) = grid_search(&table, n);

    let objective = |x: &[f64; 4]| -> Result<f64> {
        let q = SettingsQuad::from_array(*x)?;
        chsh_with(&q, |tl, tr| expectation_sim(scenario, alpha, gamma, tl, tr))
    };

    let canonical = s_canonical_sim(scenario, alpha, gamma)?;
    let (mut x, mut best) = if canonical.s > grid_best {
        (canonical.settings.as_array(), canonical.s)
    } else {
        (idx.map(angle), objective(&idx.map(angle))?)
    };

    for _ in 0..refine_rounds {
        let mut moved = false;
        for coord in 0..4 {
            let centre = x[coord];
            let line = |t: f64| {
                let mut y = x;
                y[coord] = t;
                objective(&y)
            };
            let (t, s) = golden_section_max(line, centre - step, centre + step, GOLDEN_ITERS)?;
            if s > best {
                x[coord] = t;
                best = s;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }

    let settings = SettingsQuad::from_array(x.map(|t| t.rem_euclid(TAU)))?;
    Ok(BellReport {
        s: best,
        method: Method::Optimized,
        scenario,
        alpha,
        gamma,
        settings,
        region: Region::classify(best),
    })
}
