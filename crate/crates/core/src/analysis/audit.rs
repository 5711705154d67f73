//! Cross-validation of the closed forms against the unitary pipeline.
//!
//! Probabilities and expectation values must agree to [`AUDIT_TOL`]. The
//! printed CHSH closed forms are only compared and reported. For the double
//! beam splitter they match the pipeline everywhere; for the single beam
//! splitter only where |cos 2γ| = 1, the pipeline giving √2(1 + C)|cos 2γ|.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use rayon::prelude::*;

use crate::correlations::{
    expectation_closed, expectation_from_distribution, joint_distribution_closed,
    joint_distribution_sim, s_canonical_sim, s_paper_value,
};
use crate::optics::{BerryPhase, Scenario};
use crate::states::{concurrence_of_angle, ProductionAngle};
use crate::{Error, Result};

/// Tolerance on probability- and expectation-level deviations.
pub const AUDIT_TOL: f64 = 1e-10;

/// Grid resolution per axis. α spans `[0, π/2]` and γ spans `[0, π]`, both
/// endpoints included; the retarder angles span `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub alpha_steps: usize,
    pub gamma_steps: usize,
    pub theta_steps: usize,
}

impl GridSpec {
    pub fn uniform(steps: usize) -> Self {
        GridSpec {
            alpha_steps: steps,
            gamma_steps: steps,
            theta_steps: steps,
        }
    }

    pub fn alpha_axis(&self) -> Vec<f64> {
        closed_axis(FRAC_PI_2, self.alpha_steps)
    }

    pub fn gamma_axis(&self) -> Vec<f64> {
        closed_axis(PI, self.gamma_steps)
    }

    pub fn theta_axis(&self) -> Vec<f64> {
        (0..self.theta_steps)
            .map(|k| TAU * k as f64 / self.theta_steps as f64)
            .collect()
    }

    pub fn describe(&self) -> String {
        format!(
            "alpha: {} points on [0, pi/2]; gamma: {} points on [0, pi]; theta_l, theta_r: {} points on [0, 2pi)",
            self.alpha_steps, self.gamma_steps, self.theta_steps
        )
    }
}

fn closed_axis(hi: f64, n: usize) -> Vec<f64> {
    match n {
        1 => vec![0.0],
        _ => (0..n).map(|k| hi * k as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub alpha: f64,
    pub gamma: f64,
    pub theta_l: f64,
    pub theta_r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnglePoint {
    pub alpha: f64,
    pub gamma: f64,
}

/// Largest absolute deviation over a point set and where it occurred. Ties go
/// to the earliest point in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation<P> {
    pub max_abs: f64,
    pub worst: P,
}

impl<P: Copy> Deviation<P> {
    fn merge(self, other: Self) -> Self {
        if other.max_abs > self.max_abs {
            other
        } else {
            self
        }
    }
}

/// CHSH closed form vs. pipeline along a named line or point of the
/// (α, γ) plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Landmark {
    pub label: &'static str,
    pub points: usize,
    pub deviation: Deviation<AnglePoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub scenario: Scenario,
    pub grid: GridSpec,
    pub probability: Deviation<GridPoint>,
    pub expectation: Deviation<GridPoint>,
    /// Printed canonical-settings S closed form vs. pipeline over the (α, γ)
    /// grid. Reported only.
    pub s_paper: Deviation<AnglePoint>,
    pub landmarks: Vec<Landmark>,
}

impl AuditReport {
    /// Whether probability and expectation deviations are within
    /// [`AUDIT_TOL`]. The S-level deviation never affects this.
    pub fn passed(&self) -> bool {
        self.probability.max_abs <= AUDIT_TOL && self.expectation.max_abs <= AUDIT_TOL
    }

    pub fn landmark(&self, label: &str) -> Option<&Landmark> {
        self.landmarks.iter().find(|l| l.label == label)
    }
}

fn s_deviation(scenario: Scenario, alpha: f64, gamma: f64) -> Result<Deviation<AnglePoint>> {
    let a = ProductionAngle::new(alpha)?;
    let g = BerryPhase::new(gamma)?;
    let sim = s_canonical_sim(scenario, a, g)?.s;
    let printed = s_paper_value(scenario, concurrence_of_angle(a), g);
    Ok(Deviation {
        max_abs: (printed - sim).abs(),
        worst: AnglePoint { alpha, gamma },
    })
}

fn max_over<P: Copy>(
    items: impl IntoIterator<Item = Result<Deviation<P>>>,
) -> Result<Option<Deviation<P>>> {
    let mut acc: Option<Deviation<P>> = None;
    for d in items {
        let d = d?;
        acc = Some(match acc {
            Some(a) => a.merge(d),
            None => d,
        });
    }
    Ok(acc)
}

fn landmark(scenario: Scenario, label: &'static str, points: &[(f64, f64)]) -> Result<Landmark> {
    let deviation = max_over(points.iter().map(|&(a, g)| s_deviation(scenario, a, g)))?
        .expect("landmarks have at least one point");
    Ok(Landmark {
        label,
        points: points.len(),
        deviation,
    })
}

type SliceResult = (Deviation<GridPoint>, Deviation<GridPoint>);

fn audit_alpha_slice(
    scenario: Scenario,
    alpha: f64,
    gammas: &[f64],
    thetas: &[f64],
) -> Result<SliceResult> {
    let a = ProductionAngle::new(alpha)?;
    let c = concurrence_of_angle(a);
    let mut prob: Option<Deviation<GridPoint>> = None;
    let mut expc: Option<Deviation<GridPoint>> = None;
    for &gamma in gammas {
        let g = BerryPhase::new(gamma)?;
        for &theta_l in thetas {
            for &theta_r in thetas {
                let worst = GridPoint {
                    alpha,
                    gamma,
                    theta_l,
                    theta_r,
                };
                let sim = joint_distribution_sim(scenario, a, g, theta_l, theta_r)?;
                let closed = joint_distribution_closed(scenario, c, g, theta_l, theta_r)?;
                let dp = Deviation {
                    max_abs: sim.max_abs_diff(&closed),
                    worst,
                };
                let e_sim = expectation_from_distribution(&sim);
                let e_closed = expectation_closed(scenario, c, g, theta_l, theta_r);
                let de = Deviation {
                    max_abs: (e_sim - e_closed).abs(),
                    worst,
                };
                prob = Some(prob.map_or(dp, |p| p.merge(dp)));
                expc = Some(expc.map_or(de, |e| e.merge(de)));
            }
        }
    }
    Ok((prob.expect("non-empty grid"), expc.expect("non-empty grid")))
}

/// Compares closed forms with the pipeline over a grid.
///
/// Grid points are evaluated in parallel, one α slice per task; results are
/// merged in row-major order so the report does not depend on the worker
/// count.
pub fn audit_closed_vs_sim(scenario: Scenario, grid: GridSpec) -> Result<AuditReport> {
    if grid.alpha_steps == 0 || grid.gamma_steps == 0 || grid.theta_steps == 0 {
        return Err(Error::InvalidArgument(
            "audit grid axes must be non-empty".into(),
        ));
    }
    let alphas = grid.alpha_axis();
    let gammas = grid.gamma_axis();
    let thetas = grid.theta_axis();

    let slices: Vec<SliceResult> = alphas
        .par_iter()
        .map(|&alpha| audit_alpha_slice(scenario, alpha, &gammas, &thetas))
        .collect::<Result<_>>()?;
    let (probability, expectation) = slices
        .into_iter()
        .reduce(|(p, e), (p2, e2)| (p.merge(p2), e.merge(e2)))
        .expect("non-empty alpha axis");

    let plane: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| gammas.iter().map(move |&g| (a, g)))
        .collect();
    let per_point: Vec<Result<Deviation<AnglePoint>>> = plane
        .par_iter()
        .map(|&(a, g)| s_deviation(scenario, a, g))
        .collect();
    let s_paper = max_over(per_point)?.expect("non-empty grid");

    let gamma_line = |g: f64| alphas.iter().map(|&a| (a, g)).collect::<Vec<_>>();
    let c_one: Vec<_> = gammas.iter().map(|&g| (FRAC_PI_4, g)).collect();
    let landmarks = vec![
        landmark(scenario, "c_equals_one", &c_one)?,
        landmark(scenario, "gamma_zero", &gamma_line(0.0))?,
        landmark(scenario, "gamma_half_pi", &gamma_line(FRAC_PI_2))?,
        landmark(scenario, "gamma_pi", &gamma_line(PI))?,
        landmark(scenario, "c_zero_gamma_quarter_pi", &[(0.0, FRAC_PI_4)])?,
    ];

    Ok(AuditReport {
        scenario,
        grid,
        probability,
        expectation,
        s_paper,
        landmarks,
    })
}
