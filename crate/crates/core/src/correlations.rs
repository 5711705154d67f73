//! Joint-detection probabilities, expectation values and the CHSH function.
//!
//! Every quantity is available from the unitary pipeline (`*_sim`) and from
//! the closed-form expressions (`*_closed`); the analysis module audits one
//! against the other.
//!
//! Closed forms, with `i` the right-arm detector and `j` the left-arm one:
//!
//! Single beam splitter, with `κ₊ = (θ_R+θ_L)/2 + γ`, `κ₋ = (θ_R−θ_L)/2 − γ`:
//!
//! ```text
//! P(D0,D0') = ¼[1 − ((1−C)/2)cos2κ₊ + ((1+C)/2)cos2κ₋] + (√(1−C²)/2) sinκ₊ cosκ₋
//! P(D1,D1') = ¼[1 − ((1−C)/2)cos2κ₊ + ((1+C)/2)cos2κ₋] − (√(1−C²)/2) sinκ₊ cosκ₋
//! P(D0,D1') = ¼[1 + ((1−C)/2)cos2κ₊ − ((1+C)/2)cos2κ₋] + (√(1−C²)/2) sinκ₋ cosκ₊
//! P(D1,D0') = ¼[1 + ((1−C)/2)cos2κ₊ − ((1+C)/2)cos2κ₋] − (√(1−C²)/2) sinκ₋ cosκ₊
//! ```
//!
//! Double beam splitter:
//!
//! ```text
//! P(D0,D0') = ¼[1 − C cosθ_L cosθ_R + sinθ_L sinθ_R cos2γ + √(1−C²)(sinθ_R + sinθ_L cos2γ)]
//! P(D1,D1') = ¼[1 − C cosθ_L cosθ_R + sinθ_L sinθ_R cos2γ − √(1−C²)(sinθ_R + sinθ_L cos2γ)]
//! P(D0,D1') = ¼[1 + C cosθ_L cosθ_R − sinθ_L sinθ_R cos2γ + √(1−C²)(sinθ_R − sinθ_L cos2γ)]
//! P(D1,D0') = ¼[1 + C cosθ_L cosθ_R − sinθ_L sinθ_R cos2γ − √(1−C²)(sinθ_R − sinθ_L cos2γ)]
//! ```

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

use crate::analysis::{BellReport, Method, Region};
use crate::optics::{pipeline, BerryPhase, InterferometerConfig, Scenario};
use crate::states::{concurrence_of_angle, Concurrence, ProductionAngle};
use crate::{Error, Result};

/// Rounding noise tolerated below zero before a probability is clamped.
pub const CLAMP_TOL: f64 = 1e-12;
/// Anything more negative than this is a logic error, not rounding.
pub const NEGATIVE_TOL: f64 = 1e-9;
/// Allowed deviation of the total probability from one.
pub const SUM_TOL: f64 = 1e-10;

const OUTCOMES: [&str; 4] = ["p00", "p01", "p10", "p11"];

/// The four joint-detection probabilities `P(D_i, D'_j)`, `i` on the right
/// arm and `j` on the left arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointDistribution {
    pub p00: f64,
    pub p01: f64,
    pub p10: f64,
    pub p11: f64,
}

impl JointDistribution {
    /// Validates raw probabilities in `[p00, p01, p10, p11]` order.
    pub fn from_probabilities(p: [f64; 4]) -> Result<Self> {
        for (value, outcome) in p.iter().zip(OUTCOMES) {
            if !value.is_finite() {
                return Err(Error::NonFinite("joint probability"));
            }
            if *value < -NEGATIVE_TOL {
                return Err(Error::NegativeProbability {
                    outcome,
                    value: *value,
                });
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::DistributionSum(sum));
        }
        let [p00, p01, p10, p11] = p.map(|x| x.clamp(0.0, 1.0));
        Ok(JointDistribution { p00, p01, p10, p11 })
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.p00, self.p01, self.p10, self.p11]
    }

    /// `P(D_i, D'_j)` for `i, j ∈ {0, 1}`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.as_array()[2 * i + j]
    }

    pub fn max_abs_diff(&self, other: &JointDistribution) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Retarder settings `(θ_L, θ_R, θ_L', θ_R')` for a CHSH test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SettingsQuad {
    pub theta_l: f64,
    pub theta_r: f64,
    pub theta_l_prime: f64,
    pub theta_r_prime: f64,
}

impl SettingsQuad {
    /// `(0, π/4, π/2, 3π/4)`.
    pub const CANONICAL: SettingsQuad = SettingsQuad {
        theta_l: 0.0,
        theta_r: FRAC_PI_4,
        theta_l_prime: FRAC_PI_2,
        theta_r_prime: 3.0 * FRAC_PI_4,
    };

    pub fn new(theta_l: f64, theta_r: f64, theta_l_prime: f64, theta_r_prime: f64) -> Result<Self> {
        let q = SettingsQuad {
            theta_l,
            theta_r,
            theta_l_prime,
            theta_r_prime,
        };
        if !q.as_array().iter().all(|t| t.is_finite()) {
            return Err(Error::NonFinite("settings"));
        }
        Ok(q)
    }

    pub fn from_array([a, b, c, d]: [f64; 4]) -> Result<Self> {
        Self::new(a, b, c, d)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [
            self.theta_l,
            self.theta_r,
            self.theta_l_prime,
            self.theta_r_prime,
        ]
    }
}

impl Default for SettingsQuad {
    fn default() -> Self {
        Self::CANONICAL
    }
}

/// `κ₊ = (θ_R + θ_L)/2 + γ`, `κ₋ = (θ_R − θ_L)/2 − γ`.
///
/// This sign assignment is the one under which the single-BS closed form
/// coincides with the pipeline; at θ = 0 it gives `κ₊ = γ`, `κ₋ = −γ`, and
/// every closed-form term is even in κ₋ or pairs `sinκ₊ cosκ₋`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaPair {
    pub kappa_plus: f64,
    pub kappa_minus: f64,
}

impl KappaPair {
    pub fn new(theta_l: f64, theta_r: f64, gamma: BerryPhase) -> Self {
        let g = gamma.radians();
        KappaPair {
            kappa_plus: 0.5 * (theta_r + theta_l) + g,
            kappa_minus: 0.5 * (theta_r - theta_l) - g,
        }
    }
}

/// `|⟨ij|U|ψ(α)⟩|²` from the unitary pipeline.
pub fn joint_distribution_sim(
    scenario: Scenario,
    alpha: ProductionAngle,
    gamma: BerryPhase,
    theta_l: f64,
    theta_r: f64,
) -> Result<JointDistribution> {
    let config = InterferometerConfig::new(scenario, theta_l, theta_r, gamma)?;
    joint_distribution_for(&config, alpha)
}

/// Same as [`joint_distribution_sim`] for an explicit configuration
/// (including the Berry placement variant).
pub fn joint_distribution_for(
    config: &InterferometerConfig,
    alpha: ProductionAngle,
) -> Result<JointDistribution> {
    let (_, out) = pipeline(config, alpha)?;
    JointDistribution::from_probabilities(out.probabilities())
}

/// Closed-form joint-detection probabilities.
pub fn joint_distribution_closed(
    scenario: Scenario,
    c: Concurrence,
    gamma: BerryPhase,
    theta_l: f64,
    theta_r: f64,
) -> Result<JointDistribution> {
    let c = c.value();
    let mix = (1.0 - c * c).max(0.0).sqrt();
    let p = match scenario {
        Scenario::SingleBs => {
            let KappaPair {
                kappa_plus: kp,
                kappa_minus: km,
            } = KappaPair::new(theta_l, theta_r, gamma);
            let osc = 0.5 * (1.0 - c) * (2.0 * kp).cos() - 0.5 * (1.0 + c) * (2.0 * km).cos();
            let same = 0.25 * (1.0 - osc);
            let diff = 0.25 * (1.0 + osc);
            let t_same = 0.5 * mix * kp.sin() * km.cos();
            let t_diff = 0.5 * mix * km.sin() * kp.cos();
            [same + t_same, diff + t_diff, diff - t_diff, same - t_same]
        }
        Scenario::DoubleBs => {
            let (sl, cl) = theta_l.sin_cos();
            let (sr, cr) = theta_r.sin_cos();
            let c2g = (2.0 * gamma.radians()).cos();
            let corr = -c * cl * cr + sl * sr * c2g;
            let t_same = mix * (sr + sl * c2g);
            let t_diff = mix * (sr - sl * c2g);
            [
                0.25 * (1.0 + corr + t_same),
                0.25 * (1.0 - corr + t_diff),
                0.25 * (1.0 - corr - t_diff),
                0.25 * (1.0 + corr - t_same),
            ]
        }
    };
    JointDistribution::from_probabilities(p)
}

/// `E = Σ (−1)^{i+j} P(D_i, D'_j)`.
pub fn expectation_from_distribution(d: &JointDistribution) -> f64 {
    d.p00 - d.p01 - d.p10 + d.p11
}

pub fn expectation_sim(
    scenario: Scenario,
    alpha: ProductionAngle,
    gamma: BerryPhase,
    theta_l: f64,
    theta_r: f64,
) -> Result<f64> {
    joint_distribution_sim(scenario, alpha, gamma, theta_l, theta_r)
        .map(|d| expectation_from_distribution(&d))
}

/// Closed-form expectation value.
///
/// Single BS: `−((1−C)/2)cos2κ₊ + ((1+C)/2)cos2κ₋`.
/// Double BS: `−C cosθ_L cosθ_R + sinθ_L sinθ_R cos2γ`.
pub fn expectation_closed(
    scenario: Scenario,
    c: Concurrence,
    gamma: BerryPhase,
    theta_l: f64,
    theta_r: f64,
) -> f64 {
    let c = c.value();
    match scenario {
        Scenario::SingleBs => {
            let k = KappaPair::new(theta_l, theta_r, gamma);
            -0.5 * (1.0 - c) * (2.0 * k.kappa_plus).cos()
                + 0.5 * (1.0 + c) * (2.0 * k.kappa_minus).cos()
        }
        Scenario::DoubleBs => {
            -c * theta_l.cos() * theta_r.cos()
                + theta_l.sin() * theta_r.sin() * (2.0 * gamma.radians()).cos()
        }
    }
}

/// `S = |E(a,b) − E(a,b′)| + |E(a′,b) + E(a′,b′)|`.
pub fn chsh_s(e_ab: f64, e_ab_prime: f64, e_a_prime_b: f64, e_a_prime_b_prime: f64) -> f64 {
    (e_ab - e_ab_prime).abs() + (e_a_prime_b + e_a_prime_b_prime).abs()
}

/// Evaluates the CHSH function for a settings quad with a given
/// correlation function `E(θ_L, θ_R)`.
pub fn chsh_with<F>(settings: &SettingsQuad, mut correlation: F) -> Result<f64>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    let SettingsQuad {
        theta_l: a,
        theta_r: b,
        theta_l_prime: a2,
        theta_r_prime: b2,
    } = *settings;
    Ok(chsh_s(
        correlation(a, b)?,
        correlation(a, b2)?,
        correlation(a2, b)?,
        correlation(a2, b2)?,
    ))
}

/// CHSH value from the pipeline at arbitrary settings.
pub fn s_sim(
    scenario: Scenario,
    alpha: ProductionAngle,
    gamma: BerryPhase,
    settings: SettingsQuad,
) -> Result<BellReport> {
    let s = chsh_with(&settings, |tl, tr| {
        expectation_sim(scenario, alpha, gamma, tl, tr)
    })?;
    Ok(BellReport {
        s,
        method: Method::Simulated,
        scenario,
        alpha,
        gamma,
        settings,
        region: Region::classify(s),
    })
}

/// CHSH value from the pipeline at the canonical settings.
pub fn s_canonical_sim(
    scenario: Scenario,
    alpha: ProductionAngle,
    gamma: BerryPhase,
) -> Result<BellReport> {
    s_sim(scenario, alpha, gamma, SettingsQuad::CANONICAL)
}

/// Printed closed-form CHSH values at the canonical settings:
/// `√2 + C√2|cos2γ|` (single BS) and `C√2 + √2|cos2γ|` (double BS).
pub fn s_paper_value(scenario: Scenario, c: Concurrence, gamma: BerryPhase) -> f64 {
    let c = c.value();
    let osc = (2.0 * gamma.radians()).cos().abs();
    match scenario {
        Scenario::SingleBs => SQRT_2 + c * SQRT_2 * osc,
        Scenario::DoubleBs => c * SQRT_2 + SQRT_2 * osc,
    }
}

pub fn s_paper_closed(scenario: Scenario, alpha: ProductionAngle, gamma: BerryPhase) -> BellReport {
    let s = s_paper_value(scenario, concurrence_of_angle(alpha), gamma);
    BellReport {
        s,
        method: Method::PaperClosedForm,
        scenario,
        alpha,
        gamma,
        settings: SettingsQuad::CANONICAL,
        region: Region::classify(s),
    }
}
