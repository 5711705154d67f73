//! Interferometer elements and the two scenario pipelines.
//!
//! Each arm is a product of 2×2 unitaries applied right to left:
//!
//! * single beam splitter: `BS · P(θ) · U_γ`
//! * double beam splitter: `BS · P(θ) · BS · U_γ`
//!
//! `U_γ = diag(e^{iγ}, e^{−iγ})` is the Berry-phase operator. It acts only on
//! the left arm, and by default sits between the source and the first beam
//! splitter ([`BerryPlacement::SourceSide`]). The in-loop placement is kept
//! for comparison; it does not reproduce the double-BS closed forms.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::linalg::{Mat2, Mat4, Operator, StateVec4, UNITARY_TOL};
use crate::states::{pathangled_state, ProductionAngle};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// Phase shifter followed by one beam splitter per arm.
    SingleBs,
    /// Full Mach–Zehnder loop: BS, phase shifter, BS.
    DoubleBs,
}

impl Scenario {
    pub const ALL: [Scenario; 2] = [Scenario::SingleBs, Scenario::DoubleBs];

    /// Roman-numeral label, `I` or `II`.
    pub fn label(self) -> &'static str {
        match self {
            Scenario::SingleBs => "I",
            Scenario::DoubleBs => "II",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" | "single" | "single-bs" => Ok(Scenario::SingleBs),
            "ii" | "2" | "double" | "double-bs" => Ok(Scenario::DoubleBs),
            _ => Err(Error::InvalidArgument(format!("unknown scenario `{s}`"))),
        }
    }
}

/// Berry phase γ (radians), with the convention γ₊ ≡ γ.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BerryPhase(f64);

impl BerryPhase {
    pub const ZERO: BerryPhase = BerryPhase(0.0);

    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::NonFinite("Berry phase"));
        }
        Ok(BerryPhase(gamma))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// Where the Berry-phase operator acts on the left arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BerryPlacement {
    /// Between the source and the first beam splitter.
    #[default]
    SourceSide,
    /// Between the two beam splitters of the double-BS loop. Identical to
    /// `SourceSide` for the single-BS scenario.
    InsideLoop,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometerConfig {
    pub scenario: Scenario,
    pub theta_l: f64,
    pub theta_r: f64,
    pub gamma: BerryPhase,
    pub placement: BerryPlacement,
}

impl InterferometerConfig {
    pub fn new(scenario: Scenario, theta_l: f64, theta_r: f64, gamma: BerryPhase) -> Result<Self> {
        if !theta_l.is_finite() || !theta_r.is_finite() {
            return Err(Error::NonFinite("retarder angle"));
        }
        Ok(InterferometerConfig {
            scenario,
            theta_l,
            theta_r,
            gamma,
            placement: BerryPlacement::SourceSide,
        })
    }

    pub fn with_placement(mut self, placement: BerryPlacement) -> Self {
        self.placement = placement;
        self
    }
}

/// Symmetric lossless beam splitter `(1/√2)[[1, i], [i, 1]]`.
pub fn beam_splitter() -> Mat2 {
    let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let t = Complex64::new(0.0, FRAC_1_SQRT_2);
    Mat2::new([[r, t], [t, r]])
}

/// Retarder `diag(e^{iθ}, 1)`.
pub fn phase_shifter(theta: f64) -> Mat2 {
    Mat2::diag(Complex64::cis(theta), Complex64::new(1.0, 0.0))
}

/// `diag(e^{iγ}, e^{−iγ})`; equal to `diag(e^{iγ₊}, e^{iγ₋})` with
/// `γ₋ = −γ₊ − 2π`.
pub fn berry_operator(gamma: BerryPhase) -> Mat2 {
    Mat2::diag(Complex64::cis(gamma.0), Complex64::cis(-gamma.0))
}

/// Single-arm operator with the Berry phase at the source side.
pub fn arm_operator(scenario: Scenario, theta: f64, berry: Option<BerryPhase>) -> Mat2 {
    arm_operator_placed(scenario, theta, berry, BerryPlacement::SourceSide)
}

pub fn arm_operator_placed(
    scenario: Scenario,
    theta: f64,
    berry: Option<BerryPhase>,
    placement: BerryPlacement,
) -> Mat2 {
    let bs = beam_splitter();
    let shift = phase_shifter(theta);
    let geo = berry.map_or_else(Mat2::identity, berry_operator);
    match (scenario, placement) {
        (Scenario::SingleBs, _) => bs * shift * geo,
        (Scenario::DoubleBs, BerryPlacement::SourceSide) => bs * shift * bs * geo,
        (Scenario::DoubleBs, BerryPlacement::InsideLoop) => bs * shift * geo * bs,
    }
}

/// Two-particle operator `U = U_R ⊗ U_L` for a configuration; the Berry phase
/// is applied on the left arm only.
pub fn pipeline_operator(config: &InterferometerConfig) -> Mat4 {
    let right = arm_operator_placed(config.scenario, config.theta_r, None, config.placement);
    let left = arm_operator_placed(
        config.scenario,
        config.theta_l,
        Some(config.gamma),
        config.placement,
    );
    Mat4::kron(&right, &left)
}

/// Full pipeline: the operator and the evolved pathangled state.
pub fn pipeline(
    config: &InterferometerConfig,
    alpha: ProductionAngle,
) -> Result<(Mat4, StateVec4)> {
    let u = pipeline_operator(config);
    debug_assert!(u.unitarity_defect() <= UNITARY_TOL);
    let out = u.apply(&pathangled_state(alpha))?;
    Ok((u, out))
}
