//! Pathangled two-quanton states and entanglement measures.
//!
//! The production angle α fixes the emission directions `|u_α⟩`, `|d_α⟩` of
//! the pair, and with them the concurrence
//! `C(α) = (1 − cos²2α) / (1 + cos²2α)`.
//!
//! Two constructors are provided. [`pathangled_state`] writes the state in the
//! Bell basis, `√((1−C)/2)|χ⁺⟩ + √((1+C)/2)|φ⁺⟩`, with non-negative
//! coefficients for every α. [`pathangled_state_raw`] symmetrizes the
//! direction kets, `N(|u⟩|d⟩ + |d⟩|u⟩)` with `N = 1/√(2 + 2cos²2α)`. The two
//! agree on `[0, π/4]`; for α > π/4 the raw form has a negative `|χ⁺⟩`
//! coefficient (cos 2α < 0) while describing a state with the same
//! concurrence.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;

use crate::linalg::{StateVec2, StateVec4};
use crate::{Error, Result};

const DOMAIN_SLACK: f64 = 1e-12;

/// Production angle α ∈ [0, π/2], radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ProductionAngle(f64);

impl ProductionAngle {
    /// Values within 1e−12 outside the domain (degree round-off) are clamped
    /// onto it; anything further out is rejected.
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || !(-DOMAIN_SLACK..=FRAC_PI_2 + DOMAIN_SLACK).contains(&alpha) {
            return Err(Error::AngleOutOfDomain(alpha));
        }
        Ok(ProductionAngle(alpha.clamp(0.0, FRAC_PI_2)))
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        Self::new(deg.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// Mirror image `π/2 − α`, which has the same concurrence.
    pub fn mirrored(self) -> Self {
        ProductionAngle(FRAC_PI_2 - self.0)
    }
}

/// Entanglement concurrence, a value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    pub fn new(c: f64) -> Result<Self> {
        if !c.is_finite() || !(-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&c) {
            return Err(Error::ConcurrenceOutOfRange(c));
        }
        Ok(Concurrence(c.clamp(0.0, 1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `C(α) = (1 − cos²2α)/(1 + cos²2α)`.
pub fn concurrence_of_angle(alpha: ProductionAngle) -> Concurrence {
    let c2 = (2.0 * alpha.0).cos().powi(2);
    Concurrence(((1.0 - c2) / (1.0 + c2)).clamp(0.0, 1.0))
}

/// Emission direction kets `(|u_α⟩, |d_α⟩)`.
pub fn direction_kets(alpha: ProductionAngle) -> (StateVec2, StateVec2) {
    let (s, c) = (FRAC_PI_4 - alpha.0).sin_cos();
    (StateVec2::real(c, s), StateVec2::real(s, c))
}

/// The pathangled state in its Bell-basis form
/// `√((1−C)/2)|χ⁺⟩ + √((1+C)/2)|φ⁺⟩`.
pub fn pathangled_state(alpha: ProductionAngle) -> StateVec4 {
    let c = concurrence_of_angle(alpha).0;
    let chi = ((1.0 - c) / 2.0).sqrt() * FRAC_1_SQRT_2;
    let phi = ((1.0 + c) / 2.0).sqrt() * FRAC_1_SQRT_2;
    StateVec4::from_real([chi, phi, phi, chi]).expect("Bell-basis weights are normalized")
}

/// The symmetrized direction-ket construction `N(|u⟩_R|d⟩_L + |d⟩_R|u⟩_L)`.
pub fn pathangled_state_raw(alpha: ProductionAngle) -> StateVec4 {
    let (u, d) = direction_kets(alpha);
    let ud = u.tensor(&d);
    let du = d.tensor(&u);
    let norm = 1.0 / (2.0 + 2.0 * (2.0 * alpha.0).cos().powi(2)).sqrt();
    let amps = [0, 1, 2, 3].map(|k| (ud[k] + du[k]) * norm);
    StateVec4::new(amps).expect("direction-ket overlap fixes the normalization")
}

/// Pure-state concurrence `2|a·d − b·c|` for amplitudes `(a, b, c, d)`.
pub fn wootters_concurrence(psi: &StateVec4) -> Concurrence {
    let [a, b, c, d] = *psi.amplitudes();
    Concurrence((2.0 * (a * d - b * c).norm()).clamp(0.0, 1.0))
}

/// The four Bell states.
#[derive(Debug, Clone, Copy)]
pub struct BellBasis {
    /// `(|00⟩ + |11⟩)/√2`
    pub chi_plus: StateVec4,
    /// `(|00⟩ − |11⟩)/√2`
    pub chi_minus: StateVec4,
    /// `(|01⟩ + |10⟩)/√2`
    pub phi_plus: StateVec4,
    /// `(|01⟩ − |10⟩)/√2`
    pub phi_minus: StateVec4,
}

impl BellBasis {
    pub fn as_array(&self) -> [StateVec4; 4] {
        [self.chi_plus, self.chi_minus, self.phi_plus, self.phi_minus]
    }

    /// Components `⟨B|ψ⟩` in the order χ⁺, χ⁻, φ⁺, φ⁻.
    pub fn components(&self, psi: &StateVec4) -> [Complex64; 4] {
        self.as_array().map(|b| b.inner(psi))
    }
}

pub fn bell_basis() -> BellBasis {
    let h = FRAC_1_SQRT_2;
    let mk = |a| StateVec4::from_real(a).expect("Bell states are normalized");
    BellBasis {
        chi_plus: mk([h, 0.0, 0.0, h]),
        chi_minus: mk([h, 0.0, 0.0, -h]),
        phi_plus: mk([0.0, h, h, 0.0]),
        phi_minus: mk([0.0, h, -h, 0.0]),
    }
}
