//! Deterministic local strategies for the CHSH game.

use super::LHV_BOUND;

/// Predetermined ±1 outcomes for both settings on each side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeterministicStrategy {
    pub a: i8,
    pub a_prime: i8,
    pub b: i8,
    pub b_prime: i8,
}

impl DeterministicStrategy {
    /// Product expectations `(E(a,b), E(a,b′), E(a′,b), E(a′,b′))`.
    pub fn correlations(&self) -> [i32; 4] {
        let (a, a2, b, b2) = (
            i32::from(self.a),
            i32::from(self.a_prime),
            i32::from(self.b),
            i32::from(self.b_prime),
        );
        [a * b, a * b2, a2 * b, a2 * b2]
    }

    /// `|ab − ab′| + |a′b + a′b′|`, evaluated exactly.
    pub fn s(&self) -> i32 {
        let [ab, ab2, a2b, a2b2] = self.correlations();
        (ab - ab2).abs() + (a2b + a2b2).abs()
    }
}

/// All 16 assignments of ±1 to `(a, a′, b, b′)`, in binary counting order
/// with −1 before +1.
pub fn deterministic_strategies() -> Vec<DeterministicStrategy> {
    let sign = |bit: u8| if bit == 0 { -1 } else { 1 };
    (0u8..16)
        .map(|k| DeterministicStrategy {
            a: sign((k >> 3) & 1),
            a_prime: sign((k >> 2) & 1),
            b: sign((k >> 1) & 1),
            b_prime: sign(k & 1),
        })
        .collect()
}

/// Largest CHSH value over the deterministic strategies; exactly 2.
pub fn lhv_deterministic_max() -> f64 {
    let max = deterministic_strategies()
        .iter()
        .map(DeterministicStrategy::s)
        .max()
        .expect("sixteen strategies");
    debug_assert_eq!(f64::from(max), LHV_BOUND);
    f64::from(max)
}

/// CHSH value of a convex mixture of deterministic strategies. Weights are
/// normalized by their sum.
pub fn mixed_strategy_s(mixture: &[(f64, DeterministicStrategy)]) -> f64 {
    let total: f64 = mixture.iter().map(|(w, _)| w).sum();
    let mut e = [0.0; 4];
    for (w, strat) in mixture {
        for (acc, x) in e.iter_mut().zip(strat.correlations()) {
            *acc += w / total * f64::from(x);
        }
    }
    crate::correlations::chsh_s(e[0], e[1], e[2], e[3])
}
