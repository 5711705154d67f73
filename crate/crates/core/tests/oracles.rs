//! Independent checks on the settings optimizer.
//!
//! For fixed θ_L the correlation is a first harmonic in θ_R,
//! `E(θ_L, θ_R) = D + A cos θ_R + B sin θ_R`, so the inner maximization over
//! the right settings is analytic:
//! `max S(L, L′) = |v + v′| + |v − v′| + 2|D′|` with `v = (A, B)`.
//! Only the left pair is searched numerically.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2, TAU};

use pathangle::analysis::optimize_settings;
use pathangle::correlations::{chsh_s, expectation_closed, expectation_sim};
use pathangle::states::concurrence_of_angle;
use pathangle::{BerryPhase, Concurrence, ProductionAngle, Scenario};

/// `(D, A, B)` from samples at θ_R = 0, π/2, π, after checking the model at
/// two more angles.
fn harmonic(scenario: Scenario, a: ProductionAngle, g: BerryPhase, tl: f64) -> (f64, f64, f64) {
    let e = |tr: f64| expectation_sim(scenario, a, g, tl, tr).unwrap();
    let (e0, e1, e2) = (e(0.0), e(FRAC_PI_2), e(PI));
    let d = 0.5 * (e0 + e2);
    let (ca, cb) = (0.5 * (e0 - e2), e1 - d);
    for tr in [0.37, 4.1] {
        let model = d + ca * f64::cos(tr) + cb * f64::sin(tr);
        assert!(
            (model - e(tr)).abs() < 1e-12,
            "E is not a first harmonic in θ_R"
        );
    }
    (d, ca, cb)
}

fn pair_value(h: &[(f64, f64, f64)], l: usize, lp: usize) -> f64 {
    let (_, a1, b1) = h[l];
    let (d2, a2, b2) = h[lp];
    (a1 + a2).hypot(b1 + b2) + (a1 - a2).hypot(b1 - b2) + 2.0 * d2.abs()
}

fn semi_analytic_max(scenario: Scenario, a: ProductionAngle, g: BerryPhase) -> f64 {
    const N: usize = 2048;
    let at = |k: f64| TAU * k / N as f64;
    let h: Vec<_> = (0..N)
        .map(|k| harmonic(scenario, a, g, at(k as f64)))
        .collect();
    let (mut best, mut arg) = (f64::NEG_INFINITY, (0, 0));
    for l in 0..N {
        for lp in 0..N {
            let v = pair_value(&h, l, lp);
            if v > best {
                best = v;
                arg = (l, lp);
            }
        }
    }
    // Local refinement within one cell of the grid optimum.
    const M: usize = 64;
    let offsets: Vec<f64> = (0..=2 * M)
        .map(|k| (k as f64 - M as f64) / M as f64)
        .collect();
    let hl: Vec<_> = offsets
        .iter()
        .map(|o| harmonic(scenario, a, g, at(arg.0 as f64 + o)))
        .collect();
    let hr: Vec<_> = offsets
        .iter()
        .map(|o| harmonic(scenario, a, g, at(arg.1 as f64 + o)))
        .collect();
    for x in &hl {
        for y in &hr {
            best = best.max(pair_value(&[*x, *y], 0, 1));
        }
    }
    best
}

const POINTS: [(f64, f64); 10] = [
    (3.0, 0.0),
    (11.5, 17.0),
    (22.0, 44.0),
    (27.3, 91.0),
    (33.0, 130.0),
    (45.0, 12.5),
    (51.7, 66.0),
    (60.0, 150.0),
    (74.2, 33.3),
    (88.0, 178.0),
];

#[test]
fn optimizer_matches_semi_analytic_maximum() {
    for scenario in Scenario::ALL {
        for (a_deg, g_deg) in POINTS {
            let a = ProductionAngle::from_degrees(a_deg).unwrap();
            let g = BerryPhase::new(g_deg.to_radians()).unwrap();
            let oracle = semi_analytic_max(scenario, a, g);
            let found = optimize_settings(scenario, a, g, 24, 40).unwrap().s;
            assert!(
                (found - oracle).abs() <= 1e-4,
                "{scenario} α={a_deg}° γ={g_deg}°: optimizer {found}, oracle {oracle}"
            );
            if scenario == Scenario::DoubleBs {
                let c = concurrence_of_angle(a).value();
                let k = (2.0 * g.radians()).cos();
                let exact = 2.0 * c.hypot(k);
                assert!(
                    (found - exact).abs() <= 1e-6,
                    "α={a_deg}° γ={g_deg}°: {found} vs {exact}"
                );
            }
        }
    }
}

#[test]
fn dense_settings_grid_bounds_optimizer() {
    const N: usize = 64;
    let c = Concurrence::new(0.6).unwrap();
    let g = BerryPhase::ZERO;
    // C = 0.6 at α = 30°.
    let a = ProductionAngle::from_degrees(30.0).unwrap();
    assert!((concurrence_of_angle(a).value() - 0.6).abs() < 1e-12);
    for scenario in Scenario::ALL {
        let at = |k: usize| TAU * k as f64 / N as f64;
        let table: Vec<f64> = (0..N * N)
            .map(|k| expectation_closed(scenario, c, g, at(k / N), at(k % N)))
            .collect();
        let e = |l: usize, r: usize| table[l * N + r];
        let mut grid_max = f64::NEG_INFINITY;
        for l in 0..N {
            for lp in 0..N {
                for r in 0..N {
                    for rp in 0..N {
                        grid_max = grid_max.max(chsh_s(e(l, r), e(l, rp), e(lp, r), e(lp, rp)));
                    }
                }
            }
        }
        let found = optimize_settings(scenario, a, g, 24, 40).unwrap().s;
        assert!(
            found >= grid_max - 1e-12,
            "{scenario}: {found} < grid {grid_max}"
        );
        assert!(
            found - grid_max <= 1e-2,
            "{scenario}: {found} far above grid {grid_max}"
        );
        assert!(
            (found - 2.0 * 1.36f64.sqrt()).abs() <= 1e-6,
            "{scenario}: {found}"
        );
    }
}

#[test]
fn optimizer_reference_values() {
    let tsirelson = optimize_settings(
        Scenario::DoubleBs,
        ProductionAngle::new(FRAC_PI_4).unwrap(),
        BerryPhase::ZERO,
        24,
        40,
    )
    .unwrap();
    assert!((tsirelson.s - 2.0 * SQRT_2).abs() <= 1e-6);

    let product = optimize_settings(
        Scenario::DoubleBs,
        ProductionAngle::new(0.0).unwrap(),
        BerryPhase::ZERO,
        24,
        40,
    )
    .unwrap();
    assert!((product.s - 2.0).abs() <= 1e-6);
}
