use std::f64::consts::{FRAC_PI_2, PI, SQRT_2, TAU};

use num_complex::Complex64;
use pathangle::analysis::{classify_region, optimize_settings};
use pathangle::correlations::{
    expectation_closed, expectation_from_distribution, joint_distribution_closed,
    joint_distribution_sim, s_canonical_sim, s_sim,
};
use pathangle::linalg::{Operator, StateVec4};
use pathangle::optics::{phase_shifter, pipeline, pipeline_operator};
use pathangle::states::{concurrence_of_angle, pathangled_state, wootters_concurrence};
use pathangle::{
    BerryPhase, InterferometerConfig, Mat2, Mat4, ProductionAngle, Scenario, SettingsQuad,
};
use proptest::prelude::*;

fn scenario() -> impl Strategy<Value = Scenario> {
    prop_oneof![Just(Scenario::SingleBs), Just(Scenario::DoubleBs)]
}

fn alpha() -> impl Strategy<Value = ProductionAngle> {
    (0.0..=FRAC_PI_2).prop_map(|a| ProductionAngle::new(a).unwrap())
}

fn gamma() -> impl Strategy<Value = BerryPhase> {
    (-TAU..TAU).prop_map(|g| BerryPhase::new(g).unwrap())
}

fn theta() -> impl Strategy<Value = f64> {
    -TAU..TAU
}

fn complex4() -> impl Strategy<Value = [Complex64; 4]> {
    prop::array::uniform4((-1.0..1.0f64, -1.0..1.0f64))
        .prop_filter("non-zero", |a| {
            a.iter().any(|(r, i)| r.abs() + i.abs() > 1e-3)
        })
        .prop_map(|a| a.map(|(r, i)| Complex64::new(r, i)))
}

/// Random 2×2 unitary: e^{iφ} [[a, −b*], [b, a*]] with |a|² + |b|² = 1.
fn unitary2() -> impl Strategy<Value = Mat2> {
    (0.0..TAU, 0.0..TAU, 0.0..TAU, 0.0..FRAC_PI_2).prop_map(|(phi, pa, pb, t)| {
        let a = Complex64::from_polar(t.cos(), pa);
        let b = Complex64::from_polar(t.sin(), pb);
        Mat2::new([[a, -b.conj()], [b, a.conj()]]).scale(Complex64::from_polar(1.0, phi))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pipeline_is_unitary(s in scenario(), g in gamma(), tl in theta(), tr in theta()) {
        let u = pipeline_operator(&InterferometerConfig::new(s, tl, tr, g).unwrap());
        prop_assert!(u.unitarity_defect() <= 1e-12);
    }

    #[test]
    fn pipeline_preserves_inner_products(
        s in scenario(), g in gamma(), tl in theta(), tr in theta(),
        x in complex4(), y in complex4(),
    ) {
        let u = pipeline_operator(&InterferometerConfig::new(s, tl, tr, g).unwrap());
        let x = StateVec4::normalized(x).unwrap();
        let y = StateVec4::normalized(y).unwrap();
        let before = x.inner(&y);
        let after = u.apply(&x).unwrap().inner(&u.apply(&y).unwrap());
        prop_assert!((before - after).norm() <= 1e-12);
    }

    #[test]
    fn kron_mixed_product(a in unitary2(), b in unitary2(), c in unitary2(), d in unitary2()) {
        let lhs = Mat4::kron(&a, &b) * Mat4::kron(&c, &d);
        let rhs = Mat4::kron(&(a * c), &(b * d));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-14);
    }

    #[test]
    fn distributions_lie_on_simplex(s in scenario(), a in alpha(), g in gamma(), tl in theta(), tr in theta()) {
        let d = joint_distribution_sim(s, a, g, tl, tr).unwrap();
        let p = d.as_array();
        prop_assert!(p.iter().all(|&x| (0.0..=1.0).contains(&x)));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn closed_form_matches_pipeline(s in scenario(), a in alpha(), g in gamma(), tl in theta(), tr in theta()) {
        let c = concurrence_of_angle(a);
        let sim = joint_distribution_sim(s, a, g, tl, tr).unwrap();
        let closed = joint_distribution_closed(s, c, g, tl, tr).unwrap();
        prop_assert!(sim.max_abs_diff(&closed) <= 1e-10);
        let e = expectation_from_distribution(&sim);
        prop_assert!((e - expectation_closed(s, c, g, tl, tr)).abs() <= 1e-10);
        prop_assert!(e.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn berry_phase_sign_and_period(s in scenario(), a in alpha(), g in -PI..PI, tl in theta(), tr in theta()) {
        let p = |g: f64| joint_distribution_sim(s, a, BerryPhase::new(g).unwrap(), tl, tr).unwrap();
        prop_assert!(p(g).max_abs_diff(&p(g + PI)) <= 1e-12);
        let e = |g: f64| expectation_from_distribution(&p(g));
        // γ → −γ leaves E invariant only together with θ → −θ on both arms.
        let flipped = expectation_from_distribution(
            &joint_distribution_sim(s, a, BerryPhase::new(-g).unwrap(), -tl, -tr).unwrap(),
        );
        prop_assert!((e(g) - flipped).abs() <= 1e-12);
    }

    #[test]
    fn chsh_within_tsirelson(
        s in scenario(), a in alpha(), g in gamma(),
        q in prop::array::uniform4(0.0..TAU),
    ) {
        let r = s_sim(s, a, g, SettingsQuad::from_array(q).unwrap()).unwrap();
        prop_assert!(r.s <= 2.0 * SQRT_2 + 1e-10);
    }

    #[test]
    fn region_symmetric_about_quarter_pi(s in scenario(), a in alpha(), g in gamma()) {
        let lhs = classify_region(a, g, s).unwrap();
        let rhs = classify_region(a.mirrored(), g, s).unwrap();
        prop_assert!((lhs.s - rhs.s).abs() <= 1e-12);
        prop_assert_eq!(lhs.region, rhs.region);
    }

    #[test]
    fn canonical_s_matches_closed_s(a in alpha(), g in gamma()) {
        let c = concurrence_of_angle(a).value();
        let osc = (2.0 * g.radians()).cos().abs();
        let one = s_canonical_sim(Scenario::SingleBs, a, g).unwrap().s;
        let two = s_canonical_sim(Scenario::DoubleBs, a, g).unwrap().s;
        prop_assert!((one - SQRT_2 * (1.0 + c) * osc).abs() <= 1e-10);
        prop_assert!((two - SQRT_2 * (c + osc)).abs() <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn optimizer_bounded(s in scenario(), a in alpha(), g in gamma()) {
        let best = optimize_settings(s, a, g, 16, 20).unwrap();
        let canonical = s_canonical_sim(s, a, g).unwrap();
        prop_assert!(best.s >= canonical.s - 1e-12);
        prop_assert!(best.s <= 2.0 * SQRT_2 + 1e-6);
        let check = s_sim(s, a, g, best.settings).unwrap();
        prop_assert!((check.s - best.s).abs() <= 1e-12);
    }
}

#[test]
fn wootters_matches_concurrence_on_dense_grid() {
    for k in 0..=1000 {
        let a = ProductionAngle::new(FRAC_PI_2 * k as f64 / 1000.0).unwrap();
        let c = wootters_concurrence(&pathangled_state(a)).value();
        assert!(
            (c - concurrence_of_angle(a).value()).abs() <= 1e-12,
            "k = {k}"
        );
    }
}

#[test]
fn pipeline_output_is_normalized() {
    let cfg =
        InterferometerConfig::new(Scenario::DoubleBs, 0.3, -1.1, BerryPhase::new(0.7).unwrap())
            .unwrap();
    for k in 0..=90 {
        let a = ProductionAngle::from_degrees(k as f64).unwrap();
        let (_, out) = pipeline(&cfg, a).unwrap();
        assert!((out.norm_sqr() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn phase_shifter_composes_additively() {
    let p = phase_shifter(0.4) * phase_shifter(1.3);
    assert!(p.max_abs_diff(&phase_shifter(1.7)) <= 1e-15);
}
