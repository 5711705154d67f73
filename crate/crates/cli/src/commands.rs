use std::f64::consts::SQRT_2;

use pathangle::analysis::{
    self, audit_closed_vs_sim, critical_angle, critical_angle_closed_form,
    deterministic_strategies, lhv_deterministic_max, optimize_settings, AnglePoint, AuditReport,
    Deviation, GridPoint, GridSpec, AUDIT_TOL,
};
use pathangle::correlations::{
    expectation_closed, expectation_from_distribution, joint_distribution_closed,
    joint_distribution_sim, s_canonical_sim,
};
use pathangle::states::concurrence_of_angle;
use pathangle::{BerryPhase, ProductionAngle, Scenario, SettingsQuad};
use serde_json::{json, Map, Value};

use crate::cli::{AuditArgs, CriticalArgs, Format, OptimizeArgs, ProbeArgs, ScanArgs};
use crate::format::{sig, CsvTable};
use crate::svg::{Plot, Series};
use crate::CliError;

/// Significant digits in CSV output.
pub const CSV_DIGITS: usize = 12;

/// Rendered command output plus the exit code to report after writing it.
pub struct Rendered {
    pub body: String,
    pub exit_code: i32,
}

impl Rendered {
    fn ok(body: String) -> Self {
        Rendered { body, exit_code: 0 }
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn json_only(command: &str, format: Option<Format>) -> Result<(), CliError> {
    match format {
        None | Some(Format::Json) => Ok(()),
        Some(f) => Err(CliError::Usage(format!(
            "`{command}` only supports --format json, got {f:?}"
        ))),
    }
}

/// Inserts `<name>_deg` and `<name>_rad` for an angle given in radians.
fn put_angle(obj: &mut Map<String, Value>, name: &str, rad: f64) {
    put_angle_both(obj, name, rad.to_degrees(), rad);
}

/// Same as [`put_angle`], keeping a user-supplied degree value verbatim.
fn put_angle_both(obj: &mut Map<String, Value>, name: &str, deg: f64, rad: f64) {
    obj.insert(format!("{name}_deg"), json!(deg));
    obj.insert(format!("{name}_rad"), json!(rad));
}

fn angles(pairs: &[(&str, f64)]) -> Map<String, Value> {
    let mut m = Map::new();
    for (name, rad) in pairs {
        put_angle(&mut m, name, *rad);
    }
    m
}

fn settings_json(q: &SettingsQuad) -> Value {
    Value::Object(angles(&[
        ("theta_l", q.theta_l),
        ("theta_r", q.theta_r),
        ("theta_l_prime", q.theta_l_prime),
        ("theta_r_prime", q.theta_r_prime),
    ]))
}

fn parse_settings(deg: &[f64]) -> Result<SettingsQuad, CliError> {
    let arr: [f64; 4] = deg
        .try_into()
        .map_err(|_| CliError::Usage("--settings takes exactly four angles".into()))?;
    Ok(SettingsQuad::from_array(arr.map(f64::to_radians))?)
}

pub fn probe(args: &ProbeArgs, format: Option<Format>) -> Result<Rendered, CliError> {
    let scenario = args.scenario.scenario;
    let alpha = ProductionAngle::from_degrees(args.alpha)?;
    let gamma = BerryPhase::new(args.gamma.to_radians())?;
    let (tl, tr) = (args.theta_l.to_radians(), args.theta_r.to_radians());
    let c = concurrence_of_angle(alpha);

    let sim = joint_distribution_sim(scenario, alpha, gamma, tl, tr)?;
    let closed = joint_distribution_closed(scenario, c, gamma, tl, tr)?;
    let e_sim = expectation_from_distribution(&sim);
    let e_closed = expectation_closed(scenario, c, gamma, tl, tr);

    let names = ["p00", "p01", "p10", "p11"];
    let rows: Vec<(&str, f64, f64)> = names
        .iter()
        .zip(sim.as_array().into_iter().zip(closed.as_array()))
        .map(|(n, (s, c))| (*n, s, c))
        .chain(std::iter::once(("e", e_sim, e_closed)))
        .collect();

    match format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut t = CsvTable::new(&["quantity", "sim", "closed", "deviation"]);
            for (name, s, c) in &rows {
                t.row(&[
                    name.to_string(),
                    sig(*s, CSV_DIGITS),
                    sig(*c, CSV_DIGITS),
                    sig((s - c).abs(), CSV_DIGITS),
                ]);
            }
            Ok(Rendered::ok(t.finish()))
        }
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("scenario".into(), json!(scenario.label()));
            put_angle_both(&mut obj, "alpha", args.alpha, alpha.radians());
            put_angle_both(&mut obj, "gamma", args.gamma, gamma.radians());
            put_angle_both(&mut obj, "theta_l", args.theta_l, tl);
            put_angle_both(&mut obj, "theta_r", args.theta_r, tr);
            obj.insert("concurrence".into(), json!(c.value()));
            let mut probs = Map::new();
            for (name, s, c) in &rows[..4] {
                probs.insert(
                    name.to_string(),
                    json!({ "sim": s, "closed": c, "deviation": (s - c).abs() }),
                );
            }
            obj.insert("probabilities".into(), Value::Object(probs));
            obj.insert(
                "expectation".into(),
                json!({ "sim": e_sim, "closed": e_closed, "deviation": (e_sim - e_closed).abs() }),
            );
            Ok(Rendered::ok(to_json(&Value::Object(obj))))
        }
        Format::Svg => Err(CliError::Usage(
            "`probe` does not support --format svg".into(),
        )),
    }
}

/// Degrees from `start` to `stop` inclusive in increments of `step`.
pub fn axis(name: &str, start: f64, stop: Option<f64>, step: f64) -> Result<Vec<f64>, CliError> {
    let stop = stop.unwrap_or(start);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(CliError::Domain(format!("{name} range must be finite")));
    }
    if step <= 0.0 {
        return Err(CliError::Domain(format!("{name} step must be positive")));
    }
    if stop < start {
        return Err(CliError::Domain(format!(
            "{name} stop must not precede start"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if n > 1_000_000 {
        return Err(CliError::Domain(format!(
            "{name} axis has too many points ({n})"
        )));
    }
    Ok((0..n).map(|k| start + k as f64 * step).collect())
}

pub fn scan(args: &ScanArgs, format: Option<Format>) -> Result<Rendered, CliError> {
    let scenario = args.scenario.scenario;
    let alpha_deg = axis("alpha", args.alpha_start, args.alpha_stop, args.alpha_step)?;
    let gamma_deg = axis("gamma", args.gamma_start, args.gamma_stop, args.gamma_step)?;
    if let Some(bad) = alpha_deg.iter().find(|a| !(0.0..=90.0).contains(*a)) {
        return Err(CliError::Domain(format!("alpha {bad}° is outside [0, 90]")));
    }
    let settings = parse_settings(&args.settings)?;
    let alpha_rad: Vec<f64> = alpha_deg.iter().map(|d| d.to_radians()).collect();
    let gamma_rad: Vec<f64> = gamma_deg.iter().map(|d| d.to_radians()).collect();
    let rows = analysis::scan(scenario, &alpha_rad, &gamma_rad, settings)?;
    let ng = gamma_deg.len();
    let deg_of = |k: usize| (alpha_deg[k / ng], gamma_deg[k % ng]);

    match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut t = CsvTable::new(&[
                "scenario",
                "alpha_deg",
                "gamma_deg",
                "concurrence",
                "s_sim",
                "s_paper",
                "region",
            ]);
            for (k, r) in rows.iter().enumerate() {
                let (a, g) = deg_of(k);
                t.row(&[
                    scenario.label().to_string(),
                    sig(a, CSV_DIGITS),
                    sig(g, CSV_DIGITS),
                    sig(r.concurrence, CSV_DIGITS),
                    sig(r.s_sim, CSV_DIGITS),
                    sig(r.s_paper, CSV_DIGITS),
                    r.region.as_str().to_string(),
                ]);
            }
            Ok(Rendered::ok(t.finish()))
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    let (a, g) = deg_of(k);
                    let mut m = Map::new();
                    put_angle_both(&mut m, "alpha", a, r.alpha);
                    put_angle_both(&mut m, "gamma", g, r.gamma);
                    m.insert("concurrence".into(), json!(r.concurrence));
                    m.insert("s_sim".into(), json!(r.s_sim));
                    m.insert("s_paper".into(), json!(r.s_paper));
                    m.insert("region".into(), json!(r.region.as_str()));
                    Value::Object(m)
                })
                .collect();
            let v = json!({
                "scenario": scenario.label(),
                "settings": settings_json(&settings),
                "rows": items,
            });
            Ok(Rendered::ok(to_json(&v)))
        }
        Format::Svg => {
            let series: Vec<Series> = if ng > 1 {
                alpha_deg
                    .iter()
                    .enumerate()
                    .map(|(i, a)| Series {
                        label: format!("alpha = {}°", sig(*a, 6)),
                        points: (0..ng)
                            .map(|j| (gamma_deg[j], rows[i * ng + j].s_sim))
                            .collect(),
                    })
                    .collect()
            } else {
                vec![Series {
                    label: format!("gamma = {}°", sig(gamma_deg[0], 6)),
                    points: alpha_deg
                        .iter()
                        .zip(&rows)
                        .map(|(a, r)| (*a, r.s_sim))
                        .collect(),
                }]
            };
            let title = format!("S under scenario {}", scenario.label());
            let x_label = if ng > 1 { "gamma (deg)" } else { "alpha (deg)" };
            let svg = Plot {
                title: &title,
                x_label,
                y_label: "S",
                series: &series,
                guides: &[(2.0, "LHV bound"), (2.0 * SQRT_2, "Tsirelson")],
            }
            .render();
            Ok(Rendered::ok(svg))
        }
    }
}

pub fn critical(args: &CriticalArgs, format: Option<Format>) -> Result<Rendered, CliError> {
    json_only("critical-angle", format)?;
    let alpha_c = critical_angle(args.tolerance)?;
    let closed = critical_angle_closed_form();
    let a = ProductionAngle::new(alpha_c)?;
    let s1 = s_canonical_sim(Scenario::SingleBs, a, BerryPhase::ZERO)?.s;
    let s2 = s_canonical_sim(Scenario::DoubleBs, a, BerryPhase::ZERO)?.s;
    let mut obj = Map::new();
    put_angle(&mut obj, "alpha_c", alpha_c);
    put_angle(&mut obj, "closed_form", closed);
    obj.insert("difference_rad".into(), json!((alpha_c - closed).abs()));
    obj.insert("tolerance_rad".into(), json!(args.tolerance));
    obj.insert(
        "concurrence_at_critical".into(),
        json!(concurrence_of_angle(a).value()),
    );
    obj.insert("s_at_critical".into(), json!(s1));
    obj.insert("s_at_critical_scenario_ii".into(), json!(s2));
    Ok(Rendered::ok(to_json(&Value::Object(obj))))
}

pub fn optimize(args: &OptimizeArgs, format: Option<Format>) -> Result<Rendered, CliError> {
    json_only("optimize", format)?;
    let scenario = args.scenario.scenario;
    let alpha = ProductionAngle::from_degrees(args.alpha)?;
    let gamma = BerryPhase::new(args.gamma.to_radians())?;
    let report = optimize_settings(
        scenario,
        alpha,
        gamma,
        args.coarse as usize,
        args.rounds as usize,
    )?;
    let canonical = s_canonical_sim(scenario, alpha, gamma)?;
    let mut obj = Map::new();
    obj.insert("scenario".into(), json!(scenario.label()));
    put_angle_both(&mut obj, "alpha", args.alpha, alpha.radians());
    put_angle_both(&mut obj, "gamma", args.gamma, gamma.radians());
    obj.insert(
        "concurrence".into(),
        json!(concurrence_of_angle(alpha).value()),
    );
    obj.insert("settings".into(), settings_json(&report.settings));
    obj.insert("s_max".into(), json!(report.s));
    obj.insert("s_canonical".into(), json!(canonical.s));
    obj.insert("method".into(), json!(report.method.as_str()));
    obj.insert("region".into(), json!(report.region.as_str()));
    obj.insert("coarse".into(), json!(args.coarse));
    obj.insert("rounds".into(), json!(args.rounds));
    Ok(Rendered::ok(to_json(&Value::Object(obj))))
}

fn grid_point_json(p: &GridPoint) -> Value {
    Value::Object(angles(&[
        ("alpha", p.alpha),
        ("gamma", p.gamma),
        ("theta_l", p.theta_l),
        ("theta_r", p.theta_r),
    ]))
}

fn angle_point_json(p: &AnglePoint) -> Value {
    Value::Object(angles(&[("alpha", p.alpha), ("gamma", p.gamma)]))
}

fn deviation_json<P>(d: &Deviation<P>, point: impl Fn(&P) -> Value) -> Value {
    json!({ "max_abs_deviation": d.max_abs, "worst": point(&d.worst) })
}

pub fn audit_json(r: &AuditReport) -> Value {
    let landmarks: Vec<Value> = r
        .landmarks
        .iter()
        .map(|l| {
            json!({
                "label": l.label,
                "points": l.points,
                "max_abs_deviation": l.deviation.max_abs,
                "worst": angle_point_json(&l.deviation.worst),
            })
        })
        .collect();
    json!({
        "scenario": r.scenario.label(),
        "grid": {
            "alpha_steps": r.grid.alpha_steps,
            "gamma_steps": r.grid.gamma_steps,
            "theta_steps": r.grid.theta_steps,
            "description": r.grid.describe(),
        },
        "tolerance": AUDIT_TOL,
        "passed": r.passed(),
        "probability": deviation_json(&r.probability, grid_point_json),
        "expectation": deviation_json(&r.expectation, grid_point_json),
        "s_paper": {
            "max_abs_deviation": r.s_paper.max_abs,
            "worst": angle_point_json(&r.s_paper.worst),
            "asserted": false,
        },
        "s_landmarks": landmarks,
    })
}

pub fn audit(args: &AuditArgs, format: Option<Format>) -> Result<Rendered, CliError> {
    json_only("audit", format)?;
    let report = audit_closed_vs_sim(
        args.scenario.scenario,
        GridSpec::uniform(args.steps as usize),
    )?;
    Ok(Rendered {
        body: to_json(&audit_json(&report)),
        exit_code: if report.passed() {
            0
        } else {
            crate::EXIT_AUDIT
        },
    })
}

pub fn lhv_bound(format: Option<Format>) -> Result<Rendered, CliError> {
    json_only("lhv-bound", format)?;
    let strategies: Vec<Value> = deterministic_strategies()
        .iter()
        .map(|s| {
            let [ab, ab2, a2b, a2b2] = s.correlations();
            json!({
                "a": s.a, "a_prime": s.a_prime, "b": s.b, "b_prime": s.b_prime,
                "e_ab": ab, "e_ab_prime": ab2, "e_a_prime_b": a2b, "e_a_prime_b_prime": a2b2,
                "s": s.s(),
            })
        })
        .collect();
    let max = lhv_deterministic_max();
    let v = json!({
        "count": strategies.len(),
        "strategies": strategies,
        "max": max as i64,
    });
    Ok(Rendered::ok(to_json(&v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_generation() {
        assert_eq!(axis("a", 0.0, Some(2.0), 1.0).unwrap(), vec![0.0, 1.0, 2.0]);
        assert_eq!(axis("a", 5.0, None, 1.0).unwrap(), vec![5.0]);
        assert_eq!(axis("a", 0.0, Some(90.0), 0.1).unwrap().len(), 901);
        assert_eq!(axis("a", 0.0, Some(1.0), 0.3).unwrap().len(), 4);
        assert!(axis("a", 0.0, Some(1.0), 0.0).is_err());
        assert!(axis("a", 2.0, Some(1.0), 1.0).is_err());
    }
}
