use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value};

use diversify::io::{axiom_report_json, plan_to_json, read_matrix, read_weights};
use diversify::lorenz::LorenzCurve;
use diversify::measures::schur_ostrowski_check_seeded;
use diversify::sampling::{random_interior, rng_from_seed};
use diversify::scalar::format_significant;
use diversify::{
    axiom_suite, compare as majorization_compare, format_rational, inequality_aversion_coefficient, lorenz_curve,
    lorenz_dominates, minimal_turnover_plan, multivariate_feasible, naive_prefer, parse_rational, rebalance_to,
    registry, Error, MeasureSpec, Rational, RebalancePlan, Scalar, WeightVector,
};

use crate::output::{self, decimal, Format};
use crate::GlobalArgs;

fn load(path: &Path) -> Result<WeightVector> {
    read_weights(path).with_context(|| format!("reading weights from {}", path.display()))
}

fn measure(id: &str) -> Result<MeasureSpec> {
    Ok(id.parse::<MeasureSpec>()?)
}

fn ratio(value: &Rational, g: &GlobalArgs) -> String {
    decimal(value.to_f64_lossy(), g.precision)
}

pub fn compare(g: &GlobalArgs, a: &Path, b: &Path, lorenz: bool) -> Result<String> {
    let (a, b) = (load(a)?, load(b)?);
    let fields: Vec<(&str, String)> = if lorenz {
        let rel = lorenz_dominates(&lorenz_curve(&a), &lorenz_curve(&b));
        vec![("lorenz", rel.to_string())]
    } else {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch(a.len(), b.len()))
                .context("allocations of different lengths need --lorenz");
        }
        vec![
            ("relation", majorization_compare(&a, &b)?.to_string()),
            ("preference", naive_prefer(&a, &b)?.to_string()),
        ]
    };
    Ok(match g.format.unwrap_or(Format::Table) {
        Format::Json => {
            let map: Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            output::json(&Value::Object(map))
        }
        Format::Csv => output::csv(
            &fields.iter().map(|(k, _)| *k).collect::<Vec<_>>(),
            &[fields.iter().map(|(_, v)| v.clone()).collect()],
        ),
        Format::Table => output::table(&fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<Vec<_>>()),
    })
}

enum MeasureValue {
    Exact(Rational),
    Float(f64),
}

pub fn measures(g: &GlobalArgs, file: &Path, ids: &[String]) -> Result<String> {
    let w = load(file)?;
    let specs = if ids.is_empty() {
        registry()
    } else {
        ids.iter().map(|id| measure(id)).collect::<Result<Vec<_>>>()?
    };
    let mut values = Vec::with_capacity(specs.len());
    for m in &specs {
        let v = if m.is_exact() { MeasureValue::Exact(m.evaluate_exact(w.as_slice())?) } else { MeasureValue::Float(m.evaluate(&w)?) };
        values.push((m.name(), v));
    }
    Ok(match g.format.unwrap_or(Format::Table) {
        Format::Json => {
            let map: Map<String, Value> = values
                .iter()
                .map(|(name, v)| {
                    let v = match v {
                        MeasureValue::Exact(r) => json!(format_rational(r)),
                        MeasureValue::Float(f) => json!(f),
                    };
                    (name.clone(), v)
                })
                .collect();
            output::json(&Value::Object(map))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = values
                .iter()
                .map(|(name, v)| {
                    let v = match v {
                        MeasureValue::Exact(r) => format_rational(r),
                        MeasureValue::Float(f) => format!("{f:?}"),
                    };
                    vec![format!("\"{name}\""), v]
                })
                .collect();
            output::csv(&["measure", "value"], &rows)
        }
        Format::Table => {
            let rows: Vec<(String, String)> = values
                .iter()
                .map(|(name, v)| {
                    let v = match v {
                        MeasureValue::Exact(r) => ratio(r, g),
                        MeasureValue::Float(f) => decimal(*f, g.precision),
                    };
                    (name.clone(), v)
                })
                .collect();
            output::table(&rows)
        }
    })
}

fn plan_table(plan: &RebalancePlan<Rational>, g: &GlobalArgs) -> String {
    let mut rows = vec![
        ("turnover".to_string(), format!("{} ({})", ratio(&plan.turnover, g), format_rational(&plan.turnover))),
        (
            "practical_turnover".to_string(),
            plan.practical_turnover.map(|v| decimal(v, g.precision)).unwrap_or_else(|| "n/a".into()),
        ),
        ("cost".to_string(), decimal(plan.cost, g.precision)),
        ("steps".to_string(), plan.steps.len().to_string()),
    ];
    for (i, t) in plan.steps.iter().enumerate() {
        let (j, k) = (plan.source.label(t.j), plan.source.label(t.k));
        rows.push((format!("step {}", i + 1), format!("{j} -> {k}, lambda = {}", ratio(&t.lambda, g))));
    }
    if let Some(perm) = &plan.relabel {
        let perm: Vec<String> = perm.iter().map(|p| (p + 1).to_string()).collect();
        rows.push(("relabel".to_string(), perm.join(" ")));
    }
    for t in &plan.trades {
        rows.push((format!("trade {}", t.label), ratio(&t.delta, g)));
    }
    output::table(&rows)
}

pub fn rebalance(g: &GlobalArgs, file: &Path, target: &str, cost_rate: f64) -> Result<String> {
    if !(cost_rate >= 0.0 && cost_rate.is_finite()) {
        bail!("cost rate must be a finite non-negative number, got {cost_rate}");
    }
    let source = load(file)?;
    let plan = if target == "equal" {
        minimal_turnover_plan(&source, cost_rate)
    } else {
        let target = load(Path::new(target))?;
        rebalance_to(&source, &target, cost_rate)?
    };
    Ok(match g.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut s = plan_to_json(&plan);
            s.push('\n');
            s
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                plan.trades.iter().map(|t| vec![format!("\"{}\"", t.label), format_rational(&t.delta)]).collect();
            output::csv(&["label", "delta"], &rows)
        }
        Format::Table => plan_table(&plan, g),
    })
}

fn curve_points(curve: &LorenzCurve<Rational>, extra: &[String]) -> Result<Vec<(Rational, Rational)>> {
    let mut points = curve.points().to_vec();
    for text in extra {
        let t = parse_rational(text)?;
        if t < Rational::from_ratio(0, 1) || t > Rational::from_ratio(1, 1) {
            bail!("interpolation point {text} outside [0, 1]");
        }
        let y = curve.value_at(&t);
        points.push((t, y));
    }
    points.sort_by(|a, b| a.0.cmp(&b.0));
    points.dedup_by(|a, b| a.0 == b.0);
    Ok(points)
}

pub fn lorenz(g: &GlobalArgs, file: &Path, extra: &[String]) -> Result<String> {
    let w = load(file)?;
    let points = curve_points(&lorenz_curve(&w), extra)?;
    Ok(match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                points.iter().map(|(t, y)| vec![format_rational(t), format_rational(y)]).collect();
            output::csv(&["t", "L(t)"], &rows)
        }
        Format::Json => {
            let pts: Vec<Value> = points
                .iter()
                .map(|(t, y)| json!({"t": format_rational(t), "L": format_rational(y)}))
                .collect();
            output::json(&json!({ "points": pts }))
        }
        Format::Table => {
            let rows: Vec<(String, String)> = points.iter().map(|(t, y)| (ratio(t, g), ratio(y, g))).collect();
            let mut out = output::table(&[("t".into(), "L(t)".into())]);
            out.push_str(&output::table(&rows));
            out
        }
    })
}

pub fn axioms(g: &GlobalArgs, id: &str, n: usize, samples: usize) -> Result<String> {
    let m = measure(id)?;
    if n == 0 || samples == 0 {
        bail!("--n and --samples must be at least 1");
    }
    let report = axiom_suite(&m, g.seed, samples, n);
    Ok(match g.format.unwrap_or(Format::Json) {
        Format::Json => output::json(&axiom_report_json(&report)),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .axioms()
                .iter()
                .map(|(name, o)| vec![name.to_string(), o.passed.to_string(), o.tested.to_string(), o.checked.to_string()])
                .collect();
            output::csv(&["axiom", "passed", "tested", "checked"], &rows)
        }
        Format::Table => {
            let mut rows = vec![
                ("measure".to_string(), report.measure.clone()),
                ("n".to_string(), n.to_string()),
                ("samples".to_string(), samples.to_string()),
                ("seed".to_string(), g.seed.to_string()),
            ];
            for (name, o) in report.axioms() {
                let verdict = match (o.tested, o.passed) {
                    (false, _) => "not tested".to_string(),
                    (true, true) => format!("pass ({} checks)", o.checked),
                    (true, false) => {
                        let ce: Vec<String> = o
                            .counterexample
                            .iter()
                            .flatten()
                            .map(|w| {
                                let parts: Vec<String> = w.as_slice().iter().map(format_rational).collect();
                                format!("({})", parts.join(", "))
                            })
                            .collect();
                        format!("FAIL at {}", ce.join(" vs "))
                    }
                };
                rows.push((name.to_string(), verdict));
            }
            output::table(&rows)
        }
    })
}

pub fn aversion(g: &GlobalArgs, d: &Path) -> Result<String> {
    let d = load(d)?;
    let e = inequality_aversion_coefficient(&d);
    let squared = format_rational(&e.squared);
    let value = format_significant(e.value, 15);
    Ok(match g.format.unwrap_or(Format::Table) {
        Format::Json => output::json(&json!({ "epsilon_squared": squared, "epsilon": e.value })),
        Format::Csv => output::csv(&["epsilon_squared", "epsilon"], &[vec![squared, value]]),
        Format::Table => output::table(&[("epsilon_squared".into(), squared), ("epsilon".into(), value)]),
    })
}

pub fn schur_check(
    g: &GlobalArgs,
    id: &str,
    point: Option<&Path>,
    n: usize,
    samples: usize,
    step: f64,
) -> Result<String> {
    let m = measure(id)?;
    let f = m.utility_fn();
    let points = match point {
        Some(path) => vec![load(path)?],
        None => {
            if n == 0 || samples == 0 {
                bail!("--n and --samples must be at least 1");
            }
            let mut rng = rng_from_seed(g.seed);
            (0..samples).map(|_| random_interior(&mut rng, n, 0.01)).collect()
        }
    };
    let mut passed = 0;
    let mut first_failure = None;
    for (i, p) in points.iter().enumerate() {
        if schur_ostrowski_check_seeded(&f, p, step, g.seed.wrapping_add(i as u64))? {
            passed += 1;
        } else if first_failure.is_none() {
            first_failure = Some(p.as_slice().iter().map(format_rational).collect::<Vec<_>>());
        }
    }
    let all = passed == points.len();
    Ok(match g.format.unwrap_or(Format::Table) {
        Format::Json => output::json(&json!({
            "measure": m.name(),
            "points": points.len(),
            "passed": passed,
            "schur_concave": all,
            "first_failure": first_failure,
        })),
        Format::Csv => output::csv(
            &["measure", "points", "passed", "schur_concave"],
            &[vec![format!("\"{}\"", m.name()), points.len().to_string(), passed.to_string(), all.to_string()]],
        ),
        Format::Table => {
            let mut rows = vec![
                ("measure".to_string(), m.name()),
                ("points".to_string(), points.len().to_string()),
                ("passed".to_string(), passed.to_string()),
                ("schur_concave".to_string(), all.to_string()),
            ];
            if let Some(p) = first_failure {
                rows.push(("first_failure".to_string(), format!("({})", p.join(", "))));
            }
            output::table(&rows)
        }
    })
}

pub fn multi_check(g: &GlobalArgs, x: &Path, y: &Path) -> Result<String> {
    let xm = read_matrix(x).with_context(|| format!("reading matrix from {}", x.display()))?;
    let ym = read_matrix(y).with_context(|| format!("reading matrix from {}", y.display()))?;
    let witness = multivariate_feasible(&xm, &ym)?;
    let rows: Option<Vec<Vec<Rational>>> = witness.map(|p| p.matrix().to_rows());
    Ok(match g.format.unwrap_or(Format::Table) {
        Format::Json => {
            let entries = rows.as_ref().map(|r| {
                r.iter().map(|row| row.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>()
            });
            output::json(&json!({ "feasible": rows.is_some(), "witness": entries }))
        }
        Format::Csv => match &rows {
            // witness rows; empty body when infeasible
            Some(r) => {
                let n = r.len();
                let header: Vec<String> = (1..=n).map(|j| format!("p{j}")).collect();
                let body: Vec<Vec<String>> = r.iter().map(|row| row.iter().map(format_rational).collect()).collect();
                output::csv(&header.iter().map(String::as_str).collect::<Vec<_>>(), &body)
            }
            None => "feasible\nfalse\n".to_string(),
        },
        Format::Table => {
            let mut out = output::table(&[("feasible".into(), rows.is_some().to_string())]);
            for row in rows.iter().flatten() {
                let cells: Vec<String> = row.iter().map(|v| ratio(v, g)).collect();
                out.push_str(&cells.join("  "));
                out.push('\n');
            }
            out
        }
    })
}
