//! File formats for weights, matrices, rebalancing plans and axiom reports.
//!
//! Exact values are always written as `"p/q"` strings so files round-trip
//! losslessly. Weights may also be read as decimal strings or JSON numbers,
//! which are converted exactly from their decimal text.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::measures::{AxiomOutcome, AxiomReport};
use crate::rebalancing::{RebalancePlan, Trade};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::transform::TTransform;
use crate::weights::Weights;
use crate::WeightVector;

/// A rational written either as a string literal or a bare JSON number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalLiteral {
    Text(String),
    Number(serde_json::Number),
}

impl RationalLiteral {
    pub fn parse(&self) -> Result<Rational> {
        match self {
            RationalLiteral::Text(s) => parse_rational(s),
            RationalLiteral::Number(n) => parse_rational(&n.to_string()),
        }
    }
}

impl From<&Rational> for RationalLiteral {
    fn from(value: &Rational) -> Self {
        RationalLiteral::Text(format_rational(value))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub weights: Vec<RationalLiteral>,
}

impl WeightFile {
    pub fn from_weights(w: &WeightVector) -> Self {
        WeightFile {
            labels: w.labels().map(<[String]>::to_vec),
            weights: w.as_slice().iter().map(RationalLiteral::from).collect(),
        }
    }

    pub fn to_weights(&self) -> Result<WeightVector> {
        let values = self.weights.iter().map(RationalLiteral::parse).collect::<Result<Vec<_>>>()?;
        match &self.labels {
            Some(labels) => Weights::with_labels(values, labels.clone()),
            None => Weights::new(values),
        }
    }
}

fn to_pretty<S: Serialize>(value: &S) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn parse_json<'a, D: Deserialize<'a>>(text: &'a str, what: &str) -> Result<D> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn weights_to_json(w: &WeightVector) -> String {
    to_pretty(&WeightFile::from_weights(w))
}

pub fn weights_from_json(text: &str) -> Result<WeightVector> {
    parse_json::<WeightFile>(text, "weight file")?.to_weights()
}

/// `label,weight` with a header row.
pub fn weights_to_csv(w: &WeightVector) -> String {
    let mut out = String::from("label,weight\n");
    for (i, x) in w.as_slice().iter().enumerate() {
        out.push_str(&format!("{},{}\n", csv_field(&w.label(i)), format_rational(x)));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn weights_from_csv(text: &str) -> Result<WeightVector> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Parse(format!("weight csv: {e}")))?.clone();
    let names: Vec<String> = headers.iter().map(str::to_ascii_lowercase).collect();
    if names != ["label", "weight"] {
        return Err(Error::Parse(format!("weight csv header must be `label,weight`, found {:?}", headers.iter().collect::<Vec<_>>())));
    }
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(format!("weight csv: {e}")))?;
        labels.push(record[0].to_string());
        values.push(parse_rational(&record[1])?);
    }
    Weights::with_labels(values, labels)
}

/// Reads a weight file, choosing CSV for a `.csv` extension and JSON otherwise.
pub fn read_weights(path: impl AsRef<Path>) -> Result<WeightVector> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        weights_from_csv(&text)
    } else {
        weights_from_json(&text)
    }
}

/// `order` may be omitted, which also admits rectangular matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub entries: Vec<Vec<RationalLiteral>>,
}

pub fn matrix_to_json(m: &Matrix<Rational>) -> String {
    let file = MatrixFile {
        order: m.is_square().then(|| m.order()),
        entries: m.to_rows().iter().map(|row| row.iter().map(RationalLiteral::from).collect()).collect(),
    };
    to_pretty(&file)
}

pub fn matrix_from_json(text: &str) -> Result<Matrix<Rational>> {
    let file: MatrixFile = parse_json(text, "matrix file")?;
    let rows = file
        .entries
        .iter()
        .map(|row| row.iter().map(RationalLiteral::parse).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_rows(rows)?;
    if let Some(order) = file.order {
        if !m.is_square() || m.rows() != order {
            return Err(Error::InvalidMatrix(format!("declared order {order} but entries are {}x{}", m.rows(), m.cols())));
        }
    }
    Ok(m)
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<Matrix<Rational>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    matrix_from_json(&text)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    /// 1-based.
    pub j: usize,
    /// 1-based.
    pub k: usize,
    pub lambda: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TradeRecord {
    pub label: String,
    pub delta: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanFile {
    pub source: WeightFile,
    pub target: WeightFile,
    pub steps: Vec<StepRecord>,
    /// 1-based relabelling applied after the steps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relabel: Option<Vec<usize>>,
    pub intermediates: Vec<Vec<String>>,
    pub turnover: String,
    pub practical_turnover: Option<f64>,
    pub trades: Vec<TradeRecord>,
    pub cost: f64,
    pub cost_rate: f64,
}

impl PlanFile {
    pub fn from_plan(plan: &RebalancePlan<Rational>) -> Self {
        PlanFile {
            source: WeightFile::from_weights(&plan.source),
            target: WeightFile::from_weights(&plan.target),
            steps: plan
                .steps
                .iter()
                .map(|t| StepRecord { j: t.j + 1, k: t.k + 1, lambda: format_rational(&t.lambda) })
                .collect(),
            relabel: plan.relabel.as_ref().map(|p| p.iter().map(|i| i + 1).collect()),
            intermediates: plan
                .intermediates
                .iter()
                .map(|w| w.as_slice().iter().map(format_rational).collect())
                .collect(),
            turnover: format_rational(&plan.turnover),
            practical_turnover: plan.practical_turnover,
            trades: plan
                .trades
                .iter()
                .map(|t| TradeRecord { label: t.label.clone(), delta: format_rational(&t.delta) })
                .collect(),
            cost: plan.cost,
            cost_rate: plan.cost_rate,
        }
    }

    pub fn to_plan(&self) -> Result<RebalancePlan<Rational>> {
        let source = self.source.to_weights()?;
        let target = self.target.to_weights()?;
        let zero_based = |i: usize| {
            i.checked_sub(1).ok_or_else(|| Error::Parse("plan indices are 1-based".into()))
        };
        let steps = self
            .steps
            .iter()
            .map(|s| TTransform::new(zero_based(s.j)?, zero_based(s.k)?, parse_rational(&s.lambda)?))
            .collect::<Result<Vec<_>>>()?;
        let relabel = self
            .relabel
            .as_ref()
            .map(|p| p.iter().map(|&i| zero_based(i)).collect::<Result<Vec<_>>>())
            .transpose()?;
        let labels = source.labels().map(<[String]>::to_vec);
        let intermediates = self
            .intermediates
            .iter()
            .map(|w| {
                let values = w.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                let w = Weights::new(values)?;
                w.relabel(labels.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let trades = self
            .trades
            .iter()
            .map(|t| Ok(Trade { label: t.label.clone(), delta: parse_rational(&t.delta)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(RebalancePlan {
            source,
            target,
            steps,
            relabel,
            intermediates,
            turnover: parse_rational(&self.turnover)?,
            practical_turnover: self.practical_turnover,
            trades,
            cost: self.cost,
            cost_rate: self.cost_rate,
        })
    }
}

pub fn plan_to_json(plan: &RebalancePlan<Rational>) -> String {
    to_pretty(&PlanFile::from_plan(plan))
}

pub fn plan_from_json(text: &str) -> Result<RebalancePlan<Rational>> {
    parse_json::<PlanFile>(text, "plan file")?.to_plan()
}

fn outcome_json(o: &AxiomOutcome) -> Value {
    let counterexample = o.counterexample.as_ref().map(|ws| {
        ws.iter().map(|w| w.as_slice().iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>()
    });
    json!({
        "passed": o.passed,
        "tested": o.tested,
        "checked": o.checked,
        "counterexample": counterexample,
    })
}

pub fn axiom_report_json(report: &AxiomReport) -> Value {
    let axioms: serde_json::Map<String, Value> =
        report.axioms().iter().map(|(name, o)| (name.to_string(), outcome_json(o))).collect();
    json!({
        "measure": report.measure,
        "n": report.n,
        "samples": report.samples,
        "seed": report.seed,
        "all_passed": report.all_passed(),
        "axioms": axioms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rebalancing::minimal_turnover_plan;
    use crate::scalar::Scalar;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn weight_json_forms() {
        let w = weights_from_json(r#"{"labels": ["A","B","C"], "weights": ["1/2","1/3","1/6"]}"#).unwrap();
        assert_eq!(w.as_slice(), &[q(1, 2), q(1, 3), q(1, 6)]);
        assert_eq!(w.label(1), "B");
        let w = weights_from_json(r#"{"weights": ["0.25", 0.75]}"#).unwrap();
        assert_eq!(w.as_slice(), &[q(1, 4), q(3, 4)]);
        assert!(w.labels().is_none());
        assert!(weights_from_json(r#"{"weights": ["1/2","1/3"]}"#).is_err());
        assert!(weights_from_json(r#"{"weights": ["x"]}"#).is_err());
        assert!(weights_from_json("[1]").is_err());
    }

    #[test]
    fn weight_json_round_trip() {
        let w = Weights::with_labels(vec![q(1, 2), q(1, 3), q(1, 6)], vec!["A".into(), "B".into(), "C".into()]).unwrap();
        let text = weights_to_json(&w);
        assert!(text.contains("\"1/6\""));
        assert_eq!(weights_from_json(&text).unwrap(), w);
    }

    #[test]
    fn weight_csv() {
        let w = weights_from_csv("label,weight\nA,1/2\nB, 0.25\nC,1/4\n").unwrap();
        assert_eq!(w.as_slice(), &[q(1, 2), q(1, 4), q(1, 4)]);
        assert_eq!(weights_from_csv(&weights_to_csv(&w)).unwrap(), w);
        assert!(weights_from_csv("A,1/2\nB,1/2\n").is_err());
        assert!(weights_from_csv("label,weight\nA,1/2\nA,1/2\n").is_err());
    }

    #[test]
    fn matrix_json() {
        let text = r#"{"order": 3, "entries": [["1/2","0","1/2"],["0","1","0"],["1/2","0","1/2"]]}"#;
        let m = matrix_from_json(text).unwrap();
        assert_eq!(m.row(0), &[q(1, 2), q(0, 1), q(1, 2)]);
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        assert!(matrix_from_json(r#"{"order": 2, "entries": [["1"]]}"#).is_err());
        let rect = matrix_from_json(r#"{"entries": [["1","0","1/2"]]}"#).unwrap();
        assert_eq!((rect.rows(), rect.cols()), (1, 3));
    }

    #[test]
    fn plan_round_trip() {
        let w = Weights::new(vec![q(7, 10), q(1, 5), q(1, 10)]).unwrap();
        let plan = minimal_turnover_plan(&w, 0.01);
        let text = plan_to_json(&plan);
        assert!(text.contains("\"turnover\": \"11/30\""));
        assert!(text.contains("\"lambda\": \"11/18\""));
        let back = plan_from_json(&text).unwrap();
        assert_eq!(back, plan);
        assert!(back.verify().unwrap());
    }

    #[test]
    fn axiom_report_shape() {
        let m = "hhi".parse().unwrap();
        let r = crate::measures::axiom_suite(&m, 1, 20, 3);
        let v = axiom_report_json(&r);
        assert_eq!(v["axioms"]["A4_representation"]["passed"], json!(true));
        assert_eq!(v["samples"], json!(20));
        assert_eq!(v["seed"], json!(1));
    }
}
