use mindeg_core::model::rational::{to_decimal_parts, to_f64};
use mindeg_core::ExactRational;
use serde::Serialize;

/// An exact rational as decimal strings.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Exact {
    pub num: String,
    pub den: String,
}

impl From<&ExactRational> for Exact {
    fn from(q: &ExactRational) -> Self {
        let (num, den) = to_decimal_parts(q);
        Exact { num, den }
    }
}

#[derive(Serialize, Debug)]
pub struct EvalReport {
    pub target: &'static str,
    pub params: serde_json::Value,
    pub value: Exact,
    pub approx: f64,
}

impl EvalReport {
    pub fn new(target: &'static str, params: serde_json::Value, value: &ExactRational) -> Self {
        EvalReport {
            target,
            params,
            value: value.into(),
            approx: to_f64(value),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct SimulateReport {
    pub ambient: String,
    pub delta: u32,
    pub target: String,
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    pub stderr: f64,
    pub reference: Option<Exact>,
    pub reference_approx: Option<f64>,
    pub z_score: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<Vec<(usize, u64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stddev: Option<f64>,
}

#[derive(Serialize, Debug)]
pub struct DistributionRow {
    pub k: u64,
    pub value: Exact,
    pub approx: f64,
}

#[derive(Serialize, Debug)]
pub struct DistributionReport {
    pub edge_total: u64,
    pub h: u64,
    pub delta_big: u64,
    pub rows: Vec<DistributionRow>,
    pub total: Exact,
    pub total_approx: f64,
    pub argmax: u64,
}

#[derive(Serialize, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Serialize, Debug)]
pub struct VerifySummary {
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
