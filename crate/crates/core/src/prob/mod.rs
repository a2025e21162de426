//! Union bounds evaluated in log space, the thresholds they imply, and Monte
//! Carlo estimates under the uniform random 3-colouring of `K_n`.

mod bounds;
mod monte_carlo;

pub use bounds::{
    appendix_chain, appendix_chain_unchecked, appendix_threshold, clique_union_bound, copy_union_bound,
    double_star_threshold, double_star_value, shared_leaf_threshold, shared_leaf_value, tree_union_bound,
};
pub use monte_carlo::{exact_non_polychromatic_probability, monte_carlo_polychromatic, MonteCarloEstimate, Z_99};

use serde::{Serialize, Serializer};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProbError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("outside the regime: {0}")]
    Regime(String),
}

/// Number of terms below which `ln C(n,k)` is summed directly.
const DIRECT_TERMS: u64 = 200_000;

/// `ln C(n, k)`, or `-inf` when `k > n`.
pub fn ln_choose(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    if k <= DIRECT_TERMS {
        let base = (n - k) as f64;
        (1..=k).map(|i| ((base + i as f64) / i as f64).ln()).sum()
    } else {
        ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
    }
}

/// Writes non-finite floats as the strings `"-inf"`, `"inf"`, `"nan"`.
pub(crate) fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if x.is_nan() {
        s.serialize_str("nan")
    } else if *x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "< 1")]
    BelowOne,
    #[serde(rename = ">= 1")]
    AtLeastOne,
}

impl Verdict {
    fn of(log_value: f64) -> Verdict {
        if log_value < 0.0 {
            Verdict::BelowOne
        } else {
            Verdict::AtLeastOne
        }
    }
}

/// How a chain step compares with the next one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = "< 1")]
    BelowOne,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub expression: String,
    #[serde(serialize_with = "ser_f64")]
    pub log_value: f64,
    /// Claimed relation to the next step (the last step is compared with 1).
    pub relation: Relation,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Constraint {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub expression: String,
    pub parameters: Vec<(String, f64)>,
    #[serde(serialize_with = "ser_f64")]
    pub log_value: f64,
    #[serde(serialize_with = "ser_f64")]
    pub value: f64,
    pub verdict: Verdict,
    pub steps: Vec<ChainStep>,
    pub constraints: Vec<Constraint>,
}

impl BoundReport {
    fn new(expression: &str, parameters: &[(&str, f64)], log_value: f64) -> BoundReport {
        BoundReport {
            expression: expression.into(),
            parameters: parameters.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            log_value,
            value: log_value.exp(),
            verdict: Verdict::of(log_value),
            steps: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn below_one(&self) -> bool {
        self.verdict == Verdict::BelowOne
    }

    /// Every claimed step and every constraint holds.
    pub fn chain_holds(&self) -> bool {
        self.steps.iter().all(|s| s.holds) && self.constraints.iter().all(|c| c.holds)
    }
}

/// Relative slack for comparing log values that are equal in exact arithmetic.
const LOG_TOL: f64 = 1e-12;

fn le(a: f64, b: f64) -> bool {
    a <= b + LOG_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Fills in `holds` for a list of `(expression, log value, relation)`.
fn chain(steps: Vec<(&str, f64, Relation)>) -> Vec<ChainStep> {
    let mut out: Vec<ChainStep> = Vec::new();
    for i in 0..steps.len() {
        let (expr, x, rel) = steps[i];
        let holds = match rel {
            Relation::BelowOne => x < 0.0,
            _ => {
                let y = steps.get(i + 1).map_or(0.0, |s| s.1);
                match rel {
                    Relation::AtMost => le(x, y),
                    _ => le(x, y) && le(y, x),
                }
            }
        };
        out.push(ChainStep { expression: expr.into(), log_value: x, relation: rel, holds });
    }
    out
}
