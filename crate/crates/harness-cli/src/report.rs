use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::json::{big, big_opt};

/// One instrumented transform against its oracle and its bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub group: String,
    pub n: usize,
    pub measured: (BigUint, BigUint),
    pub predicted: (BigUint, BigUint),
    /// Closed-form multiplication bound, when the family has one.
    pub bound: Option<BigUint>,
    pub max_rel_err: Option<f64>,
    pub wall_ms: Option<u128>,
    pub seed: u64,
}

impl RunReport {
    /// measured ≤ predicted ≤ bound on multiplications, whichever are defined.
    pub fn chain_holds(&self) -> bool {
        self.measured.0 <= self.predicted.0 && self.bound.as_ref().is_none_or(|b| self.predicted.0 <= *b)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group,
            "n": self.n,
            "measured": {"mults": big(&self.measured.0), "adds": big(&self.measured.1)},
            "predicted": {"mults": big(&self.predicted.0), "adds": big(&self.predicted.1)},
            "bound": big_opt(self.bound.as_ref()),
            "chain_holds": self.chain_holds(),
            "max_rel_err": self.max_rel_err,
            "wall_ms": self.wall_ms.map(|t| t as u64),
            "seed": self.seed,
            "cost_note": "measured counts are those of this schedule, an upper bound on the optimal straight-line cost",
        })
    }
}
