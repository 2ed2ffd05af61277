use std::time::Duration;

use cdt_core::search::{LevelResult, SearchReport};
use cdt_core::turan::BoundReport;
use cdt_core::verify::{CheckOutcome, SuiteReport};
use cdt_core::Rational;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Envelope shared by every `--json` output.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    /// Canonical graph6 strings.
    pub witnesses: Vec<String>,
    pub provenance: Vec<String>,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

impl ReportDocument {
    pub fn new(command: &str, inputs: Value, outputs: Value, elapsed: Duration) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            outputs,
            witnesses: Vec::new(),
            provenance: Vec::new(),
            timing: Timing {
                elapsed_ms: elapsed.as_millis(),
            },
        }
    }

    pub fn witnesses(mut self, witnesses: Vec<String>) -> Self {
        self.witnesses = witnesses;
        self
    }

    pub fn provenance(mut self, provenance: Vec<String>) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Exact value plus a decimal hint that must not be used for comparisons.
pub fn rat(r: &Rational) -> Value {
    json!({ "value": r.to_string(), "decimal": r.to_f64_lossy() })
}

pub fn opt_rat(r: Option<&Rational>) -> Value {
    r.map_or(Value::Null, rat)
}

pub fn bound_outputs(r: &BoundReport) -> Value {
    json!({
        "t": r.t,
        "delta": r.max_degree,
        "omega": r.clique_bound,
        "requested_omega": r.requested_clique_bound,
        "a": r.decomposition.a,
        "b": r.decomposition.b,
        "lower": rat(&r.lower),
        "upper": rat(&r.upper),
        "exact": opt_rat(r.exact.as_ref()),
        "provenance": r.provenance.as_str(),
        "best_known": rat(&r.best_known),
        "best_known_witness": r.best_known_witness,
        "notes": r.notes,
    })
}

fn level_json(l: &LevelResult) -> Value {
    json!({
        "n": l.n,
        "graphs_enumerated": l.graphs_enumerated,
        "max_count": l.max_count,
        "max_density": opt_rat(l.max_density.as_ref()),
        "witness_count": l.witness_count,
        "witnesses": l.witnesses,
        "meets_lower_bound": l.meets_lower_bound,
        "meets_exact": l.meets_exact,
    })
}

pub fn search_outputs(r: &SearchReport) -> Value {
    json!({
        "levels": r.levels.iter().map(level_json).collect::<Vec<_>>(),
        "best_density": opt_rat(r.best_density.as_ref()),
        "best_n": r.best_n,
        "lower_bound": opt_rat(r.lower_bound.as_ref()),
        "exact": opt_rat(r.exact.as_ref()),
        "exact_provenance": r.exact_provenance.as_str(),
        "pruned": r.pruned,
    })
}

/// Witnesses at the orders attaining the overall best density.
pub fn best_witnesses(r: &SearchReport) -> Vec<String> {
    r.levels
        .iter()
        .filter(|l| l.max_density.is_some() && l.max_density == r.best_density)
        .flat_map(|l| l.witnesses.iter().map(|w| w.to_string()))
        .collect()
}

fn check_json(c: &CheckOutcome) -> Value {
    serde_json::to_value(c).expect("check serializes")
}

pub fn suite_outputs(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite.as_str(),
        "passed": r.passed,
        "checks": r.checks.iter().map(check_json).collect::<Vec<_>>(),
    })
}
