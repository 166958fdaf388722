use serde::Serialize;
use serde_json::{json, Value};

/// One named comparison in a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub computed: Value,
    pub reference: Value,
    /// How `computed` is compared with `reference`.
    pub relation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: &str, computed: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            computed: json!(computed),
            reference: json!(limit),
            relation: "<=",
            tolerance: None,
            pass: computed <= limit,
        }
    }

    pub fn above(name: &str, computed: f64, threshold: f64) -> Self {
        Check {
            name: name.into(),
            computed: json!(computed),
            reference: json!(threshold),
            relation: ">",
            tolerance: None,
            pass: computed > threshold,
        }
    }

    pub fn close_to(name: &str, computed: f64, reference: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            computed: json!(computed),
            reference: json!(reference),
            relation: "abs_diff<=tolerance",
            tolerance: Some(tol),
            pass: (computed - reference).abs() <= tol,
        }
    }

    pub fn within(name: &str, computed: f64, lo: f64, hi: f64) -> Self {
        Check {
            name: name.into(),
            computed: json!(computed),
            reference: json!([lo, hi]),
            relation: "in_range",
            tolerance: None,
            pass: (lo..=hi).contains(&computed),
        }
    }

    pub fn equals(name: &str, computed: bool, expected: bool) -> Self {
        Check {
            name: name.into(),
            computed: json!(computed),
            reference: json!(expected),
            relation: "==",
            tolerance: None,
            pass: computed == expected,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub scenario: String,
    pub task: &'static str,
    pub scenario_hash: String,
    pub status: &'static str,
    pub checks: Vec<Check>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl CheckReport {
    pub fn new(
        scenario: String,
        task: &'static str,
        scenario_hash: String,
        checks: Vec<Check>,
        details: Value,
    ) -> Self {
        let status = if checks.iter().all(|c| c.pass) { "pass" } else { "fail" };
        CheckReport {
            scenario,
            task,
            scenario_hash,
            status,
            checks,
            details,
            wall_time_s: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
