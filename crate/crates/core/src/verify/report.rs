use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, Rational};

/// One asserted equality, with both computation paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub left_path: String,
    pub left: String,
    pub right_path: String,
    pub right: String,
    pub agrees: bool,
}

/// A hypothesis of the statement being checked, with whether it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    pub instance: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub hypotheses: Vec<Hypothesis>,
}

/// Anything printed as an exact number.
pub trait Exact {
    fn exact(&self) -> String;
}

impl Exact for i64 {
    fn exact(&self) -> String {
        self.to_string()
    }
}

impl Exact for Rational {
    fn exact(&self) -> String {
        format_rational(self)
    }
}

impl VerificationReport {
    pub fn new(command: &str, instance: serde_json::Value, seed: Option<u64>) -> Self {
        Self { command: command.into(), instance, seed, checks: Vec::new(), hypotheses: Vec::new() }
    }

    /// Records `left == right` under `name`.
    pub fn check<T: Exact + PartialEq>(&mut self, name: &str, left_path: &str, left: T, right_path: &str, right: T) -> bool {
        let agrees = left == right;
        self.checks.push(Check {
            name: name.into(),
            left_path: left_path.into(),
            left: left.exact(),
            right_path: right_path.into(),
            right: right.exact(),
            agrees,
        });
        agrees
    }

    pub fn hypothesis(&mut self, name: &str, holds: bool, detail: impl Into<String>) {
        self.hypotheses.push(Hypothesis { name: name.into(), holds, detail: detail.into() });
    }

    pub fn all_agree(&self) -> bool {
        self.checks.iter().all(|c| c.agrees)
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// 0 when every equality and hypothesis holds; 2 when a hypothesis is
    /// unverified (the checks are then outside the proven regime); 1 when an
    /// equality fails under verified hypotheses.
    pub fn exit_code(&self) -> i32 {
        if !self.hypotheses_hold() {
            2
        } else if !self.all_agree() {
            1
        } else {
            0
        }
    }

    /// Fixed-width table for terminals.
    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.command, self.instance);
        if let Some(s) = self.seed {
            out.push_str(&format!("seed {s}\n"));
        }
        for c in &self.checks {
            let mark = if c.agrees { "ok  " } else { "FAIL" };
            out.push_str(&format!(
                "{mark} {}: {} = {} | {} = {}\n",
                c.name, c.left_path, c.left, c.right_path, c.right
            ));
        }
        for h in &self.hypotheses {
            let mark = if h.holds { "ok  " } else { "HYP " };
            out.push_str(&format!("{mark} {}", h.name));
            if !h.detail.is_empty() {
                out.push_str(&format!(" ({})", h.detail));
            }
            out.push('\n');
        }
        out
    }
}
