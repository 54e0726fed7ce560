//! Check results and run reports shared by the suites and the CLI.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub expected: Option<String>,
    pub actual: Option<String>,
    pub detail: Option<String>,
    /// Set when a skip was caused by the enumeration cap.
    #[serde(skip)]
    pub cap_hit: bool,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Pass,
            expected: None,
            actual: None,
            detail: None,
            cap_hit: false,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Fail,
            detail: Some(detail.into()),
            ..Self::pass(name)
        }
    }

    pub fn skip(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Skip,
            detail: Some(detail.into()),
            ..Self::pass(name)
        }
    }

    /// Pass iff `ok`; a failure carries `detail`.
    pub fn from_bool(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, detail)
        }
    }

    /// Pass iff `expected == actual`, recording both.
    pub fn compare<T: PartialEq + ToString>(name: impl Into<String>, expected: T, actual: T) -> Self {
        CheckResult {
            status: if expected == actual {
                Status::Pass
            } else {
                Status::Fail
            },
            expected: Some(expected.to_string()),
            actual: Some(actual.to_string()),
            ..Self::pass(name)
        }
    }

    pub fn with_actual(mut self, actual: impl Into<String>) -> Self {
        self.actual = Some(actual.into());
        self
    }

    pub fn with_expected(mut self, expected: impl Into<String>) -> Self {
        self.expected = Some(expected.into());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_cap_hit(mut self) -> Self {
        self.cap_hit = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// 0 when nothing failed, 1 on failures, 3 when the only problem is that
    /// an enumeration hit the cap.
    pub fn exit_code(&self) -> i32 {
        if self.failures() > 0 {
            1
        } else if self.checks.iter().any(|c| c.cap_hit) {
            3
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}", self.command));
        for (k, v) in &self.params {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push('\n');
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out.push_str(&format!("{tag} {}", c.name));
            if let Some(a) = &c.actual {
                out.push_str(&format!("  actual={a}"));
            }
            if let Some(e) = &c.expected {
                out.push_str(&format!("  expected={e}"));
            }
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped in {} ms\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip),
            self.elapsed_ms
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = RunReport::new("decompose");
        r.param("rank", 9);
        r.checks.push(CheckResult::compare("pairs", 3, 3));
        r.checks.push(CheckResult::skip("order", "over cap").with_cap_hit());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["checks"][0]["status"], "pass");
        assert_eq!(v["checks"][1]["expected"], serde_json::Value::Null);
        assert!(v["checks"][1].get("cap_hit").is_none());
        assert_eq!(r.exit_code(), 3);
        r.checks.push(CheckResult::fail("x", "boom"));
        assert_eq!(r.exit_code(), 1);
    }
}
