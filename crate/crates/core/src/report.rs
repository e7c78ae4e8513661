//! Command reports: a list of named pass/fail verdicts plus an optional
//! structured payload. The text and JSON renderings carry identical
//! verdicts; elapsed time never enters either, so equal runs emit equal
//! bytes.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<serde_json::Value>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            verdicts: Vec::new(),
            payload: None,
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, verdict: Verdict) {
        self.verdicts.push(verdict);
    }

    pub fn with_payload(mut self, payload: serde_json::Value) -> Self {
        self.payload = Some(payload);
        self
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// 0 when every verdict passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for v in &self.verdicts {
            let mark = if v.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark}  {}", v.name));
            if !v.detail.is_empty() {
                out.push_str(&format!("  — {}", v.detail));
            }
            out.push('\n');
        }
        if let Some(payload) = &self.payload {
            out.push_str(
                &serde_json::to_string_pretty(payload).expect("payload serializes"),
            );
            out.push('\n');
        }
        let summary = if self.all_pass() { "all-pass" } else { "FAILURES" };
        out.push_str(&format!(
            "result: {summary} ({}/{})\n",
            self.verdicts.iter().filter(|v| v.pass).count(),
            self.verdicts.len()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings_carry_identical_verdicts() {
        let mut report = Report::new("demo");
        report.push(Verdict::new("first", true, "fine"));
        report.push(Verdict::new("second", false, "broken"));
        report.elapsed_ms = 1234;

        let text = report.to_text();
        assert!(text.contains("PASS  first"));
        assert!(text.contains("FAIL  second"));
        assert!(!text.contains("1234"));

        let json: serde_json::Value = serde_json::from_str(&report.to_json_string()).unwrap();
        assert_eq!(json["verdicts"][0]["name"], "first");
        assert_eq!(json["verdicts"][1]["pass"], false);
        assert!(json.get("elapsed_ms").is_none());

        assert_eq!(report.exit_code(), 1);
    }
}
