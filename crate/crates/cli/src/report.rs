//! Machine-readable reports. Field order is fixed by the struct, nested
//! objects are key-sorted, so identical inputs give identical bytes.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "singequiv.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimKind {
    /// A statement that is decided exactly.
    Claim,
    /// Bounded computation consistent with a statement it cannot prove.
    Evidence,
    /// Agreement between two independent computations.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub kind: ClaimKind,
    pub passed: bool,
    pub detail: String,
}

impl Claim {
    pub fn new(id: &str, kind: ClaimKind, passed: bool, detail: impl Into<String>) -> Claim {
        Claim {
            id: id.into(),
            kind,
            passed,
            detail: detail.into(),
        }
    }

    /// An exact equality claim with the expected and computed values shown.
    pub fn eq<T: PartialEq + std::fmt::Debug>(id: &str, expected: T, computed: T) -> Claim {
        let passed = expected == computed;
        Claim::new(id, ClaimKind::Claim, passed, format!("expected {expected:?}, computed {computed:?}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub seed: Option<u64>,
    pub passed: bool,
    pub claims: Vec<Claim>,
    pub notes: Vec<String>,
    pub data: serde_json::Value,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn new(command: &[String]) -> Report {
        Report {
            schema: SCHEMA,
            command: command.to_vec(),
            input_digest: None,
            seed: None,
            passed: true,
            claims: Vec::new(),
            notes: Vec::new(),
            data: serde_json::Value::Null,
            text: String::new(),
        }
    }

    pub fn with_input(mut self, text: &str) -> Report {
        self.input_digest = Some(digest(text));
        self
    }

    pub fn set_data<T: Serialize>(&mut self, data: &T) {
        self.data = serde_json::to_value(data).expect("report data serializes");
    }

    pub fn push(&mut self, claim: Claim) {
        self.passed &= claim.passed;
        self.claims.push(claim);
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn failed_claims(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Text rendering: the command's own lines, then one line per claim.
    pub fn render(&self) -> String {
        let mut out = self.text.clone();
        for c in &self.claims {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let kind = match c.kind {
                ClaimKind::Claim => "",
                ClaimKind::Evidence => " [EVIDENCE]",
                ClaimKind::Oracle => " [ORACLE]",
            };
            out.push_str(&format!("{mark} {}{kind}: {}\n", c.id, c.detail));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

pub fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            digest(""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn failing_claim_fails_report() {
        let mut r = Report::new(&[]);
        r.push(Claim::eq("a", 1, 1));
        assert!(r.passed);
        r.push(Claim::eq("b", 1, 2));
        assert!(!r.passed);
        assert!(r.render().contains("FAIL b: expected 1, computed 2"));
    }
}
