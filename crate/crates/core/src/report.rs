//! Machine-readable check reports: one named check per verification, exact
//! residual strings, deterministic serialization. Exit status derives from
//! the aggregate. Reports are byte-identical for identical inputs and
//! seeds; wall-clock timing is rendered separately and never serialized.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Exact residuals or counterexamples; empty when the check passes.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs_digest: impl Into<String>) -> Report {
        Report {
            schema_version: 1,
            command: command.into(),
            inputs_digest: inputs_digest.into(),
            seed: None,
            checks: Vec::new(),
            passed: true,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Report {
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, details: Vec<String>) {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.into(),
            passed,
            details,
        });
    }

    pub fn push_pass(&mut self, name: impl Into<String>) {
        self.push(name, true, Vec::new());
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.command));
        out.push_str(&format!("inputs digest: {}\n", self.inputs_digest));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name
            ));
            for d in &c.details {
                out.push_str(&format!("       {d}\n"));
            }
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.passed {
                "all checks passed"
            } else {
                "FAILURES PRESENT"
            }
        ));
        out
    }
}

/// FNV-1a digest of the canonical input rendering, recorded in reports for
/// reproducibility bookkeeping.
pub fn digest(parts: &[&str]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for p in parts {
        for b in p.as_bytes() {
            hash ^= *b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
        hash ^= 0xff;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}
