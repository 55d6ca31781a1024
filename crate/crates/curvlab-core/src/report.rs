//! Structured verdicts shared by the validator and the discharging audit.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub citation: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, citation: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check { id: id.into(), citation, passed, detail: detail.into(), witnesses: Vec::new() }
    }

    pub fn with_witnesses(mut self, w: Vec<String>) -> Self {
        self.witnesses = w;
        self
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Section {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Section {
    pub fn new(name: &str) -> Self {
        Section { name: name.to_string(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AuditReport {
    pub verdict: Verdict,
    pub sections: Vec<Section>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    #[default]
    Pass,
    Fail,
}

impl AuditReport {
    pub fn from_sections(sections: Vec<Section>) -> Self {
        let verdict = if sections.iter().all(Section::passed) { Verdict::Pass } else { Verdict::Fail };
        AuditReport { verdict, sections }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.sections.iter().flat_map(|s| s.failures()).collect()
    }

    /// Human-readable rendering, one line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out.push_str(&format!("[{}]\n", s.name));
            for c in &s.checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                out.push_str(&format!("  {mark} {:<28} {:<14} {}\n", c.id, c.citation, c.detail));
                for w in c.witnesses.iter().take(8) {
                    out.push_str(&format!("         - {w}\n"));
                }
                if c.witnesses.len() > 8 {
                    out.push_str(&format!("         ... {} more\n", c.witnesses.len() - 8));
                }
            }
        }
        out.push_str(&format!(
            "verdict: {}\n",
            if self.passed() { "pass" } else { "fail" }
        ));
        out
    }
}
