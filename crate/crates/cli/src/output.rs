//! The command-level report: check verdicts wrapped with the command echo,
//! the tool version, and timing.
//!
//! Timing is the only nondeterministic part of a report. It is the last
//! field of the JSON form and the last line of the text form, so two runs
//! with the same input compare byte-identical once the timing block (or
//! the trailing `elapsed:` line) is dropped.

use gradcat_core::report::{CheckResult, SuiteConfig, Verdict};
use serde::Serialize;

/// Output format for reports.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// Everything one invocation reports: the echoed command, the verdicts with
/// their witnesses, the derived exit status, and the timing block last.
#[derive(Debug, Serialize)]
pub struct CliReport {
    pub command: String,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<SuiteConfig>,
    pub checks: Vec<CheckResult>,
    pub exit_status: i32,
    pub timing: Timing,
}

impl CliReport {
    /// Assembles a report: checks are sorted by id and the exit status is
    /// derived from the verdicts (guard trips dominate plain failures).
    pub fn new(
        command: String,
        suite: Option<String>,
        config: Option<SuiteConfig>,
        mut checks: Vec<CheckResult>,
        elapsed_ms: u128,
    ) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let exit_status = if checks
            .iter()
            .any(|c| c.verdict == Verdict::GuardTripped)
        {
            4
        } else if checks.iter().any(|c| !c.passed()) {
            1
        } else {
            0
        };
        CliReport {
            command,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            suite,
            config,
            checks,
            exit_status,
            timing: Timing { elapsed_ms },
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut body = serde_json::to_string_pretty(self)
                    .expect("reports contain only serializable data");
                body.push('\n');
                body
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "gradcat {} (version {})\n",
            self.command, self.tool_version
        ));
        if let (Some(suite), Some(config)) = (&self.suite, &self.config) {
            out.push_str(&format!(
                "suite {suite} (size {}, depth {}, guard {})\n",
                config.size, config.depth, config.guard
            ));
        }
        for check in &self.checks {
            let tag = match check.verdict {
                Verdict::Pass => "PASS ",
                Verdict::Fail => "FAIL ",
                Verdict::GuardTripped => "GUARD",
            };
            out.push_str(&format!("{tag} {} :: {}\n", check.id, check.detail));
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        out.push_str(&format!("{passed}/{} checks passed\n", self.checks.len()));
        out.push_str(&format!("exit status: {}\n", self.exit_status));
        out.push_str(&format!("elapsed: {} ms\n", self.timing.elapsed_ms));
        out
    }
}
