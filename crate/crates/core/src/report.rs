//! Machine-readable results for the named verification suites.
//!
//! A suite run produces a [`SuiteReport`]: the suite name, the echoed
//! configuration, and one [`CheckResult`] per check, sorted by check id.
//! Reports are deterministic for a fixed configuration except for the
//! timing field, which callers comparing reports should ignore.

use serde::{Deserialize, Serialize};

use crate::functor::default_guard;

/// Bounds shared by all suites: carrier/dimension size, chain depth, and
/// the functor-evaluation guard limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    /// Largest carrier size (or vector-space dimension, or atom count)
    /// swept by exhaustive checks.
    #[serde(default = "default_size")]
    pub size: usize,
    /// Depth of chain constructions.
    #[serde(default = "default_depth")]
    pub depth: usize,
    /// Upper bound on functor-evaluation work; exceeding it is reported as
    /// a guard verdict, not an error.
    #[serde(default = "default_guard")]
    pub guard: u64,
}

fn default_size() -> usize {
    3
}

fn default_depth() -> usize {
    8
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            size: default_size(),
            depth: default_depth(),
            guard: default_guard(),
        }
    }
}

/// The outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The check ran to completion and every assertion held.
    Pass,
    /// Some assertion failed; the detail holds a replayable witness.
    Fail,
    /// The resource guard tripped before the check could finish; raising
    /// the guard limit re-enables the check.
    GuardTripped,
}

/// One named check inside a suite report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    /// Stable identifier, unique within the suite; reports are sorted by
    /// this id.
    pub id: String,
    pub verdict: Verdict,
    /// What was checked (on a pass) or a replayable witness of what broke
    /// (on a failure).
    pub detail: String,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// The result of running one named suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    /// Check results sorted by id.
    pub checks: Vec<CheckResult>,
    /// Wall-clock milliseconds for the whole run. The only
    /// nondeterministic field; strip it before comparing reports.
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    /// Process exit code for the run: 0 when everything passed, 4 when a
    /// resource guard tripped, 1 for any other failure.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else if self
            .checks
            .iter()
            .any(|c| c.verdict == Verdict::GuardTripped)
        {
            4
        } else {
            1
        }
    }

    /// Renders the report as plain text: one line per check, a summary
    /// line, and the timing line last so it can be stripped for
    /// comparisons.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} (size {}, depth {}, guard {})\n",
            self.suite, self.config.size, self.config.depth, self.config.guard
        ));
        for check in &self.checks {
            let tag = match check.verdict {
                Verdict::Pass => "PASS ",
                Verdict::Fail => "FAIL ",
                Verdict::GuardTripped => "GUARD",
            };
            out.push_str(&format!("{tag} {} :: {}\n", check.id, check.detail));
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        out.push_str(&format!(
            "{passed}/{} checks passed\n",
            self.checks.len()
        ));
        out.push_str(&format!("elapsed: {} ms\n", self.elapsed_ms));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SuiteReport {
        SuiteReport {
            suite: "grades".into(),
            config: SuiteConfig::default(),
            checks: vec![
                CheckResult {
                    id: "grades/axioms/set".into(),
                    verdict: Verdict::Pass,
                    detail: "4 objects".into(),
                },
                CheckResult {
                    id: "grades/axioms/vec-gf2".into(),
                    verdict: Verdict::GuardTripped,
                    detail: "guard limit 10".into(),
                },
            ],
            elapsed_ms: 12,
        }
    }

    #[test]
    fn exit_codes_distinguish_guard_trips_from_failures() {
        let mut report = sample();
        assert_eq!(report.exit_code(), 4);
        report.checks[1].verdict = Verdict::Fail;
        assert_eq!(report.exit_code(), 1);
        report.checks[1].verdict = Verdict::Pass;
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn text_rendering_ends_with_the_timing_line() {
        let text = sample().render_text();
        let last = text.lines().last().unwrap();
        assert!(last.starts_with("elapsed:"));
        assert!(text.contains("PASS  grades/axioms/set"));
        assert!(text.contains("GUARD grades/axioms/vec-gf2"));
    }

    #[test]
    fn config_json_fills_defaults() {
        let config: SuiteConfig = serde_json::from_str("{\"size\": 2}").unwrap();
        assert_eq!(config.size, 2);
        assert_eq!(config.depth, 8);
        let err = serde_json::from_str::<SuiteConfig>("{\"sizes\": 2}");
        assert!(err.is_err());
    }

    #[test]
    fn report_json_round_trips() {
        let report = sample();
        let json = serde_json::to_string(&report).unwrap();
        let back: SuiteReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.checks, report.checks);
        assert_eq!(back.suite, report.suite);
    }
}
