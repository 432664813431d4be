//! JSON and text renderings of verification reports.

use std::io::Write;

use serde_json::{json, Value};

use crate::error::Result;
use crate::verify::VerificationReport;

/// How many failing cells the text table lists per suite.
pub const TEXT_FAILURE_LIMIT: usize = 10;

pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

pub fn to_json(reports: &[VerificationReport]) -> Value {
    json!({
        "passed": all_passed(reports),
        "reports": reports,
    })
}

/// Pretty-printed JSON with a trailing newline. Contains no timings, so equal
/// inputs give equal bytes.
pub fn to_json_string(reports: &[VerificationReport]) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(reports)).expect("reports serialize");
    s.push('\n');
    s
}

pub fn write_text<W: Write>(reports: &[VerificationReport], mut out: W) -> Result<()> {
    writeln!(
        out,
        "{:<18} {:<30} {:>8} {:>7}  {:<6} {:>9}",
        "suite", "range", "cases", "failed", "status", "time"
    )?;
    for r in reports {
        writeln!(
            out,
            "{:<18} {:<30} {:>8} {:>7}  {:<6} {:>7}ms",
            r.suite.name(),
            r.range,
            r.total,
            r.failed,
            if r.passed { "PASS" } else { "FAIL" },
            r.wall_time.as_millis()
        )?;
    }
    for r in reports.iter().filter(|r| !r.passed) {
        writeln!(out)?;
        writeln!(out, "{}: {} failing case(s)", r.suite, r.failed)?;
        if let Some(first) = r.first_failure() {
            writeln!(out, "  smallest: {} at {}", first.identity, first.params)?;
        }
        for c in r.failures.iter().take(TEXT_FAILURE_LIMIT) {
            writeln!(
                out,
                "  {:<16} {:<24} lhs={} rhs={}",
                c.identity.name(),
                c.params.to_string(),
                c.lhs,
                c.rhs
            )?;
        }
        if r.failures.len() > TEXT_FAILURE_LIMIT {
            writeln!(out, "  ... {} more", r.failures.len() - TEXT_FAILURE_LIMIT)?;
        }
    }
    writeln!(
        out,
        "\n{}",
        if all_passed(reports) {
            "all suites passed"
        } else {
            "FAILURES present"
        }
    )?;
    Ok(())
}
