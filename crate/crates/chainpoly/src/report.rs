//! Pass/fail reports for the verification suites.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verified identity or property.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    /// Both sides of a failed polynomial identity, canonical text form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            detail: detail.into(),
            left: None,
            right: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
            left: None,
            right: None,
        }
    }

    pub fn fail_sides(
        name: impl Into<String>,
        detail: impl Into<String>,
        left: String,
        right: String,
    ) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            detail: detail.into(),
            left: Some(left),
            right: Some(right),
        }
    }

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            detail: detail.into(),
            left: None,
            right: None,
        }
    }
}

/// Outcome of a verification suite: per-check status plus work counters.
#[derive(Debug, Clone, Serialize, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Chain / assignment visits performed.
    pub visits: u64,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.visits += other.visits;
        self.elapsed_ms += other.elapsed_ms;
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Compares two polynomial sides, recording a pass or a failure that
    /// carries both sides.
    pub fn equal_polys(
        &mut self,
        name: impl Into<String>,
        detail: impl Into<String>,
        left: &crate::poly::MultiPoly,
        right: &crate::poly::MultiPoly,
    ) {
        if left == right {
            self.push(Check::pass(name, detail));
        } else {
            self.push(Check::fail_sides(
                name,
                detail,
                left.to_string(),
                right.to_string(),
            ));
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            out.push_str(&format!("{:<28} {:<8} {}\n", c.name, status, c.detail));
            if let (Some(l), Some(r)) = (&c.left, &c.right) {
                out.push_str(&format!("    left:  {l}\n    right: {r}\n"));
            }
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let skipped = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Skipped)
            .count();
        out.push_str(&format!(
            "{} checks, {} failed, {} skipped, {} visits, {} ms\n",
            self.checks.len(),
            failed,
            skipped,
            self.visits,
            self.elapsed_ms
        ));
        out
    }
}
