//! Pass/fail records produced by the identity suites.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    /// Measured-only checks never fail a suite.
    pub asserted: bool,
    pub passed: bool,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<IdentityCheck>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        passed: bool,
        lhs: impl ToString,
        rhs: impl ToString,
        residual: impl ToString,
    ) {
        self.checks.push(IdentityCheck {
            name: name.into(),
            asserted: true,
            passed,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            residual: residual.to_string(),
        });
    }

    pub fn measure(&mut self, name: impl Into<String>, lhs: impl ToString, rhs: impl ToString, residual: impl ToString) {
        self.checks.push(IdentityCheck {
            name: name.into(),
            asserted: false,
            passed: true,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            residual: residual.to_string(),
        });
    }

    /// Records an exact rational equality.
    pub fn exact<T>(&mut self, name: impl Into<String>, lhs: &T, rhs: &T)
    where
        T: PartialEq + std::fmt::Display + Clone + std::ops::Sub<Output = T>,
    {
        let ok = lhs == rhs;
        let res = lhs.clone() - rhs.clone();
        self.push(name, ok, lhs, rhs, res);
    }

    pub fn extend(&mut self, other: Report) {
        for mut c in other.checks {
            c.name = format!("{}: {}", other.suite, c.name);
            self.checks.push(c);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !c.asserted || c.passed)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.asserted && !c.passed)
    }

    pub fn asserted_count(&self) -> usize {
        self.checks.iter().filter(|c| c.asserted).count()
    }
}
