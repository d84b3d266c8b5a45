//! Verdicts of bounded checks, serialisable for the command line.

use serde::Serialize;

const MAX_WITNESSES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub counterexamples: Vec<String>,
}

impl CheckResult {
    pub fn new(name: &str) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            passed: true,
            cases: 0,
            counterexamples: Vec::new(),
        }
    }

    /// Records one case; `witness` is only built on failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(witness());
        }
    }

    /// Records a case that either held or produced an error.
    pub fn record_result<E: std::fmt::Display>(&mut self, r: Result<bool, E>, witness: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, witness),
            Err(e) => {
                self.cases += 1;
                let w = witness();
                self.fail(format!("{}: {}", w, e));
            }
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.passed = false;
        if self.counterexamples.len() < MAX_WITNESSES {
            self.counterexamples.push(witness);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(name: &str) -> Report {
        Report {
            name: name.to_string(),
            checks: Vec::new(),
        }
    }

    /// The named check, created on first use.
    pub fn check(&mut self, name: &str) -> &mut CheckResult {
        if let Some(i) = self.checks.iter().position(|c| c.name == name) {
            return &mut self.checks[i];
        }
        self.checks.push(CheckResult::new(name));
        self.checks.last_mut().expect("just pushed")
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{}/{}", prefix, c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
