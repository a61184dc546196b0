//! Pass/fail records shared by the verification routines and the command-line driver.

use serde::{Deserialize, Serialize};

/// One verified identity with both sides rendered exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        pass: bool,
    ) -> Check {
        Check {
            name: name.into(),
            inputs: inputs.into(),
            expected: expected.into(),
            computed: computed.into(),
            pass,
        }
    }
    /// A check whose verdict is equality of the rendered sides.
    pub fn equal(name: impl Into<String>, inputs: impl Into<String>, expected: String, computed: String) -> Check {
        let pass = expected == computed;
        Check::new(name, inputs, expected, computed, pass)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }
    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}
