use std::fmt;

use crate::linalg::Vector;

/// One failed condition: which identity, at which basis indices, and the
/// nonzero residual it left behind (empty when the condition is not a
/// vector equation, e.g. a rank test).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub name: String,
    pub indices: Vec<usize>,
    pub residual: Vector,
}

impl Violation {
    pub fn new(name: impl Into<String>, indices: Vec<usize>, residual: Vector) -> Self {
        Violation {
            name: name.into(),
            indices,
            residual,
        }
    }

    pub fn condition(name: impl Into<String>) -> Self {
        Violation::new(name, Vec::new(), Vec::new())
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.indices.is_empty() {
            write!(f, " at {:?}", self.indices)?;
        }
        if !self.residual.is_empty() {
            let r: Vec<String> = self.residual.iter().map(ToString::to_string).collect();
            write!(f, " residual [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of a check. `ok` iff there are no violations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub(crate) fn require(&mut self, cond: bool, name: &str) {
        if !cond {
            self.push(Violation::condition(name));
        }
    }

    pub fn names(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.name.as_str()).collect()
    }
}
