//! Residual reports: every nonzero "left side minus right side" found while
//! evaluating an identity on basis tuples.

use crate::linalg::Vector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Name of the identity that failed.
    pub identity: String,
    /// The basis tuple it failed on.
    pub indices: Vec<usize>,
    /// The nonzero residual value.
    pub value: Vector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Residual {
    pub failures: Vec<Failure>,
    fail_fast: bool,
}

impl Residual {
    pub fn new() -> Residual {
        Residual::default()
    }

    /// A report that stops collecting after the first failure.
    pub fn fail_fast() -> Residual {
        Residual { failures: Vec::new(), fail_fast: true }
    }

    pub fn is_zero(&self) -> bool {
        self.failures.is_empty()
    }

    /// True once a fail-fast report has seen a failure.
    pub fn done(&self) -> bool {
        self.fail_fast && !self.failures.is_empty()
    }

    pub fn first(&self) -> Option<&Failure> {
        self.failures.first()
    }

    /// Records `value` unless it is zero.
    pub fn record(&mut self, identity: &str, indices: &[usize], value: Vector) {
        if self.done() || value.is_zero() {
            return;
        }
        self.failures.push(Failure { identity: identity.to_string(), indices: indices.to_vec(), value });
    }

    /// Records `lhs - rhs`.
    pub fn check(&mut self, identity: &str, indices: &[usize], lhs: &Vector, rhs: &Vector) {
        if self.done() {
            return;
        }
        self.record(identity, indices, lhs - rhs);
    }

    pub fn merge(&mut self, other: Residual) {
        for f in other.failures {
            if self.done() {
                break;
            }
            self.failures.push(f);
        }
    }

    /// Prefixes every identity name, for nested reports.
    pub fn prefixed(mut self, prefix: &str) -> Residual {
        for f in &mut self.failures {
            f.identity = format!("{prefix}/{}", f.identity);
        }
        self
    }
}
