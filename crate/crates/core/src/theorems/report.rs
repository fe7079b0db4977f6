use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use crate::characters::MultChar;
use crate::cyclotomic::CycNum;
use crate::finite_field::FqElem;
use crate::hypergeometric::Evaluator;

// Failures beyond this many are counted but not stored.
const MAX_STORED_FAILURES: usize = 100;

/// One mismatch: the parameter tuple (character indices), the argument if the
/// statement has one, and both sides rendered as coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub tuple: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arg: Option<String>,
    pub statement: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one verifier over one field.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub q: u64,
    pub generator: String,
    pub tuples_tested: u64,
    pub comparisons: u64,
    pub branches: BTreeMap<String, u64>,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    pub(crate) fn new(id: &str, ev: &Evaluator) -> Self {
        let field = ev.field();
        TheoremReport {
            theorem_id: id.to_string(),
            q: field.order(),
            generator: field.polynomial_string(field.generator()),
            tuples_tested: 0,
            comparisons: 0,
            branches: BTreeMap::new(),
            failure_count: 0,
            failures: Vec::new(),
            skipped: false,
            skip_reason: None,
            elapsed: Duration::ZERO,
        }
    }

    pub(crate) fn skipped(id: &str, ev: &Evaluator, reason: String) -> Self {
        let mut r = Self::new(id, ev);
        r.skipped = true;
        r.skip_reason = Some(reason);
        r
    }

    /// True when no comparison failed; skipped reports pass vacuously.
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn branch(&self, label: &str) -> u64 {
        self.branches.get(label).copied().unwrap_or(0)
    }

    pub(crate) fn record(&mut self, ev: &Evaluator, tuple: &[MultChar], outcome: Outcome) {
        self.absorb(Tally::new(ev, tuple, outcome));
    }

    pub(crate) fn absorb(&mut self, tally: Tally) {
        self.tuples_tested += 1;
        *self.branches.entry(tally.branch).or_insert(0) += 1;
        self.comparisons += tally.comparisons;
        self.failure_count += tally.failure_count;
        let room = MAX_STORED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(tally.failures.into_iter().take(room));
    }

    /// Line-oriented rendering: a header line, one line per branch, one per failure.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let status = if self.skipped {
            "SKIPPED"
        } else if self.passed() {
            "PASS"
        } else {
            "FAIL"
        };
        let _ = writeln!(
            out,
            "{status} {} q={} generator={} tuples={} comparisons={} failures={}",
            self.theorem_id,
            self.q,
            self.generator,
            self.tuples_tested,
            self.comparisons,
            self.failure_count
        );
        if let Some(reason) = &self.skip_reason {
            let _ = writeln!(out, "  skipped: {reason}");
        }
        for (label, count) in &self.branches {
            let _ = writeln!(out, "  branch {label}: {count}");
        }
        for f in &self.failures {
            let arg = f
                .arg
                .as_deref()
                .map(|a| format!(" x={a}"))
                .unwrap_or_default();
            let _ = writeln!(out, "  failure {:?}{arg} [{}]", f.tuple, f.statement);
            let _ = writeln!(out, "    lhs = {}", f.lhs);
            let _ = writeln!(out, "    rhs = {}", f.rhs);
        }
        out
    }
}

/// One exact comparison made for a tuple.
pub(crate) struct Check {
    pub statement: &'static str,
    pub arg: Option<FqElem>,
    pub lhs: CycNum,
    pub rhs: CycNum,
    // set when no right-hand side applies although one should
    pub unmatched: bool,
}

impl Check {
    pub fn new(statement: &'static str, lhs: CycNum, rhs: CycNum) -> Self {
        Check {
            statement,
            arg: None,
            lhs,
            rhs,
            unmatched: false,
        }
    }

    pub fn at(statement: &'static str, arg: FqElem, lhs: CycNum, rhs: CycNum) -> Self {
        Check {
            arg: Some(arg),
            ..Self::new(statement, lhs, rhs)
        }
    }

    /// A comparison that fails because no case of a case table matched.
    pub fn unmatched(statement: &'static str, lhs: CycNum) -> Self {
        Check {
            unmatched: true,
            ..Self::new(statement, lhs.clone(), lhs)
        }
    }
}

/// An [`Outcome`] reduced to counts and rendered failures, so sweeps never
/// hold cyclotomic values for more than the tuples in flight.
pub(crate) struct Tally {
    branch: String,
    comparisons: u64,
    failure_count: u64,
    failures: Vec<Failure>,
}

impl Tally {
    pub fn new(ev: &Evaluator, tuple: &[MultChar], outcome: Outcome) -> Self {
        let mut tally = Tally {
            branch: outcome.branch,
            comparisons: outcome.checks.len() as u64,
            failure_count: 0,
            failures: Vec::new(),
        };
        for check in outcome.checks {
            if check.lhs == check.rhs && !check.unmatched {
                continue;
            }
            tally.failure_count += 1;
            if tally.failures.len() < MAX_STORED_FAILURES {
                tally.failures.push(Failure {
                    tuple: tuple.iter().map(|c| c.index()).collect(),
                    arg: check.arg.map(|x| ev.field().describe(x)),
                    statement: check.statement.to_string(),
                    lhs: check.lhs.coefficient_string(),
                    rhs: if check.unmatched {
                        "no applicable case".to_string()
                    } else {
                        check.rhs.coefficient_string()
                    },
                });
            }
        }
        tally
    }
}

/// The branch a tuple fell into and the comparisons made for it.
pub(crate) struct Outcome {
    pub branch: String,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn new(branch: impl Into<String>, checks: Vec<Check>) -> Self {
        Outcome {
            branch: branch.into(),
            checks,
        }
    }

    pub fn excluded() -> Self {
        Self::new("excluded", Vec::new())
    }
}
