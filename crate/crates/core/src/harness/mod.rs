//! Deterministic verification suites with seeds and case budgets.
//!
//! A suite first walks an exhaustive universe of small inputs and then, if
//! it has one, a stream of seeded random cases; `cases` caps the total.

pub mod gen;
mod suites;

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub use suites::SUITES;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub seed: u64,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Pretty JSON without the elapsed time, so equal runs print equal bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{}: {status} ({} cases, seed {}, {} failures, {:.2?})",
            self.suite,
            self.cases,
            self.seed,
            self.failures.len(),
            self.elapsed
        )
    }
}

pub fn run_suite(name: &str, cases: u64, seed: u64) -> Result<SuiteReport> {
    run_suite_with(name, cases, seed, None)
}

/// Runs a suite on `jobs` threads, or on the global pool when `None`.
pub fn run_suite_with(
    name: &str,
    cases: u64,
    seed: u64,
    jobs: Option<usize>,
) -> Result<SuiteReport> {
    let suite = suites::lookup(name)?;
    let universe = suite.universe();
    let total = if suite.unbounded() {
        cases
    } else {
        cases.min(universe)
    };
    let start = Instant::now();
    let work = || -> Vec<Failure> {
        (0..total)
            .into_par_iter()
            .flat_map_iter(|i| {
                if i < universe {
                    suite.exhaustive(i)
                } else {
                    suite.random(&mut gen::case_rng(seed, i))
                }
            })
            .collect()
    };
    let mut failures = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?
            .install(work),
        None => work(),
    };
    failures.sort();
    Ok(SuiteReport {
        suite: name.to_string(),
        cases: total,
        seed,
        failures,
        elapsed: start.elapsed(),
    })
}

/// Collects failed laws for one input.
pub(crate) struct Case {
    input: String,
    failures: Vec<Failure>,
}

impl Case {
    pub(crate) fn new(input: impl fmt::Display) -> Self {
        Case {
            input: input.to_string(),
            failures: Vec::new(),
        }
    }

    fn push(&mut self, law: &str, expected: String, actual: String) {
        self.failures.push(Failure {
            input: format!("{law}: {}", self.input),
            expected,
            actual,
        });
    }

    pub(crate) fn eq<T: PartialEq + fmt::Display>(&mut self, law: &str, expected: T, actual: T) {
        if expected != actual {
            self.push(law, expected.to_string(), actual.to_string());
        }
    }

    pub(crate) fn holds(&mut self, law: &str, ok: bool, actual: impl FnOnce() -> String) {
        if !ok {
            self.push(law, "holds".into(), actual());
        }
    }

    pub(crate) fn ok<T>(&mut self, law: &str, r: Result<T>) -> Option<T> {
        r.map_err(|e| self.push(law, "a value".into(), format!("error: {e}")))
            .ok()
    }

    pub(crate) fn finish(self) -> Vec<Failure> {
        self.failures
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuous_and_unknown() {
        let r = run_suite("ordinal_laws", 0, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 0);
        assert_eq!(
            run_suite("nope", 1, 0),
            Err(Error::UnknownSuite("nope".into()))
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite_with("theta_laws", 60, 42, Some(1)).unwrap();
        let b = run_suite_with("theta_laws", 60, 42, Some(3)).unwrap();
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!(a.to_json(), b.to_json());
        assert!(!a.to_json().contains("elapsed"));
    }
}
