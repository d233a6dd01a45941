//! Per-statement records and their JSON encoding.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub details: String,
    /// Set when the error came from a context the calculus does not cover.
    #[serde(skip)]
    pub unsupported: bool,
}

impl Record {
    pub fn new(name: impl Into<String>, status: Status) -> Record {
        Record {
            name: name.into(),
            status,
            lhs: String::new(),
            rhs: String::new(),
            details: String::new(),
            unsupported: false,
        }
    }

    pub fn error(name: impl Into<String>, err: &grasper_core::Error) -> Record {
        Record {
            details: err.to_string(),
            unsupported: err.is_unsupported_context(),
            ..Record::new(name, Status::Error)
        }
    }

    pub fn sides(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Record {
        self.lhs = lhs.into();
        self.rhs = rhs.into();
        self
    }

    pub fn details(mut self, details: impl Into<String>) -> Record {
        self.details = details.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub results: Vec<Record>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn new(suite: impl Into<String>, results: Vec<Record>) -> Report {
        let passed = results.iter().filter(|r| r.status == Status::Pass).count();
        Report {
            suite: suite.into(),
            failed: results.len() - passed,
            results,
            passed,
        }
    }

    /// 0 when everything passed, 3 if any statement hit an unsupported
    /// context, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.results.iter().any(|r| r.unsupported) {
            3
        } else if self.failed > 0 {
            1
        } else {
            0
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} passed, {} failed",
            self.suite, self.passed, self.failed
        )
    }
}

pub fn emit_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("reports always serialize")
}
