use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::exact_core::RatFun;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Aborted on a term budget or time limit; neither pass nor fail.
    Resource,
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Resource => "resource",
            Status::Error => "error",
        }
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub cell: Map<String, Value>,
    pub shape_match: Option<bool>,
    pub constant_ratio: Option<RatFun>,
    pub status: Status,
    pub notes: Vec<String>,
    /// Structured side results, serialised only when present.
    pub details: Map<String, Value>,
}

impl Verdict {
    pub fn new(cell: Map<String, Value>, pass: bool) -> Self {
        Verdict {
            cell,
            shape_match: None,
            constant_ratio: None,
            status: if pass { Status::Pass } else { Status::Fail },
            notes: Vec::new(),
            details: Map::new(),
        }
    }

    pub fn from_error(cell: Map<String, Value>, e: &Error) -> Self {
        let status = match e {
            Error::TermBudget(_) => Status::Resource,
            _ => Status::Error,
        };
        Verdict { cell, shape_match: None, constant_ratio: None, status, notes: vec![e.to_string()], details: Map::new() }
    }

    pub fn pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn detail(mut self, key: &str, v: Value) -> Self {
        self.details.insert(key.to_string(), v);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "cell": Value::Object(self.cell.clone()),
            "shapeMatch": self.shape_match,
            "constantRatio": self.constant_ratio.as_ref().map(|r| r.to_json()),
            "pass": self.pass(),
            "status": self.status.as_str(),
            "notes": self.notes,
        });
        if !self.details.is_empty() {
            out["details"] = Value::Object(self.details.clone());
        }
        out
    }
}

/// Builds a cell descriptor from key/value pairs.
pub fn cell(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}
