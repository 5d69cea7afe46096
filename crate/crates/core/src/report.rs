//! Pass/fail records produced by the verification routines.

use std::fmt;

use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: String,
    /// Parameters in insertion order, rendered between `suite` and `status`.
    pub params: Map<String, Value>,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            params: Map::new(),
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn violation(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("suite".into(), Value::from(self.suite.clone()));
        for (k, v) in &self.params {
            obj.insert(k.clone(), v.clone());
        }
        obj.insert("status".into(), Value::from(self.status()));
        obj.insert("violations".into(), Value::from(self.violations.clone()));
        if !self.notes.is_empty() {
            obj.insert("notes".into(), Value::from(self.notes.clone()));
        }
        Value::Object(obj)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.suite)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        write!(f, ": {}", self.status())?;
        for v in &self.violations {
            write!(f, "\n  violation: {v}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
