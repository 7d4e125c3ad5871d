//! Suite reports with a fixed JSON shape: {name, pass, details}.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub pass: bool,
    pub checked: u64,
    pub counterexample: Option<String>,
    details: Map<String, Value>,
}

impl SuiteReport {
    pub fn new(name: &str, anchor: &str) -> Self {
        let mut details = Map::new();
        details.insert("anchor".into(), Value::String(anchor.into()));
        SuiteReport { name: name.into(), pass: true, checked: 0, counterexample: None, details }
    }

    pub fn tick(&mut self) {
        self.checked += 1;
    }

    /// Record a failure; only the first counterexample is kept.
    pub fn fail(&mut self, msg: impl Into<String>) {
        self.pass = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(msg.into());
        }
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.tick();
        if !ok {
            self.fail(msg());
        }
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.details.insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.details.get(key)
    }

    pub fn to_json(&self) -> Value {
        let mut d = self.details.clone();
        d.insert("checked".into(), Value::from(self.checked));
        if let Some(c) = &self.counterexample {
            d.insert("counterexample".into(), Value::String(c.clone()));
        }
        let mut m = Map::new();
        m.insert("name".into(), Value::String(self.name.clone()));
        m.insert("pass".into(), Value::Bool(self.pass));
        m.insert("details".into(), Value::Object(d));
        Value::Object(m)
    }

    /// One-line summary for text output.
    pub fn summary(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        match &self.counterexample {
            Some(c) => format!("{status} {} ({} checks; first failure: {c})", self.name, self.checked),
            None => format!("{status} {} ({} checks)", self.name, self.checked),
        }
    }
}
