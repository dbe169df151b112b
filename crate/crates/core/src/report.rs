//! Pass/fail reports produced by the certificate builders and suites.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Clause {
    pub fn new(name: impl Into<String>, pass: bool) -> Clause {
        Clause { name: name.into(), pass, witness: None }
    }

    pub fn with_witness(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Clause {
        Clause { name: name.into(), pass, witness: Some(witness.into()) }
    }
}

/// Named list of clauses plus free-form parameters and notes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub example: String,
    #[serde(flatten)]
    pub params: Map<String, Value>,
    pub clauses: Vec<Clause>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(example: impl Into<String>) -> Report {
        Report { example: example.into(), params: Map::new(), clauses: Vec::new(), notes: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, clause: Clause) {
        self.clauses.push(clause);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.example)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        writeln!(f)?;
        for c in &self.clauses {
            write!(f, "  [{}] {}", if c.pass { "pass" } else { "FAIL" }, c.name)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
