use serde::Serialize;
use serde_json::{Map, Value};

/// Result of a command that ran to completion.
pub struct Report {
    pub json: Value,
    pub passed: bool,
    pub summary: String,
}

impl Report {
    pub fn pass(json: Value, summary: impl Into<String>) -> Self {
        Report { json, passed: true, summary: summary.into() }
    }

    pub fn verdict(json: Value, passed: bool, summary: impl Into<String>) -> Self {
        Report { json, passed, summary: summary.into() }
    }
}

/// A command that could not run.
#[derive(Debug)]
pub enum Failure {
    /// Malformed or unusable input; exit code 2.
    Input(String),
    /// Input describes a structure that violates an axiom; exit code 1.
    Math(String),
}

impl From<germkit::schema::BuildError> for Failure {
    fn from(e: germkit::schema::BuildError) -> Self {
        match e {
            germkit::schema::BuildError::Input(m) => Failure::Input(m),
            germkit::schema::BuildError::Math(m) => Failure::Math(m),
        }
    }
}

pub fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

pub fn math(e: impl std::fmt::Display) -> Failure {
    Failure::Math(e.to_string())
}

fn camel(key: &str) -> String {
    let mut out = String::with_capacity(key.len());
    let mut upper = false;
    for c in key.chars() {
        if c == '_' {
            upper = true;
        } else if upper {
            out.extend(c.to_uppercase());
            upper = false;
        } else {
            out.push(c);
        }
    }
    out
}

/// Serializes with every object key in camelCase.
pub fn to_json<T: Serialize>(v: &T) -> Value {
    recase(serde_json::to_value(v).expect("reports serialize"))
}

pub fn recase(v: Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (camel(&k), recase(v))).collect::<Map<_, _>>()),
        Value::Array(a) => Value::Array(a.into_iter().map(recase).collect()),
        v => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_become_camel_case() {
        let v = recase(serde_json::json!({"top_principal": true, "condition_l": [{"dim_l": 1}], "L": 2}));
        assert_eq!(v, serde_json::json!({"topPrincipal": true, "conditionL": [{"dimL": 1}], "L": 2}));
    }
}
