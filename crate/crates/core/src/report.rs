// SPDX-License-Identifier: Apache-2.0

//! Deterministic classification reports.

use std::fmt::Write as _;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

/// Insertion-ordered string-keyed map, serialized as a JSON object.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Entries(Vec<(String, Value)>);

impl Entries {
    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.0.push((key.into(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(String, Value)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Serialize for Entries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantRow {
    pub name: String,
    pub subject: String,
    /// `None` for global invariants.
    pub place: Option<String>,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremTag {
    pub verdict: String,
    pub theorem: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub command: String,
    pub inputs: Entries,
    pub verdicts: Entries,
    pub invariants: Vec<InvariantRow>,
    pub witnesses: Entries,
    pub theorem_tags: Vec<TheoremTag>,
    pub version: String,
}

impl ClassificationReport {
    pub fn new(command: impl Into<String>) -> Self {
        ClassificationReport {
            command: command.into(),
            inputs: Entries::default(),
            verdicts: Entries::default(),
            invariants: Vec::new(),
            witnesses: Entries::default(),
            theorem_tags: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn input(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.inputs.push(name, value.to_string());
        self
    }

    /// Records a verdict together with the theorem that justifies it.
    pub fn verdict(&mut self, name: &str, value: impl Into<Value>, theorem: &str) -> &mut Self {
        self.verdicts.push(name, value);
        self.theorem_tags.push(TheoremTag {
            verdict: name.to_string(),
            theorem: theorem.to_string(),
        });
        self
    }

    pub fn invariant(
        &mut self,
        name: &str,
        subject: &str,
        place: Option<String>,
        value: impl Into<Value>,
    ) -> &mut Self {
        self.invariants.push(InvariantRow {
            name: name.to_string(),
            subject: subject.to_string(),
            place,
            value: value.into(),
        });
        self
    }

    pub fn witness(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.witnesses.push(name, value);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let show = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "inputs:");
        for (k, v) in self.inputs.iter() {
            let _ = writeln!(out, "  {k} = {}", show(v));
        }
        let _ = writeln!(out, "verdicts:");
        for ((k, v), tag) in self.verdicts.iter().zip(&self.theorem_tags) {
            let _ = writeln!(out, "  {k} = {}  [{}]", show(v), tag.theorem);
        }
        if !self.invariants.is_empty() {
            let _ = writeln!(out, "invariants:");
            for row in &self.invariants {
                match &row.place {
                    Some(p) => {
                        let _ = writeln!(out, "  {}({}) at {p} = {}", row.name, row.subject, show(&row.value));
                    }
                    None => {
                        let _ = writeln!(out, "  {}({}) = {}", row.name, row.subject, show(&row.value));
                    }
                }
            }
        }
        if !self.witnesses.is_empty() {
            let _ = writeln!(out, "witnesses:");
            for (k, v) in self.witnesses.iter() {
                let _ = writeln!(out, "  {k} = {}", show(v));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_carry_tags_in_order() {
        let mut r = ClassificationReport::new("demo");
        r.input("a", 3).verdict("x", true, "T1").verdict("y", "Z", "T2");
        assert_eq!(r.theorem_tags.len(), 2);
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&String> = json["verdicts"].as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 2);
        assert_eq!(json["theorem_tags"][1]["theorem"], "T2");
        assert!(r.to_text().contains("x = true  [T1]"));
    }
}
