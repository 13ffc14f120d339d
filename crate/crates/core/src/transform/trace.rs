//! Rule-application trace and its line-delimited JSON form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::fragment::FragmentPath;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Pojo,
    Idao,
    Daoimpl,
    Dto,
    Iservice,
    Serviceimpl,
    View,
    Controller,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Pojo => "pojo",
            Rule::Idao => "idao",
            Rule::Daoimpl => "daoimpl",
            Rule::Dto => "dto",
            Rule::Iservice => "iservice",
            Rule::Serviceimpl => "serviceimpl",
            Rule::View => "view",
            Rule::Controller => "controller",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for FragmentPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FragmentPath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        FragmentPath::from_str(&text).map_err(serde::de::Error::custom)
    }
}

/// One rule application: `source` addresses the PIM element the rule
/// consumed, `target` the PSM element it created.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLink {
    pub rule: Rule,
    pub source: FragmentPath,
    pub target: FragmentPath,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TraceLog {
    pub links: Vec<TraceLink>,
}

impl TraceLog {
    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub(crate) fn record(&mut self, rule: Rule, source: FragmentPath, target: FragmentPath) {
        self.links.push(TraceLink { rule, source, target });
    }

    /// One JSON object per line, fields in the order rule, source, target.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for link in &self.links {
            out.push_str(&serde_json::to_string(link).expect("trace links always serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, serde_json::Error> {
        let links = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<_, _>>()?;
        Ok(TraceLog { links })
    }
}
