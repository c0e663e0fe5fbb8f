//! Line-oriented key/value documents used for plans and run reports.
//!
//! ```text
//! # twosource report v1
//! mode = eq
//! b = 16
//! ```
//!
//! The first line names the document kind and format version. Each further
//! non-empty line is `key = value`; keys are unique and keep their order.
//! Lines starting with `#` after the header are comments.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "twosource";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    kind: String,
    entries: Vec<(String, String)>,
}

impl Document {
    pub fn new(kind: impl Into<String>) -> Self {
        Self {
            kind: kind.into(),
            entries: Vec::new(),
        }
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    /// Appends or replaces `key`.
    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        let key = key.into();
        let value = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((key, value)),
        }
    }

    /// Appends every entry of `other`, prefixing keys with `prefix`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: &Document) {
        for (k, v) in &other.entries {
            self.push(format!("{prefix}{k}"), v);
        }
    }

    /// Entries whose key starts with `prefix`, with the prefix removed.
    pub fn section(&self, kind: &str, prefix: &str) -> Document {
        let mut doc = Document::new(kind);
        for (k, v) in &self.entries {
            if let Some(rest) = k.strip_prefix(prefix) {
                doc.push(rest, v);
            }
        }
        doc
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn parse<T>(&self, key: &str) -> Result<T>
    where
        T: FromStr,
        T::Err: fmt::Display,
    {
        let raw = self
            .get(key)
            .ok_or_else(|| Error::Parse(format!("missing key {key:?}")))?;
        raw.parse()
            .map_err(|e| Error::Parse(format!("{key} = {raw:?}: {e}")))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {MAGIC} {} v{FORMAT_VERSION}", self.kind)?;
        for (k, v) in &self.entries {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Document {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty document".into()))?;
        let mut words = header
            .strip_prefix('#')
            .map(str::split_whitespace)
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
        if words.next() != Some(MAGIC) {
            return Err(Error::Parse(format!("bad header {header:?}")));
        }
        let kind = words
            .next()
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
        match words.next() {
            Some(v) if v == format!("v{FORMAT_VERSION}") => {}
            other => {
                return Err(Error::Parse(format!(
                    "unsupported format version {other:?}"
                )))
            }
        }
        let mut doc = Document::new(kind);
        for line in lines {
            if line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key = value, got {line:?}")))?;
            let k = k.trim();
            if doc.get(k).is_some() {
                return Err(Error::Parse(format!("duplicate key {k:?}")));
            }
            doc.push(k, v.trim());
        }
        Ok(doc)
    }
}
