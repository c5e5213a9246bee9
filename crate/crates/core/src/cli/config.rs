//! Flat `key = value` configuration with dotted keys.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
    used: RefCell<BTreeSet<String>>,
}

impl RawConfig {
    /// One `key = value` per line; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                return Err(Error::Config(format!("line {}: empty key", i + 1)));
            }
            if entries.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Config(format!("key `{k}` given twice")));
            }
        }
        Ok(RawConfig {
            entries,
            used: RefCell::new(BTreeSet::new()),
        })
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.insert(key.to_string(), value.into());
    }

    pub fn remove(&mut self, key: &str) -> Option<String> {
        self.entries.remove(key)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        let v = self.entries.get(key)?;
        self.used.borrow_mut().insert(key.to_string());
        Some(v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::Config(format!("missing required key `{key}`")))
    }

    pub fn has_prefix(&self, prefix: &str) -> bool {
        let dotted = format!("{prefix}.");
        self.entries.keys().any(|k| k.starts_with(&dotted))
    }

    pub fn parse_or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => parse_value(key, v),
        }
    }

    pub fn parse_required<T: FromStr>(&self, key: &str) -> Result<T> {
        parse_value(key, self.require(key)?)
    }

    /// Fails on keys that no part of the experiment read.
    pub fn check_all_used(&self) -> Result<()> {
        let used = self.used.borrow();
        match self.entries.keys().find(|k| !used.contains(*k)) {
            Some(k) => Err(Error::Config(format!("unknown key `{k}`"))),
            None => Ok(()),
        }
    }

    /// Sorted `key=value` lines.
    pub fn canonical(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}

pub fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{v}`")))
}

/// Comma-separated items; brackets protect inner separators.
pub fn split_list(v: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in v.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// `name` or `name[a b c]`.
pub fn split_args(item: &str) -> Result<(String, Vec<String>)> {
    match item.split_once('[') {
        None => Ok((item.trim().to_string(), Vec::new())),
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::Config(format!("unbalanced brackets in `{item}`")))?;
            Ok((
                name.trim().to_string(),
                inner.split_whitespace().map(str::to_string).collect(),
            ))
        }
    }
}

/// Integer lists: `2, 4, 8`, `2..64` (every integer) or `2..64:x2` (doubling),
/// optionally wrapped in brackets.
pub fn parse_int_list(key: &str, v: &str) -> Result<Vec<u32>> {
    let v = v.trim();
    let v = v.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(v);
    let mut out = Vec::new();
    for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let (hi, doubling) = match hi.split_once(':') {
                Some((h, "x2")) => (h, true),
                Some((_, step)) => return Err(Error::Config(format!("`{key}`: unknown step `{step}`"))),
                None => (hi, false),
            };
            let lo: u32 = parse_value(key, lo)?;
            let hi: u32 = parse_value(key, hi)?;
            if lo > hi || (doubling && lo == 0) {
                return Err(Error::Config(format!("`{key}`: empty range `{item}`")));
            }
            let mut k = lo;
            while k <= hi {
                out.push(k);
                k = if doubling { k * 2 } else { k + 1 };
            }
        } else {
            out.push(parse_value(key, item)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Config(format!("`{key}` is empty")));
    }
    Ok(out)
}

pub fn parse_float_list(key: &str, v: &str) -> Result<Vec<f64>> {
    let out: Result<Vec<f64>> = v
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(key, s))
        .collect();
    let out = out?;
    if out.is_empty() {
        return Err(Error::Config(format!("`{key}` is empty")));
    }
    Ok(out)
}
