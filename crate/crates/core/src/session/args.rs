use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};

use serde_json::Value;

use super::diag::{DResult, Diagnostic, ARGUMENT};

/// Named task arguments with bookkeeping of which ones were read.
pub(crate) struct Args<'a> {
    map: &'a BTreeMap<String, Value>,
    used: RefCell<BTreeSet<&'a str>>,
}

impl<'a> Args<'a> {
    pub fn new(map: &'a BTreeMap<String, Value>) -> Self {
        Args { map, used: RefCell::new(BTreeSet::new()) }
    }

    fn get(&self, key: &str) -> Option<&'a Value> {
        let (k, v) = self.map.get_key_value(key)?;
        self.used.borrow_mut().insert(k.as_str());
        Some(v)
    }

    pub fn str(&self, key: &str) -> DResult<Option<String>> {
        match self.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(Value::Number(n)) => Ok(Some(n.to_string())),
            Some(other) => Err(Diagnostic::new(ARGUMENT, format!("`{key}` must be a string, got {other}"))),
        }
    }

    pub fn req_str(&self, key: &str) -> DResult<String> {
        self.str(key)?.ok_or_else(|| Diagnostic::new(ARGUMENT, format!("missing argument `{key}`")))
    }

    pub fn uint(&self, key: &str) -> DResult<Option<u64>> {
        match self.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::Number(n)) => {
                n.as_u64().map(Some).ok_or_else(|| Diagnostic::new(ARGUMENT, format!("`{key}` must be a non-negative integer")))
            }
            Some(Value::String(s)) => s
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| Diagnostic::new(ARGUMENT, format!("`{key}` must be a non-negative integer, got `{s}`"))),
            Some(other) => Err(Diagnostic::new(ARGUMENT, format!("`{key}` must be an integer, got {other}"))),
        }
    }

    pub fn u32_or(&self, key: &str, default: u32) -> DResult<u32> {
        match self.uint(key)? {
            None => Ok(default),
            Some(v) => u32::try_from(v).map_err(|_| Diagnostic::new(ARGUMENT, format!("`{key}` is too large"))),
        }
    }

    /// Every argument was consumed by the command.
    pub fn finish(&self, command: &str) -> DResult<()> {
        let used = self.used.borrow();
        match self.map.keys().find(|k| !used.contains(k.as_str())) {
            Some(k) => Err(Diagnostic::new(ARGUMENT, format!("unknown argument `{k}` for `{command}`"))),
            None => Ok(()),
        }
    }
}
