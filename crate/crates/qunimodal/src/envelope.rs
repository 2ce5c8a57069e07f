//! JSON wrapper shared by every command.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope<T> {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub result: T,
    pub version: String,
}

impl<T: Serialize> OutputEnvelope<T> {
    pub fn new(command: &str, params: BTreeMap<String, Value>, result: T) -> Self {
        Self {
            command: command.into(),
            params,
            result,
            version: VERSION.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope is always serializable")
    }
}

/// Builds a params map from `(key, value)` pairs.
#[macro_export]
macro_rules! params {
    ($($key:literal => $value:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut map = ::std::collections::BTreeMap::new();
        $(map.insert($key.to_string(), ::serde_json::json!($value));)*
        map
    }};
}
