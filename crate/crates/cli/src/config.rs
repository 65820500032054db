//! `key = value` run files and flag/file/default precedence.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::Failure;

/// Values read from a run file. Keys are flag names without the leading
/// dashes (`A`, `alpha`, `grid-points`, ...).
#[derive(Debug, Default)]
pub struct RunFile {
    values: BTreeMap<String, String>,
}

impl RunFile {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Failure::Usage(format!(
                    "config line {}: expected `key = value`, got {raw:?}",
                    idx + 1
                ))
            })?;
            let key = key.trim().trim_start_matches("--").to_string();
            if key.is_empty() {
                return Err(Failure::Usage(format!(
                    "config line {}: empty key",
                    idx + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: Option<&str>) -> Result<Self, Failure> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Failure::Usage(format!("cannot read config {p}: {e}")))?;
                Self::parse(&text)
            }
        }
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, Failure>
    where
        T::Err: std::fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| {
                v.parse::<T>().map_err(|e| {
                    Failure::Usage(format!("config key {key}: cannot parse {v:?}: {e}"))
                })
            })
            .transpose()
    }

    /// The flag value if given, else the file value.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, Failure>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    /// Flag, then file, then `default`.
    pub fn pick_or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, Failure>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.pick(flag, key)?.unwrap_or(default))
    }
}
