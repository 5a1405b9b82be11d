//! Flat `key=value` configuration files.
//!
//! One assignment per line, `#` starts a comment, blank lines ignored.
//! Later assignments override earlier ones. The CLI resolves settings as
//! defaults < config file < command-line flags; the file named by the
//! `CASIMIR_KERNEL_CONFIG` environment variable is read when no `--config`
//! flag is given.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Environment variable naming a default configuration file.
pub const CONFIG_ENV_VAR: &str = "CASIMIR_KERNEL_CONFIG";

/// Parsed configuration: ordered key → value map.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    line: idx + 1,
                    reason: format!("expected `key=value`, got `{line}`"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(Error::Parse {
                    line: idx + 1,
                    reason: "empty key".into(),
                });
            }
            values.insert(key.to_string(), value.to_string());
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                Error::Config(format!("cannot parse `{key}` from `{raw}`"))
            }),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_assignments_comments_and_blanks() {
        let cfg = Config::parse(
            "# sweep defaults\nmaterial = plasma\nomega_p_ev=9.0\n\na_min_nm = 0.8 # floor\n",
        )
        .unwrap();
        assert_eq!(cfg.get("material"), Some("plasma"));
        assert_eq!(cfg.get("omega_p_ev"), Some("9.0"));
        assert_eq!(cfg.get("a_min_nm"), Some("0.8"));
        assert_eq!(cfg.get("missing"), None);
    }

    #[test]
    fn later_assignment_wins() {
        let cfg = Config::parse("points=10\npoints=60\n").unwrap();
        assert_eq!(cfg.get("points"), Some("60"));
    }

    #[test]
    fn rejects_lines_without_equals() {
        let err = Config::parse("material plasma\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn typed_access() {
        let cfg = Config::parse("points=60\ntemperature_k=300.0\n").unwrap();
        assert_eq!(cfg.get_parsed::<usize>("points").unwrap(), Some(60));
        assert_eq!(cfg.get_parsed::<f64>("temperature_k").unwrap(), Some(300.0));
        assert!(cfg.get_parsed::<usize>("temperature_k").is_err());
        assert_eq!(cfg.get_parsed::<usize>("missing").unwrap(), None);
    }
}
