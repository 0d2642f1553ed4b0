//! Plain-text `key = value` configuration files.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;

/// Keys accepted in a configuration file; each mirrors a long flag.
pub const KEYS: &[&str] = &[
    "a", "d0", "alpha0", "beta0", "start", "stop", "steps", "a-start", "a-stop", "a-steps", "tail-bound", "format", "out",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Blank lines and `#` comments are skipped; `_` in keys reads as `-`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key '{key}'", n + 1));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|v| v.parse::<T>().map_err(|e| CliError::Usage(format!("config key '{key}' = '{v}': {e}"))))
            .transpose()
    }

    pub fn get_with<T>(&self, key: &str, parse: fn(&str) -> Result<T, String>) -> Result<Option<T>, CliError> {
        self.raw(key)
            .map(|v| parse(v).map_err(|e| CliError::Usage(format!("config key '{key}' = '{v}': {e}"))))
            .transpose()
    }
}

/// Flag, then config file, then default.
pub fn resolve<T: FromStr>(flag: Option<T>, config: &Config, key: &str, default: T) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(v),
        None => Ok(config.get(key)?.unwrap_or(default)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let c = Config::parse("# sweep\nsteps = 50\ntail_bound=1e-10  # tighter\n\n").unwrap();
        assert_eq!(c.get::<usize>("steps").unwrap(), Some(50));
        assert_eq!(c.get::<f64>("tail-bound").unwrap(), Some(1e-10));
        assert_eq!(c.get::<f64>("a").unwrap(), None);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("steps 10").is_err());
        assert!(Config::parse("steps = ten").unwrap().get::<usize>("steps").is_err());
    }

    #[test]
    fn precedence() {
        let c = Config::parse("steps = 7").unwrap();
        assert_eq!(resolve(Some(3usize), &c, "steps", 200).unwrap(), 3);
        assert_eq!(resolve(None, &c, "steps", 200).unwrap(), 7);
        assert_eq!(resolve(None, &Config::default(), "steps", 200).unwrap(), 200);
    }
}
