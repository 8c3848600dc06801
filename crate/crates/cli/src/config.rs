//! Flat `key = value` files mirroring the command-line flags. Flags given on
//! the command line take precedence.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;

const KEYS: &[&str] = &[
    "g", "interval", "t0", "rmin", "rmax", "points", "log", "out", "format", "slack", "samples", "seed", "tol",
    "ibp-tol", "r", "abs-tol", "no-timing", "y0", "experimental-off-axis",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Blank lines and lines starting with `#` are ignored. Keys may use `-`
    /// or `_`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", n + 1)))?;
            let key = k.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!("config line {}: unknown key `{}`", n + 1, k.trim())));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config value `{v}` for `{key}` does not parse"))),
        }
    }

    /// `flag`, else the file's value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        Ok(match flag {
            Some(v) => v,
            None => self.get(key)?.unwrap_or(default),
        })
    }

    pub fn pick_opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    /// A boolean switch is on if given on the command line or set true in the file.
    pub fn switch(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        Ok(flag || self.get::<bool>(key)?.unwrap_or(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win() {
        let c = ConfigFile::parse("# sweep\ng = arctan:1\nt0 = 0.5\n\nrmin=0.1\nno_timing = true\n").unwrap();
        assert_eq!(c.pick(None, "g", "zero".to_string()).unwrap(), "arctan:1");
        assert_eq!(c.pick(Some(1.0), "t0", 0.0).unwrap(), 1.0);
        assert_eq!(c.pick(None, "t0", 0.0).unwrap(), 0.5);
        assert_eq!(c.pick(None, "rmax", 10.0).unwrap(), 10.0);
        assert!(c.switch(false, "no-timing").unwrap());
        assert!(!c.switch(false, "log").unwrap());
    }

    #[test]
    fn malformed() {
        assert!(ConfigFile::parse("g arctan:1").is_err());
        assert!(ConfigFile::parse("colour = red").is_err());
        let c = ConfigFile::parse("points = many").unwrap();
        assert_eq!(c.get::<usize>("points").unwrap_err().exit_code(), 64);
    }
}
