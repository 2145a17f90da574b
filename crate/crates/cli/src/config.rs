//! `key = value` config files.
//!
//! A config file supplies defaults for long flags, keyed by flag name
//! (`variant = studentized`, `n = 1000`). Flags always override config
//! entries. Keys that no resolved flag consumed are reported on stderr
//! unless `--quiet` is set, so typos do not silently fall back to defaults.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

struct Entry {
    value: String,
    line: usize,
    used: bool,
}

/// Parsed config file with per-key consumption tracking.
pub struct FileConfig {
    entries: BTreeMap<String, Entry>,
    path: String,
}

impl FileConfig {
    /// Loads `path` when given; an absent flag means an empty config.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig { entries: BTreeMap::new(), path: String::new() });
        };
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Core(scanstat::Error::Io(format!("{shown}: {e}"))))?;
        Self::parse(&text, shown)
    }

    /// Parses `key = value` lines; `#` starts a comment line.
    pub fn parse(text: &str, path: String) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let Some((key, value)) = trimmed.split_once('=') else {
                return Err(CliError::Parse(format!(
                    "{path}:{line}: expected `key = value`, got {trimmed:?}"
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(CliError::Parse(format!("{path}:{line}: empty key")));
            }
            if let Some(previous) = entries.insert(key.clone(), Entry { value, line, used: false })
            {
                let _ = previous;
                return Err(CliError::Parse(format!(
                    "{path}:{line}: duplicate key {key:?}"
                )));
            }
        }
        Ok(FileConfig { entries, path })
    }

    /// Takes the raw string for `key`, marking it consumed.
    pub fn take_raw(&mut self, key: &str) -> Option<(String, usize)> {
        self.entries.get_mut(key).map(|e| {
            e.used = true;
            (e.value.clone(), e.line)
        })
    }

    /// Takes `key` parsed as `T`; parse failures carry file and line.
    pub fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: Display,
    {
        let path = self.path.clone();
        match self.take_raw(key) {
            None => Ok(None),
            Some((value, line)) => value.parse::<T>().map(Some).map_err(|e| {
                CliError::Parse(format!("{path}:{line}: bad value for {key}: {e}"))
            }),
        }
    }

    /// Takes `key` parsed as a clap value enum (same spellings as the flag).
    pub fn take_enum<T: clap::ValueEnum>(&mut self, key: &str) -> Result<Option<T>, CliError> {
        let path = self.path.clone();
        match self.take_raw(key) {
            None => Ok(None),
            Some((value, line)) => T::from_str(&value, true).map(Some).map_err(|e| {
                CliError::Parse(format!("{path}:{line}: bad value for {key}: {e}"))
            }),
        }
    }

    /// Reports config keys no flag consumed.
    pub fn warn_unrecognized(&self, quiet: bool) {
        if quiet {
            return;
        }
        for (key, entry) in &self.entries {
            if !entry.used {
                eprintln!(
                    "warning: {}:{}: unrecognized config key {key:?} ignored",
                    self.path, entry.line
                );
            }
        }
    }
}

/// Flag value if present, else the config entry, else `None`.
pub fn resolve<T: FromStr>(
    flag: Option<T>,
    cfg: &mut FileConfig,
    key: &str,
) -> Result<Option<T>, CliError>
where
    T::Err: Display,
{
    // Consume the config key even when the flag wins, so an overridden
    // entry is recognized rather than warned about.
    let fallback = cfg.take::<T>(key)?;
    Ok(flag.or(fallback))
}

/// [`resolve`] for clap value enums.
pub fn resolve_enum<T: clap::ValueEnum>(
    flag: Option<T>,
    cfg: &mut FileConfig,
    key: &str,
) -> Result<Option<T>, CliError> {
    let fallback = cfg.take_enum::<T>(key)?;
    Ok(flag.or(fallback))
}

/// Unwraps a resolved value or explains how to supply it.
pub fn require<T>(value: Option<T>, what: &str) -> Result<T, CliError> {
    value.ok_or_else(|| {
        CliError::Usage(format!(
            "missing {what}: pass the flag or set the config key"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_values() {
        let text = "# defaults\n\nvariant = studentized\nn=1000\n";
        let mut cfg = FileConfig::parse(text, "test.cfg".into()).unwrap();
        assert_eq!(cfg.take::<usize>("n").unwrap(), Some(1000));
        assert_eq!(cfg.take_raw("variant").unwrap().0, "studentized");
        assert!(cfg.take_raw("absent").is_none());
    }

    #[test]
    fn rejects_malformed_lines_and_duplicates() {
        assert!(matches!(
            FileConfig::parse("just words\n", "t".into()),
            Err(CliError::Parse(_))
        ));
        assert!(matches!(
            FileConfig::parse("n = 1\nn = 2\n", "t".into()),
            Err(CliError::Parse(_))
        ));
    }

    #[test]
    fn flag_beats_config_and_consumes_the_key() {
        let mut cfg = FileConfig::parse("n = 7\n", "t".into()).unwrap();
        let n = resolve(Some(3usize), &mut cfg, "n").unwrap();
        assert_eq!(n, Some(3));
        assert!(cfg.entries["n"].used);
    }

    #[test]
    fn bad_config_value_reports_file_and_line() {
        let mut cfg = FileConfig::parse("\nn = many\n", "my.cfg".into()).unwrap();
        match resolve::<usize>(None, &mut cfg, "n") {
            Err(CliError::Parse(m)) => assert!(m.starts_with("my.cfg:2:"), "{m}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
