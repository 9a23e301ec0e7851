//! Argument parsing for exact values and the optional `key=value` config file.

use std::collections::BTreeMap;
use std::path::Path;

use theta_core::numeric::parse_rat;
use theta_core::{Error, Point, Rat, Result};

/// `"a,b,c"` as three rationals.
pub fn parse_triple(text: &str) -> Result<(Rat, Rat, Rat)> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected a,b,c but got {text:?}")));
    }
    Ok((parse_rat(parts[0])?, parse_rat(parts[1])?, parse_rat(parts[2])?))
}

/// `"x,y"` or `"inf"`.
pub fn parse_point(text: &str) -> Result<Point> {
    let text = text.trim();
    if matches!(text, "inf" | "infinity" | "O") {
        return Ok(Point::Infinity);
    }
    match text.split_once(',') {
        Some((x, y)) => Ok(Point::new(parse_rat(x)?, parse_rat(y)?)),
        None => Err(Error::Parse(format!("expected x,y or inf but got {text:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Defaults read from a config file; command-line flags take precedence.
#[derive(Debug, Clone, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

const KNOWN_KEYS: [&str; 6] = ["format", "height_bound", "mn_bound", "max_orbit_steps", "r_max", "n_max"];

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config> {
        let mut values = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse(format!("config line {}: expected key=value", lineno + 1)));
            };
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(Error::Parse(format!("config line {}: unknown key {key:?}", lineno + 1)));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Config { values })
    }

    /// `flag`, else the config value under `key`, else `default`.
    pub fn u64_or(&self, flag: Option<u64>, key: &str, default: u64) -> Result<u64> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.values.get(key) {
            Some(v) => v
                .parse()
                .map_err(|_| Error::Parse(format!("config {key}: {v:?} is not a nonnegative integer"))),
            None => Ok(default),
        }
    }

    pub fn format_or(&self, flag: Option<Format>) -> Result<Format> {
        if let Some(f) = flag {
            return Ok(f);
        }
        match self.values.get("format").map(String::as_str) {
            None | Some("json") => Ok(Format::Json),
            Some("csv") => Ok(Format::Csv),
            Some(other) => Err(Error::Parse(format!("config format: unknown value {other:?}"))),
        }
    }
}
