//! Run configuration: defaults, a `key = value` config file, and the
//! precedence rule flags > environment > config file > defaults.

use std::path::PathBuf;

/// Degree bounds and artifact plumbing shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Internal-degree bound for one-variable series and Gröbner truncation.
    pub order: usize,
    /// Homological bound for Tor tables.
    pub tor_i: usize,
    /// Internal-degree bound for Tor tables.
    pub tor_j: usize,
    /// Trailing-window width for finiteness verdicts.
    pub window: usize,
    /// Generator-order permutation applied to the monomial order
    /// (1-based generator labels).
    pub permutation: Option<Vec<u8>>,
    pub workers: usize,
    pub output_dir: Option<PathBuf>,
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: 12,
            tor_i: 5,
            tor_j: 12,
            window: 4,
            permutation: None,
            workers: 4,
            format: Format::Text,
            output_dir: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.order < 2 || self.tor_i < 2 || self.tor_j < 2 {
            return Err("degree bounds must be at least 2".into());
        }
        if self.workers < 1 {
            return Err("worker count must be at least 1".into());
        }
        if let Some(p) = &self.permutation {
            let mut seen = vec![false; p.len()];
            for &g in p {
                if g == 0 || g as usize > p.len() || seen[g as usize - 1] {
                    return Err(format!("permutation must list 1..={} once each", p.len()));
                }
                seen[g as usize - 1] = true;
            }
        }
        Ok(())
    }

    /// Merge a `key = value` config file under the current values: only
    /// fields still at their defaults are overwritten.
    pub fn merge_file(&mut self, text: &str, defaults: &RunConfig) -> Result<(), String> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected `key = value`", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| format!("config line {}: bad {what} `{value}`", lineno + 1);
            match key {
                "order" if self.order == defaults.order => {
                    self.order = value.parse().map_err(|_| bad("order"))?;
                }
                "tor-i" if self.tor_i == defaults.tor_i => {
                    self.tor_i = value.parse().map_err(|_| bad("tor-i"))?;
                }
                "tor-j" if self.tor_j == defaults.tor_j => {
                    self.tor_j = value.parse().map_err(|_| bad("tor-j"))?;
                }
                "window" if self.window == defaults.window => {
                    self.window = value.parse().map_err(|_| bad("window"))?;
                }
                "workers" if self.workers == defaults.workers => {
                    self.workers = value.parse().map_err(|_| bad("workers"))?;
                }
                "permutation" if self.permutation.is_none() => {
                    self.permutation = Some(parse_permutation(value).ok_or_else(|| bad("permutation"))?);
                }
                "output-dir" if self.output_dir.is_none() => {
                    self.output_dir = Some(PathBuf::from(value));
                }
                "format" if self.format == defaults.format => {
                    self.format = parse_format(value).ok_or_else(|| bad("format"))?;
                }
                "order" | "tor-i" | "tor-j" | "window" | "workers" | "permutation"
                | "output-dir" | "format" => {} // flag already set; flags win
                _ => return Err(format!("config line {}: unknown key `{key}`", lineno + 1)),
            }
        }
        Ok(())
    }
}

pub fn parse_permutation(s: &str) -> Option<Vec<u8>> {
    s.split(',').map(|w| w.trim().parse::<u8>().ok()).collect()
}

pub fn parse_format(s: &str) -> Option<Format> {
    match s {
        "text" => Some(Format::Text),
        "json" => Some(Format::Json),
        "csv" => Some(Format::Csv),
        _ => None,
    }
}
