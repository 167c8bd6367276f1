//! Flat `key = value` configuration files with command-line overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::CliError;
use crate::experiments::{info, ParamSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Experiment {
    Fig1Region,
    Fig4Curve,
    Fig4Contours,
    Fig5Compare,
    FigA1Scan,
    FigA2Region,
    ResourceFamily,
    ChannelSim,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::Fig1Region,
        Experiment::Fig4Curve,
        Experiment::Fig4Contours,
        Experiment::Fig5Compare,
        Experiment::FigA1Scan,
        Experiment::FigA2Region,
        Experiment::ResourceFamily,
        Experiment::ChannelSim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Fig1Region => "fig1-region",
            Experiment::Fig4Curve => "fig4-curve",
            Experiment::Fig4Contours => "fig4-contours",
            Experiment::Fig5Compare => "fig5-compare",
            Experiment::FigA1Scan => "figA1-scan",
            Experiment::FigA2Region => "figA2-region",
            Experiment::ResourceFamily => "resource-family",
            Experiment::ChannelSim => "channel-sim",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = Experiment::ALL.iter().map(|e| e.name()).collect();
                CliError::Config(format!("unknown experiment '{s}' (known: {})", known.join(", ")))
            })
    }
}

/// Keys accepted by every experiment besides its own parameters.
const COMMON_KEYS: [&str; 2] = ["experiment", "output"];

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped,
/// duplicate keys are rejected.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = parse_assignment(line)
            .map_err(|e| CliError::Config(format!("line {}: {e}", n + 1)))?;
        if out.iter().any(|(seen, _)| *seen == k) {
            return Err(CliError::Config(format!("line {}: duplicate key '{k}'", n + 1)));
        }
        out.push((k, v));
    }
    Ok(out)
}

pub fn parse_assignment(s: &str) -> Result<(String, String), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got '{s}'"))?;
    let (k, v) = (k.trim(), v.trim());
    if k.is_empty() {
        return Err(format!("empty key in '{s}'"));
    }
    Ok((k.to_string(), v.to_string()))
}

/// A validated configuration with every parameter resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub experiment: Experiment,
    pub output: PathBuf,
    values: BTreeMap<String, String>,
}

impl Config {
    /// Applies `overrides` on top of `pairs`, fills defaults and rejects keys
    /// the experiment does not know.
    pub fn resolve(pairs: Vec<(String, String)>, overrides: Vec<(String, String)>) -> Result<Self, CliError> {
        let mut given: BTreeMap<String, String> = pairs.into_iter().collect();
        given.extend(overrides);
        let experiment: Experiment = given
            .get("experiment")
            .ok_or_else(|| CliError::Config("missing required key 'experiment'".into()))?
            .parse()?;
        let specs = info(experiment).params;
        for key in given.keys() {
            if !COMMON_KEYS.contains(&key.as_str()) && !specs.iter().any(|p| p.key == key) {
                return Err(CliError::Config(format!(
                    "unknown key '{key}' for {experiment} (see `gauss-lab describe {experiment}`)"
                )));
            }
        }
        let output = PathBuf::from(
            given
                .get("output")
                .cloned()
                .unwrap_or_else(|| format!("{experiment}.csv")),
        );
        let values = specs
            .iter()
            .map(|p: &ParamSpec| {
                let v = given.get(p.key).cloned().unwrap_or_else(|| p.default.to_string());
                (p.key.to_string(), v)
            })
            .collect();
        Ok(Config {
            experiment,
            output,
            values,
        })
    }

    pub fn from_text(text: &str, overrides: &[String]) -> Result<Self, CliError> {
        let overrides = overrides
            .iter()
            .map(|s| parse_assignment(s).map_err(|e| CliError::Config(format!("--set: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Config::resolve(parse_pairs(text)?, overrides)
    }

    /// Resolved parameters in key order.
    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    fn raw(&self, key: &str) -> Result<&str, CliError> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::Config(format!("parameter '{key}' is not defined for {}", self.experiment)))
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        let raw = self.raw(key)?;
        raw.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| CliError::Config(format!("{key} = '{raw}' is not a finite number")))
    }

    /// `None` when the value is `auto`.
    pub fn f64_or_auto(&self, key: &str) -> Result<Option<f64>, CliError> {
        if self.raw(key)? == "auto" {
            Ok(None)
        } else {
            self.f64(key).map(Some)
        }
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        let raw = self.raw(key)?;
        raw.parse::<usize>()
            .map_err(|_| CliError::Config(format!("{key} = '{raw}' is not a non-negative integer")))
    }

    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        let raw = self.raw(key)?;
        raw.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| CliError::Config(format!("{key}: '{s}' is not a finite number")))
            })
            .collect()
    }

    pub fn choice(&self, key: &str, allowed: &[&str]) -> Result<String, CliError> {
        let raw = self.raw(key)?;
        if allowed.contains(&raw) {
            Ok(raw.to_string())
        } else {
            Err(CliError::Config(format!("{key} = '{raw}' must be one of {}", allowed.join(", "))))
        }
    }
}
