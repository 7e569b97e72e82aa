//! Resource bounds and tolerances, with a `key = value` file format.

use std::path::Path;

use crate::error::{Error, Result};

/// Environment variable naming a default configuration file.
pub const CONFIG_ENV: &str = "CUNTZ_CONFIG";

#[derive(Clone, Debug, PartialEq)]
pub struct Limits {
    /// Largest CAR mode index `n` for which `ζ^{n−1}(a)` is built (2^{n−1} terms).
    pub max_car_index: usize,
    /// Largest UHF matrix level (dense exact matrices of size 2^level).
    pub max_level: usize,
    /// Largest cutoff of the permutative representation (sparse, dimension 2^depth).
    pub max_depth: usize,
    /// Largest word length for monomial-basis sweeps (4^L basis elements).
    pub max_basis_level: usize,
    /// Absolute tolerance on floating-point norm comparisons.
    pub tolerance: f64,
    /// Default seed for randomized suites.
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_car_index: 12,
            max_level: 8,
            max_depth: 12,
            max_basis_level: 4,
            tolerance: 1e-9,
            seed: 0,
        }
    }
}

impl Limits {
    pub fn check(what: &'static str, value: usize, limit: usize) -> Result<()> {
        if value > limit {
            Err(Error::ResourceBound { what, value, limit })
        } else {
            Ok(())
        }
    }

    /// Parses `key = value` lines on top of the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut limits = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: &dyn std::fmt::Display| {
                Error::InvalidArgument(format!("config line {}: {}: {}", lineno + 1, key, e))
            };
            match key {
                "max_car_index" => limits.max_car_index = value.parse().map_err(|e| bad(&e))?,
                "max_level" => limits.max_level = value.parse().map_err(|e| bad(&e))?,
                "max_depth" => limits.max_depth = value.parse().map_err(|e| bad(&e))?,
                "max_basis_level" => limits.max_basis_level = value.parse().map_err(|e| bad(&e))?,
                "tolerance" => limits.tolerance = value.parse().map_err(|e| bad(&e))?,
                "seed" => limits.seed = value.parse().map_err(|e| bad(&e))?,
                _ => return Err(bad(&"unknown key")),
            }
        }
        Ok(limits)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {}", path.display(), e)))?;
        Self::parse(&text)
    }
}
