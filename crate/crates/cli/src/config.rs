//! Config-file merge and shared flag conventions.
//!
//! A config file is flat TOML whose keys are the long flag names
//! (`m = 1000`, `alpha = -0.5`, `output = "run.csv"`). Flags always win;
//! the file only fills flags the user did not pass.

use std::path::{Path, PathBuf};

use lndet::DisorderScale;

use crate::CliError;

pub struct ConfigFile {
    table: toml::Table,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let table = match path {
            None => toml::Table::new(),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
                text.parse::<toml::Table>()
                    .map_err(|e| CliError::usage(format!("config {}: {e}", p.display())))?
            }
        };
        Ok(Self { table })
    }

    fn get(&self, key: &str) -> Option<&toml::Value> {
        self.table.get(key)
    }

    pub fn fill_f64(&self, slot: &mut Option<f64>, key: &str) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(v) = self.get(key) {
                *slot = Some(match v {
                    toml::Value::Float(f) => *f,
                    toml::Value::Integer(i) => *i as f64,
                    _ => return Err(CliError::usage(format!("config key `{key}` must be a number"))),
                });
            }
        }
        Ok(())
    }

    pub fn fill_usize(&self, slot: &mut Option<usize>, key: &str) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(v) = self.get(key) {
                let int = v
                    .as_integer()
                    .ok_or_else(|| CliError::usage(format!("config key `{key}` must be an integer")))?;
                *slot = Some(usize::try_from(int).map_err(|_| {
                    CliError::usage(format!("config key `{key}` must be non-negative"))
                })?);
            }
        }
        Ok(())
    }

    pub fn fill_u64(&self, slot: &mut Option<u64>, key: &str) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(v) = self.get(key) {
                let int = v
                    .as_integer()
                    .ok_or_else(|| CliError::usage(format!("config key `{key}` must be an integer")))?;
                *slot = Some(int as u64);
            }
        }
        Ok(())
    }

    pub fn fill_string(&self, slot: &mut Option<String>, key: &str) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(v) = self.get(key) {
                let s = v
                    .as_str()
                    .ok_or_else(|| CliError::usage(format!("config key `{key}` must be a string")))?;
                *slot = Some(s.to_owned());
            }
        }
        Ok(())
    }
}

/// Resolve the output path: explicit flag, else `LNDET_OUT_DIR`/default,
/// else ./default.
pub fn resolve_output(output: Option<String>, default_name: &str) -> PathBuf {
    match output {
        Some(p) => PathBuf::from(p),
        None => {
            let dir = std::env::var("LNDET_OUT_DIR").unwrap_or_else(|_| ".".into());
            Path::new(&dir).join(default_name)
        }
    }
}

/// Build the disorder scale from mutually exclusive --alpha / --x.
pub fn resolve_scale(m: usize, alpha: Option<f64>, x: Option<f64>) -> Result<DisorderScale, CliError> {
    match (alpha, x) {
        (Some(_), Some(_)) => Err(CliError::usage(
            "--alpha and --x are mutually exclusive; pass exactly one",
        )),
        (None, None) => Err(CliError::usage("one of --alpha or --x is required")),
        (Some(a), None) => Ok(DisorderScale::from_alpha(m, a)?),
        (None, Some(x)) => Ok(DisorderScale::from_x(m, x)?),
    }
}

/// Parse "a,b,c" into f64s.
pub fn parse_f64_list(text: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| CliError::usage(format!("{flag}: `{t}`: {e}")))
        })
        .collect()
}

/// Parse "start:stop:step" (inclusive) into the M list.
pub fn parse_m_range(text: &str) -> Result<Vec<usize>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::usage(format!(
            "--m-range expects start:stop:step, got `{text}`"
        )));
    }
    let nums: Vec<usize> = parts
        .iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| CliError::usage(format!("--m-range: `{t}`: {e}")))
        })
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if step == 0 {
        return Err(CliError::usage("--m-range step must be positive"));
    }
    Ok((start..=stop).step_by(step).collect())
}

pub fn require_even(m: usize) -> Result<(), CliError> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(CliError::usage(format!(
            "M must be even and >= 2, got {m}"
        )));
    }
    Ok(())
}
