use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use bergman_core::verify::VerifyConfig;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(format!("expected json or csv, got {other:?}")),
        }
    }
}

/// Settings that fully determine a run's output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub xi: f64,
    pub trunc: usize,
    pub quad_r: usize,
    pub quad_m: usize,
    pub seed: u64,
    pub tol_exact: f64,
    pub tol_quad: f64,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub suite: Vec<String>,
    /// Entries read from `--config`, in file order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config_file: Option<ConfigFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigFile {
    pub path: PathBuf,
    pub entries: Vec<(String, String)>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let v = VerifyConfig::default();
        Self {
            xi: v.xi,
            trunc: v.degree,
            quad_r: v.quad_radial,
            quad_m: v.quad_angular,
            seed: v.seed,
            tol_exact: v.tol_exact,
            tol_quad: v.tol_quad,
            format: None,
            out: None,
            suite: Vec::new(),
            config_file: None,
        }
    }
}

fn parse_field<T: FromStr>(field: &str, value: &str, origin: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e: T::Err| CliError::Config(format!("{origin}: field `{field}`: {e} (got {value:?})")))
}

impl RunConfig {
    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            xi: self.xi,
            degree: self.trunc,
            quad_radial: self.quad_r,
            quad_angular: self.quad_m,
            seed: self.seed,
            tol_exact: self.tol_exact,
            tol_quad: self.tol_quad,
        }
    }

    pub fn set(&mut self, field: &str, value: &str, origin: &str) -> Result<(), CliError> {
        match field {
            "xi" => self.xi = parse_field(field, value, origin)?,
            "trunc" => self.trunc = parse_field(field, value, origin)?,
            "quad_r" => self.quad_r = parse_field(field, value, origin)?,
            "quad_m" => self.quad_m = parse_field(field, value, origin)?,
            "seed" => self.seed = parse_field(field, value, origin)?,
            "tol_exact" => self.tol_exact = parse_field(field, value, origin)?,
            "tol_quad" => self.tol_quad = parse_field(field, value, origin)?,
            "format" => self.format = Some(parse_field(field, value, origin)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "suite" => {
                self.suite = value
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect()
            }
            other => return Err(CliError::Config(format!("{origin}: unknown field `{other}`"))),
        }
        Ok(())
    }

    /// Apply a `key = value` file; blank lines and `#` comments are skipped.
    pub fn load_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        let mut entries = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let origin = format!("{}:{}", path.display(), n + 1);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("{origin}: expected `key = value`, got {line:?}")))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            self.set(&key, value, &origin)?;
            entries.push((key, value.to_string()));
        }
        self.config_file = Some(ConfigFile {
            path: path.to_path_buf(),
            entries,
        });
        Ok(())
    }
}
