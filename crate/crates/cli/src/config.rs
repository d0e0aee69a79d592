//! Config-file loading and flag merging.
//!
//! A config file is either a JSON object or key=value lines ('#'
//! comments allowed); keys mirror the flag names with '-' or '_'.
//! Flags override file values.

use std::path::{Path, PathBuf};

use riemann_awr::{ModelParams, RiemannSetup, DENSITY_FLOOR};
use serde::Deserialize;

use crate::args::CommonArgs;
use crate::errors::{CliError, CliResult};

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub rho_l: Option<f64>,
    pub u_l: Option<f64>,
    pub rho_r: Option<f64>,
    pub u_r: Option<f64>,
    #[serde(rename = "A", alias = "a")]
    pub a: Option<f64>,
    pub beta: Option<f64>,
    pub t_end: Option<f64>,
    pub cells: Option<usize>,
    pub cfl: Option<f64>,
    pub quad_level: Option<usize>,
    pub seed: Option<u64>,
    pub out_dir: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("malformed JSON config: {e}")))
        } else {
            Self::from_key_values(&text)
        }
    }

    fn from_key_values(text: &str) -> CliResult<Self> {
        let mut cfg = FileConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Input(format!(
                    "config line {} is not key=value: {line}",
                    lineno + 1
                ))
            })?;
            let key_norm = key.trim().replace('-', "_");
            let value = value.trim();
            let parse_f64 = |field: &str| -> CliResult<f64> {
                value
                    .parse()
                    .map_err(|_| CliError::Input(format!("invalid value for {field}: {value}")))
            };
            let parse_usize = |field: &str| -> CliResult<usize> {
                value
                    .parse()
                    .map_err(|_| CliError::Input(format!("invalid value for {field}: {value}")))
            };
            match key_norm.as_str() {
                "rho_l" => cfg.rho_l = Some(parse_f64("rho_l")?),
                "u_l" => cfg.u_l = Some(parse_f64("u_l")?),
                "rho_r" => cfg.rho_r = Some(parse_f64("rho_r")?),
                "u_r" => cfg.u_r = Some(parse_f64("u_r")?),
                "A" | "a" => cfg.a = Some(parse_f64("A")?),
                "beta" => cfg.beta = Some(parse_f64("beta")?),
                "t_end" => cfg.t_end = Some(parse_f64("t_end")?),
                "cells" => cfg.cells = Some(parse_usize("cells")?),
                "cfl" => cfg.cfl = Some(parse_f64("cfl")?),
                "quad_level" => cfg.quad_level = Some(parse_usize("quad_level")?),
                "seed" => {
                    cfg.seed =
                        Some(value.parse().map_err(|_| {
                            CliError::Input(format!("invalid value for seed: {value}"))
                        })?)
                }
                "out_dir" => cfg.out_dir = Some(value.to_string()),
                other => return Err(CliError::Input(format!("unknown config field: {other}"))),
            }
        }
        Ok(cfg)
    }
}

/// Fully resolved run inputs after merging defaults, config and flags.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub setup: RiemannSetup,
    pub rho_l: f64,
    pub u_l: f64,
    pub rho_r: f64,
    pub u_r: f64,
    pub a: f64,
    pub beta: f64,
    pub t_end: Option<f64>,
    pub cells: usize,
    pub cfl: f64,
    pub quad_level: usize,
    pub seed: u64,
    pub out_dir: PathBuf,
}

pub fn resolve(common: &CommonArgs) -> CliResult<Resolved> {
    let file = match &common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let rho_l = require("rho_l", common.rho_l.or(file.rho_l))?;
    let u_l = require("u_l", common.u_l.or(file.u_l))?;
    let rho_r = require("rho_r", common.rho_r.or(file.rho_r))?;
    let u_r = require("u_r", common.u_r.or(file.u_r))?;
    let a = require("A", common.a.or(file.a))?;
    let beta = require("beta", common.beta.or(file.beta))?;

    check_density("rho_l", rho_l)?;
    check_density("rho_r", rho_r)?;
    check_finite("u_l", u_l)?;
    check_finite("u_r", u_r)?;
    check_finite("beta", beta)?;
    if !a.is_finite() || a < 0.0 {
        return Err(CliError::Input(format!(
            "invalid value for A: must be finite and >= 0, got {a}"
        )));
    }

    let params = ModelParams::new(a, beta)
        .map_err(|e| CliError::Input(format!("invalid model parameters: {e}")))?;
    let setup = RiemannSetup::new(rho_l, u_l, rho_r, u_r, params)
        .map_err(|e| CliError::Input(format!("invalid Riemann data: {e}")))?;

    let out_dir = common
        .out_dir
        .clone()
        .or_else(|| file.out_dir.as_ref().map(PathBuf::from))
        .or_else(|| std::env::var("RIEMANN_AWR_OUT_DIR").ok().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));

    Ok(Resolved {
        setup,
        rho_l,
        u_l,
        rho_r,
        u_r,
        a,
        beta,
        t_end: common.t_end.or(file.t_end),
        cells: common.cells.or(file.cells).unwrap_or(2000),
        cfl: common.cfl.or(file.cfl).unwrap_or(0.45),
        quad_level: common.quad_level.or(file.quad_level).unwrap_or(24),
        seed: common.seed.or(file.seed).unwrap_or(1234),
        out_dir,
    })
}

fn require(name: &str, value: Option<f64>) -> CliResult<f64> {
    value.ok_or_else(|| CliError::Input(format!("missing required field: {name}")))
}

fn check_density(name: &str, value: f64) -> CliResult<()> {
    if !value.is_finite() || value <= DENSITY_FLOOR {
        return Err(CliError::Input(format!(
            "invalid value for {name}: density must be positive and finite, got {value}"
        )));
    }
    Ok(())
}

fn check_finite(name: &str, value: f64) -> CliResult<()> {
    if !value.is_finite() {
        return Err(CliError::Input(format!(
            "invalid value for {name}: must be finite, got {value}"
        )));
    }
    Ok(())
}
