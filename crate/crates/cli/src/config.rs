//! Sweep configuration: a flat `key = value` file overridden by flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use mzm_core::DeviceParams;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BiasMode {
    /// `μ_L = μ_R = eV`.
    #[default]
    Symmetric,
    /// `μ_L = -μ_R = eV`.
    Antisymmetric,
}

impl BiasMode {
    /// `(μ_L, μ_R)` for a bias `ev`.
    pub fn potentials(self, ev: f64) -> (f64, f64) {
        match self {
            BiasMode::Symmetric => (ev, ev),
            BiasMode::Antisymmetric => (ev, -ev),
        }
    }
}

impl FromStr for BiasMode {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "symmetric" => Ok(BiasMode::Symmetric),
            "antisymmetric" => Ok(BiasMode::Antisymmetric),
            other => Err(CliError::Usage(format!(
                "bias_mode must be 'symmetric' or 'antisymmetric', got '{other}'"
            ))),
        }
    }
}

impl fmt::Display for BiasMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BiasMode::Symmetric => "symmetric",
            BiasMode::Antisymmetric => "antisymmetric",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub bias_mode: BiasMode,
    pub ev_min: f64,
    pub ev_max: f64,
    pub ev_steps: usize,
    pub epsilon_m_list: Vec<f64>,
    pub gamma_e_l: f64,
    pub gamma_h_l: f64,
    pub gamma_e_r: f64,
    pub gamma_h_r: f64,
    pub temperature: f64,
    /// `None` writes the CSV to standard output.
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub mc_duration: Option<f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            bias_mode: BiasMode::Symmetric,
            ev_min: -20.0,
            ev_max: 20.0,
            ev_steps: 81,
            epsilon_m_list: vec![0.0],
            gamma_e_l: 1.0,
            gamma_h_l: 1.0,
            gamma_e_r: 1.0,
            gamma_h_r: 1.0,
            temperature: 0.0,
            out: None,
            seed: 20_240_601,
            mc_duration: None,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{key}: cannot parse '{}'", value.trim())))
}

impl SweepConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        match key {
            "bias_mode" => self.bias_mode = value.parse()?,
            "ev_min" => self.ev_min = parse_num(key, value)?,
            "ev_max" => self.ev_max = parse_num(key, value)?,
            "ev_steps" => self.ev_steps = parse_num(key, value)?,
            "epsilon_m" | "epsilon_m_list" => {
                self.epsilon_m_list = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse_num(key, s))
                    .collect::<CliResult<_>>()?;
            }
            "gamma_e_l" => self.gamma_e_l = parse_num(key, value)?,
            "gamma_h_l" => self.gamma_h_l = parse_num(key, value)?,
            "gamma_e_r" => self.gamma_e_r = parse_num(key, value)?,
            "gamma_h_r" => self.gamma_h_r = parse_num(key, value)?,
            "temperature" => self.temperature = parse_num(key, value)?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "seed" => self.seed = parse_num(key, value)?,
            "mc_duration" => self.mc_duration = Some(parse_num(key, value)?),
            other => return Err(CliError::Usage(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Parses the text of a config file on top of `self`.
    ///
    /// Blank lines and `#` comments are ignored; `epsilon_m` takes a
    /// comma-separated list.
    pub fn apply_text(&mut self, text: &str) -> CliResult<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("line {}: expected 'key = value', got '{line}'", n + 1))
            })?;
            self.set(key.trim(), value)
                .map_err(|e| match e {
                    CliError::Usage(msg) => CliError::Usage(format!("line {}: {msg}", n + 1)),
                    other => other,
                })?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg = Self::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.ev_steps < 2 {
            return usage(format!("ev_steps must be >= 2, got {}", self.ev_steps));
        }
        if !(self.ev_min < self.ev_max) || !self.ev_min.is_finite() || !self.ev_max.is_finite() {
            return usage(format!(
                "need finite ev_min < ev_max, got {} and {}",
                self.ev_min, self.ev_max
            ));
        }
        if self.epsilon_m_list.is_empty() {
            return usage("epsilon_m list is empty".into());
        }
        if let Some(d) = self.mc_duration {
            if !(d > 0.0) || !d.is_finite() {
                return usage(format!("mc_duration must be positive, got {d}"));
            }
        }
        for &eps in &self.epsilon_m_list {
            self.device(0.0, eps)
                .validate()
                .map_err(|e| CliError::Usage(e.to_string()))?;
        }
        Ok(())
    }

    /// Bias values `ev_min + (ev_max - ev_min) i / (n - 1)`.
    pub fn bias_grid(&self) -> Vec<f64> {
        let n = self.ev_steps;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.ev_max
                } else {
                    self.ev_min + (self.ev_max - self.ev_min) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    /// Device parameters at one grid point.
    pub fn device(&self, ev: f64, epsilon_m: f64) -> DeviceParams {
        let (mu_l, mu_r) = self.bias_mode.potentials(ev);
        DeviceParams {
            gamma_e_l: self.gamma_e_l,
            gamma_h_l: self.gamma_h_l,
            gamma_e_r: self.gamma_e_r,
            gamma_h_r: self.gamma_h_r,
            epsilon_m,
            mu_l,
            mu_r,
            temperature: self.temperature,
        }
    }
}
