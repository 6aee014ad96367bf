use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{rotation_velocity, ForcingSource, ModelConfig, RotatingHump, SchemeKind};
use crate::sbp::SbpOrder;
use crate::time::{DEFAULT_DIFFUSION_SAFETY, DEFAULT_MONITOR_CADENCE};

/// Which preset a configuration starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentId {
    /// Rotating hump inside `[−1, 1]²`, mixed conditions, manufactured forcing.
    One,
    /// The same hump on `[0, 1]²` where it crosses the boundary; Dirichlet data.
    Two,
    /// Unforced rotation of the hump on `[−1, 1]²`; only divergence is measured.
    Three,
    /// Experiment 1 physics with every field open to override.
    Custom,
}

impl FromStr for ExperimentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" => Ok(ExperimentId::One),
            "2" => Ok(ExperimentId::Two),
            "3" => Ok(ExperimentId::Three),
            "custom" => Ok(ExperimentId::Custom),
            other => Err(Error::Config(format!("unknown experiment '{other}'"))),
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentId::One => "1",
            ExperimentId::Two => "2",
            ExperimentId::Three => "3",
            ExperimentId::Custom => "custom",
        })
    }
}

/// Everything a run or convergence study needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentId,
    pub order: SbpOrder,
    pub bc: SchemeKind,
    pub epsilon: f64,
    /// Nodes per axis, one entry per grid.
    pub nodes: Vec<usize>,
    pub cfl: f64,
    pub t_final: f64,
    /// The square `[lo, hi]²`.
    pub domain: (f64, f64),
    pub forcing: ForcingSource,
    pub out: Option<PathBuf>,
    pub diffusion_safety: f64,
    pub monitor_cadence: usize,
    /// Keep the resistive penalty `ε·σ″` in the mixed scheme.
    pub mixed_resistive_penalty: bool,
}

impl ExperimentConfig {
    pub fn preset(id: ExperimentId) -> Self {
        let base = ExperimentConfig {
            experiment: id,
            order: SbpOrder::Second,
            bc: SchemeKind::Mixed,
            epsilon: 0.01,
            nodes: vec![100],
            cfl: 0.5,
            t_final: 2.0 * std::f64::consts::PI,
            domain: (-1.0, 1.0),
            forcing: ForcingSource::Oracle,
            out: None,
            diffusion_safety: DEFAULT_DIFFUSION_SAFETY,
            monitor_cadence: DEFAULT_MONITOR_CADENCE,
            mixed_resistive_penalty: true,
        };
        match id {
            ExperimentId::One | ExperimentId::Custom => base,
            ExperimentId::Two => ExperimentConfig {
                bc: SchemeKind::Dirichlet,
                domain: (0.0, 1.0),
                mixed_resistive_penalty: false,
                ..base
            },
            ExperimentId::Three => ExperimentConfig {
                epsilon: 0.05,
                forcing: ForcingSource::None,
                mixed_resistive_penalty: false,
                ..base
            },
        }
    }

    /// Builds a configuration from `key = value` pairs: the last
    /// `experiment` entry picks the preset, the other keys are applied in
    /// order so later entries win.
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let id = pairs
            .iter()
            .rev()
            .find(|(k, _)| normalize_key(k) == "experiment")
            .map(|(_, v)| v.parse())
            .transpose()?
            .unwrap_or(ExperimentId::One);
        let mut config = ExperimentConfig::preset(id);
        for (k, v) in pairs.iter().filter(|(k, _)| normalize_key(k) != "experiment") {
            config.set(k, v)?;
        }
        config.validate()?;
        Ok(config)
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let bad = |what: &str| Error::Config(format!("invalid {what} '{value}'"));
        match normalize_key(key).as_str() {
            "experiment" => {
                let id: ExperimentId = value.parse()?;
                if id != self.experiment {
                    return Err(Error::Config(format!(
                        "experiment {id} conflicts with preset {}",
                        self.experiment
                    )));
                }
            }
            "order" => {
                self.order = value
                    .parse::<usize>()
                    .ok()
                    .and_then(SbpOrder::from_interior_order)
                    .ok_or_else(|| bad("order"))?;
            }
            "nodes" => {
                self.nodes = value
                    .split(',')
                    .map(|s| s.trim().parse::<usize>().map_err(|_| bad("node list")))
                    .collect::<Result<_>>()?;
            }
            "epsilon" => self.epsilon = value.parse().map_err(|_| bad("epsilon"))?,
            "cfl" => self.cfl = value.parse().map_err(|_| bad("cfl"))?,
            "tfinal" => self.t_final = value.parse().map_err(|_| bad("final time"))?,
            "bc" => self.bc = value.parse()?,
            "forcing" => self.forcing = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            "domain" => {
                let parts: Vec<f64> = value
                    .split(',')
                    .map(|s| s.trim().parse::<f64>().map_err(|_| bad("domain")))
                    .collect::<Result<_>>()?;
                match parts[..] {
                    [lo, hi] => self.domain = (lo, hi),
                    _ => return Err(bad("domain")),
                }
            }
            "safety" => self.diffusion_safety = value.parse().map_err(|_| bad("safety"))?,
            "cadence" => self.monitor_cadence = value.parse().map_err(|_| bad("cadence"))?,
            "mixedresistive" => {
                self.mixed_resistive_penalty = value.parse().map_err(|_| bad("mixed resistive flag"))?
            }
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::Config("node list is empty".into()));
        }
        if let Some(&n) = self.nodes.iter().find(|&&n| n < self.order.min_nodes()) {
            return Err(Error::Config(format!(
                "{} needs at least {} nodes per axis, got {n}",
                self.order,
                self.order.min_nodes()
            )));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::Config(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(Error::Config(format!("invalid final time {}", self.t_final)));
        }
        if !(self.domain.1 > self.domain.0) {
            return Err(Error::Config(format!("empty domain {:?}", self.domain)));
        }
        if self.monitor_cadence == 0 {
            return Err(Error::Config("monitor cadence must be positive".into()));
        }
        if self.experiment == ExperimentId::Three && self.forcing == ForcingSource::Oracle {
            return Err(Error::Config("experiment 3 has no exact solution to build forcing from".into()));
        }
        self.model().validate()
    }

    /// Whether runs are compared against the rotating-hump solution.
    pub fn has_exact(&self) -> bool {
        self.experiment != ExperimentId::Three
    }

    pub fn model(&self) -> ModelConfig {
        let mut m = ModelConfig::new(Arc::new(rotation_velocity()), self.epsilon)
            .with_bc(self.bc)
            .with_forcing(self.forcing)
            .with_mixed_resistive_penalty(self.mixed_resistive_penalty);
        if self.has_exact() {
            m = m.with_exact(Arc::new(RotatingHump));
        }
        m
    }

    /// The configuration as `key = value` lines accepted by
    /// [`ExperimentConfig::from_pairs`].
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let nodes: Vec<String> = self.nodes.iter().map(usize::to_string).collect();
        let mut out = vec![
            ("experiment".to_string(), self.experiment.to_string()),
            ("order".into(), self.order.interior_order().to_string()),
            ("nodes".into(), nodes.join(",")),
            ("epsilon".into(), format!("{:e}", self.epsilon)),
            ("cfl".into(), format!("{:e}", self.cfl)),
            ("tfinal".into(), format!("{:e}", self.t_final)),
            ("bc".into(), self.bc.to_string()),
            ("forcing".into(), self.forcing.to_string()),
            ("domain".into(), format!("{:e},{:e}", self.domain.0, self.domain.1)),
            ("safety".into(), format!("{:e}", self.diffusion_safety)),
            ("cadence".into(), self.monitor_cadence.to_string()),
            ("mixed_resistive".into(), self.mixed_resistive_penalty.to_string()),
        ];
        if let Some(p) = &self.out {
            out.push(("out".into(), p.display().to_string()));
        }
        out
    }
}

fn normalize_key(key: &str) -> String {
    key.trim()
        .trim_start_matches("--")
        .to_ascii_lowercase()
        .replace(['-', '_'], "")
}

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                return None;
            }
            Some(match line.split_once('=') {
                Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
                _ => Err(Error::Config(format!("line {}: expected 'key = value'", i + 1))),
            })
        })
        .collect()
}
