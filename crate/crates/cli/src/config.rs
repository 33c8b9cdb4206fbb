//! Run configuration: built-in defaults, overridden by a JSON config file,
//! overridden again by CLI flags; `GROWTHLAB_THREADS` sits between the
//! defaults and the config file. The effective configuration is echoed
//! into every report's metadata.

use growthlab_core::kernel::KernelParams;
use growthlab_core::radial::CircleQuadratureSettings;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub per_decade: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            r_min: 0.1,
            r_max: 10.0,
            per_decade: 16,
        }
    }
}

impl GridSpec {
    /// Parse `MIN:MAX:PPD`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid must be MIN:MAX:PPD, got {s:?}"));
        }
        let r_min: f64 = parts[0].parse().map_err(|_| format!("bad r_min {:?}", parts[0]))?;
        let r_max: f64 = parts[1].parse().map_err(|_| format!("bad r_max {:?}", parts[1]))?;
        let per_decade: usize = parts[2]
            .parse()
            .map_err(|_| format!("bad points-per-decade {:?}", parts[2]))?;
        if !(r_min > 0.0 && r_max >= r_min) || per_decade == 0 {
            return Err(format!("grid needs 0 < min <= max and ppd >= 1, got {s:?}"));
        }
        Ok(Self {
            r_min,
            r_max,
            per_decade,
        })
    }

    pub fn radii(&self) -> Result<Vec<f64>, growthlab_core::Error> {
        if self.r_min == self.r_max {
            return Ok(vec![self.r_min]);
        }
        growthlab_core::profile::log_grid(self.r_min, self.r_max, self.per_decade)
    }
}

/// Kernel exponent policy: a fixed p or the sharp p = max(1, 2 rho).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum PPolicy {
    Explicit(f64),
    Optimal(f64),
}

impl PPolicy {
    /// Parse `VAL` or `optimal:RHO`.
    pub fn parse(s: &str) -> Result<Self, String> {
        if let Some(rho) = s.strip_prefix("optimal:") {
            let rho: f64 = rho.parse().map_err(|_| format!("bad rho {rho:?}"))?;
            if !(rho > 0.0) {
                return Err(format!("optimal:RHO needs rho > 0, got {rho}"));
            }
            return Ok(PPolicy::Optimal(rho));
        }
        let p: f64 = s.parse().map_err(|_| format!("bad p {s:?}"))?;
        Ok(PPolicy::Explicit(p))
    }

    pub fn resolve(&self) -> Result<f64, growthlab_core::Error> {
        match self {
            PPolicy::Explicit(p) => Ok(*p),
            PPolicy::Optimal(rho) => growthlab_core::kernel::optimal_p(*rho),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// The effective run configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub rel_tol: f64,
    pub kink_rel_tol: f64,
    pub quad_rel_tol: f64,
    pub grid: GridSpec,
    pub p_policy: PPolicy,
    pub format: OutputFormat,
    /// 0 means one worker per available core.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            kink_rel_tol: 1e-7,
            quad_rel_tol: 1e-10,
            grid: GridSpec::default(),
            p_policy: PPolicy::Explicit(1.0),
            format: OutputFormat::Csv,
            threads: 0,
        }
    }
}

/// The subset of fields a config file may set; anything absent keeps the
/// previous layer's value.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub rel_tol: Option<f64>,
    pub kink_rel_tol: Option<f64>,
    pub quad_rel_tol: Option<f64>,
    pub grid: Option<GridSpec>,
    pub p_policy: Option<PPolicy>,
    pub format: Option<OutputFormat>,
    pub threads: Option<usize>,
}

impl RunConfig {
    /// Defaults, then `GROWTHLAB_THREADS`, then the config file.
    pub fn layered(file: Option<&ConfigFile>) -> Result<Self, String> {
        let mut cfg = RunConfig::default();
        if let Ok(v) = std::env::var("GROWTHLAB_THREADS") {
            cfg.threads = v
                .parse()
                .map_err(|_| format!("GROWTHLAB_THREADS must be a count, got {v:?}"))?;
        }
        if let Some(f) = file {
            if let Some(v) = f.rel_tol {
                cfg.rel_tol = v;
            }
            if let Some(v) = f.kink_rel_tol {
                cfg.kink_rel_tol = v;
            }
            if let Some(v) = f.quad_rel_tol {
                cfg.quad_rel_tol = v;
            }
            if let Some(v) = f.grid {
                cfg.grid = v;
            }
            if let Some(v) = f.p_policy {
                cfg.p_policy = v;
            }
            if let Some(v) = f.format {
                cfg.format = v;
            }
            if let Some(v) = f.threads {
                cfg.threads = v;
            }
        }
        if !(cfg.rel_tol > 0.0 && cfg.kink_rel_tol > 0.0 && cfg.quad_rel_tol > 0.0) {
            return Err("tolerances must be positive".to_string());
        }
        Ok(cfg)
    }

    pub fn settings(&self) -> CircleQuadratureSettings {
        CircleQuadratureSettings {
            rel_tol: self.rel_tol,
            kink_rel_tol: self.kink_rel_tol,
            ..CircleQuadratureSettings::default()
        }
    }

    pub fn kernel_params(&self) -> Result<KernelParams, growthlab_core::Error> {
        let mut params = KernelParams::new(self.p_policy.resolve()?)?;
        params.quad_rel_tol = self.quad_rel_tol;
        Ok(params)
    }

    /// Worker count with 0 resolved to the core count.
    pub fn worker_count(&self) -> usize {
        if self.threads == 0 {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        } else {
            self.threads
        }
    }
}
