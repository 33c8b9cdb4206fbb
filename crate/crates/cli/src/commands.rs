//! Command implementations. Per-radius work fans out over a rayon pool
//! sized by the config; results are collected in grid order, so output
//! bytes do not depend on the worker count.

use std::path::Path;

use growthlab_core::funcat::FunctionSpec;
use growthlab_core::kernel;
use growthlab_core::products;
use growthlab_core::profile::{self, log_grid, RadialProfile, Tail};
use growthlab_core::radial::{self, CircleQuadratureSettings};
use growthlab_core::{Complex64, Error as CoreError};
use rayon::prelude::*;

use crate::config::{OutputFormat, RunConfig};
use crate::descriptor;
use crate::report::GrowthReport;
use crate::zeros_io;

#[derive(Debug, thiserror::Error)]
pub enum CmdError {
    #[error("{0}")]
    Parse(#[from] descriptor::ParseError),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{0}")]
    ZeroList(#[from] zeros_io::ZeroListError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Invalid(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, CmdError> {
    Err(CmdError::Invalid(msg.into()))
}

/// Run `f` on every radius inside the sized pool, preserving grid order.
fn par_radii<T: Send>(
    pool: &rayon::ThreadPool,
    radii: &[f64],
    f: impl Fn(f64) -> Result<T, CoreError> + Sync,
) -> Result<Vec<T>, CoreError> {
    pool.install(|| radii.par_iter().map(|r| f(*r)).collect())
}

fn make_pool(config: &RunConfig) -> Result<rayon::ThreadPool, CmdError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count())
        .build()
        .map_err(|e| CmdError::Invalid(format!("thread pool: {e}")))
}

/// Extended grid for profile building: three decades below the report
/// grid (so disk means see the small radii) plus the report radii
/// themselves.
fn extended_grid(config: &RunConfig, radii: &[f64]) -> Result<Vec<f64>, CoreError> {
    let g = &config.grid;
    let mut grid = log_grid(g.r_min / 1000.0, g.r_max, g.per_decade.max(16))?;
    grid.extend_from_slice(radii);
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    Ok(grid)
}

struct MeanProfile {
    /// C at the report radii, in report order.
    at_radii: Vec<f64>,
    profile: RadialProfile,
}

/// Circle means over the extended grid; the report radii are members of
/// the grid, so their values are read back exactly rather than
/// interpolated.
fn mean_profile(
    pool: &rayon::ThreadPool,
    spec: &FunctionSpec,
    radii: &[f64],
    u0: f64,
    config: &RunConfig,
    settings: &CircleQuadratureSettings,
) -> Result<MeanProfile, CmdError> {
    let grid = extended_grid(config, radii)?;
    let cvals = par_radii(pool, &grid, |r| radial::circle_mean_log(spec, r, settings))?;
    let at_radii = radii
        .iter()
        .map(|r| {
            // tolerance mirrors the dedup above, which keeps the smaller
            // of two near-identical points
            let i = grid
                .iter()
                .position(|g| (g - r).abs() <= 1e-12 * r)
                .expect("report radius is on the extended grid");
            cvals[i]
        })
        .collect();
    let left = if u0.is_finite() { u0 } else { cvals[0] };
    let profile = RadialProfile::new(grid, cvals, left, Tail::Forbidden)?;
    Ok(MeanProfile { at_radii, profile })
}

/// `characteristics DESC`: lnM, C, B, T, NZ per radius plus the chain
/// violation column.
pub fn cmd_characteristics(
    descriptor_text: &str,
    config: &RunConfig,
) -> Result<GrowthReport, CmdError> {
    let spec = descriptor::parse_spec(descriptor_text)?;
    let settings = settings_of(config);
    let pool = make_pool(config)?;
    let radii = config.grid.radii()?;

    let u0 = spec.log_abs(Complex64::new(0.0, 0.0))?;
    let means = mean_profile(&pool, &spec, &radii, u0, config, &settings)?;
    let c: Vec<Option<f64>> = means.at_radii.iter().map(|v| Some(*v)).collect();
    let b: Vec<Option<f64>> = radii
        .iter()
        .map(|r| means.profile.disk_mean(*r).map(Some))
        .collect::<Result<_, _>>()?;

    let ln_m: Vec<Option<f64>> = if spec.is_entire() {
        par_radii(&pool, &radii, |r| radial::max_modulus(&spec, r, &settings))?
            .into_iter()
            .map(Some)
            .collect()
    } else {
        vec![None; radii.len()]
    };

    let t: Vec<Option<f64>> = par_radii(&pool, &radii, |r| {
        match radial::nevanlinna_t(&spec, r, &settings) {
            Ok(v) => Ok(Some(v)),
            Err(CoreError::ZerosUnknown(_)) => Ok(None),
            Err(e) => Err(e),
        }
    })?;

    let nz: Vec<Option<f64>> = match spec.known_zeros(config.grid.r_max) {
        Ok(zeros) => radii
            .iter()
            .map(|r| {
                if *r > 0.0 {
                    Some(zeros.integral_count(*r))
                } else {
                    None
                }
            })
            .collect(),
        Err(CoreError::ZerosUnknown(_)) => vec![None; radii.len()],
        Err(e) => return Err(e.into()),
    };

    // chain slack from whatever columns exist; positive = violation
    let mut violation = Vec::with_capacity(radii.len());
    let mut worst = f64::NEG_INFINITY;
    for i in 0..radii.len() {
        let mut v = f64::NEG_INFINITY;
        let (bi, ci) = (b[i].unwrap(), c[i].unwrap());
        if u0.is_finite() {
            v = v.max(u0 - bi);
        }
        v = v.max(bi - ci);
        if let Some(m) = ln_m[i] {
            v = v.max(ci - m);
            if let Some(ti) = t[i] {
                v = v.max(ti - m.max(0.0));
            }
        }
        if let Some(ti) = t[i] {
            v = v.max(ci.max(0.0) - ti);
        }
        worst = worst.max(v);
        violation.push(Some(v));
    }
    if worst > 1e-6 {
        log::warn!("chain violated by {worst:.3e}; the run is suspect");
    }

    let mut rep = GrowthReport::new(descriptor_text, radii, config);
    rep.set_column("lnM", ln_m);
    rep.set_column("C", c);
    rep.set_column("B", b);
    rep.set_column("T", t);
    rep.set_column("NZ", nz);
    rep.set_column("violation", violation);
    Ok(rep)
}

/// `jensen DESC`: C, NZ, and the Jensen residual per radius.
pub fn cmd_jensen(descriptor_text: &str, config: &RunConfig) -> Result<GrowthReport, CmdError> {
    let spec = descriptor::parse_spec(descriptor_text)?;
    let settings = settings_of(config);
    let pool = make_pool(config)?;
    let radii = config.grid.radii()?;
    let zeros = spec.known_zeros(config.grid.r_max)?;
    if zeros.origin_multiplicity() > 0 {
        return invalid("jensen needs f(0) != 0 (origin zero present)");
    }
    let c = par_radii(&pool, &radii, |r| radial::circle_mean_log(&spec, r, &settings))?;
    let residual = par_radii(&pool, &radii, |r| {
        radial::jensen_residual(&spec, r, &settings)
    })?;
    let mut rep = GrowthReport::new(descriptor_text, radii.clone(), config);
    rep.set_column("C", c.into_iter().map(Some).collect());
    rep.set_column(
        "NZ",
        radii
            .iter()
            .map(|r| Some(zeros.integral_count(*r)))
            .collect(),
    );
    rep.set_column("residual", residual.into_iter().map(Some).collect());
    Ok(rep)
}

/// `paley-table`: rho, P(rho), optimal p rows (its own small table, not a
/// growth report).
pub fn cmd_paley_table(rhos: &[f64], config: &RunConfig) -> Result<String, CmdError> {
    let mut rows = Vec::with_capacity(rhos.len());
    for rho in rhos {
        rows.push((
            *rho,
            kernel::paley_constant(*rho)?,
            kernel::optimal_p(*rho)?,
        ));
    }
    Ok(match config.format {
        OutputFormat::Csv => {
            let mut out = String::from("rho,paley_constant,optimal_p\n");
            for (rho, pc, p) in rows {
                out.push_str(&format!("{rho},{pc},{p}\n"));
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(rho, pc, p)| {
                    serde_json::json!({"rho": rho, "paley_constant": pc, "optimal_p": p})
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&serde_json::json!({
                "schema_version": crate::report::SCHEMA_VERSION,
                "rows": rows,
            }))
            .expect("table serializes");
            s.push('\n');
            s
        }
    })
}

pub enum BoundSource<'a> {
    Function(&'a str),
    Zeros(&'a Path),
    TProfile(&'a Path),
}

/// `bound`: the kernel-transform growth bound from one of the three
/// sources. For a function source the observed ln M and the margin of the
/// bound over the Jensen floor N_Z + ln|f(0)| are reported next to it.
pub fn cmd_bound(source: BoundSource, config: &RunConfig) -> Result<GrowthReport, CmdError> {
    let params = config.kernel_params()?;
    let radii = config.grid.radii()?;
    let settings = settings_of(config);
    let pool = make_pool(config)?;
    match source {
        BoundSource::Function(desc) => {
            let spec = descriptor::parse_spec(desc)?;
            let u0 = spec.log_abs(Complex64::new(0.0, 0.0))?;
            if !u0.is_finite() {
                return invalid("bound from a function needs f(0) != 0");
            }
            // profile reaching past the report radii so the transform tail
            // hand-off happens in fitted territory
            let mut cfg = config.clone();
            cfg.grid.r_max *= 10.0;
            let means = mean_profile(&pool, &spec, &radii, u0, &cfg, &settings)?;
            // a top decade without positive growth has no power tail to
            // fit (exp has C identically zero, and so does any zero-free
            // product normalized to |f(0)| = 1); extend such profiles flat
            let profile = match profile::estimate_order_type(&means.profile) {
                Ok((exponent, coefficient)) => means.profile.with_tail(Tail::PowerTail {
                    exponent,
                    coefficient,
                }),
                Err(CoreError::ProfileCoverage(_)) => means.profile.with_tail(Tail::Constant),
                Err(e) => return Err(e.into()),
            };
            let bound = kernel::theorem1_bound(&profile, &params, &radii)?;
            let mut rep = GrowthReport::new(desc, radii.clone(), config);
            rep.set_column(
                "C",
                means.at_radii.iter().map(|v| Some(*v)).collect(),
            );
            rep.set_column(
                "bound_ln",
                bound.values().iter().map(|v| Some(*v)).collect(),
            );
            if spec.is_entire() {
                let ln_m =
                    par_radii(&pool, &radii, |r| radial::max_modulus(&spec, r, &settings))?;
                rep.set_column("lnM", ln_m.into_iter().map(Some).collect());
            }
            if let Ok(zeros) = spec.known_zeros(config.grid.r_max) {
                let margin: Vec<Option<f64>> = radii
                    .iter()
                    .zip(bound.values())
                    .map(|(r, b)| Some(b - zeros.integral_count(*r) - u0))
                    .collect();
                rep.set_column("margin", margin);
            }
            Ok(rep)
        }
        BoundSource::Zeros(path) => {
            let zeros = zeros_io::read_zero_list(path)?;
            let bound = kernel::theorem2_bound(&zeros, &params, &radii)?;
            let mut rep = GrowthReport::new(
                format!("zeros:{}", path.display()),
                radii.clone(),
                config,
            );
            rep.set_column(
                "NZ",
                radii
                    .iter()
                    .map(|r| Some(zeros.integral_count(*r)))
                    .collect(),
            );
            rep.set_column(
                "bound_ln",
                bound.values().iter().map(|v| Some(*v)).collect(),
            );
            rep.set_column(
                "margin",
                radii
                    .iter()
                    .zip(bound.values())
                    .map(|(r, b)| Some(b - zeros.integral_count(*r)))
                    .collect(),
            );
            Ok(rep)
        }
        BoundSource::TProfile(path) => {
            let (grid, values) = read_t_profile(path)?;
            // no left-limit information in the file; extend the first
            // sample inward (the [0, r_min] kernel mass is negligible for
            // small r_min)
            let left = values[0];
            let profile =
                RadialProfile::new(grid, values, left, Tail::Forbidden)?.with_fitted_tail()?;
            let bound = kernel::theorem3_bound(&profile, &params, &radii)?;
            let mut rep = GrowthReport::new(
                format!("t-profile:{}", path.display()),
                radii,
                config,
            );
            rep.set_column(
                "bound_ln",
                bound.values().iter().map(|v| Some(*v)).collect(),
            );
            Ok(rep)
        }
    }
}

/// `product FILE`: build the canonical product for the zero list and
/// report its characteristics plus the growth floor margin
/// lnM - NZ - ln|f(0)| (nonnegative by Jensen).
pub fn cmd_product(
    zeros_path: &Path,
    config: &RunConfig,
) -> Result<GrowthReport, CmdError> {
    let zeros = zeros_io::read_zero_list(zeros_path)?;
    let p = config.p_policy.resolve()?;
    let product = products::build_f_z(zeros.clone(), p)?;
    let genus = product.genus;
    let log_leading = product.log_leading;
    let spec = FunctionSpec::CanonicalProduct(product);
    let settings = settings_of(config);
    let pool = make_pool(config)?;
    let radii = config.grid.radii()?;

    let means = mean_profile(&pool, &spec, &radii, log_leading, config, &settings)?;
    let ln_m = par_radii(&pool, &radii, |r| radial::max_modulus(&spec, r, &settings))?;
    let mut rep = GrowthReport::new(
        format!("zeros:{},q={genus}", zeros_path.display()),
        radii.clone(),
        config,
    );
    rep.set_column("C", means.at_radii.iter().map(|v| Some(*v)).collect());
    rep.set_column(
        "B",
        radii
            .iter()
            .map(|r| means.profile.disk_mean(*r).map(Some))
            .collect::<Result<_, _>>()?,
    );
    rep.set_column(
        "NZ",
        radii
            .iter()
            .map(|r| Some(zeros.integral_count(*r)))
            .collect(),
    );
    rep.set_column(
        "margin",
        radii
            .iter()
            .zip(&ln_m)
            .map(|(r, m)| Some(m - zeros.integral_count(*r) - log_leading))
            .collect(),
    );
    rep.set_column("lnM", ln_m.into_iter().map(Some).collect());
    Ok(rep)
}

fn settings_of(config: &RunConfig) -> CircleQuadratureSettings {
    config.settings()
}

/// T-profile file: either two columns `r,T` (or `r,value`) or the pinned
/// report schema, from which `r` and `T` are taken.
fn read_t_profile(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CmdError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let Some(header) = lines.next() else {
        return invalid(format!("{}: empty profile", path.display()));
    };
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.first() != Some(&"r") {
        return invalid(format!(
            "{}: first column must be r, got {header:?}",
            path.display()
        ));
    }
    let t_col = cols
        .iter()
        .position(|c| *c == "T" || *c == "value")
        .unwrap_or(1);
    if cols.len() <= t_col {
        return invalid(format!("{}: no T column", path.display()));
    }
    let mut grid = Vec::new();
    let mut values = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() <= t_col {
            return invalid(format!("{}: short row at line {}", path.display(), idx + 2));
        }
        if fields[t_col].is_empty() {
            continue;
        }
        let r: f64 = fields[0]
            .parse()
            .map_err(|_| CmdError::Invalid(format!("bad radius {:?}", fields[0])))?;
        let v: f64 = fields[t_col]
            .parse()
            .map_err(|_| CmdError::Invalid(format!("bad value {:?}", fields[t_col])))?;
        grid.push(r);
        values.push(v);
    }
    if grid.len() < 2 {
        return invalid(format!("{}: need at least 2 profile rows", path.display()));
    }
    Ok((grid, values))
}
