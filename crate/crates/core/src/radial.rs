//! Growth characteristics measured on circles and disks: ln M(r), the circle
//! mean C(r) of ln|f|, the disk mean B(r), the proximity mean of ln+|f|, the
//! Nevanlinna characteristic T(r), the Jensen residual, and the chain check
//! u(0) <= B <= C <= ln M, C+ <= T <= (ln M)+.
//!
//! Circle integrals use the periodic trapezoid rule (spectrally accurate for
//! smooth integrands) with node doubling; structurally known zeros close to
//! the circle are factored out analytically, each contributing its exact
//! mean max(ln r, ln|a|).

use crate::error::{Error, Result};
use crate::funcat::FunctionSpec;
use crate::kernel::{self, KernelParams};
use crate::points::pole_distribution;
use crate::profile::{log_grid, RadialProfile, Tail};
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct CircleQuadratureSettings {
    /// Nodes of the first trapezoid pass.
    pub initial_nodes: usize,
    /// Node-doubling stops here; exceeding it is a stall or a singularity.
    pub max_nodes: usize,
    /// Relative tolerance for smooth circle means (C, ln M refinement).
    pub rel_tol: f64,
    /// Looser tolerance for kinked integrands (ln+ in T and proximity).
    pub kink_rel_tol: f64,
    /// Zeros within `margin * r` of the circle are factored out analytically.
    pub singularity_margin: f64,
}

impl Default for CircleQuadratureSettings {
    fn default() -> Self {
        Self {
            initial_nodes: 64,
            max_nodes: 1 << 20,
            rel_tol: 1e-9,
            kink_rel_tol: 1e-7,
            singularity_margin: 1e-8,
        }
    }
}

/// Mean of `f` over the circle |z| = r by trapezoid node doubling. The
/// closure may signal a pole with `PoleHit`; that, a non-finite sample, or
/// a deep unresolved spike becomes `SingularityUnresolved`.
pub fn circle_mean_fn<F: Fn(Complex64) -> Result<f64>>(
    f: F,
    r: f64,
    rel_tol: f64,
    settings: &CircleQuadratureSettings,
) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidInput(format!("circle radius {r} < 0")));
    }
    if r == 0.0 {
        return sample(&f, Complex64::new(0.0, 0.0), r);
    }
    let mut n = settings.initial_nodes.max(8);
    let mut prev: Option<f64> = None;
    let mut small_runs = 0usize;
    let mut last_mean = f64::NAN;
    let mut last_min = f64::INFINITY;
    while n <= settings.max_nodes {
        let mut sum = 0.0_f64;
        let mut comp = 0.0_f64;
        let mut min_v = f64::INFINITY;
        let step = std::f64::consts::TAU / n as f64;
        for j in 0..n {
            // offset nodes keep axis-aligned zeros off the sample set
            let theta = (j as f64 + 0.5) * step;
            let v = sample(&f, Complex64::from_polar(r, theta), r)?;
            min_v = min_v.min(v);
            let y = v - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        let mean = sum / n as f64;
        if let Some(p) = prev {
            // one small delta can be a coincidence on kinked integrands
            // (the error oscillates with node placement); demand two
            if (mean - p).abs() <= rel_tol * (1.0 + mean.abs()) {
                small_runs += 1;
                if small_runs >= 2 {
                    return Ok(mean);
                }
            } else {
                small_runs = 0;
            }
        }
        prev = Some(mean);
        last_mean = mean;
        last_min = min_v;
        n *= 2;
    }
    if last_min < last_mean - 40.0 {
        Err(Error::SingularityUnresolved(r))
    } else {
        Err(Error::QuadratureStall(format!(
            "circle mean at r = {r} not converged at {} nodes; a zero or \
             pole modulus on or near this circle is the usual cause, pick \
             a nearby radius",
            settings.max_nodes
        )))
    }
}

fn sample<F: Fn(Complex64) -> Result<f64>>(f: &F, z: Complex64, r: f64) -> Result<f64> {
    match f(z) {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(Error::SingularityUnresolved(r)),
        Err(Error::PoleHit { .. }) => Err(Error::SingularityUnresolved(r)),
        Err(e) => Err(e),
    }
}

/// C(r; f): mean of ln|f| over |z| = r. C(0) = ln|f(0)|.
///
/// Products decompose into sums and quotients into differences before
/// integration. Structural zeros within `singularity_margin * r` of the
/// circle are factored out: each contributes max(ln r, ln|a|) exactly and
/// the smooth remainder is integrated.
pub fn circle_mean_log(
    spec: &FunctionSpec,
    r: f64,
    settings: &CircleQuadratureSettings,
) -> Result<f64> {
    match spec {
        FunctionSpec::Product(factors) => {
            let mut c = 0.0;
            for f in factors {
                c += circle_mean_log(f, r, settings)?;
            }
            Ok(c)
        }
        FunctionSpec::Quotient {
            numerator,
            denominator,
        } => Ok(circle_mean_log(numerator, r, settings)?
            - circle_mean_log(denominator, r, settings)?),
        _ => {
            if r == 0.0 {
                return spec.log_abs(Complex64::new(0.0, 0.0));
            }
            let margin = settings.singularity_margin;
            let near: Vec<(Complex64, u32)> = match spec.known_zeros(r * (1.0 + margin)) {
                Ok(zs) => zs
                    .entries()
                    .iter()
                    .filter(|(a, _)| (a.norm() - r).abs() <= margin * r)
                    .cloned()
                    .collect(),
                Err(Error::ZerosUnknown(_)) => Vec::new(),
                Err(e) => return Err(e),
            };
            let analytic: f64 = near
                .iter()
                .map(|(a, m)| *m as f64 * r.ln().max(a.norm().ln()))
                .sum();
            let mean = circle_mean_fn(
                |z| {
                    let mut v = spec.log_abs(z)?;
                    for (a, m) in &near {
                        v -= *m as f64 * (z - a).norm().ln();
                    }
                    Ok(v)
                },
                r,
                settings.rel_tol,
                settings,
            )?;
            Ok(analytic + mean)
        }
    }
}

/// Proximity mean m(r; f) of ln+|f| over |z| = r; the ln+ kink is left to
/// node doubling at the looser `kink_rel_tol`.
pub fn proximity(
    spec: &FunctionSpec,
    r: f64,
    settings: &CircleQuadratureSettings,
) -> Result<f64> {
    if r == 0.0 {
        return Ok(spec.log_abs(Complex64::new(0.0, 0.0))?.max(0.0));
    }
    circle_mean_fn(
        |z| Ok(spec.log_abs(z)?.max(0.0)),
        r,
        settings.kink_rel_tol,
        settings,
    )
}

/// T(r; F) = m(r; F) + N_{Pol_F}(r). For an entire spec this is just the
/// proximity mean. For a quotient the denominator's zero set must be
/// structural; numerator zeros cancel poles pointwise when known (treated
/// as empty when not). `OriginPoint` when F has a pole at 0.
pub fn nevanlinna_t(
    spec: &FunctionSpec,
    r: f64,
    settings: &CircleQuadratureSettings,
) -> Result<f64> {
    match spec {
        FunctionSpec::Quotient {
            numerator,
            denominator,
        } => {
            let zd = denominator.known_zeros(r.max(f64::MIN_POSITIVE))?;
            let zn = match numerator.known_zeros(r.max(f64::MIN_POSITIVE)) {
                Ok(z) => z,
                Err(Error::ZerosUnknown(_)) => Default::default(),
                Err(e) => return Err(e),
            };
            let pol = pole_distribution(&zn, &zd);
            if pol.origin_multiplicity() > 0 {
                return Err(Error::OriginPoint);
            }
            let n = if r > 0.0 { pol.integral_count(r) } else { 0.0 };
            Ok(proximity(spec, r, settings)? + n)
        }
        _ => proximity(spec, r, settings),
    }
}

/// Jensen residual C(r; f) - ln|f(0)| - N_{Zero_f}(r); identically 0 in
/// exact arithmetic for entire f with structural zeros and f(0) != 0. For
/// a quotient the pole counting is added back (the meromorphic identity
/// C - ln|F(0)| = N_zer - N_pol), so specs like sin(pi z)/(pi z) whose
/// poles all cancel still report a pure quadrature residual.
pub fn jensen_residual(
    spec: &FunctionSpec,
    r: f64,
    settings: &CircleQuadratureSettings,
) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("jensen radius {r} <= 0")));
    }
    let zeros = spec.known_zeros(r)?;
    if zeros.origin_multiplicity() > 0 {
        return Err(Error::InvalidInput(
            "jensen residual needs f(0) != 0 (origin zero present)".to_string(),
        ));
    }
    let n_pol = match spec {
        FunctionSpec::Quotient {
            numerator,
            denominator,
        } => {
            let zn = numerator.known_zeros(r)?;
            let zd = denominator.known_zeros(r)?;
            let pol = pole_distribution(&zn, &zd);
            if pol.origin_multiplicity() > 0 {
                return Err(Error::OriginPoint);
            }
            pol.integral_count(r)
        }
        _ => 0.0,
    };
    let u0 = spec.log_abs(Complex64::new(0.0, 0.0))?;
    if u0 == f64::NEG_INFINITY {
        return Err(Error::InvalidInput(
            "jensen residual needs f(0) != 0".to_string(),
        ));
    }
    Ok(circle_mean_log(spec, r, settings)? - u0 - zeros.integral_count(r) + n_pol)
}

/// ln M(r; f) = max of ln|f| over |z| = r for entire f. Positive Taylor
/// coefficients put the max on the positive axis; otherwise a 256-node
/// angular scan is refined by ternary search around the best local maxima.
pub fn max_modulus(
    spec: &FunctionSpec,
    r: f64,
    settings: &CircleQuadratureSettings,
) -> Result<f64> {
    if !spec.is_entire() {
        return Err(Error::InvalidInput(
            "max_modulus is defined for entire specs".to_string(),
        ));
    }
    if !(r >= 0.0) {
        return Err(Error::InvalidInput(format!("radius {r} < 0")));
    }
    if r == 0.0 || spec.positive_coefficients() {
        return spec.log_abs(Complex64::new(r, 0.0));
    }
    let n = 256usize;
    let step = std::f64::consts::TAU / n as f64;
    let mut vals = Vec::with_capacity(n);
    for j in 0..n {
        vals.push(spec.log_abs(Complex64::from_polar(r, j as f64 * step))?);
    }
    let mut candidates: Vec<usize> = (0..n)
        .filter(|&j| vals[j] >= vals[(j + n - 1) % n] && vals[j] >= vals[(j + 1) % n])
        .collect();
    candidates.sort_by(|a, b| vals[*b].total_cmp(&vals[*a]));
    candidates.truncate(4);
    let mut best = candidates
        .iter()
        .map(|j| vals[*j])
        .fold(f64::NEG_INFINITY, f64::max);
    for j in candidates {
        let mut lo = (j as f64 - 1.0) * step;
        let mut hi = (j as f64 + 1.0) * step;
        let eval = |theta: f64| spec.log_abs(Complex64::from_polar(r, theta));
        for _ in 0..120 {
            if hi - lo < 1e-13 {
                break;
            }
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            let (v1, v2) = (eval(m1)?, eval(m2)?);
            if (v1 - v2).abs() <= 0.01 * settings.rel_tol * (1.0 + v1.abs()) {
                break;
            }
            if v1 < v2 {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        best = best.max(eval(0.5 * (lo + hi))?);
    }
    Ok(best)
}

/// Per-radius slack of the chain u(0) <= B <= C <= ln M and
/// C+ <= T <= (ln M)+; positive entries are violations.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub radii: Vec<f64>,
    pub u0: f64,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub t: Vec<f64>,
    pub ln_m: Vec<f64>,
    /// max over the five pairwise gaps at each radius
    pub violations: Vec<f64>,
    pub max_violation: f64,
}

/// Evaluate the full characteristic chain of an entire spec on the given
/// radii (positive, deduplicated ascending). B comes from an internal
/// C profile extended three decades below the smallest radius.
pub fn chain_check(
    spec: &FunctionSpec,
    radii: &[f64],
    settings: &CircleQuadratureSettings,
) -> Result<ChainReport> {
    if !spec.is_entire() {
        return Err(Error::InvalidInput(
            "chain_check is defined for entire specs".to_string(),
        ));
    }
    if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidInput(
            "chain_check needs positive radii".to_string(),
        ));
    }
    let mut radii = radii.to_vec();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let r_lo = radii[0] / 1000.0;
    let r_hi = *radii.last().unwrap();
    let mut grid = log_grid(r_lo, r_hi, 16)?;
    grid.extend_from_slice(&radii);
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());

    let u0 = spec.log_abs(Complex64::new(0.0, 0.0))?;
    let mut cvals = Vec::with_capacity(grid.len());
    for r in &grid {
        cvals.push(circle_mean_log(spec, *r, settings)?);
    }
    // left value for the profile must be finite; u(0) = -inf (zero at the
    // origin) is handled by starting the profile at the computed C(r_lo).
    let left = if u0.is_finite() { u0 } else { cvals[0] };
    let profile = RadialProfile::new(grid.clone(), cvals, left, Tail::Forbidden)?;

    let (mut b, mut c, mut t, mut ln_m, mut violations) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut max_violation = f64::NEG_INFINITY;
    for r in &radii {
        let bb = profile.disk_mean(*r)?;
        let cc = profile.value(*r)?;
        let mm = max_modulus(spec, *r, settings)?;
        let tt = nevanlinna_t(spec, *r, settings)?;
        let gaps = [
            u0 - bb,
            bb - cc,
            cc - mm,
            cc.max(0.0) - tt,
            tt - mm.max(0.0),
        ];
        let v = gaps.iter().fold(f64::NEG_INFINITY, |a, g| a.max(*g));
        max_violation = max_violation.max(v);
        b.push(bb);
        c.push(cc);
        t.push(tt);
        ln_m.push(mm);
        violations.push(v);
    }
    Ok(ChainReport {
        radii,
        u0,
        b,
        c,
        t,
        ln_m,
        violations,
        max_violation,
    })
}

/// Margin of u(1) <= p^2 int_0^inf C_u(t) t^{p-1} dt / (1 + t^p)^2 for a
/// subharmonic minorant whose circle means are `c_profile`: returns
/// RHS - u(1), nonnegative when u >= 0 is harmonic near 0 and of zero type
/// over order p = 2 lambda >= 1.
pub fn lemma22_check(
    c_profile: &RadialProfile,
    u_at_1: f64,
    params: &KernelParams,
) -> Result<f64> {
    let rhs = kernel::kernel_transform(c_profile, params, 1.0)?;
    Ok(rhs - u_at_1)
}
