//! Self-verification suites: every numerically checkable identity the
//! tool is built around, grouped into named suites for `growthlab verify`.
//! Each check compares an independently derived value (closed form, hand
//! integration, or a second computation route) against the engine.

use std::time::Instant;

use growthlab_core::funcat::{self, FunctionSpec};
use growthlab_core::kernel::{self, KernelParams, TransformTail};
use growthlab_core::points::PointDistribution;
use growthlab_core::products::{self, CanonicalProductSpec};
use growthlab_core::profile::{self, log_grid, RadialProfile, Tail};
use growthlab_core::radial::{self, CircleQuadratureSettings};
use growthlab_core::special;
use growthlab_core::Complex64;
use serde::Serialize;

const PI: f64 = std::f64::consts::PI;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn of(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

fn z(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn settings() -> CircleQuadratureSettings {
    CircleQuadratureSettings::default()
}

/// Result of a whole suite run.
#[derive(Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub const SUITES: [&str; 8] = [
    "jensen",
    "chain",
    "kernel",
    "paley",
    "products",
    "meromorphic",
    "lemma22",
    "all",
];

pub fn run_suite(name: &str) -> Result<SuiteReport, String> {
    let checks = match name {
        "jensen" => jensen_identity(),
        "chain" => chain_order(),
        "kernel" => {
            let mut c = kernel_mass();
            c.extend(transform_monotonicity());
            c.extend(zero_free_construction());
            c
        }
        "paley" => {
            let mut c = paley_constants();
            c.extend(special_functions());
            c
        }
        "products" => {
            let mut c = growth_floor();
            c.extend(canonical_products());
            c.extend(zero_list_round_trip());
            c
        }
        "meromorphic" => sup_log_identity(),
        "lemma22" => minorant_inequality(),
        "all" => {
            let mut c = paley_constants();
            c.extend(kernel_mass());
            c.extend(jensen_identity());
            c.extend(chain_order());
            c.extend(sup_log_identity());
            c.extend(growth_floor());
            c.extend(transform_monotonicity());
            c.extend(minorant_inequality());
            c.extend(canonical_products());
            c.extend(zero_list_round_trip());
            c.extend(special_functions());
            c.extend(zero_free_construction());
            c
        }
        other => return Err(format!("unknown suite {other:?}; pick one of {SUITES:?}")),
    };
    Ok(SuiteReport {
        schema_version: crate::report::SCHEMA_VERSION,
        suite: name.to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

/// Paley constants: the p = max(1, 2 rho) quadrature against the closed
/// form pi*rho (rho >= 1/2) / pi*rho/sin(pi*rho) (rho < 1/2), and the
/// branch value P(1) = pi.
pub fn paley_constants() -> Vec<Check> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for rho in [0.1, 0.25, 0.5, 0.75, 1.0, 2.0, 5.0] {
        let p = kernel::optimal_p(rho).unwrap();
        let params = KernelParams::new(p).unwrap();
        let closed = kernel::paley_constant(rho).unwrap();
        let quad = kernel::kernel_transform_fn(
            |t| Ok(t.powf(rho)),
            TransformTail::Power {
                exponent: rho,
                coefficient: 1.0,
            },
            1.0,
            &params,
            1.0,
        );
        match quad {
            Ok(q) => {
                let rel = (q - closed).abs() / closed;
                checks.push(Check::of(
                    format!("paley quadrature rho={rho}"),
                    rel <= 1e-8,
                    format!("quad {q:.12e} vs closed {closed:.12e}, rel {rel:.2e}"),
                ));
            }
            Err(e) => checks.push(Check::of(
                format!("paley quadrature rho={rho}"),
                false,
                format!("error: {e}"),
            )),
        }
    }
    let p1 = kernel::paley_constant(1.0).unwrap();
    checks.push(Check::of(
        "paley value at rho=1",
        (p1 - PI).abs() < 1e-15,
        format!("P(1) = {p1:.16}"),
    ));
    let elapsed = start.elapsed().as_secs_f64();
    checks.push(Check::of(
        "paley runtime",
        elapsed < 5.0,
        format!("{elapsed:.3}s (cap 5s)"),
    ));
    checks
}

/// Kernel mass: the transform of the constant-1 profile is exactly p.
pub fn kernel_mass() -> Vec<Check> {
    let mut checks = Vec::new();
    for p in [1.0, 1.5, 2.0, 3.5] {
        let params = KernelParams::new(p).unwrap();
        for r in [0.0, 1.0, 10.0] {
            let got = kernel::kernel_transform_fn(
                |_| Ok(1.0),
                TransformTail::Constant { value: 1.0 },
                1.0,
                &params,
                r,
            );
            match got {
                Ok(v) => {
                    let rel = (v - p).abs() / p;
                    checks.push(Check::of(
                        format!("kernel mass p={p} r={r}"),
                        rel <= 1e-10,
                        format!("{v:.14e}, rel {rel:.2e}"),
                    ));
                }
                Err(e) => checks.push(Check::of(
                    format!("kernel mass p={p} r={r}"),
                    false,
                    format!("error: {e}"),
                )),
            }
        }
    }
    checks
}

/// sin(pi z)/(pi z) as a quotient whose origin 0/0 cancels structurally.
fn sine_quotient() -> FunctionSpec {
    FunctionSpec::Quotient {
        numerator: Box::new(FunctionSpec::Sine { scale: z(PI, 0.0) }),
        denominator: Box::new(FunctionSpec::ZeroForm {
            leading: z(PI, 0.0),
            zeros: PointDistribution::new().with_origin(1),
        }),
    }
}

/// Jensen residuals for the two-zero polynomial and the sine quotient.
pub fn jensen_identity() -> Vec<Check> {
    let start = Instant::now();
    let s = settings();
    let mut checks = Vec::new();
    let two_zeros = FunctionSpec::ZeroForm {
        leading: z(1.0, 0.0),
        zeros: PointDistribution::from_points([(z(1.0, 0.0), 1u32), (z(0.0, 2.0), 1u32)]),
    };
    for r in [0.5, 1.5, 3.0] {
        let res = radial::jensen_residual(&two_zeros, r, &s);
        push_abs_check(
            &mut checks,
            format!("jensen (z-1)(z-2i) r={r}"),
            res,
            1e-6,
        );
    }
    let sinc = sine_quotient();
    for r in [1.5, 3.5, 7.5] {
        let res = radial::jensen_residual(&sinc, r, &s);
        push_abs_check(
            &mut checks,
            format!("jensen sin(pi z)/(pi z) r={r}"),
            res,
            1e-6,
        );
    }
    let elapsed = start.elapsed().as_secs_f64();
    checks.push(Check::of(
        "jensen runtime",
        elapsed < 10.0,
        format!("{elapsed:.3}s (cap 10s)"),
    ));
    checks
}

fn push_abs_check(
    checks: &mut Vec<Check>,
    name: String,
    value: Result<f64, growthlab_core::Error>,
    tol: f64,
) {
    match value {
        Ok(v) => checks.push(Check::of(
            name,
            v.abs() <= tol,
            format!("residual {v:.3e} (tol {tol:.0e})"),
        )),
        Err(e) => checks.push(Check::of(name, false, format!("error: {e}"))),
    }
}

/// The entire-function catalog with nonzero value at the origin, used by
/// the chain and growth-floor checks.
fn catalog_nonzero_at_origin() -> Vec<(&'static str, FunctionSpec)> {
    let mut pairs = Vec::new();
    for k in 1..=6 {
        pairs.push((z(k as f64, 0.0), 1u32));
        pairs.push((z(-(k as f64), 0.0), 1u32));
    }
    vec![
        ("exp", FunctionSpec::exp()),
        (
            "z^2-1",
            FunctionSpec::ZeroForm {
                leading: z(1.0, 0.0),
                zeros: PointDistribution::from_points([
                    (z(1.0, 0.0), 1u32),
                    (z(-1.0, 0.0), 1u32),
                ]),
            },
        ),
        ("const 2", FunctionSpec::constant(z(2.0, 0.0))),
        (
            "ml 0.75",
            FunctionSpec::MittagLeffler {
                order: 0.75,
                parameter: 1.0,
            },
        ),
        (
            "rgamma shift 1",
            FunctionSpec::ReciprocalGamma {
                shift: z(1.0, 0.0),
            },
        ),
        (
            "pair product",
            FunctionSpec::CanonicalProduct(CanonicalProductSpec {
                zeros: PointDistribution::from_points(pairs),
                genus: 1,
                log_leading: 0.0,
                declared_tail: None,
            }),
        ),
        (
            "exp * (z^2-1)",
            FunctionSpec::Product(vec![
                FunctionSpec::exp(),
                FunctionSpec::ZeroForm {
                    leading: z(1.0, 0.0),
                    zeros: PointDistribution::from_points([
                        (z(1.0, 0.0), 1u32),
                        (z(-1.0, 0.0), 1u32),
                    ]),
                },
            ]),
        ),
    ]
}

/// The chain u(0) <= B <= C <= lnM and C+ <= T <= (lnM)+ on 20+
/// log-spaced radii for every catalog entry with f(0) != 0.
pub fn chain_order() -> Vec<Check> {
    let s = settings();
    // 20 log-spaced radii chosen off the catalog zero moduli (integers
    // 1..9), where circle quadrature through a zero would crawl
    let radii = log_grid(0.117, 8.3, 10).unwrap();
    let mut checks = Vec::new();
    for (name, spec) in catalog_nonzero_at_origin() {
        match radial::chain_check(&spec, &radii, &s) {
            Ok(rep) => checks.push(Check::of(
                format!("chain {name}"),
                rep.max_violation <= 1e-8,
                format!(
                    "max violation {:.3e} over {} radii",
                    rep.max_violation,
                    radii.len()
                ),
            )),
            Err(e) => checks.push(Check::of(
                format!("chain {name}"),
                false,
                format!("error: {e}"),
            )),
        }
    }
    checks
}

/// For F = (z-1)/(z+2): T(r;F) equals the circle mean of
/// max(ln|z-1|, ln|z+2|) shifted by -ln|g(0)| = -ln 2.
pub fn sup_log_identity() -> Vec<Check> {
    let s = settings();
    let f = FunctionSpec::Quotient {
        numerator: Box::new(FunctionSpec::ZeroForm {
            leading: z(1.0, 0.0),
            zeros: PointDistribution::from_points([(z(1.0, 0.0), 1u32)]),
        }),
        denominator: Box::new(FunctionSpec::ZeroForm {
            leading: z(1.0, 0.0),
            zeros: PointDistribution::from_points([(z(-2.0, 0.0), 1u32)]),
        }),
    };
    let mut checks = Vec::new();
    for r in [0.5, 1.5, 4.0] {
        let t = radial::nevanlinna_t(&f, r, &s);
        let mean_max = radial::circle_mean_fn(
            |w| {
                let a = (w - z(1.0, 0.0)).norm().ln();
                let b = (w + z(2.0, 0.0)).norm().ln();
                Ok(a.max(b))
            },
            r,
            s.kink_rel_tol,
            &s,
        );
        match (t, mean_max) {
            (Ok(t), Ok(mm)) => {
                let diff = t - (mm - 2.0_f64.ln());
                checks.push(Check::of(
                    format!("sup-log identity r={r}"),
                    diff.abs() <= 1e-6,
                    format!("T {t:.9} vs shifted mean {:.9}, diff {diff:.2e}", mm - 2.0_f64.ln()),
                ));
            }
            (t, mm) => checks.push(Check::of(
                format!("sup-log identity r={r}"),
                false,
                format!("errors: T {t:?}, mean {mm:?}"),
            )),
        }
    }
    checks
}

/// Growth floor lnM >= NZ + ln|f(0)| - 1e-6 for built canonical products.
pub fn growth_floor() -> Vec<Check> {
    let s = settings();
    let mut checks = Vec::new();
    let sets: Vec<(&str, PointDistribution, f64)> = vec![
        (
            "pair zeros 1..8",
            PointDistribution::from_points((1..=8).flat_map(|k| {
                [
                    (z(k as f64, 0.0), 1u32),
                    (z(-(k as f64), 0.0), 1u32),
                ]
            })),
            1.0,
        ),
        (
            "square zeros 1..40",
            PointDistribution::from_points(
                (1..=40).map(|k| (z((k * k) as f64, 0.0), 1u32)),
            ),
            1.0,
        ),
        (
            "spiral zeros",
            PointDistribution::from_points(
                (1..=25).map(|k| (Complex64::from_polar(0.8 * k as f64, 0.9 * k as f64), 1u32)),
            ),
            1.5,
        ),
    ];
    for (name, zeros, p) in sets {
        let product = products::build_f_z(zeros.clone(), p).unwrap();
        let log_leading = product.log_leading;
        let spec = FunctionSpec::CanonicalProduct(product);
        let mut worst = f64::INFINITY;
        let mut ok = true;
        for r in [0.7, 2.3, 5.1, 11.0, 19.5] {
            match radial::max_modulus(&spec, r, &s) {
                Ok(m) => {
                    let slack = m - zeros.integral_count(r) - log_leading;
                    worst = worst.min(slack);
                    ok &= slack >= -1e-6;
                }
                Err(e) => {
                    checks.push(Check::of(
                        format!("growth floor {name}"),
                        false,
                        format!("error: {e}"),
                    ));
                    ok = false;
                    break;
                }
            }
        }
        if worst.is_finite() {
            checks.push(Check::of(
                format!("growth floor {name}"),
                ok,
                format!("min slack {worst:.3e}"),
            ));
        }
    }
    checks
}

/// phi1 <= phi2 pointwise implies transform(phi1) <= transform(phi2), on
/// five deterministic profile pairs.
pub fn transform_monotonicity() -> Vec<Check> {
    let grid = log_grid(0.1, 100.0, 8).unwrap();
    let pairs: Vec<(&str, Box<dyn Fn(f64) -> f64>, Box<dyn Fn(f64) -> f64>)> = vec![
        ("sqrt vs sqrt+1", Box::new(|t: f64| t.sqrt()), Box::new(|t: f64| t.sqrt() + 1.0)),
        (
            "log vs 2log",
            Box::new(|t: f64| (1.0 + t).ln()),
            Box::new(|t: f64| 2.0 * (1.0 + t).ln()),
        ),
        ("const 1 vs 2", Box::new(|_| 1.0), Box::new(|_| 2.0)),
        (
            "bump vs bump+tail",
            Box::new(|t: f64| t / (1.0 + t)),
            Box::new(|t: f64| t / (1.0 + t) + t.sqrt() / 10.0),
        ),
        (
            "power 0.3 vs 0.6 above 1",
            Box::new(|t: f64| t.powf(0.3)),
            Box::new(|t: f64| t.powf(0.3) + (t.powf(0.6) - 1.0).max(0.0)),
        ),
    ];
    let params = KernelParams::new(1.5).unwrap();
    let mut checks = Vec::new();
    for (name, lo_f, hi_f) in pairs {
        let lo = RadialProfile::new(
            grid.clone(),
            grid.iter().map(|t| lo_f(*t)).collect(),
            lo_f(0.0),
            Tail::Constant,
        )
        .unwrap();
        let hi = RadialProfile::new(
            grid.clone(),
            grid.iter().map(|t| hi_f(*t)).collect(),
            hi_f(0.0),
            Tail::Constant,
        )
        .unwrap();
        let mut ok = true;
        let mut detail = String::new();
        for r in [0.5, 2.0, 20.0] {
            let a = kernel::kernel_transform(&lo, &params, r).unwrap();
            let b = kernel::kernel_transform(&hi, &params, r).unwrap();
            ok &= b >= a - 1e-11 * (1.0 + a.abs());
            detail = format!("last pair {a:.6} <= {b:.6}");
        }
        checks.push(Check::of(format!("transform monotone {name}"), ok, detail));
    }
    checks
}

/// The kernel inequality for two explicit minorants:
/// u = ln+(2|z|) with p = 1 (margin ln 3 - ln 2) and u = (Re z + 1)+ with
/// p = 2 (margin sqrt(2) - 1).
pub fn minorant_inequality() -> Vec<Check> {
    let mut checks = Vec::new();
    // case 1: C_u(t) = ln+(2t), u(1) = ln 2
    {
        let grid = log_grid(1e-3, 1e4, 32).unwrap();
        let vals: Vec<f64> = grid.iter().map(|t| (2.0 * t).ln().max(0.0)).collect();
        let profile = RadialProfile::new(grid, vals, 0.0, Tail::Forbidden)
            .unwrap()
            .with_fitted_tail()
            .unwrap();
        let params = KernelParams::new(1.0).unwrap();
        match radial::lemma22_check(&profile, 2.0_f64.ln(), &params) {
            Ok(margin) => checks.push(Check::of(
                "minorant ln+(2|z|) p=1",
                margin >= -1e-8,
                format!("margin {margin:.9} (exact ln 1.5 = {:.9})", 1.5_f64.ln()),
            )),
            Err(e) => checks.push(Check::of(
                "minorant ln+(2|z|) p=1",
                false,
                format!("error: {e}"),
            )),
        }
    }
    // case 2: C_u(t) = 1 for t <= 1, (t sin t0 + t0)/pi beyond
    {
        let c_u = |t: f64| {
            if t <= 1.0 {
                1.0
            } else {
                let t0 = (-1.0 / t).acos();
                (t * t0.sin() + t0) / PI
            }
        };
        let grid = log_grid(1e-3, 1e4, 32).unwrap();
        let vals: Vec<f64> = grid.iter().map(|t| c_u(*t)).collect();
        let profile = RadialProfile::new(grid, vals, 1.0, Tail::Forbidden)
            .unwrap()
            .with_fitted_tail()
            .unwrap();
        let params = KernelParams::new(2.0).unwrap();
        match radial::lemma22_check(&profile, 2.0, &params) {
            Ok(margin) => checks.push(Check::of(
                "minorant (Re z+1)+ p=2",
                margin >= -1e-8,
                format!(
                    "margin {margin:.9} (exact sqrt(2)-1 = {:.9})",
                    2.0_f64.sqrt() - 1.0
                ),
            )),
            Err(e) => checks.push(Check::of(
                "minorant (Re z+1)+ p=2",
                false,
                format!("error: {e}"),
            )),
        }
    }
    checks
}

/// Canonical products: the 10^4-pair genus-1 product against the sine
/// quotient on 20 probes, and the fitted order of the k^2-zero product.
pub fn canonical_products() -> Vec<Check> {
    let mut checks = Vec::new();
    {
        let k_max = 10_000usize;
        let mut pts = Vec::with_capacity(2 * k_max);
        for k in 1..=k_max {
            pts.push((z(k as f64, 0.0), 1u32));
            pts.push((z(-(k as f64), 0.0), 1u32));
        }
        let product = CanonicalProductSpec {
            zeros: PointDistribution::from_points(pts),
            genus: 1,
            log_leading: 0.0,
            declared_tail: None,
        };
        let sinc = sine_quotient();
        let mut worst = 0.0_f64;
        let mut ok = true;
        for j in 0..20 {
            // 20 probes inside the unit disk, where the truncation error
            // |Re z^2|/k_max stays below the tolerance
            let probe = Complex64::from_polar(
                0.25 + 0.025 * j as f64,
                2.0 * PI * j as f64 / 20.0 + 0.13,
            );
            let got = product.log_abs(probe);
            let want = sinc.log_abs(probe).unwrap();
            let diff = (got - want).abs();
            worst = worst.max(diff);
            ok &= diff <= 1e-4;
        }
        checks.push(Check::of(
            "pair product vs sine quotient",
            ok,
            format!("max |diff| {worst:.3e} over 20 probes (tol 1e-4)"),
        ));
    }
    {
        let zeros =
            PointDistribution::from_points((1..=200).map(|k| (z((k * k) as f64, 0.0), 1u32)));
        let spec = FunctionSpec::CanonicalProduct(products::build_f_z(zeros, 1.0).unwrap());
        let s = settings();
        let grid = log_grid(1.0, 1e4, 8).unwrap();
        let result: Result<Vec<f64>, _> = grid
            .iter()
            .map(|r| radial::max_modulus(&spec, *r, &s))
            .collect();
        match result {
            Ok(vals) => {
                let profile =
                    RadialProfile::new(grid, vals, 0.0, Tail::Forbidden).unwrap();
                match profile::estimate_order_type(&profile) {
                    Ok((order, _)) => checks.push(Check::of(
                        "square-zero product order",
                        (order - 0.5).abs() <= 0.1,
                        format!("fitted order {order:.4} (want 0.5 +- 0.1)"),
                    )),
                    Err(e) => checks.push(Check::of(
                        "square-zero product order",
                        false,
                        format!("fit error: {e}"),
                    )),
                }
            }
            Err(e) => checks.push(Check::of(
                "square-zero product order",
                false,
                format!("error: {e}"),
            )),
        }
    }
    checks
}

/// Zero lists serialize canonically: parse -> serialize is idempotent
/// after the first normalization pass, for both CSV and JSON.
pub fn zero_list_round_trip() -> Vec<Check> {
    let messy = "re,im,multiplicity\n\
                 3,0,1\n\
                 -1,2,2\n\
                 3,0,1\n\
                 0,0,3\n\
                 1e-18,0,1\n";
    let mut checks = Vec::new();
    match crate::zeros_io::parse_zero_csv(messy) {
        Ok(first) => {
            let text1 = crate::zeros_io::zero_list_to_csv(&first);
            match crate::zeros_io::parse_zero_csv(&text1) {
                Ok(second) => {
                    let text2 = crate::zeros_io::zero_list_to_csv(&second);
                    let json1 = crate::zeros_io::zero_list_to_json(&first).to_string();
                    let json2 = crate::zeros_io::zero_list_to_json(&second).to_string();
                    checks.push(Check::of(
                        "zero list round trip",
                        text1 == text2 && json1 == json2,
                        format!("canonical CSV {} bytes, stable", text1.len()),
                    ));
                }
                Err(e) => checks.push(Check::of(
                    "zero list round trip",
                    false,
                    format!("reparse error: {e}"),
                )),
            }
        }
        Err(e) => checks.push(Check::of(
            "zero list round trip",
            false,
            format!("parse error: {e}"),
        )),
    }
    checks
}

/// The series-defined special functions against their closed-form twins.
pub fn special_functions() -> Vec<Check> {
    let mut checks = Vec::new();
    // exp agreement over the |z| <= 20 disk
    {
        let mut worst = 0.0_f64;
        let mut ok = true;
        for kr in 0..5 {
            for ka in 0..8 {
                let w = Complex64::from_polar(
                    20.0 * (kr as f64 + 1.0) / 5.0,
                    2.0 * PI * ka as f64 / 8.0,
                );
                let got = funcat::mittag_leffler(1.0, 1.0, w).unwrap().value;
                let want = w.exp();
                let rel = (got - want).norm() / want.norm();
                worst = worst.max(rel);
                ok &= rel <= 1e-8;
            }
        }
        checks.push(Check::of(
            "ml order 1 equals exp on |z|<=20",
            ok,
            format!("max rel {worst:.3e}"),
        ));
    }
    // the raw series route where cancellation is benign
    {
        let mut worst = 0.0_f64;
        let mut ok = true;
        for ka in 0..8 {
            let w = Complex64::from_polar(4.0, 2.0 * PI * ka as f64 / 8.0);
            let (got, _) = special::mittag_leffler_series(1.0, 1.0, w).unwrap();
            let rel = (got - w.exp()).norm() / w.exp().norm();
            worst = worst.max(rel);
            ok &= rel <= 1e-9;
        }
        checks.push(Check::of(
            "ml series route at |z|=4",
            ok,
            format!("max rel {worst:.3e}"),
        ));
    }
    {
        let got = funcat::mittag_leffler(0.5, 1.0, z(1.0, 0.0)).unwrap().value;
        let want = 1.0_f64.cosh();
        let diff = (got.re - want).abs().max(got.im.abs());
        checks.push(Check::of(
            "ml order 1/2 at 1 is cosh 1",
            diff <= 1e-9,
            format!("{} vs {want}, diff {diff:.2e}", got.re),
        ));
    }
    {
        let spec = FunctionSpec::MittagLeffler {
            order: 0.75,
            parameter: 1.0,
        };
        let s = settings();
        // the fit uses the top decade [3, 30] only; sampling from 0.3
        // gives the fitter its required two decades of context
        let grid = log_grid(0.3, 30.0, 16).unwrap();
        let vals: Result<Vec<f64>, _> = grid
            .iter()
            .map(|r| radial::max_modulus(&spec, *r, &s))
            .collect();
        match vals {
            Ok(vals) => {
                let profile =
                    RadialProfile::new(grid, vals, 0.0, Tail::Forbidden).unwrap();
                match profile::estimate_order_type(&profile) {
                    Ok((order, _)) => checks.push(Check::of(
                        "ml 0.75 fitted order",
                        (order - 0.75).abs() <= 0.08,
                        format!("fitted order {order:.4} (want 0.75 +- 0.08)"),
                    )),
                    Err(e) => checks.push(Check::of(
                        "ml 0.75 fitted order",
                        false,
                        format!("fit error: {e}"),
                    )),
                }
            }
            Err(e) => checks.push(Check::of(
                "ml 0.75 fitted order",
                false,
                format!("error: {e}"),
            )),
        }
    }
    checks
}

/// The explicit zero-free construction: for f = exp and G = 1/exp the
/// product has ln M identically zero, which is exactly the transform of
/// the zero profile.
pub fn zero_free_construction() -> Vec<Check> {
    let s = settings();
    let f_times_g = FunctionSpec::Product(vec![
        FunctionSpec::exp(),
        FunctionSpec::ExpPoly {
            coefficients: vec![z(0.0, 0.0), z(-1.0, 0.0)],
        },
    ]);
    let mut checks = Vec::new();
    let mut ok = true;
    let mut detail = String::new();
    for r in [0.5, 3.0, 17.0] {
        match radial::max_modulus(&f_times_g, r, &s) {
            Ok(m) => {
                ok &= m == 0.0;
                detail = format!("lnM(r={r}) = {m:e}");
                if m != 0.0 {
                    break;
                }
            }
            Err(e) => {
                ok = false;
                detail = format!("error: {e}");
                break;
            }
        }
    }
    checks.push(Check::of("exp * 1/exp has lnM == 0", ok, detail));

    let grid = log_grid(0.1, 100.0, 8).unwrap();
    let zero_profile = RadialProfile::new(
        grid.clone(),
        vec![0.0; grid.len()],
        0.0,
        Tail::Constant,
    )
    .unwrap();
    let params = KernelParams::new(2.0).unwrap();
    match kernel::theorem1_bound(&zero_profile, &params, &[0.5, 3.0, 17.0]) {
        Ok(bound) => {
            let all_zero = bound.values().iter().all(|v| *v == 0.0);
            checks.push(Check::of(
                "transform of zero profile is exactly 0",
                all_zero,
                format!("values {:?}", bound.values()),
            ));
        }
        Err(e) => checks.push(Check::of(
            "transform of zero profile is exactly 0",
            false,
            format!("error: {e}"),
        )),
    }
    checks
}
