//! The averaging kernel p^2 t^{p-1} / (1 + t^p)^2 dt on (0, inf), its
//! transform phi -> int phi(rt) dK(t), and the growth bounds built on it.
//!
//! The kernel has total mass exactly p. The substitution s = t^p/(1+t^p)
//! turns the transform into p int_0^1 phi(r (s/(1-s))^{1/p}) ds, which an
//! adaptive 15-point Gauss-Legendre rule integrates on [0, s*]; the piece
//! past s* is evaluated in closed form from the declared tail of phi, so
//! the s = 1 endpoint singularity never meets the quadrature.

use crate::error::{Error, Result};
use crate::profile::{RadialProfile, Tail};
use crate::special;

/// 15-point Gauss-Legendre rule on [-1, 1]: positive abscissas, their
/// weights, and the center weight. Exact for polynomials of degree <= 29.
const GL15_X: [f64; 7] = [
    0.20119409399743452230,
    0.39415134707756336990,
    0.57097217260853884754,
    0.72441773136017004742,
    0.84820658341042721620,
    0.93727339240070590431,
    0.98799251802048542849,
];
const GL15_W: [f64; 7] = [
    0.19843148532711157646,
    0.18616100001556221103,
    0.16626920581699393355,
    0.13957067792615431445,
    0.10715922046717193501,
    0.07036604748810812471,
    0.03075324199611726835,
];
const GL15_W0: f64 = 0.20257824192556127288;

/// Panels narrower than this are accepted as-is; f64 cannot resolve s
/// against the s = 1 endpoint much below it anyway.
const PANEL_WIDTH_FLOOR: f64 = 1e-14;

/// Upper cap on t^p at the analytic-tail handover; keeps 1 - s*
/// representable. Transforms evaluated many decades below the declared
/// tail start lose accuracy of order phi(tail_start) / 1e12.
const Y_STAR_CAP: f64 = 1e12;

#[derive(Clone, Copy, Debug)]
pub struct KernelParams {
    /// Kernel exponent; the averaging order. p >= 1.
    pub p: f64,
    /// Relative tolerance of the adaptive quadrature.
    pub quad_rel_tol: f64,
    /// Split budget before the transform reports a stall.
    pub max_panels: usize,
}

impl KernelParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidInput(format!(
                "kernel exponent p must be finite and >= 1, got {p}"
            )));
        }
        Ok(Self {
            p,
            quad_rel_tol: 1e-10,
            max_panels: 30_000,
        })
    }
}

/// Declared behavior of the transformed function past `tail_start`; the
/// transform integrates this part in closed form.
#[derive(Clone, Copy, Debug)]
pub enum TransformTail {
    /// phi(x) = coefficient * x^exponent.
    Power { exponent: f64, coefficient: f64 },
    /// phi(x) = slope * ln x + offset (counting integrals of finite sets).
    LogAffine { slope: f64, offset: f64 },
    /// phi(x) = value.
    Constant { value: f64 },
}

/// sigma, rho, constant describing the budget phi(t) <= sigma t^rho + c.
#[derive(Clone, Copy, Debug)]
pub struct PowerBudget {
    pub sigma: f64,
    pub rho: f64,
    pub constant: f64,
}

/// The sharp constant P(rho) relating a rho-power budget to its kernel
/// average at the optimal exponent: pi rho for rho >= 1/2, and
/// pi rho / sin(pi rho) below.
pub fn paley_constant(rho: f64) -> Result<f64> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::InvalidInput(format!(
            "paley constant needs rho > 0, got {rho}"
        )));
    }
    if rho >= 0.5 {
        Ok(std::f64::consts::PI * rho)
    } else {
        Ok(std::f64::consts::PI * rho / special::sin_pi(rho))
    }
}

/// The kernel exponent that attains P(rho): max(1, 2 rho).
pub fn optimal_p(rho: f64) -> Result<f64> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::InvalidInput(format!(
            "optimal exponent needs rho > 0, got {rho}"
        )));
    }
    Ok(1.0_f64.max(2.0 * rho))
}

/// Whether the transform of this profile converges for kernel exponent p:
/// the declared tail must grow strictly slower than t^p.
pub fn convergence_check(profile: &RadialProfile, p: f64) -> Result<bool> {
    match profile.tail() {
        Tail::Forbidden => Err(Error::TailUndeclared),
        Tail::Constant => Ok(true),
        Tail::PowerTail { exponent, .. } => Ok(exponent < p),
    }
}

fn gl15<F: Fn(f64) -> Result<f64>>(g: &F, a: f64, b: f64) -> Result<f64> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = GL15_W0 * g(c)?;
    for i in 0..7 {
        let dx = h * GL15_X[i];
        s += GL15_W[i] * (g(c - dx)? + g(c + dx)?);
    }
    Ok(s * h)
}

/// Closed-form kernel integral over t^p > y_star for the declared tail:
/// p int phi(r y^{1/p}) dy / (1 + y)^2.
fn tail_remainder(tail: TransformTail, y_star: f64, p: f64, r: f64) -> Result<f64> {
    match tail {
        TransformTail::Constant { value } => Ok(p * value / (1.0 + y_star)),
        TransformTail::LogAffine { slope, offset } => {
            // int_Y ln y / (1+y)^2 dy = ln Y/(1+Y) + ln(1 + 1/Y)
            let j = y_star.ln() / (1.0 + y_star) + (1.0 / y_star).ln_1p();
            Ok(slope * j + p * (slope * r.ln() + offset) / (1.0 + y_star))
        }
        TransformTail::Power {
            exponent,
            coefficient,
        } => {
            if exponent >= p {
                return Err(Error::Divergent(format!(
                    "tail exponent {exponent} >= kernel exponent {p}"
                )));
            }
            // int_Y y^b (1+y)^{-2} dy = sum_k (-1)^k (k+1) Y^{b-1-k}/(k+1-b)
            let beta = exponent / p;
            let mut sum = 0.0;
            let mut sign = 1.0;
            for k in 0..64 {
                let kf = k as f64;
                let term = sign * (kf + 1.0) * y_star.powf(beta - 1.0 - kf) / (kf + 1.0 - beta);
                sum += term;
                if term.abs() <= 1e-18 * sum.abs() + f64::MIN_POSITIVE {
                    break;
                }
                sign = -sign;
            }
            Ok(p * coefficient * r.powf(exponent) * sum)
        }
    }
}

/// Kernel transform int_0^inf phi(rt) dK(t) of a pointwise-evaluable phi
/// whose behavior past `tail_start` is declared by `tail`.
///
/// phi must be evaluable on (0, max(tail_start, 100^{1/p} r)]. The closure
/// may return errors; they propagate. Non-finite samples, a split budget
/// past `max_panels`, or panels the rule cannot settle report
/// `QuadratureStall`.
pub fn kernel_transform_fn<F: Fn(f64) -> Result<f64>>(
    phi: F,
    tail: TransformTail,
    tail_start: f64,
    params: &KernelParams,
    r: f64,
) -> Result<f64> {
    let p = params.p;
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::InvalidInput(format!("transform radius {r}")));
    }
    if r == 0.0 {
        // phi(0 * t) is constant, and the kernel mass is exactly p
        return Ok(p * phi(0.0)?);
    }
    let y_from_tail = if tail_start > 0.0 {
        (tail_start / r).powf(p)
    } else {
        0.0
    };
    let y_star = y_from_tail.max(100.0).min(Y_STAR_CAP);
    let s_star = y_star / (1.0 + y_star);
    let remainder = tail_remainder(tail, y_star, p, r)?;

    let exp_inv_p = 1.0 / p;
    let g = |s: f64| -> Result<f64> {
        let t = (s / (1.0 - s)).powf(exp_inv_p);
        let v = phi(r * t)?;
        if !v.is_finite() {
            return Err(Error::QuadratureStall(format!(
                "non-finite transform sample at t = {t}"
            )));
        }
        Ok(v)
    };

    let whole = gl15(&g, 0.0, s_star)?;
    let scale = whole.abs().max(remainder.abs() / p).max(1e-300);
    let tol = params.quad_rel_tol * scale;

    let mut stack = vec![(0.0_f64, s_star, whole)];
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut splits = 0usize;
    while let Some((a, b, est)) = stack.pop() {
        let m = 0.5 * (a + b);
        let left = gl15(&g, a, m)?;
        let right = gl15(&g, m, b)?;
        let refined = left + right;
        if (refined - est).abs() <= tol * (b - a) || b - a < PANEL_WIDTH_FLOOR {
            let y = refined - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        } else {
            splits += 1;
            if splits > params.max_panels {
                return Err(Error::QuadratureStall(format!(
                    "kernel transform at r = {r} exceeded {} panel splits",
                    params.max_panels
                )));
            }
            stack.push((m, b, right));
            stack.push((a, m, left));
        }
    }
    Ok(p * sum + remainder)
}

/// Kernel transform of a radial profile; the profile's declared tail
/// becomes the analytic tail of the integrand. `TailUndeclared` for a
/// Forbidden tail, `Divergent` when the tail outgrows the kernel.
pub fn kernel_transform(profile: &RadialProfile, params: &KernelParams, r: f64) -> Result<f64> {
    let tail = match profile.tail() {
        Tail::Forbidden => return Err(Error::TailUndeclared),
        Tail::Constant => TransformTail::Constant {
            value: *profile.values().last().unwrap(),
        },
        Tail::PowerTail {
            exponent,
            coefficient,
        } => {
            if exponent >= params.p {
                return Err(Error::Divergent(format!(
                    "profile tail t^{exponent} diverges under kernel exponent {}",
                    params.p
                )));
            }
            TransformTail::Power {
                exponent,
                coefficient,
            }
        }
    };
    kernel_transform_fn(
        |x| profile.value(x),
        tail,
        profile.max_radius(),
        params,
        r,
    )
}

/// Transform of the budget sigma t^rho + c in closed form:
/// sigma r^rho rho pi / sin(pi rho / p) + c p. `Divergent` when rho >= p
/// with sigma > 0.
pub fn power_bound(budget: &PowerBudget, params: &KernelParams, r: f64) -> Result<f64> {
    let PowerBudget {
        sigma,
        rho,
        constant,
    } = *budget;
    if !(sigma >= 0.0) || !(rho >= 0.0) || !(constant >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "power budget needs sigma, rho, c >= 0, got {sigma}, {rho}, {constant}"
        )));
    }
    if !(r >= 0.0) {
        return Err(Error::InvalidInput(format!("radius {r} < 0")));
    }
    let p = params.p;
    let power_part = if sigma == 0.0 || rho == 0.0 {
        // rho = 0 is the constant budget again: the mass is p
        sigma * p
    } else {
        if rho >= p {
            return Err(Error::Divergent(format!(
                "budget exponent rho = {rho} >= kernel exponent p = {p}"
            )));
        }
        sigma * r.powf(rho) * rho * std::f64::consts::PI / special::sin_pi(rho / p)
    };
    Ok(power_part + constant * p)
}

/// Transform of a circle-mean profile on each radius: the growth bound a
/// p-kernel average puts on the function at those radii. The output left
/// value is p * profile.left_value() (the r -> 0 limit) and the output
/// tail is Forbidden.
pub fn theorem1_bound(
    c_profile: &RadialProfile,
    params: &KernelParams,
    radii: &[f64],
) -> Result<RadialProfile> {
    transform_profile(c_profile, params, radii)
}

/// Zero-set growth bound: transform of the counting integral N_Z. The
/// finite set makes the integrand's tail exactly log-affine, so the
/// transform is accurate at every radius. `OriginPoint` when Z has origin
/// mass.
pub fn theorem2_bound(
    zeros: &crate::points::PointDistribution,
    params: &KernelParams,
    radii: &[f64],
) -> Result<RadialProfile> {
    if zeros.origin_multiplicity() > 0 {
        return Err(Error::OriginPoint);
    }
    let slope: f64 = zeros.entries().iter().map(|(_, m)| *m as f64).sum();
    let offset: f64 = -zeros
        .entries()
        .iter()
        .map(|(a, m)| *m as f64 * a.norm().ln())
        .sum::<f64>();
    let tail_start = zeros.support_radius().max(f64::MIN_POSITIVE);
    let mut values = Vec::with_capacity(radii.len());
    for r in radii {
        values.push(kernel_transform_fn(
            |x| Ok(if x > 0.0 { zeros.integral_count(x) } else { 0.0 }),
            TransformTail::LogAffine { slope, offset },
            tail_start,
            params,
            *r,
        )?);
    }
    RadialProfile::new(radii.to_vec(), values, 0.0, Tail::Forbidden)
}

/// Transform of a characteristic profile (same engine as the circle-mean
/// bound; the declared tail of T drives convergence).
pub fn theorem3_bound(
    t_profile: &RadialProfile,
    params: &KernelParams,
    radii: &[f64],
) -> Result<RadialProfile> {
    transform_profile(t_profile, params, radii)
}

fn transform_profile(
    profile: &RadialProfile,
    params: &KernelParams,
    radii: &[f64],
) -> Result<RadialProfile> {
    let mut values = Vec::with_capacity(radii.len());
    for r in radii {
        values.push(kernel_transform(profile, params, *r)?);
    }
    RadialProfile::new(
        radii.to_vec(),
        values,
        params.p * profile.left_value(),
        Tail::Forbidden,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::PointDistribution;
    use crate::profile::log_grid;
    use num_complex::Complex64;

    #[test]
    fn gl15_integrates_degree_28_exactly() {
        let v = gl15(&|x: f64| Ok(x.powi(28)), 0.0, 1.0).unwrap();
        assert!((v - 1.0 / 29.0).abs() < 1e-16, "{v}");
        let w = gl15(&|x: f64| Ok(x.powi(3) - 2.0 * x + 0.5), -1.0, 2.0).unwrap();
        assert!((w - (15.0 / 4.0 - 3.0 + 1.5)).abs() < 1e-14, "{w}");
    }

    #[test]
    fn kernel_mass_is_p() {
        for p in [1.0, 1.5, 2.0, 3.5] {
            let params = KernelParams::new(p).unwrap();
            let v = kernel_transform_fn(
                |_| Ok(1.0),
                TransformTail::Constant { value: 1.0 },
                0.0,
                &params,
                1.0,
            )
            .unwrap();
            assert!((v - p).abs() < 1e-12 * p, "p = {p}: {v}");
        }
    }

    #[test]
    fn transform_of_power_attains_sharp_constant_at_optimal_p() {
        // the quadrature route must land on the closed form
        for rho in [0.1, 0.25, 0.45, 0.5, 0.75, 1.0, 2.5] {
            let p = optimal_p(rho).unwrap();
            let params = KernelParams::new(p).unwrap();
            let v = kernel_transform_fn(
                |x| Ok(x.powf(rho)),
                TransformTail::Power {
                    exponent: rho,
                    coefficient: 1.0,
                },
                0.0,
                &params,
                1.0,
            )
            .unwrap();
            let expect = paley_constant(rho).unwrap();
            assert!(
                (v - expect).abs() < 5e-9 * expect,
                "rho = {rho}: {v} vs {expect}"
            );
        }
    }

    #[test]
    fn sharp_constant_exact_spots() {
        assert_eq!(paley_constant(1.0).unwrap(), std::f64::consts::PI);
        assert_eq!(paley_constant(0.5).unwrap(), std::f64::consts::PI / 2.0);
        // pi/4 / sin(pi/4) = pi / (2 sqrt 2)
        let v = paley_constant(0.25).unwrap();
        let expect = std::f64::consts::PI / (2.0 * std::f64::consts::SQRT_2);
        assert!((v - expect).abs() < 1e-15);
        // continuity across rho = 1/2
        let lo = paley_constant(0.5 - 1e-12).unwrap();
        let hi = paley_constant(0.5 + 1e-12).unwrap();
        assert!((lo - hi).abs() < 1e-10);
        assert!(paley_constant(0.0).is_err());
        assert!(paley_constant(-1.0).is_err());
    }

    #[test]
    fn optimal_exponent_rule() {
        assert_eq!(optimal_p(0.3).unwrap(), 1.0);
        assert_eq!(optimal_p(0.5).unwrap(), 1.0);
        assert_eq!(optimal_p(2.0).unwrap(), 4.0);
        assert!(optimal_p(0.0).is_err());
    }

    #[test]
    fn power_budget_closed_form_spot() {
        // sigma = 2, rho = 1/4, c = 0, p = 1, r = 16:
        // 2 * 2 * (pi/4) / sin(pi/4) = sqrt 2 pi
        let params = KernelParams::new(1.0).unwrap();
        let b = power_bound(
            &PowerBudget {
                sigma: 2.0,
                rho: 0.25,
                constant: 0.0,
            },
            &params,
            16.0,
        )
        .unwrap();
        assert!((b - 4.442882938158366).abs() < 1e-12, "{b}");
        // and the quadrature agrees with the closed form
        let v = kernel_transform_fn(
            |x| Ok(2.0 * x.powf(0.25)),
            TransformTail::Power {
                exponent: 0.25,
                coefficient: 2.0,
            },
            0.0,
            &params,
            16.0,
        )
        .unwrap();
        assert!((v - b).abs() < 1e-9 * b, "{v} vs {b}");
    }

    #[test]
    fn power_budget_divergence_and_constant_limit() {
        let params = KernelParams::new(1.0).unwrap();
        assert!(matches!(
            power_bound(
                &PowerBudget {
                    sigma: 1.0,
                    rho: 1.0,
                    constant: 0.0
                },
                &params,
                2.0
            ),
            Err(Error::Divergent(_))
        ));
        // sigma = 0 ignores rho entirely
        let b = power_bound(
            &PowerBudget {
                sigma: 0.0,
                rho: 7.0,
                constant: 3.0,
            },
            &params,
            2.0,
        )
        .unwrap();
        assert_eq!(b, 3.0);
    }

    #[test]
    fn transform_scale_covariance() {
        // int phi(rt) dK = int phi(c (r/c) t) dK: transform(phi, r) equals
        // transform(phi(c .), r/c)
        let params = KernelParams::new(2.0).unwrap();
        let cap = |x: f64| Ok(x.powi(2).min(100.0));
        let a = kernel_transform_fn(
            cap,
            TransformTail::Constant { value: 100.0 },
            10.0,
            &params,
            3.0,
        )
        .unwrap();
        let b = kernel_transform_fn(
            |x: f64| Ok((2.0 * x).powi(2).min(100.0)),
            TransformTail::Constant { value: 100.0 },
            5.0,
            &params,
            1.5,
        )
        .unwrap();
        assert!((a - b).abs() < 1e-9 * a.abs().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn transform_at_radius_zero_is_mass_times_value() {
        let params = KernelParams::new(1.5).unwrap();
        let v = kernel_transform_fn(
            |x| Ok(7.0 + x),
            TransformTail::Power {
                exponent: 1.0,
                coefficient: 1.0,
            },
            0.0,
            &params,
            0.0,
        )
        .unwrap();
        assert_eq!(v, 1.5 * 7.0);
    }

    #[test]
    fn counting_bound_closed_form_for_two_zeros() {
        // p = 1: each zero contributes ln(1 + r/|a|), so Z = {1, 2i} at
        // r = 4 gives ln 5 + ln 3 = ln 15, and r = 1/2 gives ln(3/2 * 5/4)
        let zeros = PointDistribution::from_points([
            (Complex64::new(1.0, 0.0), 1),
            (Complex64::new(0.0, 2.0), 1),
        ]);
        let params = KernelParams::new(1.0).unwrap();
        let prof = theorem2_bound(&zeros, &params, &[0.5, 4.0]).unwrap();
        let v = prof.values();
        assert!((v[1] - 15.0_f64.ln()).abs() < 1e-9, "{}", v[1]);
        assert!((v[0] - 1.875_f64.ln()).abs() < 1e-9, "{}", v[0]);
        assert_eq!(prof.left_value(), 0.0);
    }

    #[test]
    fn counting_bound_rejects_origin_mass() {
        let zeros = PointDistribution::new().with_origin(1);
        let params = KernelParams::new(1.0).unwrap();
        assert!(matches!(
            theorem2_bound(&zeros, &params, &[1.0]),
            Err(Error::OriginPoint)
        ));
    }

    #[test]
    fn profile_transform_of_constant_is_mass_scaled() {
        let grid = log_grid(0.1, 10.0, 8).unwrap();
        let values = vec![2.0_f64.ln(); grid.len()];
        let prof = RadialProfile::new(grid, values, 2.0_f64.ln(), Tail::Constant).unwrap();
        let params = KernelParams::new(1.5).unwrap();
        let out = theorem1_bound(&prof, &params, &[0.5, 2.0, 8.0]).unwrap();
        for v in out.values() {
            assert!((v - 1.5 * 2.0_f64.ln()).abs() < 1e-10, "{v}");
        }
        assert!((out.left_value() - 1.5 * 2.0_f64.ln()).abs() < 1e-15);
        assert!(matches!(out.tail(), Tail::Forbidden));
    }

    #[test]
    fn divergence_detection() {
        let grid = log_grid(1.0, 100.0, 4).unwrap();
        let values: Vec<f64> = grid.iter().map(|t| *t).collect();
        let prof = RadialProfile::new(grid, values, 0.0, Tail::Forbidden).unwrap();
        let params = KernelParams::new(1.0).unwrap();
        assert!(matches!(
            convergence_check(&prof, 1.0),
            Err(Error::TailUndeclared)
        ));
        assert!(matches!(
            kernel_transform(&prof, &params, 1.0),
            Err(Error::TailUndeclared)
        ));
        let prof = prof.with_tail(Tail::PowerTail {
            exponent: 1.0,
            coefficient: 1.0,
        });
        assert!(!convergence_check(&prof, 1.0).unwrap());
        assert!(matches!(
            kernel_transform(&prof, &params, 1.0),
            Err(Error::Divergent(_))
        ));
        assert!(convergence_check(&prof, 1.2).unwrap());
    }

    #[test]
    fn stall_on_tiny_panel_budget() {
        let mut params = KernelParams::new(1.0).unwrap();
        params.max_panels = 3;
        let e = kernel_transform_fn(
            |x| Ok(x.powf(0.45)),
            TransformTail::Power {
                exponent: 0.45,
                coefficient: 1.0,
            },
            0.0,
            &params,
            1.0,
        )
        .unwrap_err();
        assert!(matches!(e, Error::QuadratureStall(_)));
    }
}
