//! Catalog of entire and meromorphic test functions.
//!
//! Every spec evaluates in log-polar parts (ln|f|, arg f, error estimate),
//! so products and quotients compose by addition and huge or tiny moduli
//! stay representable long after the complex value itself would overflow.
//! `log_abs` is the hot path for circle quadrature; `evaluate` rebuilds the
//! complex value from the parts.

use crate::error::{Error, Result};
use crate::points::PointDistribution;
use crate::products::CanonicalProductSpec;
use crate::special;
use num_complex::Complex64;

/// Complex values below this modulus report log_abs = -inf on value-space
/// paths (plain polynomials, series sums); log-space paths never need it.
pub const ZERO_VALUE_FLOOR: f64 = 1e-300;

/// One evaluation: the complex value, its log modulus (exactly -inf at a
/// structural zero), and an estimated relative error.
#[derive(Clone, Copy, Debug)]
pub struct EvalResult {
    pub value: Complex64,
    pub log_abs: f64,
    pub est_rel_err: f64,
}

/// Symbolic description of a function; evaluation never mutates it.
#[derive(Clone, Debug)]
pub enum FunctionSpec {
    /// coefficients[k] z^k, ascending degree.
    Polynomial { coefficients: Vec<Complex64> },
    /// leading * z^m0 * prod (z - a)^m over the stored distribution.
    ZeroForm {
        leading: Complex64,
        zeros: PointDistribution,
    },
    /// exp(P(z)) with P(z) = coefficients[k] z^k.
    ExpPoly { coefficients: Vec<Complex64> },
    /// sin(scale z); scale may be complex.
    Sine { scale: Complex64 },
    /// 1 / Gamma(z + shift), entire with zeros at -shift, -shift-1, ...
    ReciprocalGamma { shift: Complex64 },
    /// E_order(z; parameter) = sum z^k / Gamma(parameter + k/order).
    MittagLeffler { order: f64, parameter: f64 },
    /// Genus-q canonical product over a stored zero set.
    CanonicalProduct(CanonicalProductSpec),
    Product(Vec<FunctionSpec>),
    Quotient {
        numerator: Box<FunctionSpec>,
        denominator: Box<FunctionSpec>,
    },
}

struct Parts {
    log_abs: f64,
    arg: f64,
    est: f64,
}

const EPS: f64 = f64::EPSILON;

fn horner(coefficients: &[Complex64], z: Complex64) -> (Complex64, f64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut bound = 0.0_f64;
    let r = z.norm();
    for c in coefficients.iter().rev() {
        v = v * z + c;
        bound = bound * r + c.norm();
    }
    (v, bound)
}

impl FunctionSpec {
    /// exp(z).
    pub fn exp() -> Self {
        FunctionSpec::ExpPoly {
            coefficients: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        }
    }

    /// The constant function c.
    pub fn constant(c: Complex64) -> Self {
        FunctionSpec::Polynomial {
            coefficients: vec![c],
        }
    }

    fn variant_name(&self) -> &'static str {
        match self {
            FunctionSpec::Polynomial { .. } => "polynomial",
            FunctionSpec::ZeroForm { .. } => "zero form",
            FunctionSpec::ExpPoly { .. } => "exp-polynomial",
            FunctionSpec::Sine { .. } => "sine",
            FunctionSpec::ReciprocalGamma { .. } => "reciprocal gamma",
            FunctionSpec::MittagLeffler { .. } => "mittag-leffler",
            FunctionSpec::CanonicalProduct(_) => "canonical product",
            FunctionSpec::Product(_) => "product",
            FunctionSpec::Quotient { .. } => "quotient",
        }
    }

    /// True when the spec denotes an entire function by structure (a
    /// quotient is treated as meromorphic even if its poles all cancel).
    pub fn is_entire(&self) -> bool {
        match self {
            FunctionSpec::Quotient { .. } => false,
            FunctionSpec::Product(factors) => factors.iter().all(|f| f.is_entire()),
            _ => true,
        }
    }

    /// True when every Taylor coefficient at 0 is real and nonnegative, so
    /// the maximum modulus on |z| = r sits at z = r.
    pub fn positive_coefficients(&self) -> bool {
        match self {
            FunctionSpec::Polynomial { coefficients }
            | FunctionSpec::ExpPoly { coefficients } => coefficients
                .iter()
                .all(|c| c.im == 0.0 && c.re >= 0.0),
            FunctionSpec::MittagLeffler { order, parameter } => {
                *order > 0.0 && *parameter >= 0.0
            }
            FunctionSpec::Product(factors) => factors.iter().all(|f| f.positive_coefficients()),
            _ => false,
        }
    }

    /// Structural zeros with |a| <= radius (closed disk), multiplicity
    /// aware, origin mass included. `ZerosUnknown` for variants whose zero
    /// set is not stored or enumerable.
    pub fn known_zeros(&self, radius: f64) -> Result<PointDistribution> {
        if !(radius >= 0.0) {
            return Err(Error::InvalidInput(format!("zero radius {radius} < 0")));
        }
        match self {
            FunctionSpec::ZeroForm { zeros, .. } => Ok(zeros.truncated(radius)),
            FunctionSpec::CanonicalProduct(spec) => Ok(spec.zeros.truncated(radius)),
            FunctionSpec::ExpPoly { .. } => Ok(PointDistribution::new()),
            FunctionSpec::Sine { scale } => {
                let s = scale.norm();
                if s == 0.0 {
                    return Err(Error::ZerosUnknown("degenerate sine (scale 0)"));
                }
                // zeros at k pi / scale, k in Z; |z_k| = k pi / |scale|
                let k_max = (radius * s / std::f64::consts::PI * (1.0 + 1e-14)).floor();
                let mut pts = Vec::new();
                let mut k = 1.0;
                while k <= k_max {
                    let a = Complex64::new(k * std::f64::consts::PI, 0.0) / scale;
                    pts.push((a, 1));
                    pts.push((-a, 1));
                    k += 1.0;
                }
                Ok(PointDistribution::from_points(pts).with_origin(1))
            }
            FunctionSpec::ReciprocalGamma { shift } => {
                // zeros where z + shift = -n, n = 0, 1, 2, ...
                let mut pts = Vec::new();
                let mut n = 0.0;
                while n <= radius + shift.norm() + 1.0 {
                    let a = -(shift + Complex64::new(n, 0.0));
                    if a.norm() <= radius * (1.0 + 1e-14) {
                        pts.push((a, 1));
                    }
                    n += 1.0;
                }
                Ok(PointDistribution::from_points(pts))
            }
            FunctionSpec::Product(factors) => {
                let mut all = PointDistribution::new();
                for f in factors {
                    all = all.union(&f.known_zeros(radius)?);
                }
                Ok(all)
            }
            FunctionSpec::Quotient {
                numerator,
                denominator,
            } => {
                let zn = numerator.known_zeros(radius)?;
                let zd = denominator.known_zeros(radius)?;
                Ok(zn.saturating_sub(&zd))
            }
            _ => Err(Error::ZerosUnknown(self.variant_name())),
        }
    }

    /// Structural order of vanishing at z = 0 (negative for a quotient
    /// with a net pole there) plus the log-polar parts of the reduced
    /// limit lim f(z)/z^order. This is what resolves removable 0/0 points
    /// of quotients, e.g. sin(pi z)/(pi z) at the origin.
    fn origin_parts(&self) -> Result<(i64, Parts)> {
        match self {
            FunctionSpec::Polynomial { coefficients } => {
                match coefficients.iter().position(|c| c.norm() > 0.0) {
                    Some(k) => Ok((
                        k as i64,
                        Parts {
                            log_abs: coefficients[k].norm().ln(),
                            arg: coefficients[k].arg(),
                            est: EPS,
                        },
                    )),
                    // identically zero polynomial
                    None => Ok((
                        0,
                        Parts {
                            log_abs: f64::NEG_INFINITY,
                            arg: 0.0,
                            est: 0.0,
                        },
                    )),
                }
            }
            FunctionSpec::ZeroForm { leading, zeros } => {
                let mut la = if leading.norm() == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    leading.norm().ln()
                };
                let mut arg = leading.arg();
                for (a, m) in zeros.entries() {
                    la += *m as f64 * a.norm().ln();
                    arg += *m as f64 * (-a).arg();
                }
                Ok((
                    zeros.origin_multiplicity() as i64,
                    Parts {
                        log_abs: la,
                        arg,
                        est: EPS * (zeros.entries().len() as f64 + 2.0),
                    },
                ))
            }
            FunctionSpec::ExpPoly { coefficients } => {
                let c0 = coefficients.first().copied().unwrap_or_default();
                Ok((
                    0,
                    Parts {
                        log_abs: c0.re,
                        arg: c0.im,
                        est: EPS,
                    },
                ))
            }
            FunctionSpec::Sine { scale } => {
                if scale.norm() == 0.0 {
                    return Ok((
                        0,
                        Parts {
                            log_abs: f64::NEG_INFINITY,
                            arg: 0.0,
                            est: 0.0,
                        },
                    ));
                }
                // sin(s z)/z -> s
                Ok((
                    1,
                    Parts {
                        log_abs: scale.norm().ln(),
                        arg: scale.arg(),
                        est: EPS,
                    },
                ))
            }
            FunctionSpec::ReciprocalGamma { shift } => {
                if shift.im == 0.0 && special::is_gamma_pole(shift.re) {
                    // Gamma(z - n) ~ (-1)^n / (n! z), so 1/Gamma ~ (-1)^n n! z
                    let n = -shift.re;
                    let la = special::ln_gamma(Complex64::new(n + 1.0, 0.0)).re;
                    let arg = if (n as i64) % 2 == 0 {
                        0.0
                    } else {
                        std::f64::consts::PI
                    };
                    return Ok((
                        1,
                        Parts {
                            log_abs: la,
                            arg,
                            est: EPS * (2.0 + la.abs()),
                        },
                    ));
                }
                let l = special::ln_gamma(*shift);
                Ok((
                    0,
                    Parts {
                        log_abs: -l.re,
                        arg: -l.im,
                        est: EPS * (2.0 + l.re.abs() + l.im.abs()),
                    },
                ))
            }
            FunctionSpec::MittagLeffler { order, parameter } => {
                // first series term with a finite Gamma value; k = 0 unless
                // the parameter sits on a Gamma pole
                let mut k = 0i64;
                loop {
                    let a = parameter + k as f64 / order;
                    if !special::is_gamma_pole(a) {
                        let l = special::ln_gamma(Complex64::new(a, 0.0));
                        return Ok((
                            k,
                            Parts {
                                log_abs: -l.re,
                                arg: -l.im,
                                est: EPS * (2.0 + l.re.abs()),
                            },
                        ));
                    }
                    k += 1;
                    if a > 0.5 || k > 100_000 {
                        return Err(Error::InvalidInput(
                            "mittag-leffler origin order not resolvable".to_string(),
                        ));
                    }
                }
            }
            FunctionSpec::CanonicalProduct(spec) => Ok((
                0,
                Parts {
                    log_abs: spec.log_leading,
                    arg: 0.0,
                    est: EPS,
                },
            )),
            FunctionSpec::Product(factors) => {
                let mut order = 0i64;
                let mut la = 0.0;
                let mut arg = 0.0;
                let mut est = 0.0;
                for f in factors {
                    let (o, p) = f.origin_parts()?;
                    order += o;
                    la += p.log_abs;
                    arg += p.arg;
                    est += p.est;
                }
                Ok((
                    order,
                    Parts {
                        log_abs: la,
                        arg,
                        est,
                    },
                ))
            }
            FunctionSpec::Quotient {
                numerator,
                denominator,
            } => {
                let (no, np) = numerator.origin_parts()?;
                let (do_, dp) = denominator.origin_parts()?;
                if dp.log_abs == f64::NEG_INFINITY {
                    // denominator identically 0 up to its structural order
                    return Err(Error::InvalidInput(
                        "quotient denominator vanishes identically at 0".to_string(),
                    ));
                }
                Ok((
                    no - do_,
                    Parts {
                        log_abs: np.log_abs - dp.log_abs,
                        arg: np.arg - dp.arg,
                        est: np.est + dp.est,
                    },
                ))
            }
        }
    }

    fn eval_parts(&self, z: Complex64) -> Result<Parts> {
        if z.re == 0.0 && z.im == 0.0 {
            // resolve the origin structurally so quotient 0/0 points with a
            // finite limit evaluate to that limit
            let (order, reduced) = self.origin_parts()?;
            if order > 0 {
                return Ok(Parts {
                    log_abs: f64::NEG_INFINITY,
                    arg: 0.0,
                    est: 0.0,
                });
            }
            if order < 0 {
                return Err(Error::PoleHit { re: 0.0, im: 0.0 });
            }
            return Ok(reduced);
        }
        match self {
            FunctionSpec::Polynomial { coefficients } => {
                let (v, bound) = horner(coefficients, z);
                let n = coefficients.len() as f64;
                if v.norm() < ZERO_VALUE_FLOOR {
                    return Ok(Parts {
                        log_abs: f64::NEG_INFINITY,
                        arg: 0.0,
                        est: f64::INFINITY,
                    });
                }
                Ok(Parts {
                    log_abs: v.norm().ln(),
                    arg: v.arg(),
                    est: EPS * 2.0 * n * bound / v.norm(),
                })
            }
            FunctionSpec::ZeroForm { leading, zeros } => {
                let mut la = if leading.norm() == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    leading.norm().ln()
                };
                let mut arg = leading.arg();
                let m0 = zeros.origin_multiplicity();
                if m0 > 0 {
                    la += m0 as f64 * z.norm().ln();
                    arg += m0 as f64 * z.arg();
                }
                for (a, m) in zeros.entries() {
                    let d = z - a;
                    la += *m as f64 * d.norm().ln();
                    arg += *m as f64 * d.arg();
                }
                let k = zeros.entries().len() as f64 + 2.0;
                Ok(Parts {
                    log_abs: la,
                    arg,
                    est: EPS * k,
                })
            }
            FunctionSpec::ExpPoly { coefficients } => {
                let (p, bound) = horner(coefficients, z);
                Ok(Parts {
                    log_abs: p.re,
                    arg: p.im,
                    est: EPS * (1.0 + 2.0 * bound),
                })
            }
            FunctionSpec::Sine { scale } => {
                let w = scale * z;
                let l = special::ln_sin(w);
                Ok(Parts {
                    log_abs: l.re,
                    arg: l.im,
                    est: EPS * (2.0 + w.norm()),
                })
            }
            FunctionSpec::ReciprocalGamma { shift } => {
                let a = z + shift;
                if a.im == 0.0 && special::is_gamma_pole(a.re) {
                    return Ok(Parts {
                        log_abs: f64::NEG_INFINITY,
                        arg: 0.0,
                        est: 0.0,
                    });
                }
                let l = special::ln_gamma(a);
                Ok(Parts {
                    log_abs: -l.re,
                    arg: -l.im,
                    est: EPS * (2.0 + l.re.abs() + l.im.abs()),
                })
            }
            FunctionSpec::MittagLeffler { order, parameter } => {
                if *order == 1.0 && *parameter == 1.0 {
                    // E_1(z; 1) = exp(z): the series would lose the small
                    // sum to cancellation for Re z << 0, the closed form
                    // never does
                    return Ok(Parts {
                        log_abs: z.re,
                        arg: z.im,
                        est: EPS * (1.0 + z.norm()),
                    });
                }
                let (v, est) = special::mittag_leffler_series(*order, *parameter, z)?;
                if v.norm() < ZERO_VALUE_FLOOR {
                    return Ok(Parts {
                        log_abs: f64::NEG_INFINITY,
                        arg: 0.0,
                        est: f64::INFINITY,
                    });
                }
                Ok(Parts {
                    log_abs: v.norm().ln(),
                    arg: v.arg(),
                    est,
                })
            }
            FunctionSpec::CanonicalProduct(spec) => {
                let l = spec.ln_value(z);
                let k = spec.zeros.entries().len() as f64 + 1.0;
                Ok(Parts {
                    log_abs: l.re,
                    arg: l.im,
                    est: EPS * k + spec.truncation_log_abs_bound(z.norm()),
                })
            }
            FunctionSpec::Product(factors) => {
                let mut la = 0.0;
                let mut arg = 0.0;
                let mut est = 0.0;
                for f in factors {
                    let p = f.eval_parts(z)?;
                    la += p.log_abs;
                    arg += p.arg;
                    est += p.est;
                }
                Ok(Parts {
                    log_abs: la,
                    arg,
                    est,
                })
            }
            FunctionSpec::Quotient {
                numerator,
                denominator,
            } => {
                let d = denominator.eval_parts(z)?;
                if d.log_abs == f64::NEG_INFINITY {
                    return Err(Error::PoleHit { re: z.re, im: z.im });
                }
                let n = numerator.eval_parts(z)?;
                Ok(Parts {
                    log_abs: n.log_abs - d.log_abs,
                    arg: n.arg - d.arg,
                    est: n.est + d.est,
                })
            }
        }
    }

    /// ln |f(z)|; exactly -inf at structural zeros, `PoleHit` at a
    /// structural pole of a quotient.
    pub fn log_abs(&self, z: Complex64) -> Result<f64> {
        Ok(self.eval_parts(z)?.log_abs)
    }

    /// Full evaluation. The value is rebuilt as exp(log_abs) cis(arg), so
    /// it degrades to 0 / inf exactly when the log modulus does.
    pub fn evaluate(&self, z: Complex64) -> Result<EvalResult> {
        let p = self.eval_parts(z)?;
        let value = if p.log_abs == f64::NEG_INFINITY {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar(p.log_abs.exp(), p.arg)
        };
        Ok(EvalResult {
            value,
            log_abs: p.log_abs,
            est_rel_err: p.est,
        })
    }
}

/// E_rho(z; mu) as a one-off evaluation.
pub fn mittag_leffler(order: f64, parameter: f64, z: Complex64) -> Result<EvalResult> {
    FunctionSpec::MittagLeffler { order, parameter }.evaluate(z)
}

/// 1 / Gamma(z) as a one-off evaluation.
pub fn reciprocal_gamma(z: Complex64) -> Result<EvalResult> {
    FunctionSpec::ReciprocalGamma {
        shift: Complex64::new(0.0, 0.0),
    }
    .evaluate(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_has_exact_log_abs() {
        let f = FunctionSpec::exp();
        let w = z(-3.25, 7.5);
        let r = f.evaluate(w).unwrap();
        assert_eq!(r.log_abs, -3.25);
        assert!((r.value - w.exp()).norm() <= 1e-15 * w.exp().norm());
    }

    #[test]
    fn polynomial_value_and_zero_floor() {
        // z^2 - 1 at 2i
        let f = FunctionSpec::Polynomial {
            coefficients: vec![z(-1.0, 0.0), z(0.0, 0.0), z(1.0, 0.0)],
        };
        let r = f.evaluate(z(0.0, 2.0)).unwrap();
        assert!((r.value - z(-5.0, 0.0)).norm() < 1e-14);
        assert!((r.log_abs - 5.0_f64.ln()).abs() < 1e-14);
        assert!(r.est_rel_err > 0.0 && r.est_rel_err < 1e-13);
        // at an exact root the value collapses to the floor
        let root = f.evaluate(z(1.0, 0.0)).unwrap();
        assert_eq!(root.log_abs, f64::NEG_INFINITY);
        assert_eq!(root.value, z(0.0, 0.0));
    }

    #[test]
    fn zero_form_accumulates_in_log_space() {
        // (z - 1)(z - 2i) at 0: value 2i, parts assembled from the factors
        let f = FunctionSpec::ZeroForm {
            leading: z(1.0, 0.0),
            zeros: PointDistribution::from_points([(z(1.0, 0.0), 1), (z(0.0, 2.0), 1)]),
        };
        let r = f.evaluate(z(0.0, 0.0)).unwrap();
        assert!((r.value - z(0.0, 2.0)).norm() < 1e-15);
        assert!((r.log_abs - 2.0_f64.ln()).abs() < 1e-15);
        // exact -inf on a zero
        assert_eq!(f.log_abs(z(1.0, 0.0)).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn zero_form_survives_huge_radius() {
        // 400 factors at |z| = 1e8 would overflow naive products; the log
        // form reports ~ 400 ln(1e8) without drama
        let pts: Vec<(Complex64, u32)> = (1..=400).map(|k| (z(k as f64, 0.0), 1)).collect();
        let f = FunctionSpec::ZeroForm {
            leading: z(1.0, 0.0),
            zeros: PointDistribution::from_points(pts),
        };
        let la = f.log_abs(z(0.0, 1e8)).unwrap();
        let expect: f64 = (1..=400)
            .map(|k| (1e16 + (k as f64) * (k as f64)).ln() * 0.5)
            .sum();
        assert!((la - expect).abs() < 1e-9 * expect.abs());
    }

    #[test]
    fn sine_spots_and_zeros() {
        let f = FunctionSpec::Sine {
            scale: z(std::f64::consts::PI, 0.0),
        };
        let r = f.evaluate(z(0.5, 0.0)).unwrap();
        assert!((r.value - z(1.0, 0.0)).norm() < 1e-14);
        // sin(pi/4 + i) frozen |.| via cosh identity
        let r2 = f.evaluate(z(0.25, 1.0 / std::f64::consts::PI)).unwrap();
        let expect = (0.5 * (1.0_f64.cosh() * 1.0_f64.cosh() - 0.5)).sqrt()
            * std::f64::consts::SQRT_2;
        assert!((r2.value.norm() - expect).abs() < 1e-13);
        let zs = f.known_zeros(3.5).unwrap();
        assert_eq!(zs.origin_multiplicity(), 1);
        assert_eq!(zs.entries().len(), 6);
        assert_eq!(zs.radial_count(3.5), 7.0);
    }

    #[test]
    fn reciprocal_gamma_zeros_and_values() {
        let f = FunctionSpec::ReciprocalGamma {
            shift: z(0.0, 0.0),
        };
        // 1/Gamma(0.5) = 1/sqrt(pi)
        let r = f.evaluate(z(0.5, 0.0)).unwrap();
        assert!(
            (r.value.re - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-14,
            "{}",
            r.value
        );
        // structural zero at z = -3
        let r2 = f.evaluate(z(-3.0, 0.0)).unwrap();
        assert_eq!(r2.log_abs, f64::NEG_INFINITY);
        assert_eq!(r2.value, z(0.0, 0.0));
        let zs = f.known_zeros(2.5).unwrap();
        assert_eq!(zs.origin_multiplicity(), 1);
        assert_eq!(zs.radial_count(2.5), 3.0); // 0, -1, -2
    }

    #[test]
    fn reciprocal_gamma_shifted_zero_set() {
        // 1/Gamma(z + 1): zeros at -1, -2, ...; none at 0
        let f = FunctionSpec::ReciprocalGamma {
            shift: z(1.0, 0.0),
        };
        let zs = f.known_zeros(3.0).unwrap();
        assert_eq!(zs.origin_multiplicity(), 0);
        assert_eq!(zs.radial_count(3.0), 3.0); // -1, -2, -3
        // 1/Gamma(1) = 1 up to the gamma evaluation itself
        assert!(f.log_abs(z(0.0, 0.0)).unwrap().abs() < 1e-14);
    }

    #[test]
    fn mittag_leffler_exp_case_avoids_cancellation() {
        let f = FunctionSpec::MittagLeffler {
            order: 1.0,
            parameter: 1.0,
        };
        let r = f.evaluate(z(-20.0, 0.0)).unwrap();
        assert_eq!(r.log_abs, -20.0);
        assert!((r.value.re - (-20.0_f64).exp()).abs() < 1e-8 * (-20.0_f64).exp().abs());
    }

    #[test]
    fn mittag_leffler_series_case() {
        // order 1/2: sum z^k / Gamma(1 + 2k) = cosh sqrt z, so cosh 2 at 4
        let r = mittag_leffler(0.5, 1.0, z(4.0, 0.0)).unwrap();
        assert!((r.value.re - 2.0_f64.cosh()).abs() < 1e-13);
        assert!(r.est_rel_err < 1e-12);
    }

    #[test]
    fn product_of_exponentials_cancels_exactly() {
        // exp(z) * exp(-z): log_abs is Re z - Re z = 0 exactly, value 1
        let f = FunctionSpec::Product(vec![
            FunctionSpec::exp(),
            FunctionSpec::ExpPoly {
                coefficients: vec![z(0.0, 0.0), z(-1.0, 0.0)],
            },
        ]);
        let w = z(123.456, -78.9);
        assert_eq!(f.log_abs(w).unwrap(), 0.0);
        assert_eq!(f.evaluate(w).unwrap().value, z(1.0, 0.0));
    }

    #[test]
    fn quotient_hits_pole_structurally() {
        let f = FunctionSpec::Quotient {
            numerator: Box::new(FunctionSpec::constant(z(1.0, 0.0))),
            denominator: Box::new(FunctionSpec::ZeroForm {
                leading: z(1.0, 0.0),
                zeros: PointDistribution::from_points([(z(-2.0, 0.0), 1)]),
            }),
        };
        assert!(matches!(
            f.evaluate(z(-2.0, 0.0)),
            Err(Error::PoleHit { .. })
        ));
        // away from the pole: 1/(z+2) at 0 is 0.5
        let r = f.evaluate(z(0.0, 0.0)).unwrap();
        assert!((r.value - z(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn quotient_zeros_subtract_denominator_zeros() {
        let sine = FunctionSpec::Sine {
            scale: z(std::f64::consts::PI, 0.0),
        };
        let id = FunctionSpec::ZeroForm {
            leading: z(1.0, 0.0),
            zeros: PointDistribution::new().with_origin(1),
        };
        // sin(pi z)/z loses the origin zero and keeps +-1, +-2, ...
        let f = FunctionSpec::Quotient {
            numerator: Box::new(sine),
            denominator: Box::new(id),
        };
        let zs = f.known_zeros(2.5).unwrap();
        assert_eq!(zs.origin_multiplicity(), 0);
        assert_eq!(zs.radial_count(2.5), 4.0);
    }

    #[test]
    fn positive_coefficients_policy() {
        assert!(FunctionSpec::exp().positive_coefficients());
        assert!(FunctionSpec::MittagLeffler {
            order: 0.75,
            parameter: 1.0
        }
        .positive_coefficients());
        assert!(!FunctionSpec::Sine {
            scale: z(1.0, 0.0)
        }
        .positive_coefficients());
        let neg = FunctionSpec::Polynomial {
            coefficients: vec![z(-1.0, 0.0), z(0.0, 0.0), z(1.0, 0.0)],
        };
        assert!(!neg.positive_coefficients());
        assert!(FunctionSpec::Product(vec![FunctionSpec::exp(), FunctionSpec::exp()])
            .positive_coefficients());
    }

    #[test]
    fn entire_structure_policy() {
        assert!(FunctionSpec::exp().is_entire());
        let q = FunctionSpec::Quotient {
            numerator: Box::new(FunctionSpec::exp()),
            denominator: Box::new(FunctionSpec::exp()),
        };
        assert!(!q.is_entire());
        assert!(!FunctionSpec::Product(vec![FunctionSpec::exp(), q]).is_entire());
    }

    #[test]
    fn zeros_unknown_for_series_variants() {
        assert!(matches!(
            FunctionSpec::MittagLeffler {
                order: 0.5,
                parameter: 1.0
            }
            .known_zeros(10.0),
            Err(Error::ZerosUnknown(_))
        ));
        assert!(matches!(
            FunctionSpec::Polynomial {
                coefficients: vec![z(-1.0, 0.0), z(1.0, 0.0)]
            }
            .known_zeros(10.0),
            Err(Error::ZerosUnknown(_))
        ));
    }

    #[test]
    fn removable_origin_quotient_evaluates_to_limit() {
        // sin(pi z) / (pi z) -> 1 at 0
        let sinc = FunctionSpec::Quotient {
            numerator: Box::new(FunctionSpec::Sine {
                scale: z(std::f64::consts::PI, 0.0),
            }),
            denominator: Box::new(FunctionSpec::Polynomial {
                coefficients: vec![z(0.0, 0.0), z(std::f64::consts::PI, 0.0)],
            }),
        };
        let r = sinc.evaluate(z(0.0, 0.0)).unwrap();
        assert!(r.log_abs.abs() < 1e-14, "log_abs {}", r.log_abs);
        assert!((r.value - z(1.0, 0.0)).norm() < 1e-14);

        // sin(2z) / z -> 2 at 0
        let g = FunctionSpec::Quotient {
            numerator: Box::new(FunctionSpec::Sine { scale: z(2.0, 0.0) }),
            denominator: Box::new(FunctionSpec::Polynomial {
                coefficients: vec![z(0.0, 0.0), z(1.0, 0.0)],
            }),
        };
        assert!((g.log_abs(z(0.0, 0.0)).unwrap() - 2.0_f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn net_origin_pole_and_zero_through_quotients() {
        let one = FunctionSpec::constant(z(1.0, 0.0));
        let id = FunctionSpec::Polynomial {
            coefficients: vec![z(0.0, 0.0), z(1.0, 0.0)],
        };
        let pole = FunctionSpec::Quotient {
            numerator: Box::new(one),
            denominator: Box::new(id.clone()),
        };
        assert!(matches!(
            pole.evaluate(z(0.0, 0.0)),
            Err(Error::PoleHit { .. })
        ));
        // z^2 sin(z) / z has a net simple zero left at the origin
        let cubic_over_z = FunctionSpec::Quotient {
            numerator: Box::new(FunctionSpec::Product(vec![
                FunctionSpec::Polynomial {
                    coefficients: vec![z(0.0, 0.0), z(0.0, 0.0), z(1.0, 0.0)],
                },
                FunctionSpec::Sine { scale: z(1.0, 0.0) },
            ])),
            denominator: Box::new(id),
        };
        assert_eq!(
            cubic_over_z.log_abs(z(0.0, 0.0)).unwrap(),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn origin_orders_of_special_variants() {
        // E_1(z; 0) = z e^z vanishes simply at 0
        let ml = FunctionSpec::MittagLeffler {
            order: 1.0,
            parameter: 0.0,
        };
        assert_eq!(ml.log_abs(z(0.0, 0.0)).unwrap(), f64::NEG_INFINITY);
        // 1/Gamma(z - 2) ~ 2z near 0: zero at the origin, and just off it
        // the values follow the linear factor
        let rg = FunctionSpec::ReciprocalGamma {
            shift: z(-2.0, 0.0),
        };
        assert_eq!(rg.log_abs(z(0.0, 0.0)).unwrap(), f64::NEG_INFINITY);
        let v = rg.evaluate(z(1e-6, 0.0)).unwrap().value;
        assert!((v.re - 2e-6).abs() < 1e-11, "got {v}");
    }
}
