//! Genus-q canonical products over a point distribution.
//!
//! The primary factor is E_q(w) = (1 - w) exp(sum_{j=1..q} w^j / j); a
//! product over zeros a_k evaluates as sum_k m_k ln E_q(z / a_k) in log
//! space, which is how values like e^(r^2) stay representable.

use crate::error::{Error, Result};
use crate::points::PointDistribution;
use num_complex::Complex64;

/// Factors with |z/a| below this switch to the two-term Taylor tail of
/// ln E_q, avoiding the cancellation in ln(1-w) + sum w^j/j.
pub const SMALL_RATIO: f64 = 1e-8;

/// Declared growth of the zero counting function past the stored points:
/// Z^rad(t) ~ coefficient * t^exponent for t > the build radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailCounting {
    pub exponent: f64,
    pub coefficient: f64,
}

#[derive(Clone, Debug)]
pub struct CanonicalProductSpec {
    pub zeros: PointDistribution,
    pub genus: u32,
    /// ln of the leading constant (the product itself is 1 at 0).
    pub log_leading: f64,
    /// Optional declared tail of an infinite zero family this finite set
    /// truncates; evaluation reports the truncation bound as extra error.
    pub declared_tail: Option<TailCounting>,
}

/// Genus for the growth exponent p: q = ceil(p) - 1, with ceil(p) = p at
/// integers, clamped at 0 for p < 1.
pub fn genus_for_order(p: f64) -> Result<u32> {
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::InvalidInput(format!(
            "genus needs a finite exponent p >= 0, got {p}"
        )));
    }
    Ok((p.ceil() - 1.0).max(0.0) as u32)
}

/// E_q(w) = (1 - w) exp(sum_{j=1..q} w^j / j).
pub fn primary_factor(genus: u32, w: Complex64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    let mut wp = Complex64::new(1.0, 0.0);
    for j in 1..=genus {
        wp *= w;
        s += wp / j as f64;
    }
    (Complex64::new(1.0, 0.0) - w) * s.exp()
}

/// Complex log of E_q(w): Re is ln|E_q| (exactly -inf at w = 1), Im is an
/// argument (not branch-tracked). For |w| <= `SMALL_RATIO` uses the series
/// tail ln E_q(w) = -sum_{j>q} w^j/j truncated after two terms.
pub fn ln_primary_factor(genus: u32, w: Complex64) -> Complex64 {
    if w.norm() <= SMALL_RATIO {
        let q1 = genus + 1;
        let wq1 = w.powu(q1);
        return -(wq1 / q1 as f64 + wq1 * w / (q1 + 1) as f64);
    }
    // ln|1 - w| = 0.5 ln(1 + (|w|^2 - 2 Re w)) keeps accuracy near |w| ~ 0
    let one_minus = Complex64::new(1.0, 0.0) - w;
    let re_log = if one_minus.norm() == 0.0 {
        f64::NEG_INFINITY
    } else {
        0.5 * (w.norm_sqr() - 2.0 * w.re).ln_1p()
    };
    let mut l = Complex64::new(re_log, one_minus.arg());
    let mut wp = Complex64::new(1.0, 0.0);
    for j in 1..=genus {
        wp *= w;
        l += wp / j as f64;
    }
    l
}

impl CanonicalProductSpec {
    /// Declare the counting tail of the truncated family; rejects tails the
    /// genus cannot absorb (the convergence sum sum m |z/a|^{q+1} diverges
    /// when the counting exponent reaches q + 1).
    pub fn with_declared_tail(mut self, tail: TailCounting) -> Result<Self> {
        if tail.exponent >= (self.genus + 1) as f64 {
            return Err(Error::GenusTooSmall {
                genus: self.genus,
                tail_exponent: tail.exponent,
            });
        }
        if tail.coefficient < 0.0 {
            return Err(Error::InvalidInput(
                "tail coefficient must be nonnegative".to_string(),
            ));
        }
        self.declared_tail = Some(tail);
        Ok(self)
    }

    /// Complex log of the product at z; Re is the log modulus, exactly -inf
    /// at a stored zero.
    pub fn ln_value(&self, z: Complex64) -> Complex64 {
        let mut l = Complex64::new(self.log_leading, 0.0);
        for (a, m) in self.zeros.entries() {
            l += *m as f64 * ln_primary_factor(self.genus, z / a);
        }
        l
    }

    /// ln |product(z)|; -inf exactly at stored zeros.
    pub fn log_abs(&self, z: Complex64) -> f64 {
        let mut l = self.log_leading;
        for (a, m) in self.zeros.entries() {
            l += *m as f64 * ln_primary_factor(self.genus, z / a).re;
        }
        l
    }

    /// Truncation bound sum_{|a| > R} m |z/a|^{q+1} / (q+1) for the declared
    /// tail, integrated against dZ^rad(t) = c e t^{e-1} dt from the build
    /// radius outward; 0 when no tail is declared.
    pub fn truncation_log_abs_bound(&self, z_abs: f64) -> f64 {
        let Some(tail) = self.declared_tail else {
            return 0.0;
        };
        let q1 = (self.genus + 1) as f64;
        let r_cut = self.zeros.support_radius().max(f64::MIN_POSITIVE);
        // int_{R}^inf (|z|/t)^{q1} c e t^{e-1} dt / q1
        //   = c e |z|^{q1} R^{e-q1} / (q1 (q1 - e))
        tail.coefficient * tail.exponent * z_abs.powf(q1) * r_cut.powf(tail.exponent - q1)
            / (q1 * (q1 - tail.exponent))
    }
}

/// Build the canonical product f_Z for a zero set with growth exponent p:
/// genus ceil(p) - 1, leading constant 1 (so f_Z(0) = 1 and ln|f_Z(0)| = 0).
///
/// Errors: `OriginPoint` when Z has origin mass (divide it out first),
/// `InvalidInput` for a bad exponent.
pub fn build_f_z(zeros: PointDistribution, p: f64) -> Result<CanonicalProductSpec> {
    if zeros.origin_multiplicity() > 0 {
        return Err(Error::OriginPoint);
    }
    Ok(CanonicalProductSpec {
        zeros,
        genus: genus_for_order(p)?,
        log_leading: 0.0,
        declared_tail: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn genus_rule() {
        assert_eq!(genus_for_order(0.0).unwrap(), 0);
        assert_eq!(genus_for_order(0.5).unwrap(), 0);
        assert_eq!(genus_for_order(1.0).unwrap(), 0);
        assert_eq!(genus_for_order(1.5).unwrap(), 1);
        assert_eq!(genus_for_order(2.0).unwrap(), 1);
        assert_eq!(genus_for_order(3.5).unwrap(), 3);
        assert!(genus_for_order(-1.0).is_err());
    }

    #[test]
    fn primary_factor_small_genus() {
        let w = z(0.3, -0.2);
        let e0 = primary_factor(0, w);
        assert!((e0 - (Complex64::new(1.0, 0.0) - w)).norm() < 1e-15);
        let e1 = primary_factor(1, w);
        let expect = (Complex64::new(1.0, 0.0) - w) * w.exp();
        assert!((e1 - expect).norm() < 1e-15);
    }

    #[test]
    fn ln_primary_factor_matches_direct_log() {
        for q in 0..4u32 {
            for w in [z(0.4, 0.1), z(-0.7, 0.3), z(0.05, -0.9), z(2.0, 1.0)] {
                let l = ln_primary_factor(q, w);
                let direct = primary_factor(q, w).norm().ln();
                assert!(
                    (l.re - direct).abs() < 1e-12 * (1.0 + direct.abs()),
                    "q = {q}, w = {w}"
                );
            }
        }
    }

    #[test]
    fn ln_primary_factor_small_ratio_taylor() {
        // at |w| = 1e-9 the direct route loses ~7 digits; the Taylor tail
        // keeps ln E_0(w) = -w - w^2/2 - ... to full precision
        let w = z(1e-9, 0.5e-9);
        let l = ln_primary_factor(0, w);
        let exact = -(w + w * w / 2.0);
        assert!((l - exact).norm() <= 1e-30);
        // genus 2: leading term is -w^3/3
        let l2 = ln_primary_factor(2, w);
        let exact2 = -(w.powu(3) / 3.0 + w.powu(4) / 4.0);
        assert!((l2 - exact2).norm() <= 1e-40);
    }

    #[test]
    fn log_abs_is_neg_infinity_exactly_at_stored_zero() {
        let zeros = PointDistribution::from_points([(z(2.0, 0.0), 1), (z(0.0, 3.0), 2)]);
        let spec = build_f_z(zeros, 1.0).unwrap();
        assert_eq!(spec.log_abs(z(2.0, 0.0)), f64::NEG_INFINITY);
        assert!(spec.log_abs(z(1.0, 1.0)).is_finite());
    }

    #[test]
    fn pair_symmetric_genus1_equals_quadratic_form() {
        // E_1(z/a) E_1(-z/a) = 1 - z^2/a^2
        let zeros = PointDistribution::from_points(
            (1..=40).flat_map(|k| [(z(k as f64, 0.0), 1), (z(-(k as f64), 0.0), 1)]),
        );
        let spec = build_f_z(zeros, 2.0).unwrap();
        assert_eq!(spec.genus, 1);
        for zz in [z(0.5, 0.0), z(0.3, 0.7), z(-1.4, 2.2)] {
            let direct: f64 = (1..=40)
                .map(|k| {
                    let a2 = (k * k) as f64;
                    (Complex64::new(1.0, 0.0) - zz * zz / a2).norm().ln()
                })
                .sum();
            assert!(
                (spec.log_abs(zz) - direct).abs() < 1e-10,
                "z = {zz}: {} vs {direct}",
                spec.log_abs(zz)
            );
        }
    }

    #[test]
    fn build_rejects_origin_mass() {
        let zeros = PointDistribution::from_points([(z(1.0, 0.0), 1)]).with_origin(1);
        assert!(matches!(build_f_z(zeros, 1.0), Err(Error::OriginPoint)));
    }

    #[test]
    fn declared_tail_needs_large_enough_genus() {
        let zeros = PointDistribution::from_points([(z(1.0, 0.0), 1), (z(2.0, 0.0), 1)]);
        let spec = build_f_z(zeros, 1.0).unwrap(); // genus 0
        let err = spec
            .clone()
            .with_declared_tail(TailCounting {
                exponent: 1.5,
                coefficient: 1.0,
            })
            .unwrap_err();
        assert!(matches!(err, Error::GenusTooSmall { .. }));
        let ok = spec.with_declared_tail(TailCounting {
            exponent: 0.5,
            coefficient: 1.0,
        });
        assert!(ok.is_ok());
        assert!(ok.unwrap().truncation_log_abs_bound(1.0) > 0.0);
    }

    #[test]
    fn truncation_bound_scales_with_genus_power() {
        let zeros = PointDistribution::from_points([(z(10.0, 0.0), 1)]);
        let spec = build_f_z(zeros, 1.0)
            .unwrap()
            .with_declared_tail(TailCounting {
                exponent: 0.5,
                coefficient: 2.0,
            })
            .unwrap();
        let b1 = spec.truncation_log_abs_bound(1.0);
        let b2 = spec.truncation_log_abs_bound(2.0);
        assert!((b2 / b1 - 2.0).abs() < 1e-12); // |z|^{q+1} with q = 0
    }
}
