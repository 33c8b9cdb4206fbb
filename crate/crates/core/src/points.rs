//! Finite point distributions: multisets of nonzero complex points with
//! integer multiplicities, plus a separate origin mass.
//!
//! The two counting functions are `Z^rad(r)` (total multiplicity in the
//! closed disk |z| <= r) and its logarithmic integral
//! `N_Z(r) = sum_{0 < |a| <= r} m ln(r/|a|) + m0 ln r`, the closed form of
//! `int_0^r (Z^rad(t) - Z^rad(0))/t dt + Z^rad(0) ln r`.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Any point closer to 0 than this is folded into the origin multiplicity.
pub const ORIGIN_FOLD_RADIUS: f64 = 1e-12;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointDistribution {
    /// Nonzero points with multiplicity, sorted by (modulus, re, im).
    entries: Vec<(Complex64, u32)>,
    origin_multiplicity: u32,
}

fn canonical_order(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.norm()
        .total_cmp(&b.norm())
        .then(a.re.total_cmp(&b.re))
        .then(a.im.total_cmp(&b.im))
}

impl PointDistribution {
    /// Empty distribution.
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from (point, multiplicity) pairs; exact duplicates are merged.
    /// Points with |a| < `ORIGIN_FOLD_RADIUS` are folded into the origin
    /// multiplicity with a warning.
    pub fn from_points<I: IntoIterator<Item = (Complex64, u32)>>(points: I) -> Self {
        Self::from_points_merged(points, 0.0)
    }

    /// Like `from_points` but merges points within `merge_radius` of an
    /// earlier point (first occurrence wins the coordinate).
    pub fn from_points_merged<I: IntoIterator<Item = (Complex64, u32)>>(
        points: I,
        merge_radius: f64,
    ) -> Self {
        let mut origin = 0u32;
        let mut kept: Vec<(Complex64, u32)> = Vec::new();
        let mut folded = 0usize;
        for (a, m) in points {
            if m == 0 {
                continue;
            }
            if a.norm() < ORIGIN_FOLD_RADIUS {
                origin += m;
                folded += 1;
                continue;
            }
            let slot = if merge_radius > 0.0 {
                kept.iter_mut().find(|(b, _)| (a - *b).norm() <= merge_radius)
            } else {
                kept.iter_mut().find(|(b, _)| *b == a)
            };
            match slot {
                Some((_, mm)) => *mm += m,
                None => kept.push((a, m)),
            }
        }
        if folded > 0 {
            log::warn!(
                "{folded} point(s) within {ORIGIN_FOLD_RADIUS} of 0 folded into the origin multiplicity"
            );
        }
        kept.sort_by(|(a, _), (b, _)| canonical_order(a, b));
        Self {
            entries: kept,
            origin_multiplicity: origin,
        }
    }

    /// Add origin mass.
    pub fn with_origin(mut self, m0: u32) -> Self {
        self.origin_multiplicity += m0;
        self
    }

    /// Nonzero points with multiplicities, sorted by modulus.
    pub fn entries(&self) -> &[(Complex64, u32)] {
        &self.entries
    }

    pub fn origin_multiplicity(&self) -> u32 {
        self.origin_multiplicity
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty() && self.origin_multiplicity == 0
    }

    /// Largest point modulus (0 if only origin mass).
    pub fn support_radius(&self) -> f64 {
        self.entries.last().map_or(0.0, |(a, _)| a.norm())
    }

    /// Sub-distribution of points with |a| <= r (origin mass kept).
    pub fn truncated(&self, r: f64) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .take_while(|(a, _)| a.norm() <= r)
                .cloned()
                .collect(),
            origin_multiplicity: self.origin_multiplicity,
        }
    }

    /// Z^rad(r): total multiplicity in the closed disk |z| <= r, origin
    /// included. Requires r >= 0.
    pub fn radial_count(&self, r: f64) -> f64 {
        assert!(r >= 0.0, "radial_count needs r >= 0");
        let mut n = self.origin_multiplicity as u64;
        for (a, m) in &self.entries {
            if a.norm() <= r {
                n += *m as u64;
            } else {
                break;
            }
        }
        n as f64
    }

    /// N_Z(r) = sum_{0 < |a| <= r} m ln(r/|a|) + m0 ln r, for r > 0.
    ///
    /// The value is signed: with origin mass and r < 1 the m0 ln r term is
    /// negative by design (callers that require N_Z >= 0, such as the
    /// zero-set growth bound, reject m0 > 0 up front instead).
    pub fn integral_count(&self, r: f64) -> f64 {
        assert!(r > 0.0, "integral_count needs r > 0");
        // branch keeps the empty case at +0.0 (0 * ln r is -0.0 for r < 1)
        let mut n = match self.origin_multiplicity {
            0 => 0.0,
            m => m as f64 * r.ln(),
        };
        for (a, m) in &self.entries {
            let abs_a = a.norm();
            if abs_a > r {
                break;
            }
            n += *m as f64 * (r / abs_a).ln();
        }
        n
    }

    /// Rescale every point by c (|c| > 0): a -> c a. Origin mass unchanged.
    pub fn scale(&self, c: Complex64) -> Result<Self> {
        if c.norm() == 0.0 {
            return Err(Error::InvalidInput(
                "scale factor must be nonzero".to_string(),
            ));
        }
        let mut entries: Vec<(Complex64, u32)> =
            self.entries.iter().map(|(a, m)| (c * a, *m)).collect();
        entries.sort_by(|(a, _), (b, _)| canonical_order(a, b));
        Ok(Self {
            entries,
            origin_multiplicity: self.origin_multiplicity,
        })
    }

    /// Pointwise difference clamped at zero: (self - other)^+ over the union
    /// of supports, matching coordinates exactly. For F = f/g this turns
    /// (Zero_g, Zero_f) into the pole distribution of F.
    pub fn saturating_sub(&self, other: &Self) -> Self {
        let mut entries: Vec<(Complex64, u32)> = Vec::new();
        for (a, m) in &self.entries {
            let cancel = other
                .entries
                .iter()
                .find(|(b, _)| b == a)
                .map_or(0, |(_, mm)| *mm);
            if *m > cancel {
                entries.push((*a, m - cancel));
            }
        }
        Self {
            entries,
            origin_multiplicity: self
                .origin_multiplicity
                .saturating_sub(other.origin_multiplicity),
        }
    }

    /// Multiset union (sums multiplicities of identical points).
    pub fn union(&self, other: &Self) -> Self {
        let all = self
            .entries
            .iter()
            .chain(other.entries.iter())
            .cloned()
            .collect::<Vec<_>>();
        Self::from_points(all).with_origin(self.origin_multiplicity + other.origin_multiplicity)
    }
}

/// Pole distribution of F = f/g from the zero sets of f and g:
/// Pol_F = (Zero_g - Zero_f)^+ pointwise.
pub fn pole_distribution(
    zeros_numerator: &PointDistribution,
    zeros_denominator: &PointDistribution,
) -> PointDistribution {
    zeros_denominator.saturating_sub(zeros_numerator)
}
