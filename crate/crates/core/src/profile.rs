//! Sampled radial profiles r -> value with declared behavior at both ends.
//!
//! A profile interpolates linearly in ln r between grid points, takes the
//! declared left value as its limit at 0 (linear in r on the first stub so
//! the disk mean stays exact for constants), and extends past the grid only
//! through an explicit tail declaration.

use crate::error::{Error, Result};

/// Behavior of a profile beyond its last grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tail {
    /// value(r) = coefficient * r^exponent for r past the grid.
    PowerTail { exponent: f64, coefficient: f64 },
    /// value(r) = last grid value.
    Constant,
    /// Evaluation past the grid is an error.
    Forbidden,
}

#[derive(Clone, Debug)]
pub struct RadialProfile {
    grid: Vec<f64>,
    values: Vec<f64>,
    left_value: f64,
    tail: Tail,
    increasing: bool,
}

impl RadialProfile {
    /// Build a profile over a strictly increasing positive grid.
    pub fn new(grid: Vec<f64>, values: Vec<f64>, left_value: f64, tail: Tail) -> Result<Self> {
        if grid.is_empty() || grid.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "profile needs matching nonempty grid/values, got {}/{}",
                grid.len(),
                values.len()
            )));
        }
        if !grid[0].is_finite() || grid[0] <= 0.0 {
            return Err(Error::InvalidInput("grid must start above 0".to_string()));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput(
                "grid must be strictly increasing".to_string(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) || !left_value.is_finite() {
            return Err(Error::InvalidInput(
                "profile values must be finite".to_string(),
            ));
        }
        Ok(Self {
            grid,
            values,
            left_value,
            tail,
            increasing: false,
        })
    }

    /// Assert the profile is nondecreasing (left value first); fails loudly
    /// instead of storing a false claim.
    pub fn into_increasing(mut self) -> Result<Self> {
        let mut prev = self.left_value;
        for (r, v) in self.grid.iter().zip(&self.values) {
            if *v < prev {
                return Err(Error::InvalidInput(format!(
                    "profile not increasing at r = {r}: {v} < {prev}"
                )));
            }
            prev = *v;
        }
        self.increasing = true;
        Ok(self)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn left_value(&self) -> f64 {
        self.left_value
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn is_increasing(&self) -> bool {
        self.increasing
    }

    pub fn max_radius(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    /// Replace the tail declaration.
    pub fn with_tail(mut self, tail: Tail) -> Self {
        self.tail = tail;
        self
    }

    /// Fit a power tail to the top decade (see `estimate_order_type`) and
    /// declare it.
    pub fn with_fitted_tail(self) -> Result<Self> {
        let (exponent, coefficient) = estimate_order_type(&self)?;
        Ok(self.with_tail(Tail::PowerTail {
            exponent,
            coefficient,
        }))
    }

    /// Evaluate at r >= 0. Inside the grid: linear in ln r. On [0, grid[0]]:
    /// linear in r between the left value and the first sample. Past the
    /// grid: the declared tail (`TailUndeclared` if Forbidden).
    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::InvalidInput(format!("profile radius {r} < 0")));
        }
        let n = self.grid.len();
        if r <= self.grid[0] {
            let g0 = self.grid[0];
            return Ok(self.left_value + (self.values[0] - self.left_value) * (r / g0));
        }
        if r > self.grid[n - 1] {
            return match self.tail {
                Tail::PowerTail {
                    exponent,
                    coefficient,
                } => Ok(coefficient * r.powf(exponent)),
                Tail::Constant => Ok(self.values[n - 1]),
                Tail::Forbidden => Err(Error::TailUndeclared),
            };
        }
        let i = match self.grid.partition_point(|g| *g < r) {
            0 => 1,
            i => i,
        };
        let (r0, r1) = (self.grid[i - 1], self.grid[i]);
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        let w = (r / r0).ln() / (r1 / r0).ln();
        Ok(v0 + (v1 - v0) * w)
    }

    /// Disk mean B(r) = (2/r^2) int_0^r value(t) t dt with every segment of
    /// the interpolant integrated in closed form.
    ///
    /// For a constant profile B == value; for value(t) = t (exactly linear
    /// on a segment grid refined enough) B(r) -> 2r/3.
    pub fn disk_mean(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::InvalidInput(format!("disk mean radius {r} < 0")));
        }
        if r == 0.0 {
            return Ok(self.left_value);
        }
        let g0 = self.grid[0];
        // stub [0, min(r, g0)]: value(t) = left + k t, k = (v0 - left)/g0
        let k = (self.values[0] - self.left_value) / g0;
        let s = r.min(g0);
        let mut integral = self.left_value * s * s / 2.0 + k * s * s * s / 3.0;
        let mut t_lo = g0;
        let mut i = 1;
        while t_lo < r {
            let (t_hi, v_lo, v_hi) = if i < self.grid.len() {
                (self.grid[i], self.values[i - 1], self.values[i])
            } else {
                // past the grid: integrate the declared tail up to r
                match self.tail {
                    Tail::PowerTail {
                        exponent,
                        coefficient,
                    } => {
                        let e2 = exponent + 2.0;
                        integral += coefficient * (r.powf(e2) - t_lo.powf(e2)) / e2;
                    }
                    Tail::Constant => {
                        let v = *self.values.last().unwrap();
                        integral += v * (r * r - t_lo * t_lo) / 2.0;
                    }
                    Tail::Forbidden => return Err(Error::TailUndeclared),
                }
                break;
            };
            let t1 = t_hi.min(r);
            if t1 > t_lo {
                // value(t) = v_lo + b ln(t/t_lo) on [t_lo, t_hi]
                let b = (v_hi - v_lo) / (t_hi / t_lo).ln();
                let sq = t1 * t1 - t_lo * t_lo;
                integral += v_lo * sq / 2.0 + b * (t1 * t1 / 2.0 * (t1 / t_lo).ln() - sq / 4.0);
            }
            t_lo = t_hi;
            i += 1;
        }
        Ok(2.0 / (r * r) * integral)
    }
}

/// Least-squares fit of (order, type) on the top decade of the profile:
/// order = slope of ln(value) against ln r (clamped at 0), type = the
/// smallest sigma with value <= sigma r^order over the fitted samples.
///
/// Needs the grid to span at least two decades and the top decade to hold
/// at least 8 samples with positive values (`ProfileCoverage` otherwise).
pub fn estimate_order_type(profile: &RadialProfile) -> Result<(f64, f64)> {
    let grid = profile.grid();
    let values = profile.values();
    let r_max = profile.max_radius();
    if r_max / grid[0] < 99.999 {
        return Err(Error::ProfileCoverage(format!(
            "order/type fit needs >= 2 decades, grid spans {:.3}",
            (r_max / grid[0]).log10()
        )));
    }
    let cut = r_max / 10.0;
    let pts: Vec<(f64, f64)> = grid
        .iter()
        .zip(values)
        .filter(|(r, v)| **r >= cut * (1.0 - 1e-12) && **v > 0.0)
        .map(|(r, v)| (r.ln(), v.ln()))
        .collect();
    if pts.len() < 8 {
        return Err(Error::ProfileCoverage(format!(
            "order/type fit needs >= 8 positive samples in the top decade, found {}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|(x, _)| x).sum::<f64>() / n;
    let my = pts.iter().map(|(_, y)| y).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let order = (sxy / sxx).max(0.0);
    let sigma = grid
        .iter()
        .zip(values)
        .filter(|(r, _)| **r >= cut * (1.0 - 1e-12))
        .map(|(r, v)| v / r.powf(order))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((order, sigma))
}

/// Type fit with the order imposed: smallest sigma with
/// value <= sigma r^order over the top decade.
pub fn type_for_order(profile: &RadialProfile, order: f64) -> Result<f64> {
    let r_max = profile.max_radius();
    let cut = r_max / 10.0;
    let sigma = profile
        .grid()
        .iter()
        .zip(profile.values())
        .filter(|(r, _)| **r >= cut * (1.0 - 1e-12))
        .map(|(r, v)| v / r.powf(order))
        .fold(f64::NEG_INFINITY, f64::max);
    if sigma.is_finite() {
        Ok(sigma)
    } else {
        Err(Error::ProfileCoverage(
            "type fit found no samples in the top decade".to_string(),
        ))
    }
}

/// Log-spaced grid from `r_min` to `r_max` with `per_decade` points per
/// decade; both endpoints included.
pub fn log_grid(r_min: f64, r_max: f64, per_decade: usize) -> Result<Vec<f64>> {
    if !(r_min > 0.0) || !(r_max > r_min) || per_decade == 0 {
        return Err(Error::InvalidInput(format!(
            "log grid needs 0 < r_min < r_max and per_decade >= 1, got {r_min}:{r_max}:{per_decade}"
        )));
    }
    let decades = (r_max / r_min).log10();
    let n = (decades * per_decade as f64).ceil() as usize;
    let n = n.max(1);
    let mut grid: Vec<f64> = (0..=n)
        .map(|k| r_min * 10f64.powf(decades * k as f64 / n as f64))
        .collect();
    grid[0] = r_min;
    let last = grid.len() - 1;
    grid[last] = r_max;
    Ok(grid)
}
