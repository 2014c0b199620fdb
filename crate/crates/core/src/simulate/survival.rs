use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Step function estimate of `P[time > t]`, evaluated at `grid`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivalCurve {
    pub grid: Vec<usize>,
    pub survival: Vec<f64>,
    /// Pointwise 95% Greenwood band, clamped to `[0, 1]`.
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl SurvivalCurve {
    /// Value at an arbitrary `t`: the last grid point not after `t`.
    pub fn at(&self, t: usize) -> f64 {
        match self.grid.partition_point(|&g| g <= t) {
            0 => 1.0,
            i => self.survival[i - 1],
        }
    }
}

/// Product-limit estimator over `(time, censored)` observations.
///
/// The grid is `0` followed by every distinct observed time. Events at a time
/// are counted before censorings at the same time. Between censorings the
/// product telescopes, so the estimate is kept as `base * left / at_risk`;
/// without censoring this is exactly the empirical survival function.
pub fn kaplan_meier(times: &[(usize, bool)]) -> Result<SurvivalCurve> {
    if times.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = times.to_vec();
    sorted.sort_unstable();
    let z = Normal::new(0.0, 1.0)
        .expect("standard normal")
        .inverse_cdf(0.975);

    let mut grid = vec![0];
    let mut survival = vec![1.0];
    let mut lower = vec![1.0];
    let mut upper = vec![1.0];

    let mut left = sorted.len();
    let mut base = 1.0;
    let mut base_at_risk = left;
    let mut greenwood = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let t = sorted[i].0;
        let mut events = 0;
        let mut censored = 0;
        while i < sorted.len() && sorted[i].0 == t {
            if sorted[i].1 {
                censored += 1;
            } else {
                events += 1;
            }
            i += 1;
        }
        if events > 0 {
            if events < left {
                greenwood += events as f64 / (left as f64 * (left - events) as f64);
            }
            left -= events;
        }
        let s = base * left as f64 / base_at_risk as f64;
        if censored > 0 {
            left -= censored;
            base = s;
            base_at_risk = left;
        }
        let half = if s > 0.0 {
            z * s * greenwood.sqrt()
        } else {
            0.0
        };
        if t == 0 {
            survival[0] = s;
            lower[0] = (s - half).max(0.0);
            upper[0] = (s + half).min(1.0);
        } else {
            grid.push(t);
            survival.push(s);
            lower.push((s - half).max(0.0));
            upper.push((s + half).min(1.0));
        }
    }
    Ok(SurvivalCurve {
        grid,
        survival,
        lower,
        upper,
    })
}
