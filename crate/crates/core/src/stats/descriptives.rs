use serde::{Deserialize, Serialize};

use super::{check_finite, sorted_copy};
use crate::error::{Error, Result};

/// Six-number summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Descriptives {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub mean: f64,
    pub q3: f64,
    pub max: f64,
}

/// Quantile of sorted data by linear interpolation at index `(n − 1)·p`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Min, quartiles, mean and max. Computed on the sorted values, so the result
/// does not depend on input order.
pub fn descriptives(values: &[f64]) -> Result<Descriptives> {
    if values.is_empty() {
        return Err(Error::Domain("descriptives of an empty sample".to_string()));
    }
    check_finite(values, "descriptives")?;
    let v = sorted_copy(values);
    let (min, max) = (v[0], v[v.len() - 1]);
    let mean = (v.iter().sum::<f64>() / v.len() as f64).clamp(min, max);
    Ok(Descriptives {
        min,
        q1: quantile_sorted(&v, 0.25),
        median: quantile_sorted(&v, 0.5),
        mean,
        q3: quantile_sorted(&v, 0.75),
        max,
    })
}
