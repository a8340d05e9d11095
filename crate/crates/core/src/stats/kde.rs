use std::io::Write;

use serde::{Deserialize, Serialize};

use super::descriptives::quantile_sorted;
use super::{check_finite, sorted_copy};
use crate::error::{Error, Result};

pub const MIN_GRID_POINTS: usize = 16;

/// A density curve evaluated on an evenly spaced grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensitySeries {
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
    pub bandwidth: f64,
}

impl DensitySeries {
    /// Trapezoidal integral of the density over the grid.
    pub fn integral(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.density.windows(2))
            .map(|(x, y)| (x[1] - x[0]) * (y[0] + y[1]) / 2.0)
            .sum()
    }

    pub fn max_density(&self) -> f64 {
        self.density.iter().copied().fold(0.0, f64::max)
    }
}

/// Silverman's rule of thumb, `0.9 · min(sd, IQR/1.34) · n^(−1/5)`.
/// Falls back to the standard deviation when the IQR is zero.
pub fn silverman_bandwidth(values: &[f64]) -> Result<f64> {
    let n = values.len();
    if n < 2 {
        return Err(Error::Degenerate("bandwidth needs at least two values".to_string()));
    }
    check_finite(values, "bandwidth")?;
    let mean = values.iter().sum::<f64>() / n as f64;
    let sd = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    if sd <= 0.0 {
        return Err(Error::Degenerate("sample has zero variance".to_string()));
    }
    let sorted = sorted_copy(values);
    let iqr = quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    Ok(0.9 * spread * (n as f64).powf(-0.2))
}

/// Gaussian kernel density on `grid_points` evenly spaced points spanning
/// `[min − 3h, max + 3h]`.
pub fn kde(values: &[f64], grid_points: usize) -> Result<DensitySeries> {
    if values.is_empty() {
        return Err(Error::Domain("density of an empty sample".to_string()));
    }
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::Domain(format!(
            "density grid needs at least {MIN_GRID_POINTS} points, got {grid_points}"
        )));
    }
    let h = silverman_bandwidth(values)?;
    let sorted = sorted_copy(values);
    let (lo, hi) = (sorted[0] - 3.0 * h, sorted[sorted.len() - 1] + 3.0 * h);
    let step = (hi - lo) / (grid_points - 1) as f64;
    let norm = 1.0 / (values.len() as f64 * h * (2.0 * std::f64::consts::PI).sqrt());

    let grid: Vec<f64> = (0..grid_points)
        .map(|i| if i == grid_points - 1 { hi } else { lo + i as f64 * step })
        .collect();
    let density = grid
        .iter()
        .map(|&x| {
            norm * sorted
                .iter()
                .map(|&v| {
                    let u = (x - v) / h;
                    (-0.5 * u * u).exp()
                })
                .sum::<f64>()
        })
        .collect();
    Ok(DensitySeries {
        grid,
        density,
        bandwidth: h,
    })
}

/// Two-column `x,density` CSV.
pub fn write_density_csv<W: Write>(series: &DensitySeries, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "density"])?;
    for (x, d) in series.grid.iter().zip(&series.density) {
        w.write_record([x.to_string(), d.to_string()])?;
    }
    w.flush().map_err(|e| Error::io("<density csv>", e))?;
    Ok(())
}
