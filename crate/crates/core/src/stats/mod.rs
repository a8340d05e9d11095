//! Statistical battery: six-number summaries, Shapiro-Wilk normality
//! screening, the Wilcoxon rank-sum test with its effect size, and Gaussian
//! kernel density series.

mod descriptives;
mod kde;
mod normal;
mod normality;
mod ranksum;

pub use descriptives::{descriptives, quantile_sorted, Descriptives};
pub use kde::{kde, silverman_bandwidth, write_density_csv, DensitySeries, MIN_GRID_POINTS};
pub use normal::{effect_size_from_z, two_sided_p_from_z, z_from_effect_size};
pub use normality::{shapiro_wilk, NormalityResult};
pub use ranksum::{exact_rank_sum_p, midranks, wilcoxon_rank_sum, RankSumResult, EXACT_MAX_TOTAL};

use crate::error::{Error, Result};

fn check_finite(values: &[f64], what: &str) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::Domain(format!("{what}: value {i} is not finite"))),
        None => Ok(()),
    }
}

fn sorted_copy(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}
