use serde::{Deserialize, Serialize};

use super::check_finite;
use super::normal::{effect_size_from_z, two_sided_p_from_z};
use crate::error::{Error, Result};

/// Wilcoxon rank-sum (Mann-Whitney) test outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankSumResult {
    /// `U = R_x − n_x(n_x + 1)/2`.
    pub u_statistic: f64,
    /// Continuity-corrected normal score, signed like `U − n_x·n_y/2`.
    pub z_score: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    /// `|z| / √(n_x + n_y)`.
    pub effect_size_r: f64,
    pub n_x: usize,
    pub n_y: usize,
}

/// Ranks of the pooled values (1-based), ties receiving their average rank.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // Positions i..j (0-based) share ranks i+1..=j.
        let rank = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

/// Rank-sum test with midranks, tie-corrected variance and a 0.5 continuity
/// correction toward the null mean.
pub fn wilcoxon_rank_sum(x: &[f64], y: &[f64]) -> Result<RankSumResult> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Domain("rank-sum test needs two non-empty samples".to_string()));
    }
    check_finite(x, "rank-sum x")?;
    check_finite(y, "rank-sum y")?;
    let (nx, ny) = (x.len(), y.len());
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let ranks = midranks(&pooled);
    let rank_sum_x: f64 = ranks[..nx].iter().sum();
    let u = rank_sum_x - (nx * (nx + 1)) as f64 / 2.0;

    let n = (nx + ny) as f64;
    let mean = (nx * ny) as f64 / 2.0;
    let tie_term = tie_correction(&pooled);
    let variance = (nx * ny) as f64 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));

    let diff = u - mean;
    let z = if variance > 0.0 {
        diff.signum() * (diff.abs() - 0.5).max(0.0) / variance.sqrt()
    } else {
        0.0
    };
    Ok(RankSumResult {
        u_statistic: u,
        z_score: z,
        p_value: two_sided_p_from_z(z),
        effect_size_r: effect_size_from_z(z, nx + ny),
        n_x: nx,
        n_y: ny,
    })
}

/// `Σ (t³ − t)` over groups of tied values.
fn tie_correction(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mut total = 0.0;
    let mut i = 0;
    while i < v.len() {
        let mut j = i + 1;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        total += t * t * t - t;
        i = j;
    }
    total
}

/// Largest `n_x + n_y` accepted by [`exact_rank_sum_p`].
pub const EXACT_MAX_TOTAL: usize = 20;

/// Exact two-sided rank-sum p-value, by enumerating every way to assign
/// `n_x` of the pooled ranks to the first sample.
pub fn exact_rank_sum_p(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Domain(
            "exact rank-sum test needs two non-empty samples".to_string(),
        ));
    }
    let (nx, ny) = (x.len(), y.len());
    let total = nx + ny;
    if total > EXACT_MAX_TOTAL {
        return Err(Error::Domain(format!(
            "exact enumeration limited to n_x + n_y ≤ {EXACT_MAX_TOTAL}, got {total}"
        )));
    }
    check_finite(x, "exact rank-sum x")?;
    check_finite(y, "exact rank-sum y")?;
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    if tie_correction(&pooled) > 0.0 {
        return Err(Error::Unsupported(
            "exact rank-sum p-value requires tie-free samples".to_string(),
        ));
    }
    let ranks = midranks(&pooled);
    let offset = (nx * (nx + 1) / 2) as u64;
    let observed = ranks[..nx].iter().sum::<f64>() as u64 - offset;

    // Walk all nx-subsets of {1..=total} as bitmasks (Gosper's hack).
    let (mut below, mut above, mut count) = (0u64, 0u64, 0u64);
    let limit = 1u64 << total;
    let mut mask = (1u64 << nx) - 1;
    while mask < limit {
        let mut rank_sum = 0u64;
        let mut bits = mask;
        while bits != 0 {
            rank_sum += u64::from(bits.trailing_zeros()) + 1;
            bits &= bits - 1;
        }
        let u = rank_sum - offset;
        below += u64::from(u <= observed);
        above += u64::from(u >= observed);
        count += 1;

        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    let tail = below.min(above) as f64 / count as f64;
    Ok((2.0 * tail).min(1.0))
}
