//! Shapiro-Wilk W test with Royston's (1995, AS R94) coefficient
//! approximation and normalizing transformation, valid for 3 ≤ n ≤ 5000.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::normal::upper_tail;
use super::{check_finite, sorted_copy};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalityResult {
    pub w_statistic: f64,
    pub p_value: f64,
    pub n: usize,
}

const MIN_N: usize = 3;
const MAX_N: usize = 5000;

// Polynomial coefficients, constant term first.
const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
const C3: [f64; 4] = [0.5440, -0.39978, 0.025054, -6.714e-4];
const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
const C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];
const G: [f64; 2] = [-2.273, 0.459];

fn poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub fn shapiro_wilk(values: &[f64]) -> Result<NormalityResult> {
    let n = values.len();
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(Error::Domain(format!(
            "Shapiro-Wilk needs {MIN_N} ≤ n ≤ {MAX_N}, got {n}"
        )));
    }
    check_finite(values, "Shapiro-Wilk")?;
    let x = sorted_copy(values);
    let range = x[n - 1] - x[0];
    if range <= 0.0 {
        return Err(Error::Degenerate("Shapiro-Wilk sample has zero variance".to_string()));
    }

    let half = coefficients(n);
    // Full antisymmetric weight vector over the order statistics.
    let weight = |i: usize| -> f64 {
        let j = n - 1 - i;
        match i.cmp(&j) {
            std::cmp::Ordering::Less => -half[i],
            std::cmp::Ordering::Greater => half[j],
            std::cmp::Ordering::Equal => 0.0,
        }
    };

    // W is the squared correlation between weights and data. Values are
    // scaled by the range to keep sums well conditioned.
    let xs: Vec<f64> = x.iter().map(|v| v / range).collect();
    let mean_x = xs.iter().sum::<f64>() / n as f64;
    let mean_a = (0..n).map(weight).sum::<f64>() / n as f64;
    let (mut ssa, mut ssx, mut sax) = (0.0, 0.0, 0.0);
    for (i, xi) in xs.iter().enumerate() {
        let da = weight(i) - mean_a;
        let dx = xi - mean_x;
        ssa += da * da;
        ssx += dx * dx;
        sax += da * dx;
    }
    let root = (ssa * ssx).sqrt();
    let w1 = (root - sax) * (root + sax) / (ssa * ssx);
    let w = (1.0 - w1).clamp(0.0, 1.0);

    Ok(NormalityResult {
        w_statistic: w,
        p_value: p_value(w, n),
        n,
    })
}

/// Weights `a_1..a_{⌊n/2⌋}` for the differences `x_(n+1−i) − x_(i)`.
fn coefficients(n: usize) -> Vec<f64> {
    let half = n / 2;
    if n == 3 {
        return vec![std::f64::consts::FRAC_1_SQRT_2];
    }
    let std_normal = Normal::standard();
    let an = n as f64;
    let m: Vec<f64> = (1..=half)
        .map(|i| std_normal.inverse_cdf((i as f64 - 0.375) / (an + 0.25)))
        .collect();
    let summ2 = 2.0 * m.iter().map(|v| v * v).sum::<f64>();
    let ssumm2 = summ2.sqrt();
    let rsn = 1.0 / an.sqrt();

    let a1 = poly(&C1, rsn) - m[0] / ssumm2;
    let mut a = vec![0.0; half];
    a[0] = a1;
    let (first_scaled, fac) = if n > 5 {
        let a2 = -m[1] / ssumm2 + poly(&C2, rsn);
        a[1] = a2;
        let fac = ((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2)).sqrt();
        (2, fac)
    } else {
        let fac = ((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1)).sqrt();
        (1, fac)
    };
    for i in first_scaled..half {
        a[i] = -m[i] / fac;
    }
    a
}

fn p_value(w: f64, n: usize) -> f64 {
    if w >= 1.0 {
        return 1.0;
    }
    if n == 3 {
        // Exact distribution for n = 3.
        let stqr = (0.75f64).sqrt().asin();
        return (6.0 / std::f64::consts::PI * (w.sqrt().asin() - stqr)).clamp(0.0, 1.0);
    }
    let an = n as f64;
    let y = (1.0 - w).ln();
    let (z, mean, sd) = if n <= 11 {
        let gamma = poly(&G, an);
        if y >= gamma {
            return 1e-99;
        }
        (-(gamma - y).ln(), poly(&C3, an), poly(&C4, an).exp())
    } else {
        let ln_n = an.ln();
        (y, poly(&C5, ln_n), poly(&C6, ln_n).exp())
    };
    upper_tail((z - mean) / sd).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_norm_is_one() {
        for n in [4, 5, 6, 11, 12, 50, 500, 5000] {
            let a = coefficients(n);
            let s: f64 = a.iter().map(|v| 2.0 * v * v).sum();
            assert!((s - 1.0).abs() < 1e-3, "n={n}: {s}");
        }
    }

    #[test]
    fn equally_spaced_values() {
        // Reference W for 1..n.
        for (n, expected) in [(3, 1.0), (5, 0.9868), (10, 0.9702), (20, 0.9604)] {
            let x: Vec<f64> = (1..=n).map(f64::from).collect();
            let r = shapiro_wilk(&x).unwrap();
            assert!((r.w_statistic - expected).abs() < 1e-3, "n={n}: {}", r.w_statistic);
            assert!((0.0..=1.0).contains(&r.p_value));
        }
    }

    #[test]
    fn near_degenerate_is_valid() {
        let r = shapiro_wilk(&[1.0, 1.0, 1.0, 2.0]).unwrap();
        assert!(r.w_statistic < 1.0);
        assert!(r.p_value < 0.01);
    }

    #[test]
    fn errors() {
        assert!(matches!(shapiro_wilk(&[1.0, 2.0]), Err(Error::Domain(_))));
        let big: Vec<f64> = (0..5001).map(f64::from).collect();
        assert!(matches!(shapiro_wilk(&big), Err(Error::Domain(_))));
        assert!(matches!(shapiro_wilk(&[2.0; 10]), Err(Error::Degenerate(_))));
        assert!(matches!(
            shapiro_wilk(&[1.0, f64::INFINITY, 2.0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn invariant_to_location_and_scale() {
        let x = [2.1, 3.4, 1.9, 5.6, 4.4, 3.3, 2.8, 7.9, 3.0, 4.1, 2.2, 6.0];
        let y: Vec<f64> = x.iter().map(|v| 100.0 + 3.0 * v).collect();
        let (a, b) = (shapiro_wilk(&x).unwrap(), shapiro_wilk(&y).unwrap());
        assert!((a.w_statistic - b.w_statistic).abs() < 1e-12);
        assert!((a.p_value - b.p_value).abs() < 1e-10);
    }
}
