use statrs::function::erf::erfc;

/// Two-sided standard-normal tail probability `P(|Z| ≥ |z|)`.
pub fn two_sided_p_from_z(z: f64) -> f64 {
    erfc(z.abs() / std::f64::consts::SQRT_2).clamp(0.0, 1.0)
}

/// `|z| / √n`, the rank-sum effect size.
pub fn effect_size_from_z(z: f64, n_total: usize) -> f64 {
    z.abs() / (n_total as f64).sqrt()
}

/// Inverse of [`effect_size_from_z`]: the |z| implied by an effect size.
pub fn z_from_effect_size(r: f64, n_total: usize) -> f64 {
    r * (n_total as f64).sqrt()
}

/// Upper tail `P(Z > z)`.
pub(crate) fn upper_tail(z: f64) -> f64 {
    0.5 * erfc(z / std::f64::consts::SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_tails() {
        assert!((two_sided_p_from_z(1.959963984540054) - 0.05).abs() < 1e-10);
        assert_eq!(two_sided_p_from_z(0.0), 1.0);
        assert!((upper_tail(-1.0) - 0.841344746068543).abs() < 1e-10);
        assert!(two_sided_p_from_z(40.0) >= 0.0);
    }

    #[test]
    fn effect_size_round_trip() {
        let z = z_from_effect_size(0.163, 1302);
        assert!((effect_size_from_z(z, 1302) - 0.163).abs() < 1e-15);
        assert_eq!(effect_size_from_z(-2.0, 4), 1.0);
    }
}
