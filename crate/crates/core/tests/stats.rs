use lexigauge::stats::{
    descriptives, exact_rank_sum_p, kde, shapiro_wilk, two_sided_p_from_z, wilcoxon_rank_sum, z_from_effect_size,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr_free::standard_normal;
use serde::Deserialize;

/// Box-Muller draws, enough for test data without another dependency.
mod rand_distr_free {
    use rand::Rng;

    pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
        let u1: f64 = 1.0 - rng.random::<f64>();
        let u2: f64 = rng.random();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}

#[derive(Deserialize)]
struct SwCase {
    name: String,
    values: Vec<f64>,
    w: f64,
    p: f64,
}

#[derive(Deserialize)]
struct SwFixture {
    cases: Vec<SwCase>,
    near_degenerate: SwCase,
}

fn sw_fixture() -> SwFixture {
    serde_json::from_str(include_str!("fixtures/shapiro_wilk.json")).unwrap()
}

#[test]
fn shapiro_wilk_reference_vectors() {
    let f = sw_fixture();
    assert_eq!(f.cases.len(), 20);
    for case in f.cases.iter().chain([&f.near_degenerate]) {
        let r = shapiro_wilk(&case.values).unwrap();
        assert!(
            (r.w_statistic - case.w).abs() < 1e-3,
            "{}: W {} vs {}",
            case.name,
            r.w_statistic,
            case.w
        );
        assert!(
            (r.p_value - case.p).abs() < 1e-2,
            "{}: p {} vs {}",
            case.name,
            r.p_value,
            case.p
        );
    }
}

#[test]
fn exact_p_small_cases() {
    assert!((exact_rank_sum_p(&[1.0, 2.0], &[3.0, 4.0]).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    // Symmetric in the two samples.
    let (x, y) = ([0.3, 1.9, 2.2], [0.1, 0.5, 4.0, 7.5]);
    assert_eq!(exact_rank_sum_p(&x, &y).unwrap(), exact_rank_sum_p(&y, &x).unwrap());
}

#[test]
fn exact_p_matches_brute_force_permutations() {
    // Enumerate index subsets recursively instead of with bit tricks.
    fn count(ranks: &[u64], k: usize, start: usize, sum: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(sum);
            return;
        }
        for i in start..ranks.len() {
            count(ranks, k - 1, i + 1, sum + ranks[i], out);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let nx = rng.random_range(1..=6);
        let ny = rng.random_range(1..=6);
        let mut pool: Vec<f64> = (0..nx + ny).map(|i| i as f64 + rng.random::<f64>() * 0.5).collect();
        pool.shuffle(&mut rng);
        let (x, y) = pool.split_at(nx);
        let mut sorted = pool.clone();
        sorted.sort_by(f64::total_cmp);
        let rank = |v: f64| sorted.iter().position(|&s| s == v).unwrap() as u64 + 1;
        let observed: u64 = x.iter().map(|&v| rank(v)).sum();
        let ranks: Vec<u64> = (1..=(nx + ny) as u64).collect();
        let mut sums = Vec::new();
        count(&ranks, nx, 0, 0, &mut sums);
        let total = sums.len() as f64;
        let lo = sums.iter().filter(|&&s| s <= observed).count() as f64 / total;
        let hi = sums.iter().filter(|&&s| s >= observed).count() as f64 / total;
        let expected = (2.0 * lo.min(hi)).min(1.0);
        assert!((exact_rank_sum_p(x, y).unwrap() - expected).abs() < 1e-12);
    }
}

#[test]
fn effect_size_to_p() {
    let p = two_sided_p_from_z(z_from_effect_size(0.163, 1302));
    assert!((3e-9..=6e-9).contains(&p), "{p}");
}

#[test]
fn kde_normal_sample_integrates_to_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x: Vec<f64> = (0..1000).map(|_| standard_normal(&mut rng)).collect();
    let s = kde(&x, 512).unwrap();
    assert!((s.integral() - 1.0).abs() < 0.01, "{}", s.integral());
}

#[test]
fn kde_symmetric_input() {
    let half = [0.3, 1.1, 1.7, 2.0, 4.5];
    let x: Vec<f64> = half.iter().flat_map(|&v| [v, -v]).collect();
    let s = kde(&x, 257).unwrap();
    let n = s.density.len();
    for i in 0..n {
        assert!((s.density[i] - s.density[n - 1 - i]).abs() < 1e-9);
    }
}

#[test]
fn descriptives_ordering() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let n = rng.random_range(1..50);
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0f64).powi(3)).collect();
        let d = descriptives(&x).unwrap();
        assert!(d.min <= d.q1 && d.q1 <= d.median && d.median <= d.q3 && d.q3 <= d.max);
        assert!(d.min <= d.mean && d.mean <= d.max);
    }
}

fn sample() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1e3f64..1e3, 1..25)
}

proptest! {
    #[test]
    fn rank_sum_exchangeable(x in sample(), y in sample()) {
        let (a, b) = (wilcoxon_rank_sum(&x, &y).unwrap(), wilcoxon_rank_sum(&y, &x).unwrap());
        prop_assert!((a.p_value - b.p_value).abs() < 1e-12);
        prop_assert!((a.effect_size_r - b.effect_size_r).abs() < 1e-12);
        prop_assert!((a.u_statistic + b.u_statistic - (x.len() * y.len()) as f64).abs() < 1e-9);
    }

    #[test]
    fn rank_sum_ranges(x in sample(), y in sample()) {
        let r = wilcoxon_rank_sum(&x, &y).unwrap();
        prop_assert!((0.0..=1.0).contains(&r.p_value));
        prop_assert!((0.0..=1.0).contains(&r.effect_size_r));
        prop_assert!(r.u_statistic >= 0.0 && r.u_statistic <= (x.len() * y.len()) as f64);
        prop_assert_eq!(r.effect_size_r == 0.0, r.z_score == 0.0);
    }

    #[test]
    fn rank_sum_invariant_to_monotone_maps(x in sample(), y in sample(), a in 0.1f64..5.0, b in -10.0f64..10.0) {
        let f = |v: &f64| 7.0 * (a * v + b).cbrt() + v.atan();
        let (fx, fy): (Vec<f64>, Vec<f64>) = (x.iter().map(f).collect(), y.iter().map(f).collect());
        // Keep only cases the map preserves exactly (no ties created by rounding).
        let ties_before = count_ties(&x, &y);
        prop_assume!(count_ties(&fx, &fy) == ties_before);
        let (r0, r1) = (wilcoxon_rank_sum(&x, &y).unwrap(), wilcoxon_rank_sum(&fx, &fy).unwrap());
        prop_assert_eq!(r0.u_statistic, r1.u_statistic);
        prop_assert_eq!(r0.p_value, r1.p_value);
    }

    #[test]
    fn descriptives_permutation_invariant(mut x in sample(), seed in any::<u64>()) {
        let d = descriptives(&x).unwrap();
        x.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(d, descriptives(&x).unwrap());
    }
}

fn count_ties(x: &[f64], y: &[f64]) -> usize {
    let mut v: Vec<f64> = x.iter().chain(y).copied().collect();
    v.sort_by(f64::total_cmp);
    v.windows(2).filter(|w| w[0] == w[1]).count()
}
