use divmoment::arith::{
    alternating_divisor_summatory, divisor_summatory, isqrt, lattice_points_in_disk, zeta_real,
    DivisorTables,
};
use divmoment::error_terms::{circle_error, delta, delta_star, divisor_main_term};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[test]
fn hyperbola_matches_sieve_prefix_sums() {
    let t = DivisorTables::build(1_000_000).unwrap();
    let mut prefix = 0u64;
    for x in 1..=1_000_000u64 {
        prefix += t.d(x as usize) as u64;
        assert_eq!(divisor_summatory(x).unwrap(), prefix, "x = {x}");
    }
}

#[test]
fn alternating_sum_matches_signed_prefix() {
    let t = DivisorTables::build(100_000).unwrap();
    let mut prefix = 0i64;
    for n in 1..=100_000u64 {
        let d = t.d(n as usize) as i64;
        prefix += if n % 2 == 0 { d } else { -d };
        assert_eq!(alternating_divisor_summatory(n).unwrap(), prefix, "N = {n}");
    }
}

#[test]
fn lattice_count_matches_enumeration() {
    // r2[m] = #{(i, j) : i² + j² = m}
    let limit = 10_000usize;
    let r = isqrt(limit as u64) as i64;
    let mut r2 = vec![0u64; limit + 1];
    for i in -r..=r {
        for j in -r..=r {
            let m = (i * i + j * j) as usize;
            if m <= limit {
                r2[m] += 1;
            }
        }
    }
    let mut count = 0;
    for (m, c) in r2.iter().enumerate() {
        count += c;
        assert_eq!(lattice_points_in_disk(m as f64 + 0.5).unwrap(), count, "m = {m}");
        if m > 0 {
            assert_eq!(lattice_points_in_disk(m as f64).unwrap(), count, "m = {m}");
        }
    }
}

#[test]
fn kernel_and_mobius_agree() {
    let t = DivisorTables::build(200_000).unwrap();
    for n in 1..=200_000usize {
        assert_eq!(t.mu(n) != 0, t.kernel(n) as usize == n, "n = {n}");
    }
    assert!((zeta_real(2.0).unwrap() * 6.0 / (PI * PI) - 1.0).abs() < 1e-12);
}

#[test]
fn delta_jumps_by_divisor_count() {
    let t = DivisorTables::build(5000).unwrap();
    for m in 2..5000u64 {
        let below = divisor_summatory(m - 1).unwrap() as f64 - divisor_main_term(m as f64 - 1e-9);
        let jump = delta(m as f64).unwrap() - below;
        assert!((jump - t.d(m as usize) as f64).abs() < 1e-5, "m = {m}: {jump}");
    }
}

#[test]
fn delta_mean_is_small_against_rms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 10_000;
    let (mut s, mut s2) = (0.0, 0.0);
    for _ in 0..n {
        let v = delta(rng.gen_range(1e6..2e6)).unwrap();
        s += v;
        s2 += v * v;
    }
    let mean = s / n as f64;
    let rms = (s2 / n as f64).sqrt();
    assert!(mean.abs() < 0.1 * rms, "mean {mean} rms {rms}");
}

#[test]
fn delta_star_is_alternating_combination_of_delta() {
    // Δ*(x) = −Δ(x) + 2Δ(2x) − ½Δ(4x)
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let x: f64 = rng.gen_range(1.0..1e7);
        let lhs = delta_star(x).unwrap();
        let rhs = -delta(x).unwrap() + 2.0 * delta(2.0 * x).unwrap() - 0.5 * delta(4.0 * x).unwrap();
        assert!((lhs - rhs).abs() < 1e-6 * (1.0 + x.ln() * x.sqrt()), "x = {x}");
    }
}

proptest! {
    #[test]
    fn divisor_summatory_steps_by_d(x in 2u64..5_000_000) {
        let step = divisor_summatory(x).unwrap() - divisor_summatory(x - 1).unwrap();
        let direct = (1..=isqrt(x)).filter(|a| x % a == 0).map(|a| if a * a == x { 1 } else { 2 }).sum::<u64>();
        prop_assert_eq!(step, direct);
    }

    #[test]
    fn circle_count_is_nonnegative_integer_and_monotone(x in 0.01f64..1e8, dx in 0.0f64..100.0) {
        let a = circle_error(x).unwrap() + PI * x;
        let b = circle_error(x + dx).unwrap() + PI * (x + dx);
        prop_assert!(a >= 1.0);
        prop_assert!((a - a.round()).abs() < 1e-6 * a.max(1.0));
        prop_assert!(b.round() >= a.round());
    }
}
