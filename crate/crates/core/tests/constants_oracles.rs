use divmoment::arith::DivisorTables;
use divmoment::constants::{
    c1_partial, c2_partial, c2_star_partial, h1_sum, h2_sum, surd_equal, C1Limits, SurdForm,
};

fn weight(t: &DivisorTables, n: u64) -> f64 {
    t.d(n as usize) as f64 * (n as f64).powf(-0.75)
}

/// O(Y⁴) scan; equality decided on the exact surd forms of each pair sum.
fn brute_c2(t: &DivisorTables, y: u64, signed: bool) -> (f64, u64) {
    let pairs: Vec<(u64, u64, SurdForm)> = (1..=y)
        .flat_map(|n| (1..=y).map(move |m| (n, m)))
        .map(|(n, m)| (n, m, SurdForm::from_sqrts(&[n, m])))
        .collect();
    let w = |n: u64| {
        let v = weight(t, n);
        if signed && n % 2 == 1 {
            -v
        } else {
            v
        }
    };
    let (mut sum, mut count) = (0.0, 0u64);
    for (n, m, s) in &pairs {
        for (k, l, r) in &pairs {
            if s == r {
                sum += w(*n) * w(*m) * w(*k) * w(*l);
                count += 1;
            }
        }
    }
    (sum, count)
}

#[test]
fn enumerator_matches_brute_force() {
    let t = DivisorTables::build(100).unwrap();
    for y in [10, 20, 30] {
        let (value, count) = brute_c2(&t, y, false);
        let c = c2_partial(&t, y).unwrap();
        assert_eq!(c.term_count, count, "Y = {y}");
        assert!((c.value / value - 1.0).abs() < 1e-12, "Y = {y}: {} vs {value}", c.value);
        let (star, _) = brute_c2(&t, y, true);
        let s = c2_star_partial(&t, y).unwrap();
        assert!((s.value / star - 1.0).abs() < 1e-12, "Y = {y}");
    }
}

#[test]
fn surd_equality_agrees_with_floating_comparison() {
    let t = DivisorTables::build(100).unwrap();
    let pairs: Vec<(u64, u64, SurdForm, f64)> = (1..=50u64)
        .flat_map(|n| (1..=50u64).map(move |m| (n, m)))
        .map(|(n, m)| {
            let v = (n as f64).sqrt() + (m as f64).sqrt();
            (n, m, SurdForm::from_sqrts_with(&t, &[n, m]), v)
        })
        .collect();
    for (n, m, s, a) in &pairs {
        assert!(surd_equal(&t, *n, *m, *m, *n));
        for (_, _, r, b) in &pairs {
            assert_eq!(s == r, (a - b).abs() < 1e-9);
        }
    }
}

#[test]
fn parity_identity_holds() {
    let t = DivisorTables::build(1000).unwrap();
    for y in [37, 100, 555, 1000] {
        let a = c2_partial(&t, y).unwrap().value;
        let b = c2_star_partial(&t, y).unwrap().value;
        assert!((a - b).abs() <= 1e-12 * a, "Y = {y}: {a} vs {b}");
    }
}

#[test]
fn c2_increments_decay_like_inverse_root_times_log_cube() {
    let t = DivisorTables::build(16_000).unwrap();
    let ys = [1000u64, 2000, 4000, 8000, 16_000];
    let vals: Vec<f64> = ys.iter().map(|&y| c2_partial(&t, y).unwrap().value).collect();
    assert!(vals.windows(2).all(|w| w[1] >= w[0]));
    let mut prev = c2_partial(&t, 1).unwrap().value;
    for y in 2..=300 {
        let v = c2_partial(&t, y).unwrap().value;
        assert!(v >= prev, "Y = {y}");
        prev = v;
    }
    let pts: Vec<(f64, f64)> = ys[..4]
        .iter()
        .zip(vals.windows(2))
        .map(|(&y, w)| {
            let ly = (y as f64).ln();
            (ly, (w[1] - w[0]).ln() - 3.0 * ly.ln())
        })
        .collect();
    let n = pts.len() as f64;
    let (mx, my) = (
        pts.iter().map(|p| p.0).sum::<f64>() / n,
        pts.iter().map(|p| p.1).sum::<f64>() / n,
    );
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    assert!((-0.8..=-0.2).contains(&slope), "slope {slope}");
}

#[test]
fn c1_converges_from_below() {
    let t = DivisorTables::build(2000).unwrap();
    let small = c1_partial(&t, C1Limits { alpha_max: 50, beta_max: 50, h_max: 500 }).unwrap();
    let large = c1_partial(&t, C1Limits { alpha_max: 100, beta_max: 100, h_max: 1000 }).unwrap();
    assert!(large.value > small.value);
    assert!(large.value - small.value < small.value * 0.05);
    assert!((45.0..50.0).contains(&large.value), "{}", large.value);
}

#[test]
fn h1_grows_like_five_halves_power_times_log_cube() {
    let t = DivisorTables::build(10_000).unwrap();
    let r: Vec<f64> = [100u64, 300, 1000, 3000, 10_000]
        .iter()
        .map(|&y| {
            let yf = y as f64;
            h1_sum(&t, y).unwrap() / (yf.powf(2.5) * yf.ln().powi(3))
        })
        .collect();
    let (lo, hi) = r.iter().fold((f64::MAX, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    assert!(hi / lo < 1.5, "{r:?}");
}

#[test]
fn h2_growth_exponent_decreases() {
    // d-weights make the Y^ε factor dominant at these sizes; the local
    // exponent of H₂/Y^{1/2} must fall steadily.
    let t = DivisorTables::build(10_240).unwrap();
    let ys: Vec<u64> = (0..8).map(|i| 80u64 << i).collect();
    let r: Vec<f64> = ys
        .iter()
        .map(|&y| h2_sum(&t, y).unwrap() / (y as f64).sqrt())
        .collect();
    let slopes: Vec<f64> = r.windows(2).map(|w| (w[1] / w[0]).log2()).collect();
    assert!(slopes.windows(2).all(|w| w[1] < w[0]), "{slopes:?}");
    assert!(*slopes.last().unwrap() < 0.8, "{slopes:?}");
}
