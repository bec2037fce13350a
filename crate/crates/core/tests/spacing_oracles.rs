use divmoment::constants::SurdForm;
use divmoment::numeric::Budget;
use divmoment::spacing::{
    bucket_bound, count_solutions, fractional_count, min_nonzero_gap, IntRange, SignPattern,
    SpacingInstance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PATTERNS: [SignPattern; 3] = [
    SignPattern::PlusPlusMinusMinus,
    SignPattern::PlusPlusPlusMinus,
    SignPattern::AllPlus,
];

fn quads(inst: &SpacingInstance) -> impl Iterator<Item = [u64; 4]> + '_ {
    let [r1, r2, r3, r4] = inst.ranges;
    r1.iter().flat_map(move |a| {
        r2.iter().flat_map(move |b| {
            r3.iter()
                .flat_map(move |c| r4.iter().map(move |d| [a, b, c, d]))
        })
    })
}

fn brute(inst: &SpacingInstance) -> (u64, u64) {
    let (mut count, mut zeros) = (0, 0);
    for q in quads(inst) {
        let zero = inst.pattern.is_exact_zero(q);
        zeros += zero as u64;
        if zero {
            if !inst.exclude_zero {
                count += 1;
            }
        } else if inst.pattern.abs_gap(q) < inst.delta {
            count += 1;
        }
    }
    (count, zeros)
}

fn random_box(rng: &mut ChaCha8Rng, max: u64) -> [IntRange; 4] {
    [0; 4].map(|_| {
        let lo = rng.gen_range(1..=max);
        let hi = rng.gen_range(lo..=max);
        IntRange { lo, hi }
    })
}

#[test]
fn sweep_matches_brute_force_on_small_boxes() {
    let budget = Budget::unlimited();
    let full = [IntRange { lo: 1, hi: 30 }; 4];
    for pattern in PATTERNS {
        for delta in [1e-3, 0.01, 0.1, 0.7] {
            for exclude_zero in [false, true] {
                let inst = SpacingInstance::boxed(full, delta, pattern, exclude_zero).unwrap();
                let c = count_solutions(&inst, &budget).unwrap();
                assert_eq!((c.count, c.zero_count), brute(&inst), "{pattern:?} {delta}");
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..60 {
        let pattern = PATTERNS[rng.gen_range(0..3)];
        let delta = rng.gen_range(1e-3..0.5);
        let inst =
            SpacingInstance::boxed(random_box(&mut rng, 30), delta, pattern, rng.gen()).unwrap();
        let c = count_solutions(&inst, &budget).unwrap();
        assert_eq!((c.count, c.zero_count), brute(&inst), "{inst:?}");
    }
}

#[test]
fn count_is_monotone_in_delta() {
    let budget = Budget::unlimited();
    for pattern in PATTERNS {
        let mut prev = 0;
        for i in 1..=30 {
            let delta = 0.002 * i as f64;
            let inst = SpacingInstance::dyadic([40.0; 4], delta, pattern, true).unwrap();
            let c = count_solutions(&inst, &budget).unwrap().count;
            assert!(c >= prev, "{pattern:?} Δ={delta}");
            prev = c;
        }
    }
}

#[test]
fn excluded_zeros_are_the_surd_identities() {
    let budget = Budget::unlimited();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        for pattern in [SignPattern::PlusPlusMinusMinus, SignPattern::PlusPlusPlusMinus] {
            let boxes = random_box(&mut rng, 40);
            let with = SpacingInstance::boxed(boxes, 0.05, pattern, false).unwrap();
            let without = SpacingInstance { exclude_zero: true, ..with.clone() };
            let a = count_solutions(&with, &budget).unwrap().count;
            let b = count_solutions(&without, &budget).unwrap().count;
            let identities = quads(&with)
                .filter(|q| match pattern {
                    SignPattern::PlusPlusMinusMinus => {
                        SurdForm::from_sqrts(&q[..2]) == SurdForm::from_sqrts(&q[2..])
                    }
                    _ => SurdForm::from_sqrts(&q[..3]) == SurdForm::from_sqrts(&q[3..]),
                })
                .count() as u64;
            assert_eq!(a - b, identities);
        }
    }
}

#[test]
fn bucket_bound_dominates_exact_count() {
    let budget = Budget::unlimited();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let pattern = PATTERNS[rng.gen_range(0..2)];
        let scales = [0; 4].map(|_| rng.gen_range(5.0..60.0));
        let delta = 10f64.powf(rng.gen_range(-4.0..0.0));
        let inst = SpacingInstance::dyadic(scales, delta, pattern, false).unwrap();
        let b = bucket_bound(&inst, &budget).unwrap();
        assert!(b.bound >= b.exact_count as f64, "{inst:?}: {b:?}");
        assert!(b.bucket_pairs >= b.exact_count);
    }
}

#[test]
fn fractional_counts_within_envelope() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let k = [10u64, 100, 1000, 10_000][i % 4];
        let kf = k as f64;
        let alpha = rng.gen_range(2.0 / kf.sqrt()..=kf.sqrt());
        let beta = rng.gen_range(0.0..1.0);
        let delta = rng.gen_range(1e-3..0.5);
        let c = fractional_count(alpha, beta, k, delta).unwrap() as f64;
        let envelope = kf * delta + kf.sqrt() * kf.ln();
        worst = worst.max(c / envelope);
        assert!(c <= 3.0 * envelope, "K={k} α={alpha} β={beta} δ={delta}: {c}");
    }
    eprintln!("max count / (Kδ + K^(1/2) log K) = {worst:.4}");
}

#[test]
fn normalized_gap_stays_above_floor() {
    for limit in [50, 100, 200] {
        let g = min_nonzero_gap(limit, SignPattern::PlusPlusMinusMinus).unwrap();
        eprintln!("limit {limit}: gap {:e} witness {:?} normalized {}", g.gap, g.witness, g.normalized);
        assert!(g.gap > 0.0);
        assert!(g.normalized >= 0.03, "limit {limit}: {}", g.normalized);
        let direct = SignPattern::PlusPlusMinusMinus.abs_gap(g.witness);
        assert!((direct / g.gap - 1.0).abs() < 1e-6);
    }
}

#[test]
fn exact_counts_respect_lemma_bounds() {
    let budget = Budget::unlimited();
    let cases = [
        ([100.0; 4], 0.01, SignPattern::PlusPlusMinusMinus),
        ([100.0; 4], 0.01, SignPattern::PlusPlusPlusMinus),
        ([50.0, 80.0, 120.0, 100.0], 1e-3, SignPattern::PlusPlusMinusMinus),
        ([30.0, 60.0, 100.0, 100.0], 0.05, SignPattern::PlusPlusPlusMinus),
        ([200.0; 4], 200f64.powf(-1.5), SignPattern::PlusPlusMinusMinus),
    ];
    for (scales, delta, pattern) in cases {
        let inst = SpacingInstance::dyadic(scales, delta, pattern, true).unwrap();
        let c = count_solutions(&inst, &budget).unwrap();
        let b = c.bounds;
        assert!(b.lemma1.is_some() || b.lemma3.is_some() || b.lemma5.is_some() || b.lemma6.is_some());
        for bound in [b.lemma1, b.lemma3, b.lemma5, b.lemma6].into_iter().flatten() {
            assert!(c.count as f64 <= bound, "{scales:?} {delta}: {} > {bound}", c.count);
        }
    }
}
