//! Counting quadruples with `|√n₁ + √n₂ ± √n₃ − √n₄| < Δ`, plus the bound
//! formulas those counts are compared against.
//!
//! Counts come from a pair-sum sweep: the left pairs give `a = √n₁ + √n₂`,
//! the right pairs a value `b` with `a − b` equal to the signed sum, and the
//! sorted `b` list is searched for each `a`. Any candidate with
//! `|a − b| < 10⁻⁸` is re-decided exactly: equality via [`SurdForm`], and a
//! nonzero gap by double-double re-evaluation.

use serde::{Deserialize, Serialize};

use crate::constants::SurdForm;
use crate::error::{invalid, Result};
use crate::numeric::{Budget, DoubleDouble};

const TIE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignPattern {
    /// `√n₁ + √n₂ − √n₃ − √n₄`
    #[serde(rename = "++--")]
    PlusPlusMinusMinus,
    /// `√n₁ + √n₂ + √n₃ − √n₄`
    #[serde(rename = "+++-")]
    PlusPlusPlusMinus,
    /// `√n₁ + √n₂ + √n₃ + √n₄`
    #[serde(rename = "++++")]
    AllPlus,
}

impl SignPattern {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "++--" => Some(SignPattern::PlusPlusMinusMinus),
            "+++-" => Some(SignPattern::PlusPlusPlusMinus),
            "++++" => Some(SignPattern::AllPlus),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SignPattern::PlusPlusMinusMinus => "++--",
            SignPattern::PlusPlusPlusMinus => "+++-",
            SignPattern::AllPlus => "++++",
        }
    }

    /// Right-hand value `b(n₃, n₄)` with signed sum `a − b`.
    fn right_value(self, n3: u64, n4: u64) -> f64 {
        let (r3, r4) = ((n3 as f64).sqrt(), (n4 as f64).sqrt());
        match self {
            SignPattern::PlusPlusMinusMinus => r3 + r4,
            SignPattern::PlusPlusPlusMinus => r4 - r3,
            SignPattern::AllPlus => -r3 - r4,
        }
    }

    /// Signed sum in double-double.
    fn signed_sum_dd(self, q: [u64; 4]) -> DoubleDouble {
        let r = q.map(|n| DoubleDouble::from_u64(n).sqrt());
        let head = r[0].add(r[1]);
        match self {
            SignPattern::PlusPlusMinusMinus => head.sub(r[2]).sub(r[3]),
            SignPattern::PlusPlusPlusMinus => head.add(r[2]).sub(r[3]),
            SignPattern::AllPlus => head.add(r[2]).add(r[3]),
        }
    }

    /// Exact test of `signed sum = 0`.
    pub fn is_exact_zero(self, q: [u64; 4]) -> bool {
        match self {
            SignPattern::PlusPlusMinusMinus => {
                SurdForm::from_sqrts(&[q[0], q[1]]) == SurdForm::from_sqrts(&[q[2], q[3]])
            }
            SignPattern::PlusPlusPlusMinus => {
                SurdForm::from_sqrts(&[q[0], q[1], q[2]]) == SurdForm::from_sqrts(&[q[3]])
            }
            SignPattern::AllPlus => false,
        }
    }

    /// `|signed sum|`, exact zero detected, otherwise double-double accurate
    /// when small.
    pub fn abs_gap(self, q: [u64; 4]) -> f64 {
        let (a, b) = ((q[0] as f64).sqrt() + (q[1] as f64).sqrt(), self.right_value(q[2], q[3]));
        let v = a - b;
        if v.abs() >= TIE {
            return v.abs();
        }
        if self.is_exact_zero(q) {
            0.0
        } else {
            self.signed_sum_dd(q).to_f64().abs()
        }
    }
}

/// Inclusive integer range `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: u64,
    pub hi: u64,
}

impl IntRange {
    /// `n ∼ N`, i.e. `N < n ≤ 2N`.
    pub fn dyadic(n: f64) -> Self {
        IntRange {
            lo: n.floor() as u64 + 1,
            hi: (2.0 * n).floor() as u64,
        }
    }

    pub fn len(&self) -> u64 {
        if self.hi >= self.lo {
            self.hi - self.lo + 1
        } else {
            0
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeMode {
    Dyadic,
    Box,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingInstance {
    pub mode: RangeMode,
    /// Dyadic scales `N_j` (for box mode, the upper ends).
    pub scales: [f64; 4],
    pub ranges: [IntRange; 4],
    pub delta: f64,
    pub pattern: SignPattern,
    pub exclude_zero: bool,
}

impl SpacingInstance {
    pub fn dyadic(
        scales: [f64; 4],
        delta: f64,
        pattern: SignPattern,
        exclude_zero: bool,
    ) -> Result<Self> {
        if scales.iter().any(|&n| !(n >= 1.0) || !n.is_finite()) {
            return invalid("dyadic scales must be finite and at least 1");
        }
        Self::validated(SpacingInstance {
            mode: RangeMode::Dyadic,
            scales,
            ranges: scales.map(IntRange::dyadic),
            delta,
            pattern,
            exclude_zero,
        })
    }

    pub fn boxed(
        ranges: [IntRange; 4],
        delta: f64,
        pattern: SignPattern,
        exclude_zero: bool,
    ) -> Result<Self> {
        if ranges.iter().any(|r| r.lo == 0 || r.is_empty()) {
            return invalid("box ranges must be nonempty with lo >= 1");
        }
        Self::validated(SpacingInstance {
            mode: RangeMode::Box,
            scales: ranges.map(|r| r.hi as f64),
            ranges,
            delta,
            pattern,
            exclude_zero,
        })
    }

    fn validated(self) -> Result<Self> {
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return invalid(format!("delta must be positive, got {}", self.delta));
        }
        Ok(self)
    }

    /// Sorted left values `a = √n₁ + √n₂` and right values `b` with pair
    /// labels.
    fn sides(&self) -> (Vec<(f64, u64, u64)>, Vec<(f64, u64, u64)>) {
        let [r1, r2, r3, r4] = self.ranges;
        let mut a: Vec<(f64, u64, u64)> = Vec::with_capacity((r1.len() * r2.len()) as usize);
        for n1 in r1.iter() {
            for n2 in r2.iter() {
                a.push(((n1 as f64).sqrt() + (n2 as f64).sqrt(), n1, n2));
            }
        }
        let mut b: Vec<(f64, u64, u64)> = Vec::with_capacity((r3.len() * r4.len()) as usize);
        for n3 in r3.iter() {
            for n4 in r4.iter() {
                b.push((self.pattern.right_value(n3, n4), n3, n4));
            }
        }
        a.sort_by(|x, y| x.0.total_cmp(&y.0));
        b.sort_by(|x, y| x.0.total_cmp(&y.0));
        (a, b)
    }

    fn sweep_work(&self) -> f64 {
        let [r1, r2, r3, r4] = self.ranges;
        let p = (r1.len() * r2.len()) as f64;
        let q = (r3.len() * r4.len()) as f64;
        (p + q) * (p + q).max(2.0).log2()
    }
}

/// Result of a counting run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingCount {
    pub instance: SpacingInstance,
    pub count: u64,
    /// Quadruples with an exactly vanishing signed sum.
    pub zero_count: u64,
    pub bounds: LemmaBounds,
}

/// First index with `v[i].0 >= x` (or `> x` when `strict`).
fn lower_bound(v: &[(f64, u64, u64)], x: f64, strict: bool) -> usize {
    v.partition_point(|e| if strict { e.0 <= x } else { e.0 < x })
}

/// Exact count of ordered quadruples with `|signed sum| < Δ`, dropping the
/// exact zeros when `exclude_zero` is set.
pub fn count_solutions(instance: &SpacingInstance, budget: &Budget) -> Result<SpacingCount> {
    budget.check(instance.sweep_work(), "count_solutions")?;
    let (a, b) = instance.sides();
    let delta = instance.delta;
    let pattern = instance.pattern;
    let mut count = 0u64;
    let mut zeros = 0u64;
    for &(av, n1, n2) in &a {
        // Elements in the tie zone [a − TIE, a + TIE] are decided one by one.
        let t_lo = lower_bound(&b, av - TIE, false);
        let t_hi = lower_bound(&b, av + TIE, true);
        if delta > TIE {
            let w_lo = lower_bound(&b, av - delta, true);
            let w_hi = lower_bound(&b, av + delta, false);
            count += (w_hi - w_lo - (t_hi - t_lo)) as u64;
        }
        for &(_, n3, n4) in &b[t_lo..t_hi] {
            let q = [n1, n2, n3, n4];
            if pattern.is_exact_zero(q) {
                zeros += 1;
                if !instance.exclude_zero {
                    count += 1;
                }
            } else if pattern.signed_sum_dd(q).to_f64().abs() < delta {
                count += 1;
            }
        }
    }
    Ok(SpacingCount {
        instance: instance.clone(),
        count,
        zero_count: zeros,
        bounds: lemma_bounds(instance),
    })
}

/// Smallest nonzero `|signed sum|` over `[1, limit]⁴`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub gap: f64,
    pub witness: [u64; 4],
    /// `gap · max(witness)^{7/2}`
    pub normalized: f64,
}

pub fn min_nonzero_gap(limit: u64, pattern: SignPattern) -> Result<GapReport> {
    if limit == 0 || limit > 400 {
        return invalid(format!("min_nonzero_gap limit must be in 1..=400, got {limit}"));
    }
    let report = |gap: f64, w: [u64; 4]| {
        let mx = *w.iter().max().unwrap() as f64;
        GapReport {
            gap,
            witness: w,
            normalized: gap * mx.powf(3.5),
        }
    };
    if pattern == SignPattern::AllPlus {
        return Ok(report(4.0, [1, 1, 1, 1]));
    }
    // Unordered left pairs suffice: the sum is symmetric in (n₁, n₂).
    let mut left: Vec<(f64, u64, u64)> = Vec::new();
    for n1 in 1..=limit {
        for n2 in n1..=limit {
            left.push(((n1 as f64).sqrt() + (n2 as f64).sqrt(), n1, n2));
        }
    }
    left.sort_by(|x, y| x.0.total_cmp(&y.0));
    let right: Vec<(f64, u64, u64)> = match pattern {
        SignPattern::PlusPlusMinusMinus => left.clone(),
        _ => {
            let mut r = Vec::with_capacity((limit * limit) as usize);
            for n3 in 1..=limit {
                for n4 in 1..=limit {
                    r.push((pattern.right_value(n3, n4), n3, n4));
                }
            }
            r.sort_by(|x, y| x.0.total_cmp(&y.0));
            r
        }
    };

    let mut best = f64::INFINITY;
    let mut witness = [0u64; 4];
    let consider = |q: [u64; 4], approx: f64, best: &mut f64, witness: &mut [u64; 4]| {
        if approx > *best + TIE {
            return;
        }
        let g = pattern.abs_gap(q);
        if g > 0.0 && g < *best {
            *best = g;
            *witness = q;
        }
    };
    for &(av, n1, n2) in &left {
        let start = lower_bound(&right, av, false);
        // scan upward
        for &(bv, n3, n4) in &right[start..] {
            if bv - av > best + TIE {
                break;
            }
            consider([n1, n2, n3, n4], bv - av, &mut best, &mut witness);
        }
        // scan downward
        for &(bv, n3, n4) in right[..start].iter().rev() {
            if av - bv > best + TIE {
                break;
            }
            consider([n1, n2, n3, n4], av - bv, &mut best, &mut witness);
        }
    }
    Ok(report(best, witness))
}

/// Exact near-pair count and the Cauchy–Schwarz bucket bound
/// `3(Σ N_j(A)²)^{1/2}(Σ N_j(B)²)^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BucketBound {
    /// `#{(r, s) : |a_r − b_s| ≤ Δ}`
    pub exact_count: u64,
    /// Same-bucket plus adjacent-bucket pair count.
    pub bucket_pairs: u64,
    pub bound: f64,
}

/// Buckets `I_j = (u₀ + jΔ, u₀ + (j+1)Δ]` from `u₀ = min(A ∪ B)`; the
/// minimum itself is put in `I_0`.
pub fn bucket_bound_sequences(a: &[f64], b: &[f64], delta: f64) -> Result<BucketBound> {
    if !(delta > 0.0) {
        return invalid("bucket width must be positive");
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.total_cmp(y));
    sb.sort_by(|x, y| x.total_cmp(y));
    let u0 = sa
        .first()
        .copied()
        .unwrap_or(f64::INFINITY)
        .min(sb.first().copied().unwrap_or(f64::INFINITY));
    if !u0.is_finite() {
        return Ok(BucketBound {
            exact_count: 0,
            bucket_pairs: 0,
            bound: 0.0,
        });
    }
    let bucket = |v: f64| (((v - u0) / delta).ceil() as i64 - 1).max(0);
    let histogram = |s: &[f64]| {
        let mut h: Vec<(i64, u64)> = Vec::new();
        for &v in s {
            let j = bucket(v);
            match h.last_mut() {
                Some((k, c)) if *k == j => *c += 1,
                _ => h.push((j, 1)),
            }
        }
        h
    };
    let ha = histogram(&sa);
    let hb = histogram(&sb);
    let sq = |h: &[(i64, u64)]| h.iter().map(|&(_, c)| (c * c) as f64).sum::<f64>();
    let bound = 3.0 * sq(&ha).sqrt() * sq(&hb).sqrt();

    let lookup = |h: &[(i64, u64)], j: i64| match h.binary_search_by_key(&j, |e| e.0) {
        Ok(i) => h[i].1,
        Err(_) => 0,
    };
    let mut bucket_pairs = 0u64;
    for &(j, c) in &ha {
        bucket_pairs += c * (lookup(&hb, j) + lookup(&hb, j + 1) + lookup(&hb, j - 1));
    }

    let mut exact = 0u64;
    let (mut lo, mut hi) = (0usize, 0usize);
    for &x in &sa {
        while lo < sb.len() && sb[lo] < x - delta {
            lo += 1;
        }
        while hi < sb.len() && sb[hi] <= x + delta {
            hi += 1;
        }
        exact += (hi.max(lo) - lo) as u64;
    }
    Ok(BucketBound {
        exact_count: exact,
        bucket_pairs,
        bound,
    })
}

/// [`bucket_bound_sequences`] on the pair sums of an instance.
pub fn bucket_bound(instance: &SpacingInstance, budget: &Budget) -> Result<BucketBound> {
    budget.check(instance.sweep_work(), "bucket_bound")?;
    let (a, b) = instance.sides();
    let a: Vec<f64> = a.into_iter().map(|e| e.0).collect();
    let b: Vec<f64> = b.into_iter().map(|e| e.0).collect();
    bucket_bound_sequences(&a, &b, instance.delta)
}

/// `#{k ∈ (K, 2K] : ‖β + α√k‖ < δ}` by direct scan.
pub fn fractional_count(alpha: f64, beta: f64, k: u64, delta: f64) -> Result<u64> {
    if !(delta > 0.0 && delta < 0.5) {
        return invalid(format!("delta must lie in (0, 1/2), got {delta}"));
    }
    if k == 0 {
        return invalid("K must be at least 1");
    }
    let mut c = 0;
    for j in k + 1..=2 * k {
        let v = beta + alpha * (j as f64).sqrt();
        if (v - v.round()).abs() < delta {
            c += 1;
        }
    }
    Ok(c)
}

/// Bound formulas evaluated with every `N^ε` replaced by `log²(max N_j)` and
/// implied constants set to 1. `None` marks a bound whose hypotheses the
/// instance does not meet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaBounds {
    pub lemma1: Option<f64>,
    pub lemma3: Option<f64>,
    pub lemma5: Option<f64>,
    pub lemma6: Option<f64>,
}

/// Ratio window used for `≍` in the hypotheses.
const COMPARABLE: f64 = 4.0;

fn comparable(x: f64, y: f64) -> bool {
    x <= COMPARABLE * y && y <= COMPARABLE * x
}

pub fn lemma_bounds(instance: &SpacingInstance) -> LemmaBounds {
    let none = LemmaBounds {
        lemma1: None,
        lemma3: None,
        lemma5: None,
        lemma6: None,
    };
    if instance.mode != RangeMode::Dyadic {
        return none;
    }
    let [n1, n2, n3, n4] = instance.scales;
    let delta = instance.delta;
    let top = n1.max(n2).max(n3).max(n4);
    let log2 = top.ln().max(1.0).powi(2);
    let pattern = instance.pattern;

    let lemma1 = (pattern == SignPattern::PlusPlusMinusMinus
        && n1 == n2
        && n2 == n3
        && n3 == n4
        && n1 >= 2.0)
        .then(|| (delta * n1.powf(3.5) + n1 * n1) * log2);

    let lemma3 = (pattern != SignPattern::AllPlus && instance.scales.iter().all(|&n| n >= 2.0))
        .then(|| {
            instance
                .scales
                .iter()
                .map(|&n| delta.powf(0.25) * n.powf(0.875) + n.sqrt())
                .product::<f64>()
                * log2
        });

    // n ∼ N, m ∼ M, k ∼ K, l ∼ L
    let (n, m, k, l) = (n1, n2, n3, n4);
    let lemma5 = (pattern == SignPattern::PlusPlusMinusMinus
        && instance.exclude_zero
        && 1.0 <= n
        && n <= m
        && 1.0 <= l
        && l <= k
        && n <= l
        && comparable(m, k)
        && delta <= k.sqrt())
    .then(|| (delta * k.sqrt() * n * m * l + n * l * k.sqrt()) * log2);

    let lemma6 = (pattern == SignPattern::PlusPlusPlusMinus
        && 1.0 <= n
        && n <= m
        && m <= k
        && comparable(k, l)
        && delta <= l.sqrt())
    .then(|| (delta * l.sqrt() * n * m * k + n * m * k.sqrt()) * log2);

    LemmaBounds {
        lemma1,
        lemma3,
        lemma5,
        lemma6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dyadic10(delta: f64, exclude_zero: bool) -> SpacingInstance {
        SpacingInstance::dyadic(
            [10.0; 4],
            delta,
            SignPattern::PlusPlusMinusMinus,
            exclude_zero,
        )
        .unwrap()
    }

    #[test]
    fn dyadic_block_counts() {
        let b = Budget::unlimited();
        let c = count_solutions(&dyadic10(1e-9, false), &b).unwrap();
        assert_eq!(c.count, 190);
        assert_eq!(c.zero_count, 190);
        let c = count_solutions(&dyadic10(1e-9, true), &b).unwrap();
        assert_eq!(c.count, 0);
    }

    #[test]
    fn full_box_equalities() {
        let r = IntRange { lo: 1, hi: 20 };
        let inst =
            SpacingInstance::boxed([r; 4], 1e-9, SignPattern::PlusPlusMinusMinus, false).unwrap();
        let c = count_solutions(&inst, &Budget::unlimited()).unwrap();
        assert_eq!(c.count, 800);
        assert_eq!(c.bounds.lemma1, None);
    }

    #[test]
    fn budget_is_enforced() {
        let inst = dyadic10(0.1, false);
        assert!(matches!(
            count_solutions(&inst, &Budget::new(10.0)),
            Err(crate::Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn min_gap_examples() {
        let g = min_nonzero_gap(5, SignPattern::PlusPlusMinusMinus).unwrap();
        assert!((g.gap - (4.0 - 3f64.sqrt() - 5f64.sqrt())).abs() < 1e-15);
        assert!((g.gap - 0.031_881_2).abs() < 1e-7);
        assert_eq!(g.witness, [3, 5, 4, 4]);
        let g = min_nonzero_gap(2, SignPattern::PlusPlusMinusMinus).unwrap();
        assert!((g.gap - 0.414_213_6).abs() < 1e-7);
        assert!(min_nonzero_gap(401, SignPattern::PlusPlusMinusMinus).is_err());
        assert_eq!(min_nonzero_gap(9, SignPattern::AllPlus).unwrap().gap, 4.0);
    }

    #[test]
    fn bucket_degenerate_cases() {
        let bb = bucket_bound_sequences(&[1.5], &[1.5], 0.3).unwrap();
        assert_eq!(bb.exact_count, 1);
        assert_eq!(bb.bound, 3.0);
        let a = [1.0, 1.1, 1.2];
        let b = [1.05, 1.15];
        let bb = bucket_bound_sequences(&a, &b, 10.0).unwrap();
        assert_eq!(bb.exact_count, 6);
        assert!(bb.bound >= 6.0);
    }

    #[test]
    fn bucket_bound_on_dyadic_instance() {
        let bb = bucket_bound(&dyadic10(0.05, false), &Budget::unlimited()).unwrap();
        assert!(bb.bound >= bb.exact_count as f64);
        assert!(bb.bucket_pairs >= bb.exact_count);
    }

    #[test]
    fn fractional_count_examples() {
        assert_eq!(fractional_count(1.0, 0.0, 4, 0.25).unwrap(), 2);
        assert_eq!(fractional_count(1.0, 0.0, 4, 0.15).unwrap(), 0);
        assert_eq!(fractional_count(0.0, 0.0, 17, 0.1).unwrap(), 17);
        assert!(fractional_count(1.0, 0.0, 4, 0.5).is_err());
        assert!(fractional_count(1.0, 0.0, 4, 0.0).is_err());
    }

    #[test]
    fn lemma_bound_shapes() {
        let n: f64 = 64.0;
        let inst =
            SpacingInstance::dyadic([n; 4], 1e-30, SignPattern::PlusPlusMinusMinus, false).unwrap();
        let b = lemma_bounds(&inst);
        let log2 = n.ln().powi(2);
        assert!((b.lemma1.unwrap() / (n * n * log2) - 1.0).abs() < 1e-12);
        // crossover Δ = N^{-3/2}: both terms of each lemma-3 factor equal √N
        let inst = SpacingInstance::dyadic(
            [n; 4],
            n.powf(-1.5),
            SignPattern::PlusPlusMinusMinus,
            false,
        )
        .unwrap();
        let b = lemma_bounds(&inst);
        let expected = (2.0 * n.sqrt()).powi(4) * log2;
        assert!((b.lemma3.unwrap() / expected - 1.0).abs() < 1e-12);
        assert_eq!(b.lemma5, None, "lemma 5 needs exclude_zero");
        assert_eq!(b.lemma6, None);
    }

    #[test]
    fn gap_classification() {
        let p = SignPattern::PlusPlusMinusMinus;
        assert_eq!(p.abs_gap([2, 18, 8, 8]), 0.0);
        assert!(p.abs_gap([3, 5, 4, 4]) > 0.0);
        let p3 = SignPattern::PlusPlusPlusMinus;
        assert!(p3.is_exact_zero([1, 1, 1, 9]));
        assert!(!p3.is_exact_zero([1, 1, 2, 9]));
    }
}
