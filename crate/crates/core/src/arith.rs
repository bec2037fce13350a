//! Sieved multiplicative-function tables and exact summatory functions.
//!
//! All integer-valued sums use checked 64-bit arithmetic; an overflow is an
//! [`Error::Overflow`], never a silent wraparound. Ranges are right-closed:
//! `Σ_{n≤x}` includes `n = x` when `x` is an integer.

use crate::error::{domain, invalid, Error, Result};

/// Exact integer square root, `⌊√n⌋`.
pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

/// Smallest `r` with `r² ≥ n`.
pub fn ceil_sqrt(n: u64) -> u64 {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Splits `n = a²·h` with `h` squarefree, by trial division.
///
/// Intended for occasional calls (tie classification); bulk work should use
/// [`DivisorTables::kernel`].
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    assert!(n >= 1, "squarefree_decompose(0)");
    let mut rest = n;
    let mut a = 1u64;
    let mut h = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            a *= p;
        }
        if e % 2 == 1 {
            h *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    h *= rest;
    (a, h)
}

/// Immutable tables of `d(n)`, `μ(n)` and the squarefree kernel `h` of
/// `n = a²h`, for `1 ≤ n ≤ limit`.
///
/// Memory is about 13 bytes per entry (`d`, kernel and smallest prime factor
/// as `u32`, `μ` as `i8`), so `limit = 10⁸` needs roughly 1.3 GB.
#[derive(Debug, Clone)]
pub struct DivisorTables {
    limit: usize,
    d: Vec<u32>,
    mu: Vec<i8>,
    kernel: Vec<u32>,
    spf: Vec<u32>,
}

impl DivisorTables {
    /// Linear smallest-prime-factor sieve; every other table is derived from
    /// `n = p·q` with `p = spf(n)`.
    pub fn build(limit: usize) -> Result<Self> {
        if limit == 0 {
            return invalid("table limit must be at least 1");
        }
        if limit > u32::MAX as usize {
            return invalid("table limit exceeds 32-bit entries");
        }
        let len = limit + 1;
        let mut spf = vec![0u32; len];
        let mut primes: Vec<u32> = Vec::new();
        for n in 2..len {
            if spf[n] == 0 {
                spf[n] = n as u32;
                primes.push(n as u32);
            }
            let sn = spf[n];
            for &p in &primes {
                let m = n * p as usize;
                if p > sn || m >= len {
                    break;
                }
                spf[m] = p;
            }
        }

        let mut d = vec![0u32; len];
        let mut mu = vec![0i8; len];
        let mut kernel = vec![0u32; len];
        // exponent of spf(n) in n, and n with that prime power removed
        let mut exp = vec![0u8; len];
        let mut rest = vec![0u32; len];
        d[1] = 1;
        mu[1] = 1;
        kernel[1] = 1;
        rest[1] = 1;
        for n in 2..len {
            let p = spf[n] as usize;
            let q = n / p;
            if q % p == 0 {
                exp[n] = exp[q] + 1;
                rest[n] = rest[q];
                mu[n] = 0;
            } else {
                exp[n] = 1;
                rest[n] = q as u32;
                mu[n] = -mu[q];
            }
            d[n] = d[rest[n] as usize] * (exp[n] as u32 + 1);
            let kq = kernel[q] as usize;
            kernel[n] = if kq % p == 0 {
                (kq / p) as u32
            } else {
                (kq * p) as u32
            };
        }
        Ok(DivisorTables {
            limit,
            d,
            mu,
            kernel,
            spf,
        })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    #[inline]
    pub fn d(&self, n: usize) -> u32 {
        self.d[n]
    }

    #[inline]
    pub fn mu(&self, n: usize) -> i8 {
        self.mu[n]
    }

    /// Squarefree `h` with `n = a²h`.
    #[inline]
    pub fn kernel(&self, n: usize) -> u32 {
        self.kernel[n]
    }

    /// `d(1..=limit)` as a slice (index 0 is `d(1)`).
    pub fn divisor_counts(&self) -> &[u32] {
        &self.d[1..]
    }

    pub fn mobius(&self) -> &[i8] {
        &self.mu[1..]
    }

    pub fn kernels(&self) -> &[u32] {
        &self.kernel[1..]
    }

    /// Prime factorisation `[(p, e)]` in increasing `p`.
    pub fn factorize(&self, mut n: usize) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n];
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
            n /= p as usize;
        }
        out
    }

    /// `(a, h)` with `n = a²h`, `h` squarefree.
    pub fn square_decompose(&self, n: usize) -> (u64, u64) {
        let h = self.kernel[n] as u64;
        let a = isqrt(n as u64 / h);
        (a, h)
    }
}

/// `D(x) = Σ_{n≤x} d(n)` by the hyperbola identity
/// `D(x) = 2Σ_{n≤√x}⌊x/n⌋ − ⌊√x⌋²`, in `O(√x)` operations.
pub fn divisor_summatory(x: u64) -> Result<u64> {
    if x == 0 {
        return invalid("divisor_summatory needs x >= 1");
    }
    let r = isqrt(x);
    let mut acc: u64 = 0;
    for n in 1..=r {
        acc = acc
            .checked_add(x / n)
            .ok_or(Error::Overflow("divisor_summatory"))?;
    }
    acc.checked_mul(2)
        .and_then(|v| v.checked_sub(r * r))
        .ok_or(Error::Overflow("divisor_summatory"))
}

/// `T_odd(N) = #{(a, b) : a, b odd, ab ≤ N} = Σ_{odd n≤N} d(n)`.
///
/// Hyperbola sweep restricted to odd values: each pair has `a ≤ √N` or
/// `b ≤ √N` (or both), so with `r = ⌊√N⌋` and `o(M) = ⌊(M+1)/2⌋` the number
/// of odd integers in `[1, M]`,
///
/// `T_odd(N) = 2·Σ_{a odd ≤ r} o(⌊N/a⌋) − o(r)²`
///
/// where the subtracted square removes the pairs with both coordinates odd
/// and `≤ r`, which the doubled sum counts twice.
pub fn odd_pair_count(n: u64) -> Result<u64> {
    let r = isqrt(n);
    let odd_upto = |m: u64| m.div_ceil(2);
    let mut acc: u64 = 0;
    let mut a = 1;
    while a <= r {
        acc = acc
            .checked_add(odd_upto(n / a))
            .ok_or(Error::Overflow("odd_pair_count"))?;
        a += 2;
    }
    let or = odd_upto(r);
    acc.checked_mul(2)
        .and_then(|v| v.checked_sub(or * or))
        .ok_or(Error::Overflow("odd_pair_count"))
}

/// `Σ_{n≤N} (−1)ⁿ d(n) = D(N) − 2·T_odd(N)`.
pub fn alternating_divisor_summatory(n: u64) -> Result<i64> {
    if n == 0 {
        return invalid("alternating_divisor_summatory needs N >= 1");
    }
    let total = divisor_summatory(n)?;
    let odd = odd_pair_count(n)?;
    let total = i64::try_from(total).map_err(|_| Error::Overflow("alternating sum"))?;
    let odd = i64::try_from(odd).map_err(|_| Error::Overflow("alternating sum"))?;
    odd.checked_mul(2)
        .and_then(|o| total.checked_sub(o))
        .ok_or(Error::Overflow("alternating_divisor_summatory"))
}

/// `#{(i, j) ∈ ℤ² : i² + j² ≤ m}` for an integer radius-squared `m`.
pub fn lattice_points_upto(m: u64) -> Result<u64> {
    let r = isqrt(m);
    let mut acc: u64 = 2 * r + 1;
    for i in 1..=r {
        let col = 2 * isqrt(m - i * i) + 1;
        acc = acc
            .checked_add(2 * col)
            .ok_or(Error::Overflow("lattice_points_in_disk"))?;
    }
    Ok(acc)
}

/// `#{(i, j) ∈ ℤ² : i² + j² ≤ x}`.
///
/// `i² + j²` is an integer, so the count at real `x` equals the count at
/// `⌊x⌋` and the column sweep runs entirely on exact integer square roots.
pub fn lattice_points_in_disk(x: f64) -> Result<u64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("lattice_points_in_disk needs finite x > 0, got {x}"));
    }
    if x >= 1.8e19 {
        return Err(Error::Overflow("lattice_points_in_disk"));
    }
    lattice_points_upto(x.floor() as u64)
}

/// `d(n)` for `n ∈ [lo, hi)` by enumerating divisor pairs `a·b = n`, `a ≤ b`.
///
/// Cost `O((hi − lo)·log hi + √hi)`; blocks are independent, so a long range
/// can be processed in parallel fixed-size segments.
pub fn divisor_counts_block(lo: u64, hi: u64) -> Vec<u32> {
    assert!(lo >= 1 && hi >= lo);
    let len = (hi - lo) as usize;
    let mut d = vec![0u32; len];
    if len == 0 {
        return d;
    }
    let top = isqrt(hi - 1);
    for a in 1..=top {
        let b_start = a.max(lo.div_ceil(a));
        let mut n = a * b_start;
        let mut b = b_start;
        while n < hi {
            d[(n - lo) as usize] += if b == a { 1 } else { 2 };
            n += a;
            b += 1;
        }
    }
    d
}

/// `r₂(n) = #{(i, j) : i² + j² = n}` for `n ∈ [lo, hi)`.
pub fn sum_of_two_squares_block(lo: u64, hi: u64) -> Vec<u32> {
    assert!(hi >= lo);
    let len = (hi - lo) as usize;
    let mut r = vec![0u32; len];
    if len == 0 {
        return r;
    }
    let mut i = 0u64;
    while i * i < hi {
        let base = i * i;
        let j_min = if lo > base { ceil_sqrt(lo - base) } else { 0 };
        let j_max = isqrt(hi - 1 - base);
        let wi = if i == 0 { 1 } else { 2 };
        for j in j_min..=j_max {
            let wj = if j == 0 { 1 } else { 2 };
            r[(base + j * j - lo) as usize] += wi * wj;
        }
        i += 1;
    }
    r
}

/// Even-index Bernoulli numbers `B_2, B_4, …, B_30`.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// `ζ(s)` for real `s > 1` by Euler–Maclaurin, with the magnitude of the
/// first omitted correction returned as the error bound.
pub fn zeta_real_with_bound(s: f64) -> Result<(f64, f64)> {
    if !(s > 1.0) || !s.is_finite() {
        return domain(format!("zeta_real needs finite s > 1, got {s}"));
    }
    let n_cut: u64 = 24;
    let nf = n_cut as f64;
    let mut head = 0.0;
    for n in (1..n_cut).rev() {
        head += (n as f64).powf(-s);
    }
    let n_pow = nf.powf(-s);
    let mut tail = nf * n_pow / (s - 1.0) + 0.5 * n_pow;
    // rising factorial s(s+1)…(s+2k−2) / (2k)!, times N^{−s−2k+1}
    let mut coef = s / nf * n_pow; // k = 1: s·N^{−s−1}
    let mut fact = 2.0; // (2k)!
    let mut bound = f64::INFINITY;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b / fact * coef;
        if term.abs() < 1e-18 * tail.abs() {
            bound = term.abs();
            break;
        }
        tail += term;
        let kk = (k + 1) as f64;
        coef *= (s + 2.0 * kk - 1.0) * (s + 2.0 * kk) / (nf * nf);
        fact *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
        bound = (BERNOULLI_EVEN.get(k + 1).copied().unwrap_or(0.0) / fact * coef).abs();
    }
    Ok((head + tail, bound))
}

/// `ζ(s)` for real `s > 1`; absolute error below `10⁻¹²`.
pub fn zeta_real(s: f64) -> Result<f64> {
    zeta_real_with_bound(s).map(|(v, _)| v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_divisors(n: u64) -> u32 {
        (1..=n).filter(|k| n % k == 0).count() as u32
    }

    fn trial_mobius(mut n: u64) -> i8 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }

    #[test]
    fn tables_limit_ten() {
        let t = DivisorTables::build(10).unwrap();
        assert_eq!(t.divisor_counts(), &[1, 2, 2, 3, 2, 4, 2, 4, 3, 4]);
        assert_eq!(t.mobius(), &[1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        assert_eq!(t.kernels(), &[1, 2, 3, 1, 5, 6, 7, 2, 1, 10]);
    }

    #[test]
    fn tables_limit_one_and_zero() {
        let t = DivisorTables::build(1).unwrap();
        assert_eq!(t.divisor_counts(), &[1]);
        assert_eq!(t.mobius(), &[1]);
        assert_eq!(t.kernels(), &[1]);
        assert!(matches!(
            DivisorTables::build(0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn tables_match_trial_division() {
        let t = DivisorTables::build(2000).unwrap();
        for n in 1..=2000u64 {
            assert_eq!(t.d(n as usize), trial_divisors(n), "d({n})");
            assert_eq!(t.mu(n as usize), trial_mobius(n), "mu({n})");
            let h = t.kernel(n as usize) as u64;
            let q = n / h;
            assert_eq!(n % h, 0);
            assert_eq!(isqrt(q) * isqrt(q), q, "n/kernel(n) square at {n}");
            assert_eq!(t.mu(h as usize) != 0, true);
            assert_eq!(t.mu(n as usize) != 0, h == n, "mu/kernel at {n}");
            assert_eq!(squarefree_decompose(n), t.square_decompose(n as usize));
        }
    }

    #[test]
    fn d_is_multiplicative_on_coprime_pairs() {
        let t = DivisorTables::build(5000).unwrap();
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        for m in 1..70 {
            for n in 1..70 {
                if gcd(m, n) == 1 {
                    assert_eq!(t.d(m * n), t.d(m) * t.d(n));
                }
            }
        }
    }

    #[test]
    fn factorize_roundtrip() {
        let t = DivisorTables::build(10_000).unwrap();
        assert_eq!(t.factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(t.factorize(1).is_empty());
    }

    #[test]
    fn divisor_summatory_examples() {
        assert_eq!(divisor_summatory(1).unwrap(), 1);
        assert_eq!(divisor_summatory(10).unwrap(), 27);
        assert_eq!(divisor_summatory(100).unwrap(), 482);
        assert!(divisor_summatory(0).is_err());
    }

    #[test]
    fn divisor_summatory_matches_prefix_sums() {
        let t = DivisorTables::build(20_000).unwrap();
        let mut acc = 0u64;
        for x in 1..=20_000u64 {
            acc += t.d(x as usize) as u64;
            assert_eq!(divisor_summatory(x).unwrap(), acc, "x={x}");
        }
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(alternating_divisor_summatory(1).unwrap(), -1);
        assert_eq!(alternating_divisor_summatory(4).unwrap(), 2);
        assert_eq!(alternating_divisor_summatory(8).unwrap(), 6);
        let t = DivisorTables::build(100).unwrap();
        let direct: i64 = (1..=100)
            .map(|n| if n % 2 == 0 { 1 } else { -1 } * t.d(n) as i64)
            .sum();
        assert_eq!(alternating_divisor_summatory(100).unwrap(), direct);
        assert_eq!(direct, 172);
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(lattice_points_in_disk(0.5).unwrap(), 1);
        assert_eq!(lattice_points_in_disk(2.0).unwrap(), 9);
        assert_eq!(lattice_points_in_disk(10.0).unwrap(), 37);
        assert_eq!(lattice_points_in_disk(9.999).unwrap(), 29);
        assert!(lattice_points_in_disk(0.0).is_err());
    }

    #[test]
    fn block_sieves_match_tables() {
        let t = DivisorTables::build(5000).unwrap();
        let blk = divisor_counts_block(1234, 4321);
        for (i, &v) in blk.iter().enumerate() {
            assert_eq!(v, t.d(1234 + i));
        }
        let r2 = sum_of_two_squares_block(0, 2000);
        let mut acc = 0u64;
        for (m, &v) in r2.iter().enumerate() {
            acc += v as u64;
            assert_eq!(acc, lattice_points_upto(m as u64).unwrap());
        }
        let r2b = sum_of_two_squares_block(777, 1500);
        assert_eq!(&r2b[..], &r2[777..1500]);
    }

    #[test]
    fn zeta_values() {
        let pi = std::f64::consts::PI;
        assert!((zeta_real(2.0).unwrap() * 6.0 / (pi * pi) - 1.0).abs() < 1e-12);
        assert!((zeta_real(1.5).unwrap() - 2.612_375_348_685_488).abs() < 1e-12);
        assert!((zeta_real(3.0).unwrap() - 1.202_056_903_159_594_2).abs() < 1e-12);
        assert!((zeta_real(4.0).unwrap() - pi.powi(4) / 90.0).abs() < 1e-12);
        assert!(zeta_real(1.0).is_err());
        assert!(zeta_real(0.5).is_err());
        let (_, bound) = zeta_real_with_bound(1.5).unwrap();
        assert!(bound < 1e-12);
    }

    proptest! {
        #[test]
        fn hyperbola_increments_are_divisor_counts(x in 2u64..2_000_000) {
            let step = divisor_summatory(x).unwrap() - divisor_summatory(x - 1).unwrap();
            prop_assert_eq!(step, trial_divisors_fast(x));
        }

        #[test]
        fn alternating_increment_sign(x in 2u64..2_000_000) {
            let step = alternating_divisor_summatory(x).unwrap()
                - alternating_divisor_summatory(x - 1).unwrap();
            let sign = if x % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(step, sign * trial_divisors_fast(x) as i64);
        }
    }

    fn trial_divisors_fast(n: u64) -> u64 {
        let mut c = 0;
        let mut k = 1;
        while k * k <= n {
            if n % k == 0 {
                c += if k * k == n { 1 } else { 2 };
            }
            k += 1;
        }
        c
    }
}
