//! Small numeric building blocks shared by the kernels: compensated
//! summation, double-double arithmetic, Gauss–Legendre rules, work budgets
//! and deterministic chunked parallel maps.

use rayon::prelude::*;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// Exact conversion for integers below 2^106.
    pub fn from_u64(n: u64) -> Self {
        let hi = n as f64;
        // `hi` rounds n; the remainder is exactly representable.
        let lo = (n as i128 - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }

    pub fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    pub fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        self.mul(DoubleDouble::from_f64(b))
    }

    /// Square root by one Newton correction of the double estimate.
    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return DoubleDouble::ZERO;
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = ((self.hi - p) - e + self.lo) / (2.0 * x);
        let (hi, lo) = quick_two_sum(x, r);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Fractional part in [0, 1), computed without losing the low word.
    pub fn fract(self) -> f64 {
        let f = self.hi.floor();
        let r = DoubleDouble {
            hi: self.hi - f,
            lo: self.lo,
        };
        let v = r.hi + r.lo;
        v - v.floor()
    }
}

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on P_n from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, z);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Cached rule for the orders used throughout the crate.
    pub fn cached(n: usize) -> &'static GaussLegendre {
        static R4: OnceLock<GaussLegendre> = OnceLock::new();
        static R8: OnceLock<GaussLegendre> = OnceLock::new();
        static R16: OnceLock<GaussLegendre> = OnceLock::new();
        match n {
            4 => R4.get_or_init(|| GaussLegendre::new(4)),
            8 => R8.get_or_init(|| GaussLegendre::new(8)),
            16 => R16.get_or_init(|| GaussLegendre::new(16)),
            _ => panic!("no cached Gauss-Legendre rule of order {n}"),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes mapped to [a, b] paired with scaled weights.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, d)
}

/// Upper bound on abstract work units a call may consume.
///
/// One unit is roughly one transcendental evaluation or inner-loop step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub max_work: f64,
}

impl Budget {
    /// Work units per second assumed when converting wall-clock budgets.
    pub const UNITS_PER_SECOND: f64 = 5.0e7;

    pub fn new(max_work: f64) -> Self {
        Budget { max_work }
    }

    pub fn unlimited() -> Self {
        Budget {
            max_work: f64::INFINITY,
        }
    }

    pub fn from_seconds(seconds: f64) -> Self {
        Budget {
            max_work: seconds * Self::UNITS_PER_SECOND,
        }
    }

    pub fn check(&self, work: f64, what: &str) -> Result<()> {
        if work > self.max_work {
            Err(Error::ResourceLimit(format!(
                "{what}: estimated work {work:.3e} exceeds budget {:.3e}",
                self.max_work
            )))
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        // About ten minutes at the nominal rate.
        Budget::from_seconds(600.0)
    }
}

/// Maps `f` over `0..chunks` in parallel and returns results in index order.
///
/// Chunk boundaries are chosen by the caller, so the result does not depend
/// on the number of worker threads in the ambient rayon pool.
pub fn ordered_chunk_map<T, F>(chunks: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..chunks).into_par_iter().map(f).collect()
}

/// Runs `op` on a dedicated pool with `workers` threads.
pub fn with_workers<R: Send>(workers: usize, op: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to build worker pool");
    pool.install(op)
}
