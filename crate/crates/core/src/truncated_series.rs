//! Truncated Voronoi series for `Δ` and `Δ*`, and the splitting of the
//! fourth power of the series into diagonal, off-diagonal and mixed sums.

use std::collections::HashMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::DivisorTables;
use crate::constants::SurdForm;
use crate::error::{invalid, Result};
use crate::numeric::{CompensatedSum, DoubleDouble};

/// Largest cutoff accepted by [`quad_decomposition_terms`].
pub const QUAD_CUTOFF_MAX: u64 = 200;

/// Above this `n·x` the phase is reduced in double-double.
const EXTENDED_PHASE: f64 = 1e10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationSpec {
    pub n: u64,
    pub convention_scale: f64,
    /// Weights carry `(−1)ⁿ`.
    pub alternating: bool,
}

impl TruncationSpec {
    pub const SCALE: f64 = FRAC_1_SQRT_2 / PI;

    pub fn delta(n: u64) -> Result<Self> {
        Self::checked(n, false)
    }

    pub fn delta_star(n: u64) -> Result<Self> {
        Self::checked(n, true)
    }

    fn checked(n: u64, alternating: bool) -> Result<Self> {
        if n == 0 {
            return invalid("truncation cutoff must be at least 1");
        }
        Ok(TruncationSpec {
            n,
            convention_scale: Self::SCALE,
            alternating,
        })
    }

    /// `⌈x^{3/4}⌉`
    pub fn default_cutoff(x: f64) -> u64 {
        (x.max(1.0).powf(0.75).ceil() as u64).max(1)
    }
}

/// `fract(2√(n x))`, so that `4π√(n x) ≡ 2π·unit_phase (mod 2π)`.
pub fn unit_phase(n: u64, x: f64) -> f64 {
    let nx = n as f64 * x;
    if nx > EXTENDED_PHASE {
        extended_unit_phase(n, x)
    } else {
        let v = 2.0 * nx.sqrt();
        v - v.floor()
    }
}

fn extended_unit_phase(n: u64, x: f64) -> f64 {
    DoubleDouble::from_u64(n)
        .mul_f64(x)
        .sqrt()
        .mul_f64(2.0)
        .fract()
}

/// Precomputed weights `(±1)ⁿ d(n) n^{−3/4}` for repeated evaluation.
#[derive(Debug, Clone)]
pub struct VoronoiSeries {
    spec: TruncationSpec,
    weights: Vec<f64>,
}

impl VoronoiSeries {
    pub fn new(tables: &DivisorTables, spec: TruncationSpec) -> Result<Self> {
        if spec.n == 0 {
            return invalid("truncation cutoff must be at least 1");
        }
        if spec.n > tables.limit() as u64 {
            return invalid(format!(
                "cutoff {} exceeds divisor table limit {}",
                spec.n,
                tables.limit()
            ));
        }
        let weights = (1..=spec.n)
            .map(|n| {
                let w = tables.d(n as usize) as f64 * (n as f64).powf(-0.75);
                if spec.alternating && n % 2 == 1 {
                    -w
                } else {
                    w
                }
            })
            .collect();
        Ok(VoronoiSeries { spec, weights })
    }

    pub fn spec(&self) -> TruncationSpec {
        self.spec
    }

    /// `x^{1/4} Σ_{n≤N} w(n) cos(4π√(n x) − π/4)` without the prefactor.
    pub fn raw(&self, x: f64) -> Result<f64> {
        self.raw_truncated(x, self.spec.n)
    }

    /// As [`raw`](Self::raw) with a smaller cutoff `n ≤ N`.
    pub fn raw_truncated(&self, x: f64, n: u64) -> Result<f64> {
        if !(x >= 1.0) || !x.is_finite() {
            return invalid(format!("x must be finite and at least 1, got {x}"));
        }
        if n == 0 || n > self.spec.n {
            return invalid(format!("cutoff {n} outside 1..={}", self.spec.n));
        }
        let mut acc = CompensatedSum::new();
        for (i, &w) in self.weights[..n as usize].iter().enumerate() {
            acc.add(w * (TAU * unit_phase(i as u64 + 1, x) - PI / 4.0).cos());
        }
        Ok(x.powf(0.25) * acc.value())
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.spec.convention_scale * self.raw(x)?)
    }

    pub fn eval_truncated(&self, x: f64, n: u64) -> Result<f64> {
        Ok(self.spec.convention_scale * self.raw_truncated(x, n)?)
    }
}

pub fn voronoi_delta(tables: &DivisorTables, x: f64, n: u64) -> Result<f64> {
    VoronoiSeries::new(tables, TruncationSpec::delta(n)?)?.eval(x)
}

pub fn voronoi_delta_star(tables: &DivisorTables, x: f64, n: u64) -> Result<f64> {
    VoronoiSeries::new(tables, TruncationSpec::delta_star(n)?)?.eval(x)
}

/// `S₁..S₄` at one point; `s1 / x` is the diagonal coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadDecomposition {
    pub x: f64,
    pub y_cutoff: u64,
    /// `⅜x Σ g` over `√n + √m = √k + √l`
    pub s1: f64,
    /// `⅜x Σ g cos(4π(√n + √m − √k − √l)√x)` over the unequal quadruples
    pub s2: f64,
    /// `½x Σ g sin(4π(√n + √m + √k − √l)√x)`
    pub s3: f64,
    /// `−⅛x Σ g cos(4π(√n + √m + √k + √l)√x)`
    pub s4: f64,
}

impl QuadDecomposition {
    pub fn total(&self) -> f64 {
        self.s1 + self.s2 + self.s3 + self.s4
    }
}

/// Splits `ℛ(x)⁴` with `ℛ = x^{1/4} Σ_{n≤y} d(n) n^{−3/4} cos(4π√(n x) − π/4)`.
///
/// Pairs `(n, m)` are grouped by the exact value of `√n + √m`; the diagonal
/// sum is the sum of squared class weights, so no tolerance decides
/// equality.
pub fn quad_decomposition_terms(
    tables: &DivisorTables,
    x: f64,
    y_cutoff: u64,
) -> Result<QuadDecomposition> {
    if y_cutoff == 0 || y_cutoff > QUAD_CUTOFF_MAX {
        return invalid(format!(
            "y_cutoff must be in 1..={QUAD_CUTOFF_MAX}, got {y_cutoff}"
        ));
    }
    if y_cutoff > tables.limit() as u64 {
        return invalid("y_cutoff exceeds divisor table limit");
    }
    if !(x >= 1.0) || !x.is_finite() {
        return invalid(format!("x must be finite and at least 1, got {x}"));
    }
    let y = y_cutoff as usize;
    let amp: Vec<f64> = (1..=y)
        .map(|n| tables.d(n) as f64 * (n as f64).powf(-0.75))
        .collect();
    // S₁..S₄ are O(x) each and cancel down to ℛ⁴, so phases are kept exact
    // to double precision
    let phase: Vec<f64> = (1..=y as u64).map(|n| extended_unit_phase(n, x)).collect();
    let e = |p: f64| Complex64::from_polar(1.0, TAU * p);

    // B = Σ a_n e^{4πi√(n x)}
    let b: Complex64 = (0..y).map(|i| amp[i] * e(phase[i])).sum();

    // class key -> (weight, phase of √n + √m)
    let mut classes: HashMap<SurdForm, (f64, f64)> = HashMap::new();
    for n in 1..=y {
        for m in 1..=y {
            let key = SurdForm::from_sqrts_with(tables, &[n as u64, m as u64]);
            let w = amp[n - 1] * amp[m - 1];
            let p = phase[n - 1] + phase[m - 1];
            classes
                .entry(key)
                .and_modify(|c| c.0 += w)
                .or_insert((w, p - p.floor()));
        }
    }
    let mut keys: Vec<&SurdForm> = classes.keys().collect();
    keys.sort();
    let mut diag = CompensatedSum::new();
    let mut z = Complex64::new(0.0, 0.0);
    for k in keys {
        let (w, p) = classes[k];
        diag.add(w * w);
        z += w * e(p);
    }
    let diag = diag.value();
    let b2 = b * b;
    Ok(QuadDecomposition {
        x,
        y_cutoff,
        s1: 0.375 * x * diag,
        s2: 0.375 * x * (z.norm_sqr() - diag),
        s3: 0.5 * x * (b2 * b * b.conj()).im,
        s4: -0.125 * x * (b2 * b2).re,
    })
}
