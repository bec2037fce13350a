//! `|ζ(½ + it)|²`, the mean-square error term `E(t)` by quadrature, and
//! Atkinson's two-sum expansion of `E(t)`.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{DivisorTables, BERNOULLI_EVEN};
use crate::error::{invalid, Error, Result};
use crate::error_terms::EulerGamma;
use crate::numeric::{ordered_chunk_map, Budget, CompensatedSum, GaussLegendre};

/// Riemann–Siegel is used from here up; Euler–Maclaurin below.
pub const RIEMANN_SIEGEL_FROM: f64 = 30.0;

/// Default quadrature panel width for [`e_exact`].
pub const DEFAULT_PANEL_WIDTH: f64 = 0.25;

/// Riemann–Siegel theta function, Stirling series.
pub fn theta(t: f64) -> f64 {
    let t2 = t * t;
    t / 2.0 * (t / TAU).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t * t2 * t2)
}

/// `ζ(s)` by Euler–Maclaurin summation; intended for `|Im s| ≲ 10³`.
pub fn zeta_euler_maclaurin(s: Complex64) -> Complex64 {
    let n = (s.im.abs() / 2.0).ceil() as u64 + 20;
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_s = (-s * nf.ln()).exp();
    sum += n_s * nf / (s - 1.0) + 0.5 * n_s;
    // Σ B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let mut rising = s;
    let mut power = n_s / nf;
    let mut fact = 2.0;
    for (j, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = rising * power * (b / fact);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
        let k = 2.0 * j as f64 + 2.0;
        rising *= (s + k - 1.0) * (s + k);
        power /= nf * nf;
        fact *= (k + 1.0) * (k + 2.0);
    }
    sum
}

/// `|ζ(½ + it)|²` by Euler–Maclaurin.
pub fn zeta_sq_euler_maclaurin(t: f64) -> f64 {
    zeta_euler_maclaurin(Complex64::new(0.5, t)).norm_sqr()
}

/// Taylor data of `Ψ(p) = cos(2π(p² − p − 1/16)) / cos(2πp)`.
fn psi(p: Complex64) -> Complex64 {
    (TAU * (p * p - p - 1.0 / 16.0)).cos() / (TAU * p).cos()
}

const CAUCHY_POINTS: usize = 256;
const CAUCHY_RADIUS: f64 = 1.0;
const TAYLOR_TERMS: usize = 90;

/// Taylor coefficients of `w ↦ Ψ⁽ᵏ⁾(½ + w)` for `k = 0..=9`, by the
/// trapezoid rule on a circle.
fn psi_taylor() -> &'static [Vec<f64>] {
    static COEFFS: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let points: Vec<(Complex64, Complex64)> = (0..CAUCHY_POINTS)
            .map(|j| {
                let u = Complex64::from_polar(1.0, TAU * (j as f64 + 0.5) / CAUCHY_POINTS as f64);
                (u, psi(Complex64::new(0.5, 0.0) + CAUCHY_RADIUS * u))
            })
            .collect();
        let base: Vec<f64> = (0..TAYLOR_TERMS)
            .map(|j| {
                let acc: Complex64 = points.iter().map(|&(u, v)| v * u.powi(-(j as i32))).sum();
                acc.re / CAUCHY_POINTS as f64 / CAUCHY_RADIUS.powi(j as i32)
            })
            .collect();
        // derivative k: coefficient of w^{j−k} is j!/(j−k)! a_j
        (0..10)
            .map(|k| {
                (k..TAYLOR_TERMS)
                    .map(|j| ((j - k + 1)..=j).map(|i| i as f64).product::<f64>() * base[j])
                    .collect()
            })
            .collect()
    })
}

/// `Ψ⁽ᵏ⁾(p)` for `k = 0..=9`, `0 ≤ p ≤ 1`.
fn psi_derivatives(p: f64) -> [f64; 10] {
    let w = p - 0.5;
    let mut out = [0.0; 10];
    for (o, coeffs) in out.iter_mut().zip(psi_taylor()) {
        *o = coeffs.iter().rev().fold(0.0, |acc, &c| acc * w + c);
    }
    out
}

/// Hardy's `Z(t)` by the Riemann–Siegel formula with corrections `C₀..C₃`.
pub fn riemann_siegel_z(t: f64) -> f64 {
    let a = (t / TAU).sqrt();
    let n = a.floor() as u64;
    let p = a - n as f64;
    let th = theta(t);
    let mut main = CompensatedSum::new();
    for k in 1..=n {
        let kf = k as f64;
        main.add((th - t * kf.ln()).cos() / kf.sqrt());
    }
    let d = psi_derivatives(p);
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let pi6 = pi4 * pi2;
    let c0 = d[0];
    let c1 = -d[3] / (96.0 * pi2);
    let c2 = d[2] / (64.0 * pi2) + d[6] / (18432.0 * pi4);
    let c3 = -d[1] / (64.0 * pi2) - d[5] / (3840.0 * pi4) - d[9] / (5_308_416.0 * pi6);
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let r = sign * a.powf(-0.5) * (c0 + (c1 + (c2 + c3 / a) / a) / a);
    2.0 * main.value() + r
}

/// `|ζ(½ + it)|²` for `t ≥ 0`.
pub fn zeta_sq_half_line(t: f64) -> f64 {
    let t = t.abs();
    if t >= RIEMANN_SIEGEL_FROM {
        riemann_siegel_z(t).powi(2)
    } else {
        zeta_sq_euler_maclaurin(t)
    }
}

/// `t log(t/2π) + (2γ − 1)t`
pub fn e_main_term(t: f64) -> f64 {
    t * (t / TAU).ln() + EulerGamma::validated().two_gamma_minus_one * t
}

fn integrand_cost(t: f64) -> f64 {
    (t / TAU).sqrt() + 30.0
}

const PANELS_PER_CHUNK: usize = 256;

/// `∫₀ᵗ |ζ(½ + iu)|² du`, panels of width at most `panel_width`, 16-point
/// Gauss–Legendre per panel.
pub fn zeta_sq_integral(t: f64, panel_width: f64, budget: &Budget) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return invalid(format!("t must be finite and nonnegative, got {t}"));
    }
    if !(panel_width > 0.0 && panel_width <= 0.5) {
        return invalid(format!("panel_width must lie in (0, 0.5], got {panel_width}"));
    }
    let panels = (t / panel_width).ceil().max(1.0) as usize;
    budget.check(panels as f64 * 16.0 * integrand_cost(t), "zeta_sq_integral")?;
    let w = t / panels as f64;
    let gl = GaussLegendre::cached(16);
    let chunks = panels.div_ceil(PANELS_PER_CHUNK);
    let parts = ordered_chunk_map(chunks, |c| {
        let mut acc = CompensatedSum::new();
        for i in c * PANELS_PER_CHUNK..((c + 1) * PANELS_PER_CHUNK).min(panels) {
            let a = i as f64 * w;
            acc.add(gl.integrate(a, a + w, zeta_sq_half_line));
        }
        acc.value()
    });
    Ok(parts.into_iter().collect::<CompensatedSum>().value())
}

/// `E(t) = ∫₀ᵗ |ζ(½ + iu)|² du − t log(t/2π) − (2γ − 1)t`.
pub fn e_exact(t: f64, panel_width: f64, budget: &Budget) -> Result<f64> {
    if !(t >= 2.0) {
        return invalid(format!("E(t) requires t >= 2, got {t}"));
    }
    Ok(zeta_sq_integral(t, panel_width, budget)? - e_main_term(t))
}

/// `E(t)` with the change observed on halving the panel width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EEstimate {
    pub t: f64,
    pub value: f64,
    pub halving_change: f64,
}

pub fn e_exact_checked(t: f64, panel_width: f64, budget: &Budget) -> Result<EEstimate> {
    let coarse = e_exact(t, panel_width, budget)?;
    let fine = e_exact(t, panel_width / 2.0, budget)?;
    Ok(EEstimate {
        t,
        value: fine,
        halving_change: (fine - coarse).abs(),
    })
}

/// Cumulative `∫₀ |ζ|²` on a uniform grid, for evaluating `E` at many
/// points below a fixed horizon.
#[derive(Debug, Clone)]
pub struct ZetaSqIntegralTable {
    width: f64,
    cumulative: Vec<f64>,
}

impl ZetaSqIntegralTable {
    pub fn build(horizon: f64, panel_width: f64, budget: &Budget) -> Result<Self> {
        if !(horizon > 0.0) || !horizon.is_finite() {
            return invalid("horizon must be positive");
        }
        if !(panel_width > 0.0 && panel_width <= 0.5) {
            return invalid(format!("panel_width must lie in (0, 0.5], got {panel_width}"));
        }
        let panels = (horizon / panel_width).ceil() as usize;
        budget.check(panels as f64 * 16.0 * integrand_cost(horizon), "zeta_sq_table")?;
        let gl = GaussLegendre::cached(16);
        let chunks = panels.div_ceil(PANELS_PER_CHUNK);
        let parts = ordered_chunk_map(chunks, |c| {
            (c * PANELS_PER_CHUNK..((c + 1) * PANELS_PER_CHUNK).min(panels))
                .map(|i| {
                    let a = i as f64 * panel_width;
                    gl.integrate(a, a + panel_width, zeta_sq_half_line)
                })
                .collect::<Vec<f64>>()
        });
        let mut cumulative = Vec::with_capacity(panels + 1);
        let mut acc = CompensatedSum::new();
        cumulative.push(0.0);
        for v in parts.into_iter().flatten() {
            acc.add(v);
            cumulative.push(acc.value());
        }
        Ok(ZetaSqIntegralTable {
            width: panel_width,
            cumulative,
        })
    }

    pub fn horizon(&self) -> f64 {
        (self.cumulative.len() - 1) as f64 * self.width
    }

    pub fn integral(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) || t > self.horizon() * (1.0 + 1e-12) {
            return invalid(format!("t = {t} outside table range"));
        }
        let i = ((t / self.width).floor() as usize).min(self.cumulative.len() - 1);
        let a = i as f64 * self.width;
        let rest = if t > a {
            GaussLegendre::cached(16).integrate(a, t, zeta_sq_half_line)
        } else {
            0.0
        };
        Ok(self.cumulative[i] + rest)
    }

    pub fn e(&self, t: f64) -> Result<f64> {
        if !(t >= 2.0) {
            return invalid(format!("E(t) requires t >= 2, got {t}"));
        }
        Ok(self.integral(t)? - e_main_term(t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtkinsonParams {
    pub t: f64,
    pub n: u64,
    pub a: f64,
    pub a_prime: f64,
    pub n_prime: f64,
}

impl AtkinsonParams {
    pub fn new(t: f64, n: u64, a: f64, a_prime: f64) -> Result<Self> {
        if !(t >= 2.0) || !t.is_finite() {
            return invalid(format!("t must be at least 2, got {t}"));
        }
        if !(a > 0.0 && a < a_prime) {
            return invalid("ratios must satisfy 0 < A < A'");
        }
        let nf = n as f64;
        // tolerate rounding of N to an integer at the band edges
        if nf + 1.0 <= a * t || nf - 1.0 >= a_prime * t || n == 0 {
            return invalid(format!("N = {n} outside [{}, {}]", a * t, a_prime * t));
        }
        let n_prime = t / TAU + nf / 2.0 - (nf * nf / 4.0 + nf * t / TAU).sqrt();
        Ok(AtkinsonParams {
            t,
            n,
            a,
            a_prime,
            n_prime: n_prime.max(0.0),
        })
    }

    /// `A = 1`, `A′ = 2`.
    pub fn with_defaults(t: f64, n: u64) -> Result<Self> {
        Self::new(t, n, 1.0, 2.0)
    }
}

/// `arsinh z` without cancellation for small `z`.
pub fn arsinh(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        let z2 = z * z;
        z * (1.0 - z2 / 6.0 + 3.0 * z2 * z2 / 40.0)
    } else {
        (z + (1.0 + z * z).sqrt()).ln()
    }
}

/// `arsinh((πn/2t)^{1/2})`
pub fn atkinson_g(t: f64, n: u64) -> f64 {
    arsinh((PI * n as f64 / (2.0 * t)).sqrt())
}

/// `2t g + (2πnt + π²n²)^{1/2} − π/4`
pub fn atkinson_f(t: f64, n: u64) -> f64 {
    let nf = n as f64;
    2.0 * t * atkinson_g(t, n) + (TAU * nf * t + PI * PI * nf * nf).sqrt() - PI / 4.0
}

/// `∂f/∂t = 2g`
pub fn atkinson_f_prime(t: f64, n: u64) -> f64 {
    2.0 * atkinson_g(t, n)
}

/// `(−1)ⁿ d(n) n^{−1/2} (t/2πn + 1/4)^{−1/4} / g`
pub fn atkinson_h(t: f64, n: u64, d: u32) -> f64 {
    let nf = n as f64;
    let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
    sign * d as f64 / nf.sqrt() * (t / (TAU * nf) + 0.25).powf(-0.25) / atkinson_g(t, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtkinsonValue {
    pub sigma1: f64,
    pub sigma2: f64,
}

impl AtkinsonValue {
    pub fn total(&self) -> f64 {
        self.sigma1 + self.sigma2
    }
}

pub fn atkinson_components(tables: &DivisorTables, params: &AtkinsonParams) -> Result<AtkinsonValue> {
    if params.n > tables.limit() as u64 {
        return invalid(format!(
            "N = {} exceeds divisor table limit {}",
            params.n,
            tables.limit()
        ));
    }
    let t = params.t;
    let mut s1 = CompensatedSum::new();
    for n in 1..=params.n {
        s1.add(atkinson_h(t, n, tables.d(n as usize)) * atkinson_f(t, n).cos());
    }
    if params.n_prime >= t / TAU {
        return Err(Error::Internal(format!(
            "N' = {} not below t/2π = {}",
            params.n_prime,
            t / TAU
        )));
    }
    let mut s2 = CompensatedSum::new();
    for n in 1..=params.n_prime.floor() as u64 {
        let nf = n as f64;
        let l = (t / (TAU * nf)).ln();
        s2.add(tables.d(n as usize) as f64 / nf.sqrt() / l * (t * l - t + PI / 4.0).cos());
    }
    Ok(AtkinsonValue {
        sigma1: s1.value() / 2f64.sqrt(),
        sigma2: -2.0 * s2.value(),
    })
}

/// `Σ₁(t) + Σ₂(t)`
pub fn atkinson_e(tables: &DivisorTables, params: &AtkinsonParams) -> Result<f64> {
    Ok(atkinson_components(tables, params)?.total())
}

/// Exact and leading-order forms of `h`, `f` and `∂f/∂t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCheck {
    pub h_exact: f64,
    pub h_leading: f64,
    pub f_exact: f64,
    pub f_leading: f64,
    pub fprime_exact: f64,
    pub fprime_leading: f64,
}

pub fn expansion_check(t: f64, n: u64, d: u32) -> Result<ExpansionCheck> {
    if n == 0 || !(n as f64 <= t) {
        return invalid(format!("expansion requires 1 <= n <= t, got n = {n}, t = {t}"));
    }
    let nf = n as f64;
    let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
    Ok(ExpansionCheck {
        h_exact: atkinson_h(t, n, d),
        h_leading: 2f64.powf(0.75) / PI.powf(0.25) * sign * d as f64 * nf.powf(-0.75) * t.powf(0.25),
        f_exact: atkinson_f(t, n),
        f_leading: 2f64.powf(1.5) * (PI * nf * t).sqrt() - PI / 4.0,
        fprime_exact: atkinson_f_prime(t, n),
        fprime_leading: (2.0 * PI * nf / t).sqrt(),
    })
}
