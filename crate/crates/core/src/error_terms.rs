//! Exact evaluation of the divisor, alternating-divisor and circle-problem
//! error terms.
//!
//! Convention: `Δ(x) = Σ_{n≤x} d(n) − x(log x + 2γ − 1)` with no `−1/4`
//! correction, so `Δ` has mean value `1/4`. Sums include `n = x` at integer
//! abscissae, making every error term right-continuous.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::arith::{
    alternating_divisor_summatory, divisor_summatory, lattice_points_in_disk, BERNOULLI_EVEN,
};
use crate::error::{domain, Error, Result};

/// Euler's constant to 30 significant digits.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_08;

/// Euler's constant together with the derived `2γ − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerGamma {
    pub gamma: f64,
    pub two_gamma_minus_one: f64,
}

impl EulerGamma {
    /// The literal, after checking it against [`euler_gamma_from_harmonic`].
    pub fn validated() -> &'static EulerGamma {
        static G: OnceLock<EulerGamma> = OnceLock::new();
        G.get_or_init(|| {
            let computed = euler_gamma_from_harmonic(16);
            assert!(
                (computed - EULER_GAMMA).abs() < 1e-12,
                "Euler gamma literal disagrees with harmonic-sum value {computed}"
            );
            EulerGamma {
                gamma: EULER_GAMMA,
                two_gamma_minus_one: 2.0 * EULER_GAMMA - 1.0,
            }
        })
    }
}

/// `γ = H_n − log n − 1/(2n) + Σ_k B_{2k}/(2k·n^{2k})`.
pub fn euler_gamma_from_harmonic(n: u32) -> f64 {
    let nf = n as f64;
    let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
    let mut corr = 0.0;
    let mut p = nf * nf;
    for (k, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        corr += b / (2.0 * (k + 1) as f64 * p);
        p *= nf * nf;
    }
    h - nf.ln() - 0.5 / nf + corr
}

/// `x(log x + 2γ − 1)`, the main term of both `D(x)` and the alternating sum.
#[inline]
pub fn divisor_main_term(x: f64) -> f64 {
    x * (x.ln() + 2.0 * EULER_GAMMA - 1.0)
}

/// One sampled value of an error term and, optionally, an approximation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorTermPoint {
    pub x: f64,
    pub exact: f64,
    pub approx: Option<f64>,
    pub residual: Option<f64>,
}

impl ErrorTermPoint {
    pub fn exact(x: f64, exact: f64) -> Self {
        ErrorTermPoint {
            x,
            exact,
            approx: None,
            residual: None,
        }
    }

    pub fn with_approx(self, approx: f64) -> Self {
        ErrorTermPoint {
            approx: Some(approx),
            residual: Some(self.exact - approx),
            ..self
        }
    }
}

/// Which error term a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorTermKind {
    /// `Δ(x)`
    Delta,
    /// `Δ*(x)`
    DeltaStar,
    /// `P(x)`
    Circle,
}

impl ErrorTermKind {
    pub fn evaluate(self, x: f64) -> Result<f64> {
        match self {
            ErrorTermKind::Delta => delta(x),
            ErrorTermKind::DeltaStar => delta_star(x),
            ErrorTermKind::Circle => circle_error(x),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ErrorTermKind::Delta => "delta",
            ErrorTermKind::DeltaStar => "delta_star",
            ErrorTermKind::Circle => "circle",
        }
    }
}

/// `Δ(x) = D(⌊x⌋) − x(log x + 2γ − 1)` for `x ≥ 1`.
pub fn delta(x: f64) -> Result<f64> {
    if !(x >= 1.0) || !x.is_finite() {
        return domain(format!("delta needs finite x >= 1, got {x}"));
    }
    let m = floor_to_u64(x)?;
    Ok(divisor_summatory(m)? as f64 - divisor_main_term(x))
}

/// `Δ*(x) = ½Σ_{n≤4x}(−1)ⁿd(n) − x(log x + 2γ − 1)` for `x ≥ 1/4`.
pub fn delta_star(x: f64) -> Result<f64> {
    if !(x >= 0.25) || !x.is_finite() {
        return domain(format!("delta_star needs finite x >= 1/4, got {x}"));
    }
    let m = floor_to_u64(4.0 * x)?;
    Ok(0.5 * alternating_divisor_summatory(m)? as f64 - divisor_main_term(x))
}

/// `P(x) = #{(i, j) : i² + j² ≤ x} − πx` for `x > 0`.
pub fn circle_error(x: f64) -> Result<f64> {
    Ok(lattice_points_in_disk(x)? as f64 - PI * x)
}

fn floor_to_u64(x: f64) -> Result<u64> {
    if x >= 9.0e18 {
        return Err(Error::Overflow("abscissa floor"));
    }
    Ok(x.floor() as u64)
}
