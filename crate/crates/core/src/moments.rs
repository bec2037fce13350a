//! Power moments `∫ (error term)^k` and their comparison with the predicted
//! main terms.
//!
//! The divisor and circle error terms are step functions minus a smooth main
//! term, so each unit (or quarter-unit) piece is integrated by 8-point
//! Gauss–Legendre with the count held constant. Pieces are grouped into
//! chunks with fixed absolute boundaries and reduced in chunk order, which
//! makes every result independent of the worker count.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::arith::{
    alternating_divisor_summatory, divisor_counts_block, divisor_summatory, lattice_points_upto,
    sum_of_two_squares_block, DivisorTables,
};
use crate::constants::{c1_partial, c2_partial, tong_constant, C1Limits, ConstantEstimate};
use crate::error::{invalid, Result};
use crate::error_terms::{divisor_main_term, ErrorTermKind};
use crate::numeric::{ordered_chunk_map, Budget, CompensatedSum, GaussLegendre};
use crate::zeta_atkinson::{atkinson_e, e_main_term, zeta_sq_half_line, AtkinsonParams};

const PIECES_PER_CHUNK: u64 = 1 << 16;

/// Largest `T` accepted by [`moment_delta`] regardless of budget.
pub const MOMENT_DELTA_MAX: u64 = 1 << 40;

/// Step-function layout of an error term.
#[derive(Debug, Clone, Copy)]
struct StepLayout {
    kind: ErrorTermKind,
    /// piece `j` is `[j·width, (j+1)·width)`
    width: f64,
    count_scale: f64,
}

impl StepLayout {
    fn of(kind: ErrorTermKind) -> Self {
        match kind {
            ErrorTermKind::Delta | ErrorTermKind::Circle => StepLayout {
                kind,
                width: 1.0,
                count_scale: 1.0,
            },
            ErrorTermKind::DeltaStar => StepLayout {
                kind,
                width: 0.25,
                count_scale: 0.5,
            },
        }
    }

    fn main_term(&self, x: f64) -> f64 {
        match self.kind {
            ErrorTermKind::Circle => PI * x,
            _ => divisor_main_term(x),
        }
    }

    /// Counts `C_j` for `j ∈ [lo, hi)`, `lo ≥ 1`.
    fn counts(&self, lo: u64, hi: u64) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity((hi - lo) as usize);
        match self.kind {
            ErrorTermKind::Delta => {
                let mut c = divisor_summatory(lo)?;
                out.push(c as f64);
                for d in divisor_counts_block(lo + 1, hi) {
                    c += d as u64;
                    out.push(c as f64);
                }
            }
            ErrorTermKind::DeltaStar => {
                let mut c = alternating_divisor_summatory(lo)?;
                out.push(c as f64);
                for (i, d) in divisor_counts_block(lo + 1, hi).into_iter().enumerate() {
                    let n = lo + 1 + i as u64;
                    c += if n % 2 == 0 { d as i64 } else { -(d as i64) };
                    out.push(c as f64);
                }
            }
            ErrorTermKind::Circle => {
                let mut c = lattice_points_upto(lo)?;
                out.push(c as f64);
                for r in sum_of_two_squares_block(lo + 1, hi) {
                    c += r as u64;
                    out.push(c as f64);
                }
            }
        }
        out.truncate((hi - lo) as usize);
        Ok(out)
    }
}

fn check_order(k: u32) -> Result<()> {
    if !(1..=4).contains(&k) {
        return invalid(format!("moment order must be in 1..=4, got {k}"));
    }
    Ok(())
}

/// `∫_a^b (error term)^k dx` for a step-function error term.
pub fn moment_between(
    kind: ErrorTermKind,
    k: u32,
    a: f64,
    b: f64,
    budget: &Budget,
) -> Result<f64> {
    check_order(k)?;
    let layout = StepLayout::of(kind);
    let min = match kind {
        ErrorTermKind::DeltaStar => 0.25,
        _ => 1.0,
    };
    if !(a >= min) || !b.is_finite() {
        return invalid(format!("integration range must start at or above {min}, got {a}"));
    }
    if b <= a {
        return Ok(0.0);
    }
    let first = (a / layout.width).floor() as u64;
    let last = (b / layout.width).ceil() as u64;
    let pieces = last - first;
    budget.check(pieces as f64 * 12.0, "moment")?;
    let gl = GaussLegendre::cached(8);
    let c0 = first / PIECES_PER_CHUNK;
    let c1 = (last - 1) / PIECES_PER_CHUNK + 1;
    let parts = ordered_chunk_map((c1 - c0) as usize, |ci| -> Result<f64> {
        let c = c0 + ci as u64;
        let lo = (c * PIECES_PER_CHUNK).max(first);
        let hi = ((c + 1) * PIECES_PER_CHUNK).min(last);
        let counts = layout.counts(lo, hi)?;
        let mut acc = CompensatedSum::new();
        for (i, &count) in counts.iter().enumerate() {
            let j = lo + i as u64;
            let xa = (j as f64 * layout.width).max(a);
            let xb = ((j + 1) as f64 * layout.width).min(b);
            let level = layout.count_scale * count;
            acc.add(gl.integrate(xa, xb, |x| (level - layout.main_term(x)).powi(k as i32)));
        }
        Ok(acc.value())
    });
    let mut total = CompensatedSum::new();
    for p in parts {
        total.add(p?);
    }
    Ok(total.value())
}

/// `∫₂^T (error term)^k dx`.
pub fn moment_delta(kind: ErrorTermKind, k: u32, t: u64, budget: &Budget) -> Result<f64> {
    if t > MOMENT_DELTA_MAX {
        return invalid(format!("T = {t} too large"));
    }
    if t < 2 {
        return invalid("T must be at least 2");
    }
    moment_between(kind, k, 2.0, t as f64, budget)
}

/// Cumulative moments `∫₂^{T_i}` over an increasing grid.
pub fn moment_delta_grid(
    kind: ErrorTermKind,
    k: u32,
    grid: &[u64],
    budget: &Budget,
) -> Result<Vec<f64>> {
    check_grid(grid.iter().map(|&t| t as f64), 2.0)?;
    budget.check(grid.last().copied().unwrap_or(0) as f64 * 12.0, "moment grid")?;
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = CompensatedSum::new();
    let mut prev = 2.0;
    for &t in grid {
        acc.add(moment_between(kind, k, prev, t as f64, &Budget::unlimited())?);
        out.push(acc.value());
        prev = t as f64;
    }
    Ok(out)
}

fn check_grid(grid: impl Iterator<Item = f64>, min: f64) -> Result<()> {
    let mut prev = min;
    let mut any = false;
    for t in grid {
        if !(t >= prev) {
            return invalid("grid must be nondecreasing and start at or above 2");
        }
        prev = t;
        any = true;
    }
    if !any {
        return invalid("grid must be nonempty");
    }
    Ok(())
}

/// How `E(t)` is evaluated inside [`moment_e`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ERoute {
    /// Quadrature of `|ζ|²`.
    Exact,
    /// `Σ₁ + Σ₂` with `N = ⌈t⌉`.
    Atkinson,
    /// `E(t) ≈ 2πΔ*(t/2π)`.
    DeltaStarProxy,
}

impl ERoute {
    pub fn name(self) -> &'static str {
        match self {
            ERoute::Exact => "exact",
            ERoute::Atkinson => "atkinson",
            ERoute::DeltaStarProxy => "delta_star_proxy",
        }
    }

    pub fn max_t(self) -> f64 {
        match self {
            ERoute::Exact => 2e4,
            ERoute::Atkinson => 1e5,
            ERoute::DeltaStarProxy => 1e7,
        }
    }
}

/// Cell width for the `E` routes.
pub const E_CELL: f64 = 0.1;
const CELLS_PER_CHUNK: usize = 512;

/// Cell layout `[2 + iw, 2 + (i+1)w)` with `w ≤ E_CELL` dividing `T − 2`.
fn e_cells(t: f64) -> (usize, f64) {
    let n = ((t - 2.0) / E_CELL).ceil().max(1.0) as usize;
    (n, (t - 2.0) / n as f64)
}

/// `E` at the 4 Gauss nodes of every cell, exact route.
///
/// Each cell is split at its nodes and each sub-interval integrated by
/// 8-point Gauss–Legendre; a prefix sum over cells gives `∫₀ |ζ|²`.
fn e_exact_nodes(t: f64) -> Vec<[f64; 4]> {
    let (cells, w) = e_cells(t);
    let gl4 = GaussLegendre::cached(4);
    let gl8 = GaussLegendre::cached(8);
    let gl16 = GaussLegendre::cached(16);
    let chunks = cells.div_ceil(CELLS_PER_CHUNK);
    // per cell: integrals up to each node from the previous, then to cell end
    let parts: Vec<Vec<[f64; 5]>> = ordered_chunk_map(chunks, |c| {
        (c * CELLS_PER_CHUNK..((c + 1) * CELLS_PER_CHUNK).min(cells))
            .map(|i| {
                let a = 2.0 + i as f64 * w;
                let mut out = [0.0; 5];
                let mut prev = a;
                for (o, (x, _)) in out.iter_mut().zip(gl4.mapped(a, a + w)) {
                    *o = gl8.integrate(prev, x, zeta_sq_half_line);
                    prev = x;
                }
                out[4] = gl8.integrate(prev, a + w, zeta_sq_half_line);
                out
            })
            .collect()
    });
    let mut base = CompensatedSum::new();
    for i in 0..8 {
        let a = i as f64 * 0.25;
        base.add(gl16.integrate(a, a + 0.25, zeta_sq_half_line));
    }
    let mut out = Vec::with_capacity(cells);
    for (i, seg) in parts.into_iter().flatten().enumerate() {
        let a = 2.0 + i as f64 * w;
        let mut nodes = [0.0; 4];
        let mut running = base;
        for ((n, (x, _)), s) in nodes.iter_mut().zip(gl4.mapped(a, a + w)).zip(seg) {
            running.add(s);
            *n = running.value() - e_main_term(x);
        }
        seg.iter().for_each(|&s| base.add(s));
        out.push(nodes);
    }
    out
}

/// `∫₂^T E(t)^k dt`.
pub fn moment_e(
    tables: Option<&DivisorTables>,
    k: u32,
    t: f64,
    route: ERoute,
    budget: &Budget,
) -> Result<f64> {
    Ok(moment_e_orders(tables, &[k], t, route, budget)?[0])
}

/// [`moment_e`] for several orders sharing one evaluation of `E`.
pub fn moment_e_orders(
    tables: Option<&DivisorTables>,
    ks: &[u32],
    t: f64,
    route: ERoute,
    budget: &Budget,
) -> Result<Vec<f64>> {
    for &k in ks {
        check_order(k)?;
    }
    if !(t >= 2.0) || !t.is_finite() {
        return invalid(format!("T must be at least 2, got {t}"));
    }
    if t > route.max_t() {
        return invalid(format!(
            "route {} is limited to T <= {}",
            route.name(),
            route.max_t()
        ));
    }
    if t == 2.0 {
        return Ok(vec![0.0; ks.len()]);
    }
    let nodes = match route {
        ERoute::DeltaStarProxy => {
            return ks
                .iter()
                .map(|&k| {
                    let scale = TAU.powi(k as i32 + 1);
                    Ok(scale
                        * moment_between(ErrorTermKind::DeltaStar, k, 2.0 / TAU, t / TAU, budget)?)
                })
                .collect();
        }
        ERoute::Exact => {
            let (cells, _) = e_cells(t);
            budget.check(cells as f64 * 40.0 * ((t / TAU).sqrt() + 30.0), "moment_e exact")?;
            e_exact_nodes(t)
        }
        ERoute::Atkinson => {
            let (cells, w) = e_cells(t);
            let need = t.ceil() as u64 + 1;
            budget.check(cells as f64 * 4.0 * need as f64 * 3.0, "moment_e atkinson")?;
            let Some(tables) = tables else {
                return invalid("atkinson route needs divisor tables");
            };
            if need as usize > tables.limit() {
                return invalid(format!("atkinson route needs divisor tables up to {need}"));
            }
            let gl4 = GaussLegendre::cached(4);
            let chunks = cells.div_ceil(CELLS_PER_CHUNK);
            let parts = ordered_chunk_map(chunks, |c| -> Result<Vec<[f64; 4]>> {
                (c * CELLS_PER_CHUNK..((c + 1) * CELLS_PER_CHUNK).min(cells))
                    .map(|i| {
                        let a = 2.0 + i as f64 * w;
                        let mut nodes = [0.0; 4];
                        for (n, (x, _)) in nodes.iter_mut().zip(gl4.mapped(a, a + w)) {
                            let p = AtkinsonParams::with_defaults(x, x.ceil() as u64)?;
                            *n = atkinson_e(tables, &p)?;
                        }
                        Ok(nodes)
                    })
                    .collect()
            });
            let mut nodes = Vec::with_capacity(cells);
            for p in parts {
                nodes.extend(p?);
            }
            nodes
        }
    };
    Ok(ks.iter().map(|&k| reduce_cells(t, &nodes, k)).collect())
}

fn reduce_cells(t: f64, nodes: &[[f64; 4]], k: u32) -> f64 {
    let (_, w) = e_cells(t);
    let gl4 = GaussLegendre::cached(4);
    let mut acc = CompensatedSum::new();
    for cell in nodes {
        for (v, &wt) in cell.iter().zip(&gl4.weights) {
            acc.add(0.5 * w * wt * v.powi(k as i32));
        }
    }
    acc.value()
}

/// `(amplitude, exponent)` of a least-squares line through `(log T, log v)`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 3 {
        return invalid("power-law fit needs at least 3 points");
    }
    if points.iter().any(|&(t, v)| !(t > 0.0) || !(v > 0.0)) {
        return invalid("power-law fit needs positive T and values");
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return invalid("power-law fit needs distinct T");
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok(((my - slope * mx).exp(), slope))
}

/// Which error term a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentTarget {
    Delta,
    DeltaStar,
    Circle,
    E(ERoute),
}

impl MomentTarget {
    pub fn name(self) -> String {
        match self {
            MomentTarget::Delta => "delta".into(),
            MomentTarget::DeltaStar => "delta_star".into(),
            MomentTarget::Circle => "circle".into(),
            MomentTarget::E(r) => format!("e_{}", r.name()),
        }
    }
}

/// Constants feeding the predicted main terms; a missing constant leaves
/// the matching prediction absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictionConstants {
    pub tong: f64,
    pub c1: Option<ConstantEstimate>,
    pub c2: Option<ConstantEstimate>,
}

impl PredictionConstants {
    pub const C2_TRUNCATION: u64 = 10_000;
    pub const C1_LIMITS: C1Limits = C1Limits {
        alpha_max: 400,
        beta_max: 400,
        h_max: 4000,
    };

    /// Table size needed by [`compute`](Self::compute).
    pub fn table_limit(c2_truncation: u64, c1: C1Limits) -> u64 {
        c2_truncation.max(c1.alpha_max + c1.beta_max).max(c1.h_max)
    }

    /// Default truncations; needs tables up to `10⁴`.
    pub fn compute(tables: &DivisorTables) -> Result<Self> {
        Self::compute_with(tables, Self::C2_TRUNCATION, Self::C1_LIMITS)
    }

    pub fn compute_with(tables: &DivisorTables, c2_truncation: u64, c1: C1Limits) -> Result<Self> {
        Ok(PredictionConstants {
            tong: tong_constant(),
            c1: Some(c1_partial(tables, c1)?),
            c2: Some(c2_partial(tables, c2_truncation)?),
        })
    }

    /// Only the constants that the `(target, k)` prediction uses.
    pub fn for_moment(
        tables: &DivisorTables,
        target: MomentTarget,
        k: u32,
        c2_truncation: u64,
        c1: C1Limits,
    ) -> Result<Self> {
        let needs_c1 = k == 3 && target == MomentTarget::Delta;
        let needs_c2 = k == 4 && target != MomentTarget::Circle;
        Ok(PredictionConstants {
            tong: tong_constant(),
            c1: if needs_c1 { Some(c1_partial(tables, c1)?) } else { None },
            c2: if needs_c2 {
                Some(c2_partial(tables, c2_truncation)?)
            } else {
                None
            },
        })
    }

    /// `(coefficient, exponent)` of the predicted main term, if one exists.
    pub fn main_term(&self, target: MomentTarget, k: u32) -> Option<(f64, f64)> {
        let pi = PI;
        let c1 = self.c1.map(|c| c.value);
        let c2 = self.c2.map(|c| c.value);
        match (target, k) {
            (MomentTarget::Delta | MomentTarget::DeltaStar, 2) => Some((self.tong, 1.5)),
            (MomentTarget::Delta, 3) => c1.map(|c| (3.0 * c / (28.0 * pi.powi(3)), 1.75)),
            (MomentTarget::Delta | MomentTarget::DeltaStar, 4) => {
                c2.map(|c| (3.0 * c / (64.0 * pi.powi(4)), 2.0))
            }
            // E(t) ≈ 2πΔ*(t/2π), and Δ* shares the mean-square constant of Δ
            (MomentTarget::E(_), 2) => Some((TAU.powf(1.5) * self.tong, 1.5)),
            (MomentTarget::E(_), 4) => c2.map(|c| (3.0 * c / (8.0 * pi), 2.0)),
            _ => None,
        }
    }

    fn tail_hint(&self, k: u32) -> Option<f64> {
        match k {
            3 => self.c1.map(|c| c.tail_hint),
            4 => self.c2.map(|c| c.tail_hint),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub target: MomentTarget,
    pub k: u32,
    pub t_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub predicted: Option<Vec<f64>>,
    pub ratios: Option<Vec<f64>>,
    pub fitted_exponent: Option<f64>,
    pub fitted_amplitude: Option<f64>,
    /// Tail estimate of the constant in the prediction.
    pub constant_tail_hint: Option<f64>,
}

/// Evaluates the moment on a grid and compares with the predicted main term.
pub fn asymptotic_report(
    tables: Option<&DivisorTables>,
    constants: &PredictionConstants,
    target: MomentTarget,
    k: u32,
    t_grid: &[f64],
    budget: &Budget,
) -> Result<MomentReport> {
    check_order(k)?;
    check_grid(t_grid.iter().copied(), 2.0)?;
    let values = match target {
        MomentTarget::Delta | MomentTarget::DeltaStar | MomentTarget::Circle => {
            let kind = match target {
                MomentTarget::Delta => ErrorTermKind::Delta,
                MomentTarget::DeltaStar => ErrorTermKind::DeltaStar,
                _ => ErrorTermKind::Circle,
            };
            if t_grid.iter().any(|t| t.fract() != 0.0) {
                return invalid("divisor and circle moments need integer T");
            }
            let grid: Vec<u64> = t_grid.iter().map(|&t| t as u64).collect();
            moment_delta_grid(kind, k, &grid, budget)?
        }
        MomentTarget::E(route) => t_grid
            .iter()
            .map(|&t| moment_e(tables, k, t, route, budget))
            .collect::<Result<Vec<f64>>>()?,
    };
    let main = constants.main_term(target, k);
    let predicted: Option<Vec<f64>> =
        main.map(|(c, e)| t_grid.iter().map(|t| c * t.powf(e)).collect());
    let ratios = predicted
        .as_ref()
        .map(|p| values.iter().zip(p).map(|(v, p)| v / p).collect());
    let fit = if t_grid.len() >= 3 && values.iter().all(|&v| v > 0.0) {
        let pts: Vec<(f64, f64)> = t_grid.iter().copied().zip(values.iter().copied()).collect();
        fit_power_law(&pts).ok()
    } else {
        None
    };
    let constant_tail_hint = main.and(constants.tail_hint(k));
    Ok(MomentReport {
        target,
        k,
        t_grid: t_grid.to_vec(),
        values,
        predicted,
        ratios,
        fitted_amplitude: fit.map(|f| f.0),
        fitted_exponent: fit.map(|f| f.1),
        constant_tail_hint,
    })
}

/// `T, 2T, 4T, …` up to `t_max` inclusive.
pub fn dyadic_grid(t_min: u64, t_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut t = t_min;
    while t <= t_max {
        out.push(t);
        t *= 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error_terms::delta;

    #[test]
    fn empty_interval() {
        let b = Budget::unlimited();
        assert_eq!(moment_delta(ErrorTermKind::Delta, 4, 2, &b).unwrap(), 0.0);
        assert_eq!(moment_e(None, 4, 2.0, ERoute::Exact, &b).unwrap(), 0.0);
        assert!(moment_delta(ErrorTermKind::Delta, 5, 10, &b).is_err());
    }

    #[test]
    fn first_moment_closed_form() {
        // on [m, m+1): ∫ (D(m) − x(ln x + 2γ − 1)) dx with the antiderivative
        // x²/2·ln x − x²/4 + (2γ − 1)x²/2
        let g = crate::error_terms::EulerGamma::validated().two_gamma_minus_one;
        let anti = |x: f64| x * x / 2.0 * x.ln() - x * x / 4.0 + g * x * x / 2.0;
        let mut expected = 0.0;
        let mut d = divisor_summatory(2).unwrap();
        for m in 2u64..10 {
            if m > 2 {
                d += divisor_counts_block(m, m + 1)[0] as u64;
            }
            expected += d as f64 - (anti(m as f64 + 1.0) - anti(m as f64));
        }
        let got = moment_delta(ErrorTermKind::Delta, 1, 10, &Budget::unlimited()).unwrap();
        assert!((got / expected - 1.0).abs() < 1e-9, "{got} vs {expected}");
    }

    #[test]
    fn second_moment_riemann_oracle() {
        let t = 1000u64;
        let got = moment_delta(ErrorTermKind::Delta, 2, t, &Budget::unlimited()).unwrap();
        let h = 1e-3;
        let n = ((t - 2) as f64 / h) as usize;
        let riemann: f64 = (0..n)
            .map(|i| delta(2.0 + (i as f64 + 0.5) * h).unwrap().powi(2) * h)
            .sum();
        assert!((got / riemann - 1.0).abs() < 1e-3);
    }

    #[test]
    fn budget_limits() {
        let b = Budget::new(100.0);
        assert!(matches!(
            moment_delta(ErrorTermKind::Delta, 2, 1000, &b),
            Err(crate::Error::ResourceLimit(_))
        ));
        assert!(moment_e(None, 2, 3e4, ERoute::Exact, &Budget::unlimited()).is_err());
    }

    #[test]
    fn power_law_fits() {
        let (a, e) = fit_power_law(&[(1.0, 2.0), (2.0, 8.0), (4.0, 32.0)]).unwrap();
        assert!((a - 2.0).abs() < 1e-12 && (e - 2.0).abs() < 1e-12);
        let (_, e) = fit_power_law(&[(1.0, 5.0), (10.0, 5.0), (100.0, 5.0)]).unwrap();
        assert!(e.abs() < 1e-12);
        assert!(fit_power_law(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(fit_power_law(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
    }

    #[test]
    fn grid_is_cumulative() {
        let b = Budget::unlimited();
        let grid = [100, 300, 1000];
        let g = moment_delta_grid(ErrorTermKind::Circle, 2, &grid, &b).unwrap();
        for (v, &t) in g.iter().zip(&grid) {
            let direct = moment_delta(ErrorTermKind::Circle, 2, t, &b).unwrap();
            assert!((v / direct - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn chunk_boundaries_do_not_matter() {
        let b = Budget::unlimited();
        let t = 3 * PIECES_PER_CHUNK + 17;
        let whole = moment_delta(ErrorTermKind::DeltaStar, 2, t, &b).unwrap();
        let mid = (PIECES_PER_CHUNK / 4) as f64 + 0.3;
        let split = moment_between(ErrorTermKind::DeltaStar, 2, 2.0, mid, &b).unwrap()
            + moment_between(ErrorTermKind::DeltaStar, 2, mid, t as f64, &b).unwrap();
        assert!((whole / split - 1.0).abs() < 1e-12);
    }
}
