//! Asymptotic constants built from solutions of four-term square-root
//! equations, and the constraint sums over those solutions.
//!
//! All sums use ordered-quadruple semantics. Solutions of
//! `√n + √m = √k + √l` are either diagonal (`{k, l} = {n, m}`) or share a
//! common squarefree kernel: `n = a²h, m = b²h, k = c²h, l = e²h` with
//! `a + b = c + e`. The enumerators below walk the diagonal in closed form
//! and the kernel classes by partition sums `s = a + b`, skipping the
//! kernel-class members with `{c, e} = {a, b}` that the diagonal already
//! covers.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::arith::{isqrt, squarefree_decompose, zeta_real, DivisorTables};
use crate::error::{invalid, Result};
use crate::numeric::{compensated_sum, ordered_chunk_map, CompensatedSum};

/// Canonical `Σ cᵢ√hᵢ` with distinct squarefree `hᵢ` in increasing order and
/// positive integer `cᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SurdForm {
    terms: Vec<(u64, u64)>,
}

impl SurdForm {
    /// `Σ √nᵢ`, factoring each radicand by trial division.
    pub fn from_sqrts(radicands: &[u64]) -> Self {
        Self::from_parts(radicands.iter().map(|&n| {
            let (a, h) = squarefree_decompose(n);
            (h, a)
        }))
    }

    /// `Σ √nᵢ` using the kernel table; every `nᵢ` must be within its limit.
    pub fn from_sqrts_with(tables: &DivisorTables, radicands: &[u64]) -> Self {
        Self::from_parts(radicands.iter().map(|&n| {
            let (a, h) = tables.square_decompose(n as usize);
            (h, a)
        }))
    }

    fn from_parts(parts: impl Iterator<Item = (u64, u64)>) -> Self {
        let mut terms: Vec<(u64, u64)> = parts.filter(|&(_, c)| c > 0).collect();
        terms.sort_unstable();
        let mut out: Vec<(u64, u64)> = Vec::with_capacity(terms.len());
        for (h, c) in terms {
            match out.last_mut() {
                Some((hh, cc)) if *hh == h => *cc += c,
                _ => out.push((h, c)),
            }
        }
        SurdForm { terms: out }
    }

    /// `(kernel, coefficient)` pairs.
    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|&(h, c)| c as f64 * (h as f64).sqrt())
            .sum()
    }
}

/// `√n + √m = √k + √l`, decided in integer arithmetic.
pub fn surd_equal(tables: &DivisorTables, n: u64, m: u64, k: u64, l: u64) -> bool {
    SurdForm::from_sqrts_with(tables, &[n, m]) == SurdForm::from_sqrts_with(tables, &[k, l])
}

/// [`surd_equal`] without a kernel table (trial-division factoring).
pub fn surd_equal_untabled(n: u64, m: u64, k: u64, l: u64) -> bool {
    SurdForm::from_sqrts(&[n, m]) == SurdForm::from_sqrts(&[k, l])
}

/// A truncated constant with its truncation diagnostics. `tail_hint` is the
/// tail exponent evaluated at the truncation and is never folded into
/// `value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantEstimate {
    pub value: f64,
    pub truncation: u64,
    pub term_count: u64,
    pub tail_hint: f64,
}

fn check_table(tables: &DivisorTables, y: u64, what: &str) -> Result<()> {
    if y == 0 {
        return invalid(format!("{what}: truncation must be at least 1"));
    }
    if y as usize > tables.limit() {
        return invalid(format!(
            "{what}: truncation {y} exceeds divisor table limit {}",
            tables.limit()
        ));
    }
    Ok(())
}

/// Squarefree kernels `h ≤ y` in chunks of roughly equal work.
fn kernel_chunks(tables: &DivisorTables, y: u64) -> Vec<Vec<u64>> {
    const CHUNK: usize = 64;
    let hs: Vec<u64> = (1..=y).filter(|&h| tables.mu(h as usize) != 0).collect();
    hs.chunks(CHUNK).map(|c| c.to_vec()).collect()
}

/// Shared enumerator for `c₂(Y)` and `c₂*(Y)`; `signed` applies `(−1)ⁿ` to
/// every variable.
fn c2_like(tables: &DivisorTables, y: u64, signed: bool) -> Result<ConstantEstimate> {
    let weight = |n: u64| {
        let w = tables.d(n as usize) as f64 * (n as f64).powf(-0.75);
        if signed && n % 2 == 1 {
            -w
        } else {
            w
        }
    };

    // Diagonal: (n, m, n, m) and (n, m, m, n), overlapping when n = m.
    let sq: Vec<f64> = (1..=y).map(|n| weight(n) * weight(n)).collect();
    let s2 = compensated_sum(sq.iter().copied());
    let s4 = compensated_sum(sq.iter().map(|v| v * v));
    let diag = 2.0 * s2 * s2 - s4;
    let diag_count = 2 * y * y - y;

    let chunks = kernel_chunks(tables, y);
    let parts = ordered_chunk_map(chunks.len(), |ci| {
        let mut acc = CompensatedSum::new();
        let mut count = 0u64;
        for &h in &chunks[ci] {
            let top = isqrt(y / h);
            if top < 2 {
                continue;
            }
            let u: Vec<f64> = (0..=top)
                .map(|a| if a == 0 { 0.0 } else { weight(a * a * h) })
                .collect();
            for s in 3..=2 * top {
                let lo = if s > top { s - top } else { 1 };
                let hi = top.min(s - 1);
                if lo > hi {
                    continue;
                }
                let mut class = 0.0;
                let mut self_pairs = 0.0;
                for a in lo..=hi {
                    let p = u[a as usize] * u[(s - a) as usize];
                    class += p;
                    self_pairs += p * p;
                }
                let members = hi - lo + 1;
                // ordered pairs of class members minus those with
                // (c, e) ∈ {(a, b), (b, a)}
                let mut v = class * class - 2.0 * self_pairs;
                let middle = s % 2 == 0 && s / 2 >= lo && s / 2 <= hi;
                if middle {
                    let m = u[(s / 2) as usize];
                    v += m * m * m * m;
                }
                acc.add(v);
                count += members * members + middle as u64 - 2 * members;
            }
        }
        (acc.value(), count)
    });
    let mut total = CompensatedSum::new();
    total.add(diag);
    let mut count = diag_count;
    for (v, c) in parts {
        total.add(v);
        count += c;
    }
    Ok(ConstantEstimate {
        value: total.value(),
        truncation: y,
        term_count: count,
        tail_hint: (y as f64).powf(-0.5),
    })
}

/// `c₂(Y) = Σ_{√n+√m=√k+√l; n,m,k,l≤Y} d(n)d(m)d(k)d(l)/(nmkl)^{3/4}`.
pub fn c2_partial(tables: &DivisorTables, y: u64) -> Result<ConstantEstimate> {
    check_table(tables, y, "c2_partial")?;
    c2_like(tables, y, false)
}

/// `c₂*(Y)`: the same sum weighted by `(−1)^{n+m+k+l}`.
pub fn c2_star_partial(tables: &DivisorTables, y: u64) -> Result<ConstantEstimate> {
    check_table(tables, y, "c2_star_partial")?;
    c2_like(tables, y, true)
}

/// `d(α²h)` for squarefree `h`, from the factorisations of `α` and `h`.
fn d_square_times_kernel(tables: &DivisorTables, alpha: usize, h: usize) -> u64 {
    let fa = tables.factorize(alpha);
    let fh = tables.factorize(h);
    let mut out = 1u64;
    let (mut i, mut j) = (0, 0);
    while i < fa.len() || j < fh.len() {
        let pa = fa.get(i).map(|x| x.0).unwrap_or(u32::MAX);
        let ph = fh.get(j).map(|x| x.0).unwrap_or(u32::MAX);
        if pa < ph {
            out *= 2 * fa[i].1 as u64 + 1;
            i += 1;
        } else if ph < pa {
            out *= 2;
            j += 1;
        } else {
            out *= 2 * fa[i].1 as u64 + 2;
            i += 1;
            j += 1;
        }
    }
    out
}

/// Per-variable truncation of the `c₁` triple sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct C1Limits {
    pub alpha_max: u64,
    pub beta_max: u64,
    pub h_max: u64,
}

/// `c₁ = Σ (αβ(α+β))^{−3/2} h^{−9/4} |μ(h)| d(α²h) d(β²h) d((α+β)²h)`,
/// truncated to `α ≤ alpha_max`, `β ≤ beta_max`, `h ≤ h_max`.
///
/// The tables only need to factor `α + β` and `h`, not `(α+β)²h`.
pub fn c1_partial(tables: &DivisorTables, limits: C1Limits) -> Result<ConstantEstimate> {
    let C1Limits {
        alpha_max,
        beta_max,
        h_max,
    } = limits;
    if alpha_max == 0 || beta_max == 0 || h_max == 0 {
        return invalid("c1_partial limits must be positive");
    }
    let need = (alpha_max + beta_max).max(h_max);
    if need as usize > tables.limit() {
        return invalid(format!(
            "c1_partial needs factor tables up to {need}, have {}",
            tables.limit()
        ));
    }
    let amax = (alpha_max + beta_max) as usize;
    let hs: Vec<usize> = (1..=h_max as usize).filter(|&h| tables.mu(h) != 0).collect();
    let parts = ordered_chunk_map(hs.len(), |hi| {
        let h = hs[hi];
        let dq: Vec<f64> = (0..=amax)
            .map(|a| {
                if a == 0 {
                    0.0
                } else {
                    d_square_times_kernel(tables, a, h) as f64
                }
            })
            .collect();
        let hw = (h as f64).powf(-2.25);
        let mut acc = CompensatedSum::new();
        for a in 1..=alpha_max as usize {
            for b in 1..=beta_max as usize {
                let ab = (a * b * (a + b)) as f64;
                acc.add(dq[a] * dq[b] * dq[a + b] / (ab * ab.sqrt()));
            }
        }
        (acc.value() * hw, alpha_max * beta_max)
    });
    let value = compensated_sum(parts.iter().map(|p| p.0));
    let term_count = parts.iter().map(|p| p.1).sum();
    Ok(ConstantEstimate {
        value,
        truncation: alpha_max.min(beta_max).min(h_max),
        term_count,
        tail_hint: (alpha_max as f64).powi(-2)
            + (beta_max as f64).powi(-2)
            + (h_max as f64).powf(-1.25),
    })
}

/// `H₁(Y) = Σ_{√n+√m=√k+√l; ≤Y} d(n)d(m)d(k)d(l) max(n,m,k,l)³/(nmkl)^{3/4}`.
pub fn h1_sum(tables: &DivisorTables, y: u64) -> Result<f64> {
    check_table(tables, y, "h1_sum")?;
    let f = |n: u64| {
        let d = tables.d(n as usize) as f64;
        d * d * (n as f64).powf(-1.5)
    };
    // Σ_{n,m} f(n)f(m)max(n,m)³ by prefix sums over the smaller index.
    let mut prefix = CompensatedSum::new();
    let mut pair = CompensatedSum::new();
    let mut same = CompensatedSum::new();
    for n in 1..=y {
        let fn_ = f(n);
        let cube = (n as f64).powi(3);
        pair.add(2.0 * fn_ * cube * prefix.value() + fn_ * fn_ * cube);
        same.add(fn_ * fn_ * cube);
        prefix.add(fn_);
    }
    let diag = 2.0 * pair.value() - same.value();

    let chunks = kernel_chunks(tables, y);
    let parts = ordered_chunk_map(chunks.len(), |ci| {
        let mut acc = CompensatedSum::new();
        for &h in &chunks[ci] {
            let top = isqrt(y / h);
            if top < 2 {
                continue;
            }
            let u: Vec<f64> = (0..=top)
                .map(|a| {
                    if a == 0 {
                        0.0
                    } else {
                        let n = a * a * h;
                        tables.d(n as usize) as f64 * (n as f64).powf(-0.75)
                    }
                })
                .collect();
            let hf = h as f64;
            for s in 3..=2 * top {
                let lo = if s > top { s - top } else { 1 };
                let hi = top.min(s - 1);
                for a in lo..=hi {
                    let b = s - a;
                    for c in lo..=hi {
                        let e = s - c;
                        if c == a || c == b {
                            continue;
                        }
                        let mx = a.max(b).max(c).max(e) as f64;
                        let mx = mx * mx * hf;
                        acc.add(
                            u[a as usize]
                                * u[b as usize]
                                * u[c as usize]
                                * u[e as usize]
                                * mx
                                * mx
                                * mx,
                        );
                    }
                }
            }
        }
        acc.value()
    });
    Ok(diag + compensated_sum(parts))
}

/// `H₂(Y) = Σ_{√n+√m+√k=√l; ≤Y} d(n)d(m)d(k)d(l) l^{3/4}/(nmk)^{3/4}`,
/// enumerated as `a + b + c = e` over a common squarefree kernel.
pub fn h2_sum(tables: &DivisorTables, y: u64) -> Result<f64> {
    check_table(tables, y, "h2_sum")?;
    let w = |n: u64| tables.d(n as usize) as f64 * (n as f64).powf(-0.75);
    let chunks = kernel_chunks(tables, y);
    let parts = ordered_chunk_map(chunks.len(), |ci| {
        let mut acc = CompensatedSum::new();
        for &h in &chunks[ci] {
            let top = isqrt(y / h);
            for e in 3..=top {
                let l = e * e * h;
                let wl = tables.d(l as usize) as f64 * (l as f64).powf(0.75);
                for a in 1..=e - 2 {
                    for b in 1..=e - 1 - a {
                        let c = e - a - b;
                        acc.add(wl * w(a * a * h) * w(b * b * h) * w(c * c * h));
                    }
                }
            }
        }
        acc.value()
    });
    Ok(compensated_sum(parts))
}

/// `ζ(3/2)⁴ / (6π²ζ(3))`, the mean-square constant of `Δ`.
pub fn tong_constant() -> f64 {
    let z32 = zeta_real(1.5).expect("zeta(3/2)");
    let z3 = zeta_real(3.0).expect("zeta(3)");
    z32.powi(4) / (6.0 * PI * PI * z3)
}
