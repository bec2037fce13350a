//! One function per subcommand; each validates its parameters before doing
//! any work.

use std::f64::consts::TAU;
use std::fs;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use divmoment::arith::DivisorTables;
use divmoment::constants::{c1_partial, c2_partial, c2_star_partial, tong_constant, C1Limits};
use divmoment::error_terms::{delta_star, ErrorTermKind};
use divmoment::moments::{
    asymptotic_report, fit_power_law, ERoute, MomentTarget, PredictionConstants,
};
use divmoment::numeric::Budget;
use divmoment::spacing::{count_solutions, min_nonzero_gap, IntRange, SignPattern, SpacingInstance};
use divmoment::truncated_series::{TruncationSpec, VoronoiSeries};
use divmoment::zeta_atkinson::{
    atkinson_e, AtkinsonParams, ZetaSqIntegralTable, DEFAULT_PANEL_WIDTH,
};

use crate::output::{float_value, Cell, Output, Table, SCHEMA_VERSION};
use crate::{CliError, Command, Format, GridArg, KindArg, RouteArg, RunConfig, TargetArg};

type Result<T> = std::result::Result<T, CliError>;

const MAX_SAMPLES: usize = 1_000_000;
const MAX_TABLE_OUTPUT: u64 = 10_000_000;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        usage(msg)
    }
}

fn check_samples(samples: usize) -> Result<()> {
    require(
        (1..=MAX_SAMPLES).contains(&samples),
        "samples must be between 1 and 1000000",
    )
}

fn check_interval(lo: f64, hi: f64, min: f64, what: &str) -> Result<()> {
    require(
        lo.is_finite() && hi.is_finite() && lo >= min && hi >= lo,
        &format!("{what}: need {min} <= min <= max, finite"),
    )
}

/// `n` uniform draws from `[lo, hi]`, sorted.
pub fn sample_uniform(seed: u64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<f64> = (0..n)
        .map(|_| if hi > lo { rng.gen_range(lo..=hi) } else { lo })
        .collect();
    xs.sort_by(f64::total_cmp);
    xs
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let r = (hi / lo).ln();
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo * (r * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

fn kind_of(k: KindArg) -> ErrorTermKind {
    match k {
        KindArg::Delta => ErrorTermKind::Delta,
        KindArg::DeltaStar => ErrorTermKind::DeltaStar,
        KindArg::Circle => ErrorTermKind::Circle,
    }
}

fn kind_min(k: KindArg) -> f64 {
    match k {
        KindArg::Delta => 1.0,
        KindArg::DeltaStar => 0.25,
        KindArg::Circle => f64::MIN_POSITIVE,
    }
}

fn tables(limit: u64) -> Result<DivisorTables> {
    Ok(DivisorTables::build(limit.max(1) as usize)?)
}

pub fn dispatch(config: &RunConfig) -> Result<Output> {
    let budget = Budget::from_seconds(config.budget_seconds as f64);
    match &config.command {
        Command::Tables { limit } => cmd_tables(*limit, &budget),
        Command::Delta {
            kind,
            x_min,
            x_max,
            samples,
        } => cmd_delta(*kind, *x_min, *x_max, *samples, config.seed),
        Command::Estar {
            t_min,
            t_max,
            samples,
            exact,
        } => cmd_estar(*t_min, *t_max, *samples, *exact, config.seed, &budget),
        Command::Spacing {
            pattern,
            ranges,
            boxes,
            delta,
            exclude_zero,
            min_gap_limit,
        } => cmd_spacing(
            pattern,
            ranges.as_deref(),
            boxes.as_deref(),
            *delta,
            *exclude_zero,
            *min_gap_limit,
            &budget,
        ),
        Command::Constants {
            c2_y,
            c1_alpha,
            c1_beta,
            c1_h,
        } => cmd_constants(
            *c2_y,
            C1Limits {
                alpha_max: *c1_alpha,
                beta_max: *c1_beta,
                h_max: *c1_h,
            },
            &budget,
        ),
        Command::Moments {
            target,
            route,
            k,
            t_min,
            t_max,
            grid,
            points,
            c2_y,
        } => cmd_moments(
            *target, *route, *k, *t_min, *t_max, *grid, *points, *c2_y, &budget,
        ),
        Command::AtkinsonCheck {
            t_min,
            t_max,
            samples,
            n_ratio,
        } => cmd_atkinson(*t_min, *t_max, *samples, *n_ratio, &budget),
        Command::VoronoiCheck {
            kind,
            x_min,
            x_max,
            samples,
            n,
        } => cmd_voronoi(*kind, *x_min, *x_max, *samples, *n, config.seed, &budget),
        Command::Fixtures { dir } => cmd_fixtures(dir, config),
    }
}

fn cmd_tables(limit: u64, budget: &Budget) -> Result<Output> {
    require((1..=MAX_TABLE_OUTPUT).contains(&limit), "limit must be between 1 and 10^7")?;
    budget.check(limit as f64 * 20.0, "tables")?;
    let t = tables(limit)?;
    let mut table = Table::new("tables", vec!["n", "d", "mu", "kernel"]).param("limit", limit);
    for n in 1..=limit as usize {
        table.push(vec![
            (n as u64).into(),
            (t.d(n) as u64).into(),
            (t.mu(n) as i64).into(),
            (t.kernel(n) as u64).into(),
        ]);
    }
    Ok(Output::Table(table))
}

fn cmd_delta(kind: KindArg, x_min: f64, x_max: f64, samples: usize, seed: u64) -> Result<Output> {
    check_samples(samples)?;
    check_interval(x_min, x_max, kind_min(kind), "x range")?;
    require(x_max <= 1e14, "x_max must be at most 1e14")?;
    let xs = sample_uniform(seed, x_min, x_max, samples);
    let k = kind_of(kind);
    let values: Vec<divmoment::Result<f64>> = xs.par_iter().map(|&x| k.evaluate(x)).collect();
    let mut table = Table::new("delta", vec!["x", "value"])
        .param("kind", k.name())
        .param("x_min", x_min)
        .param("x_max", x_max)
        .param("samples", samples)
        .param("seed", seed);
    for (x, v) in xs.into_iter().zip(values) {
        table.push(vec![x.into(), v?.into()]);
    }
    Ok(Output::Table(table))
}

fn cmd_estar(
    t_min: f64,
    t_max: f64,
    samples: usize,
    exact: bool,
    seed: u64,
    budget: &Budget,
) -> Result<Output> {
    check_samples(samples)?;
    check_interval(t_min, t_max, 2.0, "t range")?;
    if exact {
        require(t_max <= 2e4, "--exact is limited to t_max <= 2e4")?;
    }
    let ts = sample_uniform(seed, t_min, t_max, samples);
    let zeta_table = if exact {
        Some(ZetaSqIntegralTable::build(t_max, DEFAULT_PANEL_WIDTH, budget)?)
    } else {
        None
    };
    let rows: Vec<divmoment::Result<(f64, Option<f64>)>> = ts
        .par_iter()
        .map(|&t| {
            let ds = delta_star(t / TAU)?;
            let e = zeta_table.as_ref().map(|z| z.e(t)).transpose()?;
            Ok((ds, e))
        })
        .collect();
    let mut table = Table::new("estar", vec!["t", "delta_star", "proxy", "e_exact"])
        .param("t_min", t_min)
        .param("t_max", t_max)
        .param("samples", samples)
        .param("exact", exact)
        .param("seed", seed);
    for (t, r) in ts.into_iter().zip(rows) {
        let (ds, e) = r?;
        table.push(vec![t.into(), ds.into(), (TAU * ds).into(), e.into()]);
    }
    Ok(Output::Table(table))
}

fn parse_pattern(s: &str) -> Result<SignPattern> {
    SignPattern::parse(s).map_or_else(|| usage(format!("unknown pattern {s:?}; use ++--, +++- or ++++")), Ok)
}

fn parse_four<T>(s: &str, f: impl Fn(&str) -> Option<T>) -> Option<[T; 4]> {
    let parts: Vec<T> = s.split(',').map(|p| f(p.trim())).collect::<Option<_>>()?;
    parts.try_into().ok()
}

fn range_text(r: &IntRange) -> String {
    format!("{}..{}", r.lo, r.hi)
}

fn opt_value(v: Option<f64>) -> Value {
    v.map_or(Value::Null, float_value)
}

fn cmd_spacing(
    pattern: &str,
    ranges: Option<&str>,
    boxes: Option<&str>,
    delta: f64,
    exclude_zero: bool,
    min_gap_limit: Option<u64>,
    budget: &Budget,
) -> Result<Output> {
    let pattern = parse_pattern(pattern)?;
    if let Some(limit) = min_gap_limit {
        require((1..=400).contains(&limit), "min-gap-limit must be between 1 and 400")?;
        budget.check((limit * limit) as f64 * 40.0, "min_nonzero_gap")?;
        let g = min_nonzero_gap(limit, pattern)?;
        let mut table = Table::new(
            "spacing",
            vec!["limit", "pattern", "gap", "n1", "n2", "n3", "n4", "normalized"],
        );
        table.push(vec![
            limit.into(),
            pattern.as_str().into(),
            g.gap.into(),
            g.witness[0].into(),
            g.witness[1].into(),
            g.witness[2].into(),
            g.witness[3].into(),
            g.normalized.into(),
        ]);
        let json = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "spacing",
            "gap": {
                "limit": limit,
                "pattern": pattern.as_str(),
                "gap": float_value(g.gap),
                "witness": g.witness,
                "normalized": float_value(g.normalized),
            }
        });
        return Ok(Output::Document { json, table });
    }
    let instance = match (ranges, boxes) {
        (Some(r), None) => {
            let scales = parse_four(r, |p| p.parse::<f64>().ok())
                .ok_or_else(|| CliError::Usage("--ranges needs four numbers N1,N2,N3,N4".into()))?;
            SpacingInstance::dyadic(scales, delta, pattern, exclude_zero)?
        }
        (None, Some(b)) => {
            let rs = parse_four(b, |p| {
                let (lo, hi) = p.split_once('-')?;
                Some(IntRange {
                    lo: lo.trim().parse().ok()?,
                    hi: hi.trim().parse().ok()?,
                })
            })
            .ok_or_else(|| CliError::Usage("--boxes needs four ranges lo-hi".into()))?;
            SpacingInstance::boxed(rs, delta, pattern, exclude_zero)?
        }
        _ => return usage("spacing needs --ranges, --boxes or --min-gap-limit"),
    };
    let count = count_solutions(&instance, budget)?;
    let b = count.bounds;
    let mut table = Table::new(
        "spacing",
        vec![
            "pattern", "mode", "range1", "range2", "range3", "range4", "delta", "exclude_zero",
            "count", "zero_count", "lemma1", "lemma3", "lemma5", "lemma6",
        ],
    );
    let mode = match instance.mode {
        divmoment::spacing::RangeMode::Dyadic => "dyadic",
        divmoment::spacing::RangeMode::Box => "box",
    };
    table.push(vec![
        pattern.as_str().into(),
        mode.into(),
        range_text(&instance.ranges[0]).into(),
        range_text(&instance.ranges[1]).into(),
        range_text(&instance.ranges[2]).into(),
        range_text(&instance.ranges[3]).into(),
        delta.into(),
        (exclude_zero as u64).into(),
        count.count.into(),
        count.zero_count.into(),
        b.lemma1.into(),
        b.lemma3.into(),
        b.lemma5.into(),
        b.lemma6.into(),
    ]);
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "spacing",
        "instance": {
            "pattern": pattern.as_str(),
            "mode": mode,
            "scales": instance.scales.map(float_value),
            "ranges": instance.ranges.iter().map(|r| json!([r.lo, r.hi])).collect::<Vec<_>>(),
            "delta": float_value(delta),
            "exclude_zero": exclude_zero,
        },
        "count": count.count,
        "zero_count": count.zero_count,
        "bounds": {
            "lemma1": opt_value(b.lemma1),
            "lemma3": opt_value(b.lemma3),
            "lemma5": opt_value(b.lemma5),
            "lemma6": opt_value(b.lemma6),
        }
    });
    Ok(Output::Document { json, table })
}

fn cmd_constants(c2_y: u64, c1: C1Limits, budget: &Budget) -> Result<Output> {
    require((1..=10_000_000).contains(&c2_y), "c2-y must be between 1 and 10^7")?;
    require(
        c1.alpha_max >= 1 && c1.beta_max >= 1 && c1.h_max >= 1,
        "c1 limits must be positive",
    )?;
    require(
        c1.alpha_max + c1.beta_max <= 10_000_000 && c1.h_max <= 10_000_000,
        "c1 limits too large",
    )?;
    budget.check(
        c1.alpha_max as f64 * c1.beta_max as f64 * c1.h_max as f64 * 0.7 + c2_y as f64 * 200.0,
        "constants",
    )?;
    let t = tables(c2_y.max(c1.alpha_max + c1.beta_max).max(c1.h_max))?;
    let c1v = c1_partial(&t, c1)?;
    let c2v = c2_partial(&t, c2_y)?;
    let c2s = c2_star_partial(&t, c2_y)?;
    let mut table = Table::new(
        "constants",
        vec!["name", "value", "truncation", "term_count", "tail_hint"],
    )
    .param("c2_y", c2_y)
    .param("c1_alpha", c1.alpha_max)
    .param("c1_beta", c1.beta_max)
    .param("c1_h", c1.h_max);
    table.push(vec!["tong".into(), tong_constant().into(), Cell::Empty, Cell::Empty, Cell::Empty]);
    for (name, c) in [("c1", c1v), ("c2", c2v), ("c2_star", c2s)] {
        table.push(vec![
            name.into(),
            c.value.into(),
            c.truncation.into(),
            c.term_count.into(),
            c.tail_hint.into(),
        ]);
    }
    Ok(Output::Table(table))
}

fn moment_grid(t_min: f64, t_max: f64, grid: GridArg, points: usize, integer: bool) -> Vec<f64> {
    let mut g: Vec<f64> = match grid {
        GridArg::Dyadic => {
            let mut v = Vec::new();
            let mut t = t_min;
            while t < t_max * (1.0 - 1e-12) {
                v.push(t);
                t *= 2.0;
            }
            v.push(t_max);
            v
        }
        GridArg::Linear => {
            if points <= 1 {
                vec![t_max]
            } else {
                (0..points)
                    .map(|i| t_min + (t_max - t_min) * i as f64 / (points - 1) as f64)
                    .collect()
            }
        }
    };
    if integer {
        g.iter_mut().for_each(|t| *t = t.round());
    }
    g.dedup();
    g
}

#[allow(clippy::too_many_arguments)]
fn cmd_moments(
    target: TargetArg,
    route: RouteArg,
    k: u32,
    t_min: f64,
    t_max: f64,
    grid: GridArg,
    points: usize,
    c2_y: u64,
    budget: &Budget,
) -> Result<Output> {
    require((1..=4).contains(&k), "k must be 1, 2, 3 or 4")?;
    check_interval(t_min, t_max, 2.0, "T range")?;
    require(points <= 1000, "points must be at most 1000")?;
    require((1..=10_000_000).contains(&c2_y), "c2-y must be between 1 and 10^7")?;
    let target = match target {
        TargetArg::Delta => MomentTarget::Delta,
        TargetArg::DeltaStar => MomentTarget::DeltaStar,
        TargetArg::Circle => MomentTarget::Circle,
        TargetArg::E => MomentTarget::E(match route {
            RouteArg::Exact => ERoute::Exact,
            RouteArg::Atkinson => ERoute::Atkinson,
            RouteArg::Proxy => ERoute::DeltaStarProxy,
        }),
    };
    let integer = !matches!(target, MomentTarget::E(_));
    if integer {
        require(t_max <= 1e10, "t-max must be at most 1e10 for step-function targets")?;
    } else if let MomentTarget::E(r) = target {
        require(t_max <= r.max_t(), &format!("route {} is limited to T <= {}", r.name(), r.max_t()))?;
    }
    let g = moment_grid(t_min, t_max, grid, points, integer);
    let c1_limits = PredictionConstants::C1_LIMITS;
    let mut limit = PredictionConstants::table_limit(c2_y, c1_limits);
    if target == MomentTarget::E(ERoute::Atkinson) {
        limit = limit.max(t_max.ceil() as u64 + 2);
    }
    let t = tables(limit)?;
    let constants = PredictionConstants::for_moment(&t, target, k, c2_y, c1_limits)?;
    let report = asymptotic_report(Some(&t), &constants, target, k, &g, budget)?;
    let mut table = Table::new(
        "moments",
        vec!["T", "moment", "predicted", "ratio", "fitted_exponent_so_far"],
    )
    .param("target", target.name())
    .param("k", k)
    .param("t_min", t_min)
    .param("t_max", t_max)
    .param("c2_y", c2_y)
    .param("constant_tail_hint", opt_value(report.constant_tail_hint));
    for i in 0..g.len() {
        let pts: Vec<(f64, f64)> = g[..=i].iter().copied().zip(report.values[..=i].iter().copied()).collect();
        let fit = if pts.len() >= 3 { fit_power_law(&pts).ok().map(|f| f.1) } else { None };
        table.push(vec![
            g[i].into(),
            report.values[i].into(),
            report.predicted.as_ref().map(|p| p[i]).into(),
            report.ratios.as_ref().map(|r| r[i]).into(),
            fit.into(),
        ]);
    }
    Ok(Output::Table(table))
}

fn cmd_atkinson(
    t_min: f64,
    t_max: f64,
    samples: usize,
    n_ratio: f64,
    budget: &Budget,
) -> Result<Output> {
    check_samples(samples)?;
    check_interval(t_min, t_max, 2.0, "t range")?;
    require(t_max <= 2e4, "t-max must be at most 2e4")?;
    require(n_ratio > 0.0 && n_ratio <= 4.0, "n-ratio must lie in (0, 4]")?;
    let n_max = (n_ratio * t_max).ceil() as u64 + 1;
    budget.check(samples as f64 * n_max as f64 * 5.0, "atkinson-check")?;
    let zeta_table = ZetaSqIntegralTable::build(t_max, DEFAULT_PANEL_WIDTH, budget)?;
    let t = tables(n_max)?;
    let ts = log_spaced(t_min, t_max, samples);
    let rows: Vec<divmoment::Result<(f64, f64)>> = ts
        .par_iter()
        .map(|&x| {
            let n = (n_ratio * x).ceil().max(1.0) as u64;
            let p = AtkinsonParams::new(x, n, 0.5 * n_ratio, 2.0 * n_ratio)?;
            Ok((zeta_table.e(x)?, atkinson_e(&t, &p)?))
        })
        .collect();
    let mut table = Table::new(
        "atkinson-check",
        vec!["t", "E_exact", "E_atkinson", "residual", "residual_over_log2"],
    )
    .param("t_min", t_min)
    .param("t_max", t_max)
    .param("samples", samples)
    .param("n_ratio", n_ratio);
    for (x, r) in ts.into_iter().zip(rows) {
        let (e, a) = r?;
        let res = e - a;
        table.push(vec![x.into(), e.into(), a.into(), res.into(), (res.abs() / x.ln().powi(2)).into()]);
    }
    Ok(Output::Table(table))
}

fn cmd_voronoi(
    kind: KindArg,
    x_min: f64,
    x_max: f64,
    samples: usize,
    n: Option<u64>,
    seed: u64,
    budget: &Budget,
) -> Result<Output> {
    check_samples(samples)?;
    check_interval(x_min, x_max, 1.0, "x range")?;
    let spec_of = |n: u64| match kind {
        KindArg::Delta => TruncationSpec::delta(n),
        KindArg::DeltaStar => TruncationSpec::delta_star(n),
        KindArg::Circle => unreachable!(),
    };
    require(kind != KindArg::Circle, "voronoi-check supports delta and delta-star")?;
    let n_max = n.unwrap_or_else(|| TruncationSpec::default_cutoff(x_max));
    require((1..=50_000_000).contains(&n_max), "cutoff must be between 1 and 5e7")?;
    budget.check(samples as f64 * n_max as f64 * 2.0 + n_max as f64 * 20.0, "voronoi-check")?;
    let t = tables(n_max)?;
    let series = VoronoiSeries::new(&t, spec_of(n_max)?)?;
    let xs = sample_uniform(seed, x_min, x_max, samples);
    let k = kind_of(kind);
    let rows: Vec<divmoment::Result<(u64, f64, f64)>> = xs
        .par_iter()
        .map(|&x| {
            let cut = n.unwrap_or_else(|| TruncationSpec::default_cutoff(x)).min(n_max);
            Ok((cut, k.evaluate(x)?, series.eval_truncated(x, cut)?))
        })
        .collect();
    let mut table = Table::new("voronoi-check", vec!["x", "n", "exact", "voronoi", "residual"])
        .param("kind", k.name())
        .param("x_min", x_min)
        .param("x_max", x_max)
        .param("samples", samples)
        .param("seed", seed);
    for (x, r) in xs.into_iter().zip(rows) {
        let (cut, e, v) = r?;
        table.push(vec![x.into(), cut.into(), e.into(), v.into(), (e - v).into()]);
    }
    Ok(Output::Table(table))
}

/// Committed fixtures: file name and the arguments that regenerate it.
pub fn fixture_specs() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("tables.csv", vec!["tables", "--limit", "200"]),
        ("delta.csv", vec!["delta", "--kind", "delta", "--x-min", "1", "--x-max", "1e5", "--samples", "40", "--seed", "7"]),
        ("delta_star.csv", vec!["delta", "--kind", "delta-star", "--x-min", "0.25", "--x-max", "1e5", "--samples", "40", "--seed", "7"]),
        ("circle.csv", vec!["delta", "--kind", "circle", "--x-min", "1", "--x-max", "1e5", "--samples", "40", "--seed", "7"]),
        ("estar.csv", vec!["estar", "--t-min", "10", "--t-max", "600", "--samples", "25", "--exact", "--seed", "3"]),
        ("voronoi_check.csv", vec!["voronoi-check", "--x-min", "1e3", "--x-max", "1e4", "--samples", "25", "--n", "1000", "--seed", "5"]),
        ("voronoi_check_star.csv", vec!["voronoi-check", "--kind", "delta-star", "--x-min", "1e3", "--x-max", "1e4", "--samples", "25", "--seed", "5"]),
        ("atkinson_check.csv", vec!["atkinson-check", "--t-min", "1000", "--t-max", "2000", "--samples", "12"]),
        ("constants.csv", vec!["constants", "--c2-y", "1000", "--c1-alpha", "50", "--c1-beta", "50", "--c1-h", "500"]),
        ("spacing.csv", vec!["spacing", "--pattern", "++--", "--ranges", "20,20,20,20", "--delta", "0.01"]),
        ("spacing_gap.csv", vec!["spacing", "--pattern", "++--", "--min-gap-limit", "50"]),
        ("moments_delta_k2.csv", vec!["moments", "--target", "delta", "--k", "2", "--t-min", "1000", "--t-max", "256000"]),
        ("moments_delta_star_k4.csv", vec!["moments", "--target", "delta-star", "--k", "4", "--t-min", "1000", "--t-max", "256000", "--c2-y", "1000"]),
        ("moments_circle_k4.csv", vec!["moments", "--target", "circle", "--k", "4", "--t-min", "1000", "--t-max", "256000"]),
        ("moments_e_proxy_k4.csv", vec!["moments", "--target", "e", "--route", "proxy", "--k", "4", "--t-min", "1000", "--t-max", "64000", "--c2-y", "1000"]),
    ]
}

fn cmd_fixtures(dir: &std::path::Path, config: &RunConfig) -> Result<Output> {
    fs::create_dir_all(dir)?;
    let mut table = Table::new("fixtures", vec!["file", "bytes"]);
    for (name, args) in fixture_specs() {
        let sub = fixture_config(&args, config)?;
        let bytes = dispatch(&sub)?.render(Format::Csv)?;
        fs::write(dir.join(name), &bytes)?;
        table.push(vec![name.into(), (bytes.len() as u64).into()]);
    }
    Ok(Output::Table(table))
}

/// Parses fixture arguments, inheriting budget and workers.
pub fn fixture_config(args: &[&str], parent: &RunConfig) -> Result<RunConfig> {
    use clap::Parser;
    let mut full = vec!["divmoment"];
    full.extend_from_slice(args);
    let mut sub = RunConfig::try_parse_from(full).map_err(|e| CliError::Usage(e.to_string()))?;
    sub.budget_seconds = parent.budget_seconds;
    sub.workers = parent.workers;
    Ok(sub)
}
