//! Littlewood-Paley type inequalities for the mixed norms:
//! `ρ_{p,q}(f) ≤ p ρ_{p,q}(f'(z)(1-|z|)) + |f(0)|`, its radial tail version,
//! the one-dimensional Hardy operator behind it, and the converse ratio.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{ExtExponent, PQPair};
use crate::norm::{rho_pq, rho_pq_field, FieldSamples};
use crate::quadrature::{refine_and_estimate, DiscGrid, PolarRule, RadialRule};
use crate::series::FunctionSpec;

/// Norms of `g` and of `Rg(x) = ∫₀^x g(t)/(1-t) dt` in `L^p([0,1))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HardyReport {
    pub norm_in: f64,
    pub norm_out: f64,
    pub ratio: f64,
}

pub fn hardy_r(g: impl Fn(f64) -> f64, p: f64, radial: &RadialRule) -> HardyReport {
    let lp =
        |vals: &[f64]| vals.iter().zip(radial.weights()).map(|(v, w)| w * v.abs().powf(p)).sum::<f64>().powf(1.0 / p);
    let input: Vec<f64> = radial.nodes().iter().map(|&t| g(t)).collect();
    let output = radial.cumulative_at_nodes(|t| g(t) / (1.0 - t));
    let norm_in = lp(&input);
    let norm_out = lp(&output);
    let ratio = if norm_in == 0.0 { 0.0 } else { norm_out / norm_in };
    HardyReport { norm_in, norm_out, ratio }
}

/// Both sides of a Littlewood-Paley type inequality `lhs ≤ rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LPReport {
    pub lhs: f64,
    pub rhs: f64,
    pub constant_used: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl LPReport {
    pub fn new(lhs: f64, rhs: f64, constant_used: f64, tolerance: f64) -> Self {
        LPReport { lhs, rhs, constant_used, slack: rhs - lhs, tolerance, holds: lhs <= rhs + tolerance }
    }
}

/// `‖f‖_p ≤ p ‖f'(x)(1-x)‖_p + |f(0)|` on `[0, 1)` by radial quadrature.
pub fn lp_check_1d(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    p: f64,
    radial: &RadialRule,
    tolerance: f64,
) -> LPReport {
    let lhs = radial.integrate(|x| f(x).abs().powf(p)).powf(1.0 / p);
    let weighted = radial.integrate(|x| (df(x).abs() * (1.0 - x)).powf(p)).powf(1.0 / p);
    LPReport::new(lhs, p * weighted + f(0.0).abs(), p, tolerance)
}

/// The field `|f'(z)|(1 - |z|)`.
pub fn derivative_field(f: &FunctionSpec) -> impl Fn(f64, f64) -> f64 + Sync {
    let df = f.derivative();
    move |r, t| df.eval(Complex64::from_polar(r, t)).norm() * (1.0 - r)
}

fn finite_p(pq: PQPair) -> Result<f64> {
    pq.p.value()
        .ok_or_else(|| Error::InvalidParameter("the Littlewood-Paley inequality is not available for p = inf".into()))
}

/// `ρ_{p,q}(f) ≤ p ρ_{p,q}(|f'|(1-|z|)) + |f(0)|`, both sides refined once.
/// The tolerance is `1e-6 + 10·(sum of error estimates)`.
pub fn lp_check(f: &FunctionSpec, pq: PQPair, grid: &DiscGrid) -> Result<LPReport> {
    let p = finite_p(pq)?;
    let lhs = rho_pq(f, pq, grid);
    let field = derivative_field(f);
    let weighted = refine_and_estimate(grid, |g| rho_pq_field(g, pq, &field));
    let f0 = f.eval(Complex64::new(0.0, 0.0)).norm();
    let tol = 1e-6 + 10.0 * (lhs.error_estimate + p * weighted.error_estimate);
    Ok(LPReport::new(lhs.value, p * weighted.value + f0, p, tol))
}

/// Direction(s) for the tail inequality.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMode {
    Ray(f64),
    /// Every grid angle; the reported sides belong to the angle of least slack.
    SupOverGrid,
}

/// `(∫_ρ |f|^p dr)^{1/p} ≤ p (∫_ρ |f'|^p (1-r)^p dr)^{1/p} + (1-ρ)^{1/p}|f(ρe^{iθ})|`.
pub fn lp_tail_check(f: &FunctionSpec, p: f64, rho: f64, mode: TailMode, grid: &DiscGrid) -> Result<LPReport> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("tail check needs finite p >= 1, got {p}")));
    }
    if !(0.0..grid.r_max()).contains(&rho) {
        return Err(Error::InvalidParameter(format!("rho = {rho} must lie in [0, r_max = {})", grid.r_max())));
    }
    let df = f.derivative();
    let radial = grid.radial();
    let along = |theta: f64| {
        let ray = |r: f64| Complex64::from_polar(r, theta);
        let lhs = radial.integrate_from(rho, |r| f.eval(ray(r)).norm().powf(p)).powf(1.0 / p);
        let tail = radial.integrate_from(rho, |r| (df.eval(ray(r)).norm() * (1.0 - r)).powf(p)).powf(1.0 / p);
        let boundary = (1.0 - rho).powf(1.0 / p) * f.eval(ray(rho)).norm();
        let rhs = p * tail + boundary;
        LPReport::new(lhs, rhs, p, 1e-10 * rhs.max(1.0))
    };
    Ok(match mode {
        TailMode::Ray(theta) => along(theta),
        TailMode::SupOverGrid => {
            let reports: Vec<LPReport> = grid.angles().par_iter().map(|&t| along(t)).collect();
            let holds = reports.iter().all(|r| r.holds);
            let worst = reports.into_iter().min_by(|a, b| a.slack.total_cmp(&b.slack)).expect("grid has angles");
            LPReport { holds, ..worst }
        }
    })
}

/// Exponent pairs for which `ρ_{p,q}(f'(z)(1-|z|)) ≤ C ρ_{p,q}(f)` is known:
/// `1 < p, q < ∞`, `p = 1` with `q < ∞`, and `p = ∞` with any `q`.
pub fn converse_covered(pq: PQPair) -> bool {
    match (pq.p, pq.q) {
        (ExtExponent::Infinite, _) => true,
        (ExtExponent::Finite(p), ExtExponent::Finite(_)) if p == 1.0 => true,
        (ExtExponent::Finite(p), ExtExponent::Finite(q)) => p > 1.0 && q > 1.0,
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConverseReport {
    pub ratio: f64,
    pub covered: bool,
}

fn gate(pq: PQPair, experimental: bool) -> Result<bool> {
    let covered = converse_covered(pq);
    if !covered && !experimental {
        return Err(Error::UncoveredRange(format!(
            "the converse inequality is open for (p, q) = ({}, {})",
            pq.p, pq.q
        )));
    }
    Ok(covered)
}

/// `ρ_{p,q}(|f'|(1-|z|)) / ρ_{p,q}(f)` on one grid. Open exponent pairs need
/// `experimental`.
pub fn converse_ratio(f: &FunctionSpec, pq: PQPair, grid: &DiscGrid, experimental: bool) -> Result<ConverseReport> {
    let covered = gate(pq, experimental)?;
    let denom = crate::norm::rho_pq_on(f, pq, grid);
    if denom == 0.0 {
        return Err(Error::InvalidParameter("converse ratio of the zero function".into()));
    }
    let num = rho_pq_field(grid, pq, derivative_field(f));
    Ok(ConverseReport { ratio: num / denom, covered })
}

/// The default `(p, q)` sweep `{1, 2, 3} × {1, 2, ∞}`.
pub fn default_pairs() -> Vec<PQPair> {
    let mut out = Vec::new();
    for p in [1.0, 2.0, 3.0] {
        for q in [ExtExponent::Finite(1.0), ExtExponent::Finite(2.0), ExtExponent::Infinite] {
            out.push(PQPair::new(ExtExponent::Finite(p), q));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub index: usize,
    pub p: ExtExponent,
    pub q: ExtExponent,
    pub report: LPReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct LPCorpusSummary {
    pub functions: usize,
    pub checks: usize,
    pub failures: usize,
    pub min_slack: f64,
    pub max_lhs_over_rhs: f64,
    pub entries: Vec<CorpusEntry>,
}

/// LP inequality for every function and pair. Each function is sampled once
/// per grid and all pairs are reduced from the shared samples; `p = ∞` for
/// the `q`-sup is taken over nodes.
pub fn lp_corpus(funcs: &[FunctionSpec], pairs: &[PQPair], grid: &DiscGrid) -> Result<LPCorpusSummary> {
    for &pq in pairs {
        finite_p(pq)?;
    }
    let fine = grid.refined();
    let per_function: Vec<Vec<CorpusEntry>> = funcs
        .par_iter()
        .enumerate()
        .map(|(index, f)| {
            let field = derivative_field(f);
            let f_c = FieldSamples::of_spec(grid, f);
            let f_f = FieldSamples::of_spec(&fine, f);
            let d_c = FieldSamples::new(grid, &field);
            let d_f = FieldSamples::new(&fine, &field);
            let f0 = f.eval(Complex64::new(0.0, 0.0)).norm();
            pairs
                .iter()
                .map(|&pq| {
                    let p = pq.p.value().expect("checked finite");
                    let (l_c, l_f) = (f_c.rho(grid, pq), f_f.rho(&fine, pq));
                    let (r_c, r_f) = (d_c.rho(grid, pq), d_f.rho(&fine, pq));
                    let tol = 1e-6 + 10.0 * ((l_f - l_c).abs() + p * (r_f - r_c).abs());
                    CorpusEntry { index, p: pq.p, q: pq.q, report: LPReport::new(l_f, p * r_f + f0, p, tol) }
                })
                .collect()
        })
        .collect();
    let entries: Vec<CorpusEntry> = per_function.into_iter().flatten().collect();
    Ok(LPCorpusSummary {
        functions: funcs.len(),
        checks: entries.len(),
        failures: entries.iter().filter(|e| !e.report.holds).count(),
        min_slack: entries.iter().map(|e| e.report.slack).fold(f64::INFINITY, f64::min),
        max_lhs_over_rhs: entries.iter().map(|e| e.report.lhs / e.report.rhs).fold(0.0, f64::max),
        entries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConverseCorpusSummary {
    pub p: ExtExponent,
    pub q: ExtExponent,
    pub covered: bool,
    pub ratios: Vec<f64>,
    pub running_max: Vec<f64>,
    pub max_ratio: f64,
    pub argmax: usize,
}

/// Converse ratios over a corpus with the running maximum, an empirical
/// lower bound for the best constant `C(p, q)`.
pub fn converse_corpus(
    funcs: &[FunctionSpec],
    pq: PQPair,
    grid: &DiscGrid,
    experimental: bool,
) -> Result<ConverseCorpusSummary> {
    let covered = gate(pq, experimental)?;
    let ratios: Vec<f64> =
        funcs.par_iter().map(|f| converse_ratio(f, pq, grid, true).map(|r| r.ratio)).collect::<Result<_>>()?;
    let mut running_max = Vec::with_capacity(ratios.len());
    let (mut max_ratio, mut argmax) = (0.0, 0);
    for (i, &r) in ratios.iter().enumerate() {
        if r > max_ratio {
            max_ratio = r;
            argmax = i;
        }
        running_max.push(max_ratio);
    }
    Ok(ConverseCorpusSummary { p: pq.p, q: pq.q, covered, ratios, running_max, max_ratio, argmax })
}
