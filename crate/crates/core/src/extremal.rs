//! Explicit extremal constructions with checkable constants: lacunary norm
//! equivalence, the `ℓ¹`-copy integrals for `g = -log(1 - z)`, the kernel
//! bound `φ_k ≤ min{1, 8ε²/|θ-a|²}`, and the kernels equivalent to the `c₀`
//! basis in the dual of `RM(p, 1)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{ExtExponent, PQPair};
use crate::norm::{rho_pq, rho_pq_on};
use crate::quadrature::{integrate_interval, Closure, DiscGrid, FocusedGrid, RadialRule};
use crate::series::{tg_closed_form, FunctionSpec};

#[derive(Clone, Debug, Serialize)]
pub struct LacunaryEquiv {
    pub numeric: f64,
    pub model: f64,
    pub ratio: f64,
    /// Terms dropped because their exponent exceeds `M/4`.
    pub dropped_terms: usize,
}

/// Compares `ρ_{p,q}(Σ α_k z^{n_k})` with `(Σ |α_k|^p / n_k)^{1/p}`.
///
/// Exponents above `M/4` are not resolved by the angular rule: with
/// `truncate` they are dropped from both sides, otherwise they are an error.
pub fn lacunary_equiv(
    exponents: &[u64],
    coeffs: &[Complex64],
    pq: PQPair,
    grid: &DiscGrid,
    truncate: bool,
) -> Result<LacunaryEquiv> {
    let p = pq.p.value().ok_or_else(|| Error::InvalidParameter("lacunary model needs finite p".into()))?;
    if exponents.contains(&0) {
        return Err(Error::InvalidParameter("the lacunary model has no constant term".into()));
    }
    let limit = (grid.angular_count() / 4) as u64;
    let keep = exponents.iter().take_while(|&&n| n <= limit).count();
    if keep < exponents.len() && !truncate {
        return Err(Error::InvalidParameter(format!(
            "degree {} exceeds the angular resolution M/4 = {limit}",
            exponents.last().copied().unwrap_or(0)
        )));
    }
    if keep == 0 {
        return Err(Error::InvalidParameter(format!("no exponent is at most M/4 = {limit}")));
    }
    let f = FunctionSpec::lacunary(exponents[..keep].to_vec(), coeffs[..keep].to_vec(), None)?;
    let numeric = rho_pq_on(&f, pq, grid);
    let model =
        exponents[..keep].iter().zip(coeffs).map(|(&n, a)| a.norm().powf(p) / n as f64).sum::<f64>().powf(1.0 / p);
    Ok(LacunaryEquiv { numeric, model, ratio: numeric / model, dropped_terms: exponents.len() - keep })
}

/// `β ≥ 2` and `n ≥ 1` index the functions `f_n = T_g(β^n z^{β^n})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct L1CopyParams {
    pub beta: u64,
    pub n: u32,
}

impl L1CopyParams {
    pub fn new(beta: u64, n: u32) -> Result<Self> {
        if beta < 2 || n == 0 {
            return Err(Error::InvalidParameter(format!("need beta >= 2 and n >= 1, got ({beta}, {n})")));
        }
        if (n as f64) * (beta as f64).log2() > 52.0 {
            return Err(Error::InvalidParameter(format!("beta^n = {beta}^{n} is beyond f64 resolution")));
        }
        Ok(L1CopyParams { beta, n })
    }

    /// `N = β^n`.
    pub fn power(self) -> u64 {
        self.beta.pow(self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct L1CopyIntegral {
    pub closed_form: f64,
    pub quadrature: f64,
}

/// Largest `N` for which the closed-form primitive is expanded as a polynomial.
const MAX_EXPANDED_POWER: u64 = 1 << 16;

/// `∫₀¹ |T_g(N z^N)(r)| dr = N/(1+N)` for `g = -log(1-z)`, against radial
/// quadrature of the closed-form primitive on the closed dyadic rule of the
/// grid's depth.
pub fn l1_copy_integral(params: L1CopyParams, grid: &DiscGrid) -> Result<L1CopyIntegral> {
    let big_n = params.power();
    let nf = big_n as f64;
    let closed_form = nf / (1.0 + nf);
    let rule = RadialRule::dyadic(grid.shell_depth(), grid.nodes_per_panel(), Closure::Graded);
    let quadrature = if big_n <= MAX_EXPANDED_POWER {
        let f = FunctionSpec::monomial(big_n as usize, Complex64::new(nf, 0.0));
        let tg = tg_closed_form(&f, &FunctionSpec::log_kernel(Complex64::new(1.0, 0.0))?)?;
        rule.integrate(|r| tg.eval(Complex64::new(r, 0.0)).norm())
    } else {
        l1_tail(big_n, 0.0, rule.gauss().order())
    };
    Ok(L1CopyIntegral { closed_form, quadrature })
}

/// `∫_a^1 f_N` with `f_N(r) = N ∫₀^r u^N/(1-u) du ≥ 0`, by Fubini:
/// `N [(1-a) ∫₀^a u^N/(1-u) du + ∫_a^1 u^N du]`.
pub fn l1_tail(big_n: u64, a: f64, order: usize) -> f64 {
    let nf = big_n as f64;
    let inner = integrate_interval(|u| u.powf(nf) / (1.0 - u), 0.0, a, order);
    let upper = (1.0 - a.powf(nf + 1.0)) / (nf + 1.0);
    nf * ((1.0 - a) * inner + upper)
}

/// `∫₀^b f_N = N ∫₀^b u^N (b-u)/(1-u) du`.
pub fn l1_head(big_n: u64, b: f64, order: usize) -> f64 {
    let nf = big_n as f64;
    nf * integrate_interval(|u| u.powf(nf) * (b - u) / (1.0 - u), 0.0, b, order)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtractedInterval {
    pub n: u32,
    pub r_lo: f64,
    pub r_hi: f64,
    pub inside: f64,
    pub outside: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct L1Extraction {
    pub beta: u64,
    pub delta: f64,
    pub intervals: Vec<ExtractedInterval>,
    pub verified: bool,
}

/// The greedy choice of radii `r_k` and indices `n_k` that isolates each
/// `f_{n_k}` on `I_k = (r_{k-1}, r_k)`: every `∫_{I_k} f_{n_k} > δ` and
/// `∫_{∪_{j≠k} I_j} f_{n_k} < δ/2`, `δ = (2/3) β/(1+β)`. Radii are dyadic
/// and both tails are pushed below `δ/4`.
pub fn l1_copy_extraction(beta: u64, terms: usize, order: usize) -> Result<L1Extraction> {
    L1CopyParams::new(beta, 1)?;
    let b = beta as f64;
    let delta = 2.0 / 3.0 * b / (1.0 + b);
    let max_n = (52.0 / b.log2()).floor() as u32;
    let mut ns = vec![1u32];
    let mut radii = vec![0.0f64];
    for k in 0..terms {
        let big_n = beta.pow(ns[k]);
        let prev = radii[k];
        let level = (1..=crate::quadrature::MAX_DEPTH as i32)
            .map(|m| 1.0 - 0.5f64.powi(m))
            .find(|&r| r > prev && l1_tail(big_n, r, order) < delta / 4.0)
            .ok_or_else(|| Error::InvalidParameter("no dyadic radius isolates the tail".into()))?;
        radii.push(level);
        if k + 1 < terms {
            let next = (ns[k] + 1..=max_n)
                .find(|&n| l1_head(beta.pow(n), level, order) < delta / 4.0)
                .ok_or_else(|| Error::InvalidParameter(format!("ran out of f64 range after {} terms", k + 1)))?;
            ns.push(next);
        }
    }
    let top = *radii.last().expect("nonempty");
    let intervals: Vec<ExtractedInterval> = (0..terms)
        .map(|k| {
            let big_n = beta.pow(ns[k]);
            let (lo, hi) = (radii[k], radii[k + 1]);
            let tail_lo = l1_tail(big_n, lo, order);
            let tail_hi = l1_tail(big_n, hi, order);
            let inside = tail_lo - tail_hi;
            let outside = l1_head(big_n, lo, order) + (tail_hi - l1_tail(big_n, top, order));
            ExtractedInterval { n: ns[k], r_lo: lo, r_hi: hi, inside, outside }
        })
        .collect();
    let verified = intervals.iter().all(|i| i.inside > delta && i.outside < delta / 2.0);
    Ok(L1Extraction { beta, delta, intervals, verified })
}

/// `ε ∈ (0, 1/2)` and the angle `a` of `u(z) = ε²/(z - (1+ε)e^{ia})³`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UkParams {
    pub eps: f64,
    pub a: f64,
}

impl UkParams {
    pub fn new(eps: f64, a: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 0.5) {
            return Err(Error::InvalidParameter(format!("eps = {eps} must lie in (0, 1/2)")));
        }
        Ok(UkParams { eps, a })
    }
}

/// Order of the Gauss-Legendre rule on each dyadic piece of `[0, 1)`.
const PHI_ORDER: usize = 16;

/// `φ(θ) = ∫₀¹ |u(re^{iθ})| dr`.
pub fn uk_phi(params: UkParams, theta: f64) -> Result<f64> {
    let UkParams { eps, a } = params;
    if (theta - a).abs() > PI * (1.0 + 1e-15) {
        return Err(Error::InvalidParameter(format!("|theta - a| = {} exceeds pi", (theta - a).abs())));
    }
    let pole = Complex64::from_polar(1.0 + eps, a);
    let dir = Complex64::from_polar(1.0, theta);
    Ok(integrate_interval(|r| eps * eps / (dir * r - pole).norm().powi(3), 0.0, 1.0, PHI_ORDER))
}

/// `1/2 - ε²/(2(1+ε)²)`, the value of `φ` on the ray through the pole.
pub fn uk_phi_on_axis(eps: f64) -> f64 {
    0.5 - eps * eps / (2.0 * (1.0 + eps) * (1.0 + eps))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClaimCheck {
    pub max_violation: f64,
    pub worst_eps: f64,
    pub worst_offset: f64,
    pub holds: bool,
}

/// `max φ(a + t) - min{1, 8ε²/t²}` over `ε ∈ eps_grid`, `t ∈ offsets`.
pub fn claim_check(eps_grid: &[f64], offsets: &[f64]) -> Result<ClaimCheck> {
    let mut cells = Vec::with_capacity(eps_grid.len() * offsets.len());
    for &eps in eps_grid {
        let params = UkParams::new(eps, 0.0)?;
        for &t in offsets {
            cells.push((params, t));
        }
    }
    let values: Vec<(f64, f64, f64)> = cells
        .par_iter()
        .map(|&(params, t)| {
            let bound = if t == 0.0 { 1.0 } else { (8.0 * params.eps * params.eps / (t * t)).min(1.0) };
            uk_phi(params, t).map(|phi| (phi - bound, params.eps, t))
        })
        .collect::<Result<_>>()?;
    let (max_violation, worst_eps, worst_offset) =
        values.into_iter().fold((f64::NEG_INFINITY, 0.0, 0.0), |acc, v| if v.0 > acc.0 { v } else { acc });
    Ok(ClaimCheck { max_violation, worst_eps, worst_offset, holds: max_violation <= 1e-9 })
}

/// `ε = 2^{-3}, …, 2^{-10}`.
pub fn default_claim_eps() -> Vec<f64> {
    (3..=10).map(|k| 0.5f64.powi(k)).collect()
}

/// 64 offsets `πk/64`, `k = 1..=64`.
pub fn default_claim_offsets() -> Vec<f64> {
    (1..=64).map(|k| PI * k as f64 / 64.0).collect()
}

/// Radii `r_n` with `(1 - r_{n+1})/(1 - r_n) ≤ β/n²`, exponent `p`, and
/// `β < 1/(1 + 2^{4+1/p})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct C0KernelParams {
    pub radii: Vec<f64>,
    pub p: f64,
    pub beta: f64,
}

impl C0KernelParams {
    pub fn new(radii: Vec<f64>, p: ExtExponent, beta: f64) -> Result<Self> {
        let p = p.value().ok_or_else(|| Error::InvalidParameter("c0 kernels need finite p".into()))?;
        if p < 1.0 {
            return Err(Error::InvalidParameter(format!("p = {p} must be >= 1")));
        }
        let cap = 1.0 / (1.0 + 2f64.powf(4.0 + 1.0 / p));
        if !(beta > 0.0 && beta < cap) {
            return Err(Error::InvalidParameter(format!("beta = {beta} must lie in (0, {cap})")));
        }
        if radii.iter().any(|&r| !(0.5..1.0).contains(&r)) {
            return Err(Error::InvalidParameter("radii must lie in [1/2, 1)".into()));
        }
        for (i, w) in radii.windows(2).enumerate() {
            let n = (i + 1) as f64;
            let ratio = (1.0 - w[1]) / (1.0 - w[0]);
            if !(w[1] > w[0]) || ratio > beta / (n * n) * (1.0 + 1e-9) {
                return Err(Error::HypothesisFailed(format!(
                    "separation fails at n = {}: (1-r_(n+1))/(1-r_n) = {ratio} > beta/n^2 = {}",
                    i + 1,
                    beta / (n * n)
                )));
            }
        }
        Ok(C0KernelParams { radii, p, beta })
    }

    /// `ε_1 = eps1`, `ε_{n+1} = β ε_n / n²`, `r_n = 1 - ε_n`.
    pub fn from_decay(eps1: f64, terms: usize, p: ExtExponent, beta: f64) -> Result<Self> {
        let mut radii = Vec::with_capacity(terms);
        let mut eps = eps1;
        for n in 1..=terms {
            radii.push(1.0 - eps);
            eps *= beta / (n * n) as f64;
        }
        Self::new(radii, p, beta)
    }

    /// `C₂ = 4³((2p+1)^{1/p} + 1)/p^{1/p}`.
    pub fn c2(&self) -> f64 {
        let p = self.p;
        64.0 * ((2.0 * p + 1.0).powf(1.0 / p) + 1.0) / p.powf(1.0 / p)
    }

    /// `C₃ = 2^{2+1/p}`.
    pub fn c3(&self) -> f64 {
        2f64.powf(2.0 + 1.0 / self.p)
    }

    fn power(&self) -> f64 {
        2.0 + 1.0 / self.p
    }
}

/// `f_n(z) = (1 - r_n)(1 - z̄_n z)^{-(2+1/p)}` with `z_n = r_n e^{ia}`; `n` is
/// zero-based.
pub fn c0_kernel(n: usize, params: &C0KernelParams, a: f64) -> Result<FunctionSpec> {
    let r = *params.radii.get(n).ok_or_else(|| Error::InvalidParameter(format!("no radius with index {n}")))?;
    let zn = Complex64::from_polar(r, a);
    FunctionSpec::kernel(zn.conj(), params.power(), Complex64::new(1.0 - r, 0.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct C0Report {
    pub c2: f64,
    pub c3: f64,
    pub rho: Vec<f64>,
    pub rho_error_estimates: Vec<f64>,
    pub diagonal: Vec<f64>,
    pub offdiagonal: Vec<f64>,
    pub rho_bound_ok: bool,
    pub diagonal_ok: bool,
    pub offdiag_ok: bool,
}

/// `ρ_{p,1}(f_n) ≤ C₂`, `|f_n(z_n)|(1-r_n)^{1+1/p} ≥ 1/C₃` and
/// `Σ_{k≠n} |f_n(z_k)|(1-r_k)^{1+1/p} ≤ 1/(2C₃)`, all directions `a = 0`.
/// Norms use a focused grid of the given depth around the common direction.
pub fn c0_constant_checks(params: &C0KernelParams, depth: usize, order: usize) -> Result<C0Report> {
    if params.radii.len() < 3 {
        return Err(Error::InvalidParameter("c0 checks need at least 3 radii".into()));
    }
    let grid = FocusedGrid::new(0.0, depth, order)?;
    let pq = PQPair::new(ExtExponent::Finite(params.p), ExtExponent::Finite(1.0));
    let kernels: Vec<FunctionSpec> =
        (0..params.radii.len()).map(|n| c0_kernel(n, params, 0.0)).collect::<Result<_>>()?;
    let reports: Vec<_> = kernels.par_iter().map(|f| rho_pq(f, pq, &grid)).collect();
    let weight = |r: f64| (1.0 - r).powf(1.0 + 1.0 / params.p);
    let diagonal: Vec<f64> =
        params.radii.iter().zip(&kernels).map(|(&r, f)| f.eval(Complex64::new(r, 0.0)).norm() * weight(r)).collect();
    let offdiagonal: Vec<f64> = kernels
        .iter()
        .enumerate()
        .map(|(n, f)| {
            params
                .radii
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != n)
                .map(|(_, &r)| f.eval(Complex64::new(r, 0.0)).norm() * weight(r))
                .sum()
        })
        .collect();
    let (c2, c3) = (params.c2(), params.c3());
    Ok(C0Report {
        c2,
        c3,
        rho_bound_ok: reports.iter().all(|r| r.value <= c2),
        rho: reports.iter().map(|r| r.value).collect(),
        rho_error_estimates: reports.iter().map(|r| r.error_estimate).collect(),
        diagonal_ok: diagonal.iter().all(|&d| d >= 1.0 / c3),
        offdiag_ok: offdiagonal.iter().all(|&s| s <= 1.0 / (2.0 * c3) + 1e-9),
        diagonal,
        offdiagonal,
    })
}

/// Default focused-grid depth for the kernel norms.
pub const C0_DEPTH: usize = 40;

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn lacunary_single_term_and_scaling() {
        let grid = DiscGrid::standard();
        for (n0, p) in [(4u64, 1.0), (16, 2.0), (32, 3.0)] {
            let pq = PQPair::finite(p, 2.0);
            let e = lacunary_equiv(&[n0], &[c(2.0)], pq, &grid, false).unwrap();
            let nf = n0 as f64;
            assert!((e.numeric - 2.0 * (nf * p + 1.0).powf(-1.0 / p)).abs() < 1e-9);
            assert!((e.model - 2.0 * nf.powf(-1.0 / p)).abs() < 1e-15);
            let lo = p.powf(-1.0 / p) * (1.0 + 1.0 / (nf * p)).powf(-1.0 / p);
            assert!(e.ratio > lo - 1e-12 && e.ratio < 1.0);
        }
        let exps = [1u64, 2, 4, 8, 16, 32];
        let coeffs = [c(1.0), c(-0.5), Complex64::new(0.0, 2.0), c(0.25), c(1.0), c(0.7)];
        let pq = PQPair::finite(2.0, 1.0);
        let a = lacunary_equiv(&exps, &coeffs, pq, &grid, false).unwrap();
        let scaled: Vec<Complex64> = coeffs.iter().map(|&x| x * 10.0).collect();
        let b = lacunary_equiv(&exps, &scaled, pq, &grid, false).unwrap();
        assert!((a.ratio - b.ratio).abs() < 1e-13);
        assert!(lacunary_equiv(&[1, 2, 4, 128], &coeffs[..4], pq, &grid, false).is_err());
        let t = lacunary_equiv(&[1, 2, 4, 128], &coeffs[..4], pq, &grid, true).unwrap();
        assert_eq!(t.dropped_terms, 1);
    }

    #[test]
    fn lacunary_ratios_are_uniform_in_q() {
        let grid = DiscGrid::with_closure(4096, 16, 8, Closure::Graded).unwrap();
        let exps: Vec<u64> = (0..=10).map(|k| 1u64 << k).collect();
        let coeffs = vec![c(1.0); exps.len()];
        let ratios: Vec<f64> = [ExtExponent::Finite(1.0), ExtExponent::Finite(2.0), ExtExponent::Infinite]
            .iter()
            .map(|&q| {
                lacunary_equiv(&exps, &coeffs, PQPair::new(ExtExponent::Finite(1.0), q), &grid, false).unwrap().ratio
            })
            .collect();
        for a in &ratios {
            for b in &ratios {
                assert!(a / b < 4.0, "{ratios:?}");
            }
        }
    }

    #[test]
    fn l1_copy_values() {
        let grid = DiscGrid::standard();
        let r = l1_copy_integral(L1CopyParams::new(2, 1).unwrap(), &grid).unwrap();
        assert!((r.closed_form - 2.0 / 3.0).abs() < 1e-15);
        assert!((r.quadrature - r.closed_form).abs() < 1e-9);
        let r = l1_copy_integral(L1CopyParams::new(2, 10).unwrap(), &grid).unwrap();
        assert!((r.closed_form - 1024.0 / 1025.0).abs() < 1e-15);
        assert!((r.quadrature - r.closed_form).abs() < 1e-6);
        for beta in [2u64, 3, 5] {
            let b = beta as f64;
            for n in 1..6 {
                let v = L1CopyParams::new(beta, n).unwrap().power() as f64;
                assert!(v / (1.0 + v) >= b / (1.0 + b));
            }
        }
        // Fubini formulas against the expanded primitive
        for a in [0.3, 0.9, 0.99] {
            let split = l1_tail(64, a, 16) + l1_head(64, a, 16);
            assert!((split - 64.0 / 65.0).abs() < 1e-12, "{split}");
        }
        assert!(L1CopyParams::new(1, 3).is_err());
    }

    #[test]
    fn extraction_isolates_each_function() {
        let e = l1_copy_extraction(2, 4, 16).unwrap();
        assert!(e.verified, "{e:?}");
        assert!((e.delta - 4.0 / 9.0).abs() < 1e-15);
        assert!(e.intervals.windows(2).all(|w| w[1].n > w[0].n && w[1].r_lo == w[0].r_hi));
    }

    #[test]
    fn phi_values() {
        for eps in [0.3, 0.1, 0.01, 2f64.powi(-10)] {
            let v = uk_phi(UkParams::new(eps, 0.4).unwrap(), 0.4).unwrap();
            assert!((v - uk_phi_on_axis(eps)).abs() < 1e-12, "{eps}: {v}");
            assert!(v <= 0.5);
        }
        let v = uk_phi(UkParams::new(0.1, 0.0).unwrap(), PI).unwrap();
        assert!(v <= PI * 0.01 / 4.0);
        let v = uk_phi(UkParams::new(0.05, 1.0).unwrap(), 1.5).unwrap();
        assert!(v <= 0.08);
        // even in θ - a and nonincreasing in |θ - a|
        let params = UkParams::new(0.05, 0.2).unwrap();
        let offs = default_claim_offsets();
        let vals: Vec<f64> = offs.iter().map(|&t| uk_phi(params, 0.2 + t).unwrap()).collect();
        for (t, v) in offs.iter().zip(&vals) {
            assert!((uk_phi(params, 0.2 - t).unwrap() - v).abs() < 1e-14);
        }
        assert!(vals.windows(2).all(|w| w[1] <= w[0] + 1e-15));
        assert!(UkParams::new(0.5, 0.0).is_err());
    }

    #[test]
    fn claim_holds_on_default_grid() {
        let r = claim_check(&default_claim_eps(), &default_claim_offsets()).unwrap();
        assert!(r.holds, "{r:?}");
        // ε → 0 at fixed θ: φ scales like ε²
        let t = 1.0;
        let a = uk_phi(UkParams::new(2f64.powi(-8), 0.0).unwrap(), t).unwrap();
        let b = uk_phi(UkParams::new(2f64.powi(-9), 0.0).unwrap(), t).unwrap();
        assert!(b < a && (a / b - 4.0).abs() < 0.05);
    }

    #[test]
    fn c0_kernel_values() {
        let params = C0KernelParams::from_decay(0.1, 3, ExtExponent::Finite(1.0), 0.02).unwrap();
        assert_eq!(params.c2(), 256.0);
        assert_eq!(params.c3(), 8.0);
        let p2 = C0KernelParams::from_decay(0.1, 3, ExtExponent::Finite(2.0), 0.02).unwrap();
        assert!((p2.c2() - 64.0 * (5f64.sqrt() + 1.0) / 2f64.sqrt()).abs() < 1e-12);
        assert!((p2.c2() - 146.4).abs() < 0.05);

        let r09 = C0KernelParams { radii: vec![0.9], p: 1.0, beta: 0.02 };
        let f = c0_kernel(0, &r09, 0.0).unwrap();
        let diag = f.eval(c(0.9)).norm() * 0.1f64.powi(2);
        assert!((diag - 1.0 / 1.9f64.powi(3)).abs() < 1e-12);
        assert!((diag - 0.1458).abs() < 1e-4);
        assert!((f.eval(c(0.0)) - c(0.1)).norm() < 1e-15);
        let g = c0_kernel(0, &r09, 1.3).unwrap();
        let z = Complex64::from_polar(0.9, 1.3);
        assert!((g.eval(z).norm() * 0.01 - 1.0 / 1.9f64.powi(3)).abs() < 1e-12);
    }

    #[test]
    fn c0_checks_pass() {
        let params = C0KernelParams::from_decay(0.1, 4, ExtExponent::Finite(1.0), 0.02).unwrap();
        let rep = c0_constant_checks(&params, C0_DEPTH, 8).unwrap();
        assert!(rep.rho_bound_ok && rep.diagonal_ok && rep.offdiag_ok, "{rep:?}");
        for (v, e) in rep.rho.iter().zip(&rep.rho_error_estimates) {
            assert!(*e < 1e-6 * v, "{v} ± {e}");
        }
        assert!(C0KernelParams::new(vec![0.5, 0.9], ExtExponent::Finite(1.0), 0.02).is_err());
        assert!(C0KernelParams::from_decay(0.1, 3, ExtExponent::Finite(1.0), 0.05).is_err());
    }
}
