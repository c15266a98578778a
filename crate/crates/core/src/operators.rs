//! Diagnostics for the symbol `g` of `T_g f(z) = ∫₀^z f(w) g'(w) dw`: Bloch
//! seminorm, little-Bloch and weakly-little-Bloch classifiers, and the
//! pointwise derivative bounds behind compactness estimates.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::norm::{decay_verdict, ProfileQuantity, RadialProfile, Verdict, VERDICT_WINDOW};
use crate::quadrature::{refine_and_estimate, DiscGrid, NormReport, PolarRule};
use crate::series::FunctionSpec;

/// `sup (1 - |z|²) |g'(z)|` over the grid, refined once.
pub fn bloch_seminorm(g: &FunctionSpec, grid: &DiscGrid) -> NormReport {
    let dg = g.derivative();
    refine_and_estimate(grid, |grid| bloch_sup_on(&dg, grid))
}

fn bloch_sup_on<G: PolarRule>(dg: &FunctionSpec, grid: &G) -> f64 {
    grid.angles()
        .par_iter()
        .map(|&t| grid.radial().sup(|r| (1.0 - r * r) * dg.eval(Complex64::from_polar(r, t)).norm()))
        .reduce(|| 0.0, f64::max)
}

/// Classifier thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Thresholds {
    pub b0_eps: f64,
    pub b0w_eps: f64,
    /// Angular measure (as a fraction of the circle) above which a set of
    /// non-decaying directions counts as non-negligible.
    pub measure: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { b0_eps: 1e-2, b0w_eps: 1e-2, measure: 0.1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub in_b: Verdict,
    pub in_b0: Verdict,
    pub in_b0w: Verdict,
}

/// `θ ↦ (1 - r)|g'(re^{iθ})|` at the profile abscissae.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectionalProfile {
    pub theta: f64,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolDiagnostics {
    pub bloch_seminorm: f64,
    pub bloch_norm: f64,
    pub seminorm_error_estimate: f64,
    pub little_bloch_profile: RadialProfile,
    pub directional_profiles: Vec<DirectionalProfile>,
    pub classification: Classification,
    pub horizon: f64,
}

/// Growth factor per dyadic step that marks a profile as unbounded.
const GROWTH_RATIO: f64 = 1.5;
/// Slack for "the horizon value does not exceed what came before".
const BOUNDED_SLACK: f64 = 1.05;

fn bloch_verdict(values: &[f64]) -> Verdict {
    if values.len() < 2 {
        return Verdict::Undecided;
    }
    let window = &values[values.len().saturating_sub(VERDICT_WINDOW)..];
    let last = *values.last().expect("nonempty");
    let earlier = values[..values.len() - 1].iter().copied().fold(0.0, f64::max);
    if window.windows(2).all(|w| w[1] >= GROWTH_RATIO * w[0] && w[1] > 0.0) {
        Verdict::No
    } else if last <= BOUNDED_SLACK * earlier || last == 0.0 {
        Verdict::Yes
    } else {
        Verdict::Undecided
    }
}

/// Full symbol report at the grid's default abscissae. `directions` defaults
/// to the grid angles when empty; each direction carries equal weight.
pub fn diagnose_symbol(
    g: &FunctionSpec,
    grid: &DiscGrid,
    thresholds: Thresholds,
    directions: &[f64],
) -> Result<SymbolDiagnostics> {
    let dg = g.derivative();
    let seminorm = bloch_seminorm(g, grid);
    let abscissae = grid.default_abscissae();
    let angles = grid.angles();

    let little: Vec<f64> = abscissae
        .par_iter()
        .map(|&r| {
            angles.iter().map(|&t| (1.0 - r * r) * dg.eval(Complex64::from_polar(r, t)).norm()).fold(0.0, f64::max)
        })
        .collect();
    let little_bloch_profile = RadialProfile::new(abscissae.clone(), little, ProfileQuantity::BlochRadial)?;

    let directions = if directions.is_empty() { angles } else { directions };
    let directional_profiles: Vec<DirectionalProfile> = directions
        .par_iter()
        .map(|&theta| DirectionalProfile {
            theta,
            values: abscissae.iter().map(|&r| (1.0 - r) * dg.eval(Complex64::from_polar(r, theta)).norm()).collect(),
        })
        .collect();

    let in_b = bloch_verdict(&little_bloch_profile.values);
    let in_b0 = decay_verdict(&little_bloch_profile.values, thresholds.b0_eps);
    let in_b0w = weak_verdict(&directional_profiles, thresholds);

    Ok(SymbolDiagnostics {
        bloch_seminorm: seminorm.value,
        bloch_norm: g.eval(Complex64::new(0.0, 0.0)).norm() + seminorm.value,
        seminorm_error_estimate: seminorm.error_estimate,
        little_bloch_profile,
        directional_profiles,
        classification: Classification { in_b, in_b0, in_b0w },
        horizon: grid.r_max(),
    })
}

fn weak_verdict(profiles: &[DirectionalProfile], thresholds: Thresholds) -> Verdict {
    if profiles.is_empty() {
        return Verdict::Undecided;
    }
    let share = 1.0 / profiles.len() as f64;
    let verdicts: Vec<Verdict> = profiles.iter().map(|d| decay_verdict(&d.values, thresholds.b0w_eps)).collect();
    let stuck = verdicts.iter().filter(|&&v| v == Verdict::No).count() as f64 * share;
    let open = verdicts.iter().filter(|&&v| v != Verdict::Yes).count() as f64 * share;
    if stuck > thresholds.measure {
        Verdict::No
    } else if open <= thresholds.measure {
        Verdict::Yes
    } else {
        Verdict::Undecided
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SecondDerivativeCheck {
    pub holds: bool,
    pub max_ratio: f64,
}

/// `max |g''(z)|(1-|z|)² / (4B)` over the grid nodes and the origin; the bound holds when
/// this is at most `1 + 1e-9`.
pub fn second_derivative_bound_check(g: &FunctionSpec, b: f64, grid: &DiscGrid) -> Result<SecondDerivativeCheck> {
    if !(b > 0.0) {
        return Err(Error::InvalidParameter(format!("Bloch bound B = {b} must be positive")));
    }
    let d1 = g.derivative();
    let d2 = d1.derivative();
    let nodes = grid.radial().nodes();
    let (first, ratio) = grid
        .angles()
        .par_iter()
        .map(|&t| {
            std::iter::once(&0.0).chain(nodes).fold((0.0f64, 0.0f64), |(m1, m2), &r| {
                let z = Complex64::from_polar(r, t);
                let w = 1.0 - r;
                (m1.max(w * d1.eval(z).norm()), m2.max(w * w * d2.eval(z).norm()))
            })
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    if first > b * (1.0 + 1e-12) {
        return Err(Error::HypothesisFailed(format!("B = {b} is below the measured sup (1-|z|)|g'(z)| = {first}")));
    }
    let max_ratio = ratio / (4.0 * b);
    Ok(SecondDerivativeCheck { holds: max_ratio <= 1.0 + 1e-9, max_ratio })
}

/// Parameters for bounding `|g'|` from below on a small box around
/// `(1 - η) e^{ia}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BcdeltaParams {
    pub b: f64,
    pub c: f64,
    pub eta: f64,
    pub a: f64,
    pub delta: f64,
}

impl BcdeltaParams {
    /// With `delta = None` the box half-width factor is `c / (32 B)`.
    pub fn new(b: f64, c: f64, eta: f64, a: f64, delta: Option<f64>) -> Result<Self> {
        if !(b > 0.0 && c > 0.0) {
            return Err(Error::InvalidParameter("B and c must be positive".into()));
        }
        if !(eta > 0.0 && eta < 0.5) {
            return Err(Error::InvalidParameter(format!("eta = {eta} must lie in (0, 1/2)")));
        }
        let cap = c / (32.0 * b);
        let delta = delta.unwrap_or(cap);
        if !(delta > 0.0 && delta < 0.5) {
            return Err(Error::InvalidParameter(format!("delta = {delta} must lie in (0, 1/2)")));
        }
        if delta > cap * (1.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!("delta = {delta} exceeds c/(32B) = {cap}")));
        }
        Ok(BcdeltaParams { b, c, eta, a, delta })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BcdeltaResult {
    pub verified: bool,
    pub min_ratio: f64,
}

/// Samples `|r - (1-η)| ≤ δη`, `|θ - a| ≤ δη` on a `lattice × lattice` grid
/// and reports `min |g'(re^{iθ})| η / c`.
pub fn bcdelta_verify(g: &FunctionSpec, params: BcdeltaParams, lattice: usize) -> Result<BcdeltaResult> {
    let BcdeltaParams { c, eta, a, delta, .. } = params;
    if lattice < 2 {
        return Err(Error::InvalidParameter("lattice needs at least 2 points per side".into()));
    }
    let dg = g.derivative();
    let centre = dg.eval(Complex64::from_polar(1.0 - eta, a)).norm() * eta;
    if !(centre > 2.0 * c) {
        return Err(Error::HypothesisFailed(format!(
            "|g'((1-eta)e^{{ia}})| eta = {centre} does not exceed 2c = {}",
            2.0 * c
        )));
    }
    let h = delta * eta;
    let step = 2.0 * h / (lattice - 1) as f64;
    let min = (0..lattice)
        .into_par_iter()
        .map(|i| {
            let r = 1.0 - eta - h + i as f64 * step;
            (0..lattice)
                .map(|j| dg.eval(Complex64::from_polar(r, a - h + j as f64 * step)).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);
    let min_ratio = min * eta / c;
    Ok(BcdeltaResult { verified: min_ratio > 1.0, min_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::PQPair;
    use crate::norm::rho_pq_on;
    use crate::series::tg_apply;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn lacunary18() -> FunctionSpec {
        let exps: Vec<u64> = (0..=18).map(|k| 1u64 << k).collect();
        FunctionSpec::lacunary(exps, vec![c(1.0); 19], Some(2.0)).unwrap()
    }

    #[test]
    fn seminorm_examples() {
        let g = DiscGrid::standard();
        assert!((bloch_seminorm(&FunctionSpec::identity(), &g).value - 1.0).abs() < 1e-15);
        let lg = FunctionSpec::log_kernel(c(1.0)).unwrap();
        let rep = bloch_seminorm(&lg, &g);
        assert!(rep.value <= 2.0 && 2.0 - rep.value < 1e-3, "{}", rep.value);
        let scaled = bloch_seminorm(&lg.scaled(Complex64::new(0.0, -3.0)), &g);
        assert!((scaled.value - 3.0 * rep.value).abs() < 1e-12 * rep.value);
    }

    #[test]
    fn classifier_examples() {
        let g = DiscGrid::standard();
        let t = Thresholds::default();
        let z2 = FunctionSpec::monomial(2, c(1.0));
        let d = diagnose_symbol(&z2, &g, t, &[]).unwrap();
        assert_eq!(d.classification.in_b, Verdict::Yes);
        assert_eq!(d.classification.in_b0, Verdict::Yes);
        assert_eq!(d.classification.in_b0w, Verdict::Yes);

        let lg = FunctionSpec::log_kernel(c(1.0)).unwrap();
        let d = diagnose_symbol(&lg, &g, t, &[]).unwrap();
        assert_eq!(d.classification.in_b, Verdict::Yes);
        assert_eq!(d.classification.in_b0, Verdict::No);
        assert_eq!(d.classification.in_b0w, Verdict::Yes);
        assert!(d.little_bloch_profile.values.iter().all(|&v| v <= d.bloch_seminorm));

        let d = diagnose_symbol(&lacunary18(), &g, t, &[]).unwrap();
        assert_eq!(d.classification.in_b, Verdict::Yes);
        assert_eq!(d.classification.in_b0, Verdict::No);
        assert!(d.bloch_seminorm.is_finite());

        let unbounded = FunctionSpec::rational_power(c(1.0), 1.0, c(1.0)).unwrap();
        let d = diagnose_symbol(&unbounded, &g, t, &[]).unwrap();
        assert_eq!(d.classification.in_b, Verdict::No);
    }

    #[test]
    fn second_derivative_examples() {
        let g = DiscGrid::standard();
        let r = second_derivative_bound_check(&FunctionSpec::identity(), 1.0, &g).unwrap();
        assert_eq!(r.max_ratio, 0.0);
        let lg = FunctionSpec::log_kernel(c(1.0)).unwrap();
        let r = second_derivative_bound_check(&lg, 2.0, &g).unwrap();
        assert!(r.holds && (r.max_ratio - 0.125).abs() < 1e-12, "{}", r.max_ratio);
        let r = second_derivative_bound_check(&FunctionSpec::monomial(2, c(1.0)), 2.0, &g).unwrap();
        assert!((r.max_ratio - 0.25).abs() < 1e-12);
        assert!(second_derivative_bound_check(&lg, 0.5, &g).is_err());
    }

    #[test]
    fn bcdelta_examples() {
        let lg = FunctionSpec::log_kernel(c(1.0)).unwrap();
        let params = BcdeltaParams::new(2.0, 0.4, 0.1, 0.0, None).unwrap();
        assert!((params.delta - 0.4 / 64.0).abs() < 1e-18);
        let r = bcdelta_verify(&lg, params, 33).unwrap();
        assert!(r.verified && r.min_ratio > 1.0);
        let id = FunctionSpec::identity();
        let p = BcdeltaParams::new(1.0, 0.25, 0.1, 0.0, None).unwrap();
        assert!(matches!(bcdelta_verify(&id, p, 33), Err(Error::HypothesisFailed(_))));
        let p = BcdeltaParams::new(2.0, 0.8, 0.1, 0.0, None).unwrap();
        assert!(bcdelta_verify(&lg, p, 33).is_err());
        assert!(BcdeltaParams::new(2.0, 0.4, 0.1, 0.0, Some(0.01)).is_err());
    }

    #[test]
    fn tg_norm_is_controlled_by_bloch_seminorm() {
        let grid = DiscGrid::new(64, 12, 6).unwrap().closed();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let symbols =
            [FunctionSpec::monomial(3, c(0.5)), FunctionSpec::log_kernel(Complex64::from_polar(0.9, 1.0)).unwrap()];
        for g in &symbols {
            let bloch = bloch_seminorm(g, &grid).value;
            for _ in 0..6 {
                let coeffs: Vec<Complex64> = (0..12)
                    .map(|k| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) / (k + 1) as f64)
                    .collect();
                let f = FunctionSpec::polynomial(coeffs).unwrap();
                for (p, q) in [(1.0, 1.0), (2.0, 2.0), (3.0, 1.5)] {
                    let pq = PQPair::finite(p, q);
                    let nf = rho_pq_on(&f, pq, &grid);
                    let tg = tg_apply(&f, g, 400).into_spec();
                    let ratio = rho_pq_on(&tg, pq, &grid) / nf;
                    assert!(ratio <= p * bloch * (1.0 + 1e-6), "ratio {ratio} vs {}", p * bloch);
                }
            }
        }
    }
}
