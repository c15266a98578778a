//! The mixed norms `ρ_{p,q}` and radial diagnostics built on them.
//!
//! `ρ_{p,q}(f) = ( (1/2π) ∫ ( ∫₀¹ |f(re^{iθ})|^p dr )^{q/p} dθ )^{1/q}`, with
//! the usual suprema when `p` or `q` is infinite.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{ExtExponent, PQPair};
use crate::quadrature::{
    radial_lp, radial_lp_fn, refine_and_estimate, sample_field, weighted_lq, NormReport, PolarRule,
};
use crate::series::FunctionSpec;

/// Kernel powers `t` used for the point-evaluation lower bounds.
pub const DEFAULT_KERNEL_POWERS: [f64; 6] = [1.25, 1.5, 2.0, 2.5, 3.0, 4.0];

/// `ρ_{p,q}` of a nonnegative field `(r, θ) ↦ v(r, θ)` on one grid.
pub fn rho_pq_field<G: PolarRule>(grid: &G, pq: PQPair, field: impl Fn(f64, f64) -> f64 + Sync) -> f64 {
    let radial = grid.radial();
    let per_angle: Vec<f64> = grid
        .angles()
        .par_iter()
        .map(|&theta| match pq.p {
            ExtExponent::Finite(_) => {
                let vals: Vec<f64> = radial.nodes().iter().map(|&r| field(r, theta)).collect();
                radial_lp(&vals, pq.p, radial)
            }
            ExtExponent::Infinite => radial_lp_fn(|r| field(r, theta), pq.p, radial),
        })
        .collect();
    weighted_lq(&per_angle, grid.angular_weights(), pq.q)
}

/// `ρ_{p,q}(f)` on one grid, without refinement.
pub fn rho_pq_on<G: PolarRule>(f: &FunctionSpec, pq: PQPair, grid: &G) -> f64 {
    rho_pq_field(grid, pq, |r, t| f.eval(Complex64::from_polar(r, t)).norm())
}

/// `ρ_{p,q}(f)` with a two-grid error estimate.
pub fn rho_pq<G: PolarRule>(f: &FunctionSpec, pq: PQPair, grid: &G) -> NormReport {
    refine_and_estimate(grid, |g| rho_pq_on(f, pq, g))
}

/// Field values at every grid node, reusable across exponent pairs.
#[derive(Clone, Debug)]
pub struct FieldSamples {
    values: Vec<f64>,
    radial_len: usize,
}

impl FieldSamples {
    pub fn new<G: PolarRule>(grid: &G, field: impl Fn(f64, f64) -> f64 + Sync) -> Self {
        FieldSamples { values: sample_field(grid, field), radial_len: grid.radial().len() }
    }

    pub fn of_spec<G: PolarRule>(grid: &G, f: &FunctionSpec) -> Self {
        Self::new(grid, |r, t| f.eval(Complex64::from_polar(r, t)).norm())
    }

    /// `ρ_{p,q}` from the stored samples. For `p = ∞` this is the maximum
    /// over nodes, without the bisection pass of [`rho_pq_field`].
    pub fn rho<G: PolarRule>(&self, grid: &G, pq: PQPair) -> f64 {
        assert_eq!(self.radial_len, grid.radial().len(), "samples belong to another grid");
        let per_angle: Vec<f64> =
            self.values.chunks(self.radial_len).map(|row| radial_lp(row, pq.p, grid.radial())).collect();
        weighted_lq(&per_angle, grid.angular_weights(), pq.q)
    }
}

/// Which radial quantity a profile tracks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileQuantity {
    TailNorm,
    BoundaryDecay,
    BlochRadial,
}

impl ProfileQuantity {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileQuantity::TailNorm => "tail_norm",
            ProfileQuantity::BoundaryDecay => "boundary_decay",
            ProfileQuantity::BlochRadial => "bloch_radial",
        }
    }
}

/// A radial quantity sampled at increasing radii `ρ < 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialProfile {
    pub abscissae: Vec<f64>,
    pub values: Vec<f64>,
    pub quantity: ProfileQuantity,
}

impl RadialProfile {
    pub fn new(abscissae: Vec<f64>, values: Vec<f64>, quantity: ProfileQuantity) -> Result<Self> {
        check_abscissae(&abscissae, 1.0)?;
        if abscissae.len() != values.len() {
            return Err(Error::InvalidParameter("profile needs one value per abscissa".into()));
        }
        Ok(RadialProfile { abscissae, values, quantity })
    }

    pub fn last(&self) -> Option<f64> {
        self.values.last().copied()
    }

    /// CSV with header `rho,value,quantity`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rho,value,quantity\n");
        for (r, v) in self.abscissae.iter().zip(&self.values) {
            out.push_str(&format!("{r:.17e},{v:.17e},{}\n", self.quantity.as_str()));
        }
        out
    }
}

fn check_abscissae(abscissae: &[f64], bound: f64) -> Result<()> {
    if abscissae.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("abscissae must be strictly increasing".into()));
    }
    if abscissae.iter().any(|&r| !(0.0..bound).contains(&r)) {
        return Err(Error::InvalidParameter(format!("abscissae must lie in [0, {bound})")));
    }
    Ok(())
}

fn finite_exponent(p: ExtExponent) -> Result<f64> {
    p.value().ok_or_else(|| Error::InvalidParameter("this quantity needs a finite p".into()))
}

/// `ρ ↦ sup_θ (∫_ρ^{end} |f(re^{iθ})|^p dr)^{1/p}`, the quantity whose vanishing
/// as `ρ → 1` defines `RM(p, 0)`.
pub fn tail_profile<G: PolarRule>(
    f: &FunctionSpec,
    p: ExtExponent,
    grid: &G,
    abscissae: &[f64],
) -> Result<RadialProfile> {
    let pf = finite_exponent(p)?;
    let radial = grid.radial();
    check_abscissae(abscissae, radial.end())?;
    let per_angle: Vec<Vec<f64>> = grid
        .angles()
        .par_iter()
        .map(|&theta| {
            let g = |r: f64| f.eval(Complex64::from_polar(r, theta)).norm().powf(pf);
            abscissae.iter().map(|&rho| radial.integrate_from(rho, g).powf(1.0 / pf)).collect()
        })
        .collect();
    let values = (0..abscissae.len()).map(|i| per_angle.iter().map(|row| row[i]).fold(0.0, f64::max)).collect();
    RadialProfile::new(abscissae.to_vec(), values, ProfileQuantity::TailNorm)
}

/// `ρ ↦ sup_θ (1 - ρ)^{1/p} |f(ρ e^{iθ})|`.
pub fn boundary_decay_profile<G: PolarRule>(
    f: &FunctionSpec,
    p: ExtExponent,
    grid: &G,
    abscissae: &[f64],
) -> Result<RadialProfile> {
    let pf = finite_exponent(p)?;
    check_abscissae(abscissae, 1.0)?;
    let values = abscissae
        .iter()
        .map(|&rho| {
            let sup = grid.angles().iter().map(|&t| f.eval(Complex64::from_polar(rho, t)).norm()).fold(0.0, f64::max);
            (1.0 - rho).powf(1.0 / pf) * sup
        })
        .collect();
    RadialProfile::new(abscissae.to_vec(), values, ProfileQuantity::BoundaryDecay)
}

/// Three-valued outcome of a finite-horizon limit diagnostic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

/// Number of trailing profile values a decay verdict looks at.
pub const VERDICT_WINDOW: usize = 4;

/// A step counts as "not decaying" when it keeps at least this fraction of
/// the previous value.
pub const PLATEAU_RATIO: f64 = 0.95;

/// Does a profile tend to zero? `Yes` when the value at the horizon is below
/// `eps` and the last [`VERDICT_WINDOW`] values are non-increasing; `No`
/// when it exceeds `10·eps` and no step of the window drops below
/// [`PLATEAU_RATIO`] of its predecessor; `Undecided` otherwise.
pub fn decay_verdict(values: &[f64], eps: f64) -> Verdict {
    let Some(&last) = values.last() else {
        return Verdict::Undecided;
    };
    let window = &values[values.len().saturating_sub(VERDICT_WINDOW)..];
    if last < eps && window.windows(2).all(|w| w[1] <= w[0]) {
        Verdict::Yes
    } else if last > 10.0 * eps && window.windows(2).all(|w| w[1] >= PLATEAU_RATIO * w[0]) {
        Verdict::No
    } else {
        Verdict::Undecided
    }
}

/// `RM(p, 0)` membership read off a tail profile at dyadic abscissae.
///
/// Tail norms never increase, so the plateau test of [`decay_verdict`] is
/// replaced by a rate test: a bounded function loses a factor `2^{-1/p}` per
/// dyadic step, and `No` requires every step in the window to keep more than
/// the midpoint between that rate and 1.
pub fn rm_p0_verdict(profile: &RadialProfile, p: f64, eps: f64) -> Verdict {
    let v = &profile.values;
    let Some(&last) = v.last() else {
        return Verdict::Undecided;
    };
    let window = &v[v.len().saturating_sub(VERDICT_WINDOW)..];
    let slow = 0.5 * (1.0 + 2f64.powf(-1.0 / p));
    if last < eps && window.windows(2).all(|w| w[1] <= w[0]) {
        Verdict::Yes
    } else if last > 10.0 * eps && window.len() >= 2 && window.windows(2).all(|w| w[1] >= slow * w[0]) {
        Verdict::No
    } else {
        Verdict::Undecided
    }
}

fn check_point<G: PolarRule>(z: Complex64, grid: &G) -> Result<()> {
    let rmax = grid.descriptor().r_max;
    if z.norm() > rmax {
        return Err(Error::OutsideDisc(format!("|z| = {} exceeds r_max = {rmax}", z.norm())));
    }
    Ok(())
}

/// The test function `w ↦ (1 - z̄ w)^{-t}`.
pub fn point_kernel(z: Complex64, t: f64) -> FunctionSpec {
    FunctionSpec::kernel(z.conj(), t, Complex64::new(1.0, 0.0)).expect("|z| < 1")
}

/// Lower bound for `‖δ_z‖` on `RM(p,q)`: `max_t |f_t(z)| / ρ_{p,q}(f_t)` over
/// the kernels `f_t(w) = (1 - z̄w)^{-t}`.
pub fn delta_norm_lower<G: PolarRule>(pq: PQPair, z: Complex64, powers: &[f64], grid: &G) -> Result<f64> {
    check_point(z, grid)?;
    let base = (1.0 - z.norm_sqr()).recip();
    Ok(powers.iter().map(|&t| base.powf(t) / rho_pq_on(&point_kernel(z, t), pq, grid)).fold(0.0, f64::max))
}

/// Lower bound for `‖δ'_z‖`: `max |f'(z)| / ρ_{p,q}(f)` over the same kernels
/// and the identity `w ↦ w`.
pub fn delta_prime_norm_lower<G: PolarRule>(pq: PQPair, z: Complex64, powers: &[f64], grid: &G) -> Result<f64> {
    check_point(z, grid)?;
    let base = (1.0 - z.norm_sqr()).recip();
    let identity = 1.0 / rho_pq_on(&FunctionSpec::identity(), pq, grid);
    Ok(powers
        .iter()
        .map(|&t| t * z.norm() * base.powf(t + 1.0) / rho_pq_on(&point_kernel(z, t), pq, grid))
        .fold(identity, f64::max))
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
