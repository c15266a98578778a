//! Luecking regions `R_{n,j}`, their expanded versions `R̃_{n,j}` and the
//! discrete maximal operators `M_R`, `M_R̃`, `M_D`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{ExtExponent, PQPair};
use crate::norm::{rho_pq_field, rho_pq_on};
use crate::quadrature::{sample_field, DiscGrid, GaussLegendre, PolarRule};
use crate::series::FunctionSpec;

/// `R_{n,j} = {1-2^{-n} ≤ |z| < 1-2^{-(n+1)}, arg z ∈ [2πj/2^n, 2π(j+1)/2^n)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LueckingIndex {
    pub n: u32,
    pub j: u64,
}

/// Deepest level whose shell edges are still distinct in f64.
pub const MAX_LEVEL: u32 = 48;

impl LueckingIndex {
    pub fn new(n: u32, j: u64) -> Result<Self> {
        if n > MAX_LEVEL || j >= 1u64 << n {
            return Err(Error::InvalidParameter(format!("no Luecking region ({n}, {j})")));
        }
        Ok(LueckingIndex { n, j })
    }

    pub fn count_at(n: u32) -> u64 {
        1u64 << n
    }

    pub fn r_lo(self) -> f64 {
        1.0 - 0.5f64.powi(self.n as i32)
    }

    pub fn r_hi(self) -> f64 {
        1.0 - 0.5f64.powi(self.n as i32 + 1)
    }

    pub fn theta_lo(self) -> f64 {
        2.0 * PI * self.j as f64 / Self::count_at(self.n) as f64
    }

    pub fn theta_hi(self) -> f64 {
        2.0 * PI * (self.j + 1) as f64 / Self::count_at(self.n) as f64
    }
}

/// Region containing `z`, for `|z| < 1 - 2^{-depth}`.
pub fn region_of(z: Complex64, depth: u32) -> Result<LueckingIndex> {
    let r = z.norm();
    let depth = depth.min(MAX_LEVEL);
    if !(r < 1.0 - 0.5f64.powi(depth as i32)) {
        return Err(Error::OutsideDisc(format!("|z| = {r} lies beyond depth {depth}")));
    }
    let mut n = 0u32;
    while r >= 1.0 - 0.5f64.powi(n as i32 + 1) {
        n += 1;
    }
    let theta = z.im.atan2(z.re).rem_euclid(2.0 * PI);
    let count = LueckingIndex::count_at(n);
    let j = ((theta / (2.0 * PI) * count as f64).floor() as u64).min(count - 1);
    Ok(LueckingIndex { n, j })
}

/// `π 4^{-n} (1 - 3·2^{-(n+2)})`.
pub fn region_area(idx: LueckingIndex) -> f64 {
    PI * 0.25f64.powi(idx.n as i32) * (1.0 - 3.0 * 0.5f64.powi(idx.n as i32 + 2))
}

/// Regions whose closures meet the closure of `idx` (corners included),
/// `idx` itself first, the rest sorted. Independent of any depth.
pub fn contiguous(idx: LueckingIndex) -> Vec<LueckingIndex> {
    // arcs in units of 2π / 2^{n+1}
    let n = idx.n;
    let size = 1i64 << (n + 1);
    let arc = |k: u32, i: u64| -> (i64, i64) {
        let w = 1i64 << (n + 1 - k);
        (i as i64 * w, (i as i64 + 1) * w)
    };
    let (a, b) = arc(n, idx.j);
    let meets = |(c, d): (i64, i64)| [-size, 0, size].iter().any(|&s| c + s <= b && a <= d + s);
    let mut out = vec![idx];
    for k in n.saturating_sub(1)..=n + 1 {
        for i in 0..LueckingIndex::count_at(k) {
            let cand = LueckingIndex { n: k, j: i };
            if cand == idx || !meets(arc(k, i)) {
                continue;
            }
            out.push(cand);
        }
    }
    out[1..].sort();
    out
}

/// `contiguous(idx)` for regions with a full set of neighbours below `depth`.
pub fn neighbors(idx: LueckingIndex, depth: u32) -> Result<Vec<LueckingIndex>> {
    if idx.n + 1 >= depth {
        return Err(Error::InvalidParameter(format!(
            "neighbours of level {} need depth > {}, got {depth}",
            idx.n,
            idx.n + 1
        )));
    }
    Ok(contiguous(idx))
}

/// `NC(R_{n,j})`: 3 at level 0, 7 at level 1 and 9 beyond.
pub fn nc_count(idx: LueckingIndex) -> usize {
    match idx.n {
        0 => 3,
        1 => 7,
        _ => 9,
    }
}

/// Exact area of `R̃_{n,j}`, the union of the region and its neighbours.
pub fn expanded_area(idx: LueckingIndex) -> f64 {
    contiguous(idx).into_iter().map(region_area).sum()
}

/// Samples the boundary of `D(z, (1-|z|)/2)` and checks every sample falls
/// in a neighbour of the region of `z`.
pub fn disc_inclusion_check(z: Complex64, depth: u32, samples: usize) -> Result<bool> {
    let idx = region_of(z, depth)?;
    let nbrs = neighbors(idx, depth + 1)?;
    let radius = 0.5 * (1.0 - z.norm());
    Ok((0..samples).all(|k| {
        let w = z + Complex64::from_polar(radius, 2.0 * PI * k as f64 / samples as f64);
        region_of(w, MAX_LEVEL).map(|r| nbrs.contains(&r)).unwrap_or(false)
    }))
}

/// A nonnegative value on every region with `n < depth`; zero beyond.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionField {
    pub depth: u32,
    /// `values[n][j]`.
    pub values: Vec<Vec<f64>>,
}

impl RegionField {
    pub fn get(&self, idx: LueckingIndex) -> f64 {
        self.values.get(idx.n as usize).map_or(0.0, |row| row[idx.j as usize])
    }

    /// Value of the piecewise-constant extension at `z`.
    pub fn at(&self, z: Complex64) -> f64 {
        region_of(z, self.depth).map_or(0.0, |idx| self.get(idx))
    }

    pub fn map_indexed(depth: u32, f: impl Fn(LueckingIndex) -> f64 + Sync) -> Self {
        let values = (0..depth)
            .map(|n| (0..LueckingIndex::count_at(n)).into_par_iter().map(|j| f(LueckingIndex { n, j })).collect())
            .collect();
        RegionField { depth, values }
    }

    /// Exact `ρ_{p,q}` of the piecewise-constant extension: shell `n` has
    /// radial width `2^{-(n+1)}`, and the radial profile is constant on the
    /// `2^{depth-1}` sectors of the finest level.
    pub fn rho_pq(&self, pq: PQPair) -> f64 {
        if self.depth == 0 {
            return 0.0;
        }
        let finest = self.depth - 1;
        let sectors = LueckingIndex::count_at(finest);
        let per_sector: Vec<f64> = (0..sectors)
            .into_par_iter()
            .map(|s| {
                let row = (0..self.depth).map(|n| (n, self.values[n as usize][(s >> (finest - n)) as usize]));
                match pq.p {
                    ExtExponent::Finite(p) => {
                        row.map(|(n, v)| v.powf(p) * 0.5f64.powi(n as i32 + 1)).sum::<f64>().powf(1.0 / p)
                    }
                    ExtExponent::Infinite => row.map(|(_, v)| v).fold(0.0, f64::max),
                }
            })
            .collect();
        match pq.q {
            ExtExponent::Finite(q) => {
                (per_sector.iter().map(|v| v.powf(q)).sum::<f64>() / sectors as f64).powf(1.0 / q)
            }
            ExtExponent::Infinite => per_sector.iter().copied().fold(0.0, f64::max),
        }
    }
}

/// Angular pieces per region so that no tensor rule spans more than
/// `2π/32` of arc.
const MIN_ANGULAR_LEVEL: u32 = 5;

/// `∫_{R_{n,j}} |f| dm₂` by a tensor Gauss-Legendre rule in `(r, θ)`.
pub fn region_integral(f: &FunctionSpec, idx: LueckingIndex, gl: &GaussLegendre) -> f64 {
    let (r0, r1) = (idx.r_lo(), idx.r_hi());
    let pieces = 1u64 << MIN_ANGULAR_LEVEL.saturating_sub(idx.n);
    let (t0, t1) = (idx.theta_lo(), idx.theta_hi());
    let dt = (t1 - t0) / pieces as f64;
    (0..pieces)
        .map(|k| {
            let a = t0 + k as f64 * dt;
            gl.integrate(a, a + dt, |t| gl.integrate(r0, r1, |r| r * f.eval(Complex64::from_polar(r, t)).norm()))
        })
        .sum()
}

fn region_integrals(f: &FunctionSpec, depth: u32, order: usize) -> RegionField {
    let gl = GaussLegendre::new(order);
    RegionField::map_indexed(depth, |idx| region_integral(f, idx, &gl))
}

/// `M_R f = Σ (⨍_{R_{n,j}} |f|) χ_{R_{n,j}}` for `n < depth`, with a tensor
/// rule of `order` nodes per direction.
pub fn maximal_r(f: &FunctionSpec, depth: u32, order: usize) -> RegionField {
    let ints = region_integrals(f, depth, order);
    RegionField::map_indexed(depth, |idx| ints.get(idx) / region_area(idx))
}

/// `M_R̃ f = Σ (⨍_{R̃_{n,j}} |f|) χ_{R_{n,j}}` for `n < depth`.
pub fn maximal_rtilde(f: &FunctionSpec, depth: u32, order: usize) -> RegionField {
    let ints = region_integrals(f, depth + 1, order);
    RegionField::map_indexed(depth, |idx| {
        contiguous(idx).into_iter().map(|b| ints.get(b)).sum::<f64>() / expanded_area(idx)
    })
}

/// `M̃* f = Σ β_{n,j} (⨍_{R_{n,j}} |f|) χ_{R̃_{n,j}}` with
/// `β = m₂(R_{n,j}) / m₂(R̃_{n,j})`, evaluated on regions with `n < depth`.
pub fn adjoint_rtilde(f: &FunctionSpec, depth: u32, order: usize) -> RegionField {
    let means = maximal_r(f, depth + 1, order);
    RegionField::map_indexed(depth, |a| {
        contiguous(a).into_iter().map(|b| region_area(b) / expanded_area(b) * means.get(b)).sum()
    })
}

/// Constants `K₁ ≤ K₂` with `K₁ M_R̃ f ≤ M̃* f ≤ K₂ M_R̃ f` for `f ≥ 0`: the
/// extreme ratios `m₂(R̃_a) / m₂(R̃_b)` over neighbouring pairs with `n_a < depth`.
pub fn adjoint_constants(depth: u32) -> (f64, f64) {
    let mut k1 = f64::INFINITY;
    let mut k2 = 0.0f64;
    // the ratios depend on levels only
    for n in 0..depth.min(MAX_LEVEL) {
        let a = LueckingIndex { n, j: 0 };
        for b in contiguous(a) {
            let r = expanded_area(a) / expanded_area(b);
            k1 = k1.min(r);
            k2 = k2.max(r);
        }
    }
    (k1, k2)
}

/// Nodes per direction of the polar rule on each disc.
pub const DISC_RULE_ORDER: usize = 16;

/// `M_D f(z) = ⨍_{D(z, (1-|z|)/2)} |f| dm₂` with a 16 × 16 polar rule.
pub fn maximal_d_at(f: &FunctionSpec, z: Complex64, gl: &GaussLegendre) -> f64 {
    let radius = 0.5 * (1.0 - z.norm());
    let m = DISC_RULE_ORDER;
    let total: f64 = (0..m)
        .map(|k| {
            let dir = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64);
            gl.integrate(0.0, radius, |s| s * f.eval(z + dir * s).norm())
        })
        .sum();
    total * (2.0 * PI / m as f64) / (PI * radius * radius)
}

/// `M_D f` sampled at the grid nodes, angle-major.
pub fn maximal_d<G: PolarRule>(f: &FunctionSpec, grid: &G) -> Vec<f64> {
    let gl = GaussLegendre::new(DISC_RULE_ORDER);
    sample_field(grid, |r, t| maximal_d_at(f, Complex64::from_polar(r, t), &gl))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalOperator {
    R,
    Rtilde,
    D,
}

impl std::str::FromStr for MaximalOperator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r" | "m_r" => Ok(MaximalOperator::R),
            "rtilde" | "r_tilde" | "m_rtilde" => Ok(MaximalOperator::Rtilde),
            "d" | "m_d" => Ok(MaximalOperator::D),
            _ => Err(Error::InvalidParameter(format!("unknown maximal operator '{s}' (r, rtilde, d)"))),
        }
    }
}

/// Exponent ranges with a known bound: `1 ≤ p ≤ q < ∞` for all three
/// operators, and additionally `1 < q ≤ p ≤ ∞` for `M_R̃` and `M_D`.
pub fn maximal_covered(op: MaximalOperator, pq: PQPair) -> bool {
    let ordered = match (pq.p, pq.q) {
        (ExtExponent::Finite(p), ExtExponent::Finite(q)) => p <= q,
        _ => false,
    };
    let reversed = match (pq.p, pq.q) {
        (_, ExtExponent::Infinite) => pq.p == ExtExponent::Infinite,
        (ExtExponent::Infinite, ExtExponent::Finite(q)) => q > 1.0,
        (ExtExponent::Finite(p), ExtExponent::Finite(q)) => q > 1.0 && q <= p,
    };
    match op {
        MaximalOperator::R => ordered,
        MaximalOperator::Rtilde | MaximalOperator::D => ordered || reversed,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MaximalExperiment {
    pub operator: MaximalOperator,
    pub p: ExtExponent,
    pub q: ExtExponent,
    pub depth: u32,
    pub covered: bool,
    pub ratios: Vec<f64>,
    pub sup_ratio: f64,
}

/// `sup_f ρ_{p,q}(M f) / ρ_{p,q}(f)` over a corpus. Region fields are
/// measured exactly; `M_D` and `f` on the grid.
pub fn maximal_bound_experiment(
    corpus: &[FunctionSpec],
    op: MaximalOperator,
    pq: PQPair,
    grid: &DiscGrid,
    depth: u32,
    experimental: bool,
) -> Result<MaximalExperiment> {
    let covered = maximal_covered(op, pq);
    if !covered && !experimental {
        return Err(Error::UncoveredRange(format!("no bound is known for {op:?} at (p, q) = ({}, {})", pq.p, pq.q)));
    }
    if depth == 0 || depth > 24 {
        return Err(Error::InvalidParameter(format!("maximal depth {depth} must be in 1..=24")));
    }
    let order = grid.nodes_per_panel();
    let gl = GaussLegendre::new(DISC_RULE_ORDER);
    let ratios: Vec<f64> = corpus
        .iter()
        .map(|f| {
            let num = match op {
                MaximalOperator::R => maximal_r(f, depth, order).rho_pq(pq),
                MaximalOperator::Rtilde => maximal_rtilde(f, depth, order).rho_pq(pq),
                MaximalOperator::D => rho_pq_field(grid, pq, |r, t| maximal_d_at(f, Complex64::from_polar(r, t), &gl)),
            };
            num / rho_pq_on(f, pq, grid)
        })
        .collect();
    let sup_ratio = ratios.iter().copied().fold(0.0, f64::max);
    Ok(MaximalExperiment { operator: op, p: pq.p, q: pq.q, depth, covered, ratios, sup_ratio })
}

/// Checks `D(z, λc(1-|z|)) ⊂ [r - c(1-r), r + c(1-r)] × [θ - c(1-r), θ + c(1-r)]`
/// in polar coordinates, `r = |z|`, on `samples` boundary points.
pub fn mean_value_box_check(c: f64, z: Complex64, lambda: f64, samples: usize) -> Result<bool> {
    if !(c > 0.0 && c < 0.5) {
        return Err(Error::InvalidParameter(format!("c = {c} must lie in (0, 1/2)")));
    }
    let r = z.norm();
    if !(0.5..1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!("|z| = {r} must lie in [1/2, 1)")));
    }
    let bound = 1.0 / (4.0 + c * c).sqrt();
    if !(lambda > 0.0 && lambda < bound) {
        return Err(Error::InvalidParameter(format!("lambda = {lambda} must lie in (0, {bound})")));
    }
    let half = c * (1.0 - r);
    let theta = z.arg();
    let radius = lambda * half;
    Ok((0..samples).all(|k| {
        let w = z + Complex64::from_polar(radius, 2.0 * PI * k as f64 / samples as f64);
        let dt = (w.arg() - theta + PI).rem_euclid(2.0 * PI) - PI;
        (w.norm() - r).abs() <= half && dt.abs() <= half
    }))
}

/// CSV rows `n,j,r_lo,r_hi,theta_lo,theta_hi,area,nc_count` for `n < depth`.
pub fn dump_csv(depth: u32) -> String {
    let mut out = String::from("n,j,r_lo,r_hi,theta_lo,theta_hi,area,nc_count\n");
    for n in 0..depth {
        for j in 0..LueckingIndex::count_at(n) {
            let idx = LueckingIndex { n, j };
            out.push_str(&format!(
                "{n},{j},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{}\n",
                idx.r_lo(),
                idx.r_hi(),
                idx.theta_lo(),
                idx.theta_hi(),
                region_area(idx),
                contiguous(idx).len()
            ));
        }
    }
    out
}
