//! Deterministic quadrature on the unit disc.
//!
//! Radially, `[0, 1)` is cut into the dyadic shells `[1 - 2^{-n}, 1 - 2^{-(n+1)})`
//! with a Gauss-Legendre rule on each shell; angularly, the periodic
//! rectangle rule on `M` equally spaced nodes. The last shell ends at
//! `r_max = 1 - 2^{-L}`. The remaining sliver `[r_max, 1)` is either dropped
//! ([`Closure::Truncate`]) or covered by a graded panel whose nodes cluster
//! algebraically at `r = 1` ([`Closure::Graded`]), which integrates endpoint
//! logarithmic singularities without evaluating on the circle.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::ExtExponent;

/// Grading exponent of the closing panel: `r = 1 - w (1 - s)^4`.
const CLOSING_GRADE: i32 = 4;

/// Largest double below one.
const LAST_BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Deepest dyadic shell a grid may use; beyond this `1 - 2^{-n}` runs out of
/// double precision.
pub const MAX_DEPTH: usize = 48;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(mid + half * x)).sum::<f64>() * half
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// One radial panel, parametrised by `s ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Panel {
    /// `r = a + (b - a) s`.
    Linear { a: f64, b: f64 },
    /// `r = 1 - width (1 - s)^k`, covering `[1 - width, 1)`.
    Graded { width: f64 },
}

impl Panel {
    pub fn start(&self) -> f64 {
        match *self {
            Panel::Linear { a, .. } => a,
            Panel::Graded { width } => 1.0 - width,
        }
    }

    pub fn end(&self) -> f64 {
        match *self {
            Panel::Linear { b, .. } => b,
            Panel::Graded { .. } => 1.0,
        }
    }

    fn map(&self, s: f64) -> (f64, f64) {
        match *self {
            Panel::Linear { a, b } => (a + (b - a) * s, b - a),
            Panel::Graded { width } => {
                let u = 1.0 - s;
                let k = CLOSING_GRADE;
                // never round onto the circle itself
                let r = (1.0 - width * u.powi(k)).min(LAST_BELOW_ONE);
                (r, width * k as f64 * u.powi(k - 1))
            }
        }
    }

    fn param_of(&self, r: f64) -> f64 {
        match *self {
            Panel::Linear { a, b } => ((r - a) / (b - a)).clamp(0.0, 1.0),
            Panel::Graded { width } => (1.0 - ((1.0 - r) / width).powf(1.0 / CLOSING_GRADE as f64)).clamp(0.0, 1.0),
        }
    }

    /// Nodes and weights for `∫` over the sub-panel `s ∈ [s0, s1]`.
    fn rule<'a>(&self, gl: &'a GaussLegendre, s0: f64, s1: f64) -> impl Iterator<Item = (f64, f64)> + 'a {
        let half = 0.5 * (s1 - s0);
        let mid = 0.5 * (s0 + s1);
        let panel = *self;
        gl.nodes.iter().zip(&gl.weights).map(move |(&x, &w)| {
            let (r, jac) = panel.map(mid + half * x);
            (r, w * half * jac)
        })
    }

    pub fn integrate(&self, gl: &GaussLegendre, f: impl Fn(f64) -> f64) -> f64 {
        self.rule(gl, 0.0, 1.0).map(|(r, w)| w * f(r)).sum()
    }

    /// `∫` from `r` to the end of the panel.
    pub fn integrate_from(&self, gl: &GaussLegendre, r: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.rule(gl, self.param_of(r), 1.0).map(|(x, w)| w * f(x)).sum()
    }

    /// `∫` from the start of the panel to `r`.
    pub fn integrate_to(&self, gl: &GaussLegendre, r: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.rule(gl, 0.0, self.param_of(r)).map(|(x, w)| w * f(x)).sum()
    }
}

/// What happens on `[r_max, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    Truncate,
    Graded,
}

/// Composite radial rule on `[0, r_max]`, optionally closed up to 1.
#[derive(Clone, Debug)]
pub struct RadialRule {
    panels: Vec<Panel>,
    gl: GaussLegendre,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl RadialRule {
    pub fn dyadic(depth: usize, order: usize, closure: Closure) -> Self {
        let mut panels: Vec<Panel> = (0..depth)
            .map(|n| Panel::Linear { a: 1.0 - 0.5f64.powi(n as i32), b: 1.0 - 0.5f64.powi(n as i32 + 1) })
            .collect();
        if closure == Closure::Graded {
            panels.push(Panel::Graded { width: 0.5f64.powi(depth as i32) });
        }
        Self::from_panels(panels, order)
    }

    pub fn from_panels(panels: Vec<Panel>, order: usize) -> Self {
        let gl = GaussLegendre::new(order);
        let (nodes, weights) = panels.iter().flat_map(|p| p.rule(&gl, 0.0, 1.0)).unzip();
        RadialRule { panels, gl, nodes, weights }
    }

    pub fn panels(&self) -> &[Panel] {
        &self.panels
    }

    pub fn gauss(&self) -> &GaussLegendre {
        &self.gl
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Upper end of the integration range (1 when closed).
    pub fn end(&self) -> f64 {
        self.panels.last().map_or(0.0, |p| p.end())
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&r, &w)| w * f(r)).sum()
    }

    fn panel_index(&self, r: f64) -> Option<usize> {
        self.panels.iter().position(|p| r >= p.start() && r < p.end())
    }

    /// `∫_ρ^{end} f`.
    pub fn integrate_from(&self, rho: f64, f: impl Fn(f64) -> f64) -> f64 {
        let Some(k) = self.panel_index(rho) else {
            return if rho < 0.0 { self.integrate(f) } else { 0.0 };
        };
        let head = if rho == self.panels[k].start() {
            self.panels[k].integrate(&self.gl, &f)
        } else {
            self.panels[k].integrate_from(&self.gl, rho, &f)
        };
        head + self.panels[k + 1..].iter().map(|p| p.integrate(&self.gl, &f)).sum::<f64>()
    }

    /// `∫₀^{x_i} f` at every node `x_i`, by whole panels plus one partial
    /// Gauss-Legendre rule inside the panel holding the node.
    pub fn cumulative_at_nodes(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let m = self.gl.order();
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut prefix = 0.0;
        for (k, panel) in self.panels.iter().enumerate() {
            for &x in &self.nodes[k * m..(k + 1) * m] {
                out.push(prefix + panel.integrate_to(&self.gl, x, &f));
            }
            prefix += panel.integrate(&self.gl, &f);
        }
        out
    }

    /// Points used for radial suprema: nodes plus panel endpoints below 1.
    fn sup_points(&self, panel: usize) -> Vec<f64> {
        let m = self.gl.order();
        let p = self.panels[panel];
        let mut pts = Vec::with_capacity(m + 2);
        pts.push(p.start());
        pts.extend_from_slice(&self.nodes[panel * m..(panel + 1) * m]);
        if p.end() < 1.0 {
            pts.push(p.end());
        }
        pts
    }

    /// Supremum of `f` over the rule's range: nodes and panel endpoints, then
    /// one bisection pass around the best point of each panel.
    pub fn sup(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for k in 0..self.panels.len() {
            let pts = self.sup_points(k);
            let vals: Vec<f64> = pts.iter().map(|&r| f(r)).collect();
            let (imax, &vmax) = vals.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).expect("panels have points");
            best = best.max(vmax);
            if imax > 0 {
                best = best.max(f(0.5 * (pts[imax - 1] + pts[imax])));
            }
            if imax + 1 < pts.len() {
                best = best.max(f(0.5 * (pts[imax] + pts[imax + 1])));
            }
        }
        best
    }
}

/// Shared interface of polar quadrature grids.
pub trait PolarRule: Sync {
    fn angles(&self) -> &[f64];
    /// Angular weights normalised to sum to one (the measure `dθ/2π`).
    fn angular_weights(&self) -> &[f64];
    fn radial(&self) -> &RadialRule;
    fn refined(&self) -> Self
    where
        Self: Sized;
    fn descriptor(&self) -> GridDescriptor;
}

/// Serializable summary of a grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridDescriptor {
    pub angular: String,
    pub angular_count: usize,
    pub shell_depth: usize,
    pub nodes_per_panel: usize,
    pub r_max: f64,
    pub closure: Closure,
}

/// Uniform angles times dyadic radial shells.
#[derive(Clone, Debug)]
pub struct DiscGrid {
    angular_count: usize,
    shell_depth: usize,
    nodes_per_panel: usize,
    closure: Closure,
    angles: Vec<f64>,
    angular_weights: Vec<f64>,
    radial: RadialRule,
}

impl DiscGrid {
    /// Truncated grid with `M` angles, `L` shells and `m` nodes per shell.
    pub fn new(angular_count: usize, shell_depth: usize, nodes_per_panel: usize) -> Result<Self> {
        Self::with_closure(angular_count, shell_depth, nodes_per_panel, Closure::Truncate)
    }

    pub fn with_closure(
        angular_count: usize,
        shell_depth: usize,
        nodes_per_panel: usize,
        closure: Closure,
    ) -> Result<Self> {
        if angular_count < 8 || !angular_count.is_power_of_two() {
            return Err(Error::InvalidGrid(format!("angular count {angular_count} must be a power of two >= 8")));
        }
        if !(1..=MAX_DEPTH).contains(&shell_depth) {
            return Err(Error::InvalidGrid(format!("shell depth {shell_depth} must be in 1..={MAX_DEPTH}")));
        }
        if nodes_per_panel < 2 {
            return Err(Error::InvalidGrid(format!("nodes per panel {nodes_per_panel} must be >= 2")));
        }
        let angles = (0..angular_count).map(|j| 2.0 * PI * j as f64 / angular_count as f64).collect();
        let angular_weights = vec![1.0 / angular_count as f64; angular_count];
        Ok(DiscGrid {
            angular_count,
            shell_depth,
            nodes_per_panel,
            closure,
            angles,
            angular_weights,
            radial: RadialRule::dyadic(shell_depth, nodes_per_panel, closure),
        })
    }

    /// The default production grid `(256, 16, 8)`, closed at the boundary.
    pub fn standard() -> Self {
        Self::with_closure(256, 16, 8, Closure::Graded).expect("valid defaults")
    }

    pub fn closed(&self) -> Self {
        Self::with_closure(self.angular_count, self.shell_depth, self.nodes_per_panel, Closure::Graded)
            .expect("parameters already validated")
    }

    pub fn truncated(&self) -> Self {
        Self::with_closure(self.angular_count, self.shell_depth, self.nodes_per_panel, Closure::Truncate)
            .expect("parameters already validated")
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn shell_depth(&self) -> usize {
        self.shell_depth
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn r_max(&self) -> f64 {
        1.0 - 0.5f64.powi(self.shell_depth as i32)
    }

    /// Default profile abscissae `1 - 2^{-j}`, `j = 1..L-2`.
    pub fn default_abscissae(&self) -> Vec<f64> {
        (1..self.shell_depth.saturating_sub(1)).map(|j| 1.0 - 0.5f64.powi(j as i32)).collect()
    }

    pub fn truncation_note(&self) -> String {
        match self.closure {
            Closure::Truncate => {
                format!("radial integrals truncated at r_max = 1 - 2^-{} = {}", self.shell_depth, self.r_max())
            }
            Closure::Graded => format!(
                "dyadic shells up to r_max = 1 - 2^-{}; [r_max, 1) covered by a graded closing panel",
                self.shell_depth
            ),
        }
    }
}

impl PolarRule for DiscGrid {
    fn angles(&self) -> &[f64] {
        &self.angles
    }

    fn angular_weights(&self) -> &[f64] {
        &self.angular_weights
    }

    fn radial(&self) -> &RadialRule {
        &self.radial
    }

    /// `(2M, L + 2, m)`, same closure.
    fn refined(&self) -> Self {
        Self::with_closure(2 * self.angular_count, self.shell_depth + 2, self.nodes_per_panel, self.closure)
            .expect("refinement keeps parameters valid")
    }

    fn descriptor(&self) -> GridDescriptor {
        GridDescriptor {
            angular: "uniform".into(),
            angular_count: self.angular_count,
            shell_depth: self.shell_depth,
            nodes_per_panel: self.nodes_per_panel,
            r_max: self.r_max(),
            closure: self.closure,
        }
    }
}

/// Angles graded dyadically towards a focus direction, for kernels whose
/// mass concentrates in an angular window far narrower than `2π/M`.
///
/// The circle `[a - π, a + π]` is split into panels `±[π 2^{-(k+1)}, π 2^{-k}]`
/// for `k < depth` plus `±[0, π 2^{-depth}]`, each with a Gauss-Legendre rule.
/// The radial part is the closed dyadic rule of the same depth.
#[derive(Clone, Debug)]
pub struct FocusedGrid {
    focus: f64,
    depth: usize,
    order: usize,
    angles: Vec<f64>,
    angular_weights: Vec<f64>,
    radial: RadialRule,
}

impl FocusedGrid {
    pub fn new(focus: f64, depth: usize, order: usize) -> Result<Self> {
        if !(1..=MAX_DEPTH).contains(&depth) || order < 2 {
            return Err(Error::InvalidGrid(format!(
                "focused grid needs depth in 1..={MAX_DEPTH} and order >= 2, got ({depth}, {order})"
            )));
        }
        let gl = GaussLegendre::new(order);
        let mut edges: Vec<f64> = (0..=depth).map(|k| PI * 0.5f64.powi(k as i32)).collect();
        edges.push(0.0);
        let mut angles = Vec::new();
        let mut weights = Vec::new();
        for w in edges.windows(2) {
            let (hi, lo) = (w[0], w[1]);
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            for (&x, &wt) in gl.nodes().iter().zip(gl.weights()) {
                let t = mid + half * x;
                for sign in [1.0, -1.0] {
                    angles.push(focus + sign * t);
                    weights.push(wt * half / (2.0 * PI));
                }
            }
        }
        Ok(FocusedGrid {
            focus,
            depth,
            order,
            angles,
            angular_weights: weights,
            radial: RadialRule::dyadic(depth, order, Closure::Graded),
        })
    }

    pub fn focus(&self) -> f64 {
        self.focus
    }
}

impl PolarRule for FocusedGrid {
    fn angles(&self) -> &[f64] {
        &self.angles
    }

    fn angular_weights(&self) -> &[f64] {
        &self.angular_weights
    }

    fn radial(&self) -> &RadialRule {
        &self.radial
    }

    fn refined(&self) -> Self {
        Self::new(self.focus, self.depth + 2, self.order).expect("refinement keeps parameters valid")
    }

    fn descriptor(&self) -> GridDescriptor {
        GridDescriptor {
            angular: format!("focused at {}", self.focus),
            angular_count: self.angles.len(),
            shell_depth: self.depth,
            nodes_per_panel: self.order,
            r_max: 1.0 - 0.5f64.powi(self.depth as i32),
            closure: Closure::Graded,
        }
    }
}

/// `(∫ v^p dr)^{1/p}` from samples at the grid's radial nodes; the plain
/// maximum for `p = ∞`.
pub fn radial_lp(values: &[f64], p: ExtExponent, radial: &RadialRule) -> f64 {
    debug_assert_eq!(values.len(), radial.len());
    match p {
        ExtExponent::Finite(p) => {
            let s: f64 = values.iter().zip(radial.weights()).map(|(&v, &w)| w * v.powf(p)).sum();
            s.powf(1.0 / p)
        }
        ExtExponent::Infinite => values.iter().copied().fold(0.0, f64::max),
    }
}

/// Radial `L^p` norm of a function; `p = ∞` uses the refined supremum.
pub fn radial_lp_fn(f: impl Fn(f64) -> f64, p: ExtExponent, radial: &RadialRule) -> f64 {
    match p {
        ExtExponent::Finite(pf) => radial.integrate(|r| f(r).powf(pf)).powf(1.0 / pf),
        ExtExponent::Infinite => radial.sup(f).max(0.0),
    }
}

/// `((1/2π) ∫ v^q dθ)^{1/q}` by the periodic rectangle rule; max for `q = ∞`.
pub fn angular_lq(values: &[f64], q: ExtExponent) -> f64 {
    let w = 1.0 / values.len() as f64;
    weighted_lq(values, &vec![w; values.len()], q)
}

/// Angular `L^q` mean with explicit normalised weights.
pub fn weighted_lq(values: &[f64], weights: &[f64], q: ExtExponent) -> f64 {
    match q {
        ExtExponent::Finite(q) => {
            let s: f64 = values.iter().zip(weights).map(|(&v, &w)| w * v.powf(q)).sum();
            s.powf(1.0 / q)
        }
        ExtExponent::Infinite => values.iter().copied().fold(0.0, f64::max),
    }
}

/// A computed nonnegative quantity with a two-grid error estimate.
#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    pub value: f64,
    pub error_estimate: f64,
    pub coarse_value: f64,
    pub grid: GridDescriptor,
    pub truncation_note: String,
}

/// Evaluate on the grid and on its refinement; the refined value is
/// reported and their difference is the error estimate.
pub fn refine_and_estimate<G: PolarRule>(grid: &G, computation: impl Fn(&G) -> f64) -> NormReport {
    let coarse = computation(grid);
    let fine = computation(&grid.refined());
    let desc = grid.descriptor();
    let truncation_note = match desc.closure {
        Closure::Truncate => format!("radial integrals truncated at r_max = {}", desc.r_max),
        Closure::Graded => format!("graded closing panel on [{}, 1)", desc.r_max),
    };
    NormReport { value: fine, error_estimate: (fine - coarse).abs(), coarse_value: coarse, grid: desc, truncation_note }
}

/// `∫_a^b f` split at the dyadic points `1 - 2^{-n}` inside `(a, b)` with a
/// Gauss-Legendre rule of the given order on every piece. When `b = 1` the
/// piece above the last cut is a graded closing panel.
pub fn integrate_interval(f: impl Fn(f64) -> f64, a: f64, b: f64, order: usize) -> f64 {
    if !(b > a) {
        return 0.0;
    }
    let gl = GaussLegendre::new(order);
    let mut cuts = vec![a];
    for n in 1..=MAX_DEPTH as i32 {
        let x = 1.0 - 0.5f64.powi(n);
        if x > a && x < b {
            cuts.push(x);
        }
    }
    let closing = b >= 1.0;
    let last = *cuts.last().expect("non-empty");
    let mut total = 0.0;
    for w in cuts.windows(2) {
        total += gl.integrate(w[0], w[1], &f);
    }
    if closing {
        let width = 1.0 - last;
        total += Panel::Graded { width }.integrate(&gl, &f);
    } else {
        total += gl.integrate(last, b, &f);
    }
    total
}

/// Values of `field` at every `(angle, radius)` node, angle-major.
pub fn sample_field<G: PolarRule>(grid: &G, field: impl Fn(f64, f64) -> f64 + Sync) -> Vec<f64> {
    let radial = grid.radial().nodes();
    grid.angles()
        .par_iter()
        .flat_map_iter(|&theta| radial.iter().map(move |&r| (theta, r)).collect::<Vec<_>>())
        .map(|(theta, r)| field(r, theta))
        .collect()
}
