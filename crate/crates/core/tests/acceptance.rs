//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and fails if
//! any criterion fails. Lines go straight to stderr, past the test harness
//! capture.

use std::f64::consts::PI;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use rmspace::corpus::{random_polynomials, DEFAULT_SEED};
use rmspace::extremal::{
    c0_constant_checks, claim_check, default_claim_eps, default_claim_offsets, l1_copy_integral, lacunary_equiv,
    uk_phi_on_axis, C0KernelParams, L1CopyParams, C0_DEPTH,
};
use rmspace::littlewood_paley::{default_pairs, lp_check_1d, lp_corpus};
use rmspace::luecking::{
    expanded_area, maximal_bound_experiment, maximal_d_at, maximal_rtilde, nc_count, region_area, region_of,
    LueckingIndex, MaximalOperator, DISC_RULE_ORDER,
};
use rmspace::norm::{delta_norm_lower, delta_prime_norm_lower, loglog_slope, Verdict, DEFAULT_KERNEL_POWERS};
use rmspace::operators::{diagnose_symbol, Thresholds};
use rmspace::quadrature::{Closure, GaussLegendre, PolarRule, RadialRule};
use rmspace::{DiscGrid, ExtExponent, FunctionSpec, PQPair};

type Check = (bool, String);

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn lp_inequality_suite() -> Check {
    let funcs = random_polynomials(200, DEFAULT_SEED);
    let s = lp_corpus(&funcs, &default_pairs(), &DiscGrid::standard()).unwrap();
    (
        s.failures == 0 && s.checks == 200 * 9,
        format!("{} checks, {} failures, min slack {:.3e}", s.checks, s.failures, s.min_slack),
    )
}

fn one_dimensional_witness() -> Check {
    let radial = RadialRule::dyadic(16, 8, Closure::Graded);
    let r = lp_check_1d(|x| -(-x).ln_1p(), |x| 1.0 / (1.0 - x), 1.0, &radial, 5e-5);
    let (dl, dr) = ((r.lhs - 1.0).abs(), (r.rhs - 1.0).abs());
    (dl <= 5e-5 && dr <= 5e-5, format!("|lhs - 1| = {dl:.2e}, |rhs - 1| = {dr:.2e}"))
}

fn l1_copy_identity() -> Check {
    let grid = DiscGrid::with_closure(16, 20, 8, Closure::Graded).unwrap();
    let worst = (1..=10)
        .map(|n| {
            let r = l1_copy_integral(L1CopyParams::new(2, n).unwrap(), &grid).unwrap();
            let v = 2f64.powi(n as i32);
            (r.quadrature - v / (1.0 + v)).abs()
        })
        .fold(0.0, f64::max);
    (worst <= 1e-6, format!("max |quadrature - 2^n/(1+2^n)| = {worst:.2e} for n = 1..10"))
}

fn luecking_geometry() -> Check {
    let counts_ok = nc_count(LueckingIndex::new(0, 0).unwrap()) == 3
        && nc_count(LueckingIndex::new(1, 1).unwrap()) == 7
        && (2..20).all(|n| {
            [0, 1, LueckingIndex::count_at(n) - 1].iter().all(|&j| nc_count(LueckingIndex::new(n, j).unwrap()) == 9)
        });
    let depth = 16;
    let total: f64 = (0..depth)
        .map(|n| (0..LueckingIndex::count_at(n)).map(|j| region_area(LueckingIndex::new(n, j).unwrap())).sum::<f64>())
        .sum();
    let exact_total = PI * (1.0 - 2f64.powi(-(depth as i32))).powi(2);
    let per_region = (0..=40)
        .map(|n| {
            let a = region_area(LueckingIndex::new(n, 0).unwrap()) * 4f64.powi(n as i32);
            (a - PI * (1.0 - 3.0 * 2f64.powi(-(n as i32 + 2)))).abs()
        })
        .fold(0.0, f64::max);
    let sum_err = (total - exact_total).abs();
    (
        counts_ok && sum_err <= 1e-12 && per_region <= 1e-12,
        format!("NC counts 3/7/9: {counts_ok}, area sum error {sum_err:.1e}, 4^n area error {per_region:.1e}"),
    )
}

fn claim_audit() -> Check {
    let r = claim_check(&default_claim_eps(), &default_claim_offsets()).unwrap();
    let axis = default_claim_eps()
        .into_iter()
        .map(|e| (uk_phi_on_axis(e) - (0.5 - e * e / (2.0 * (1.0 + e).powi(2)))).abs())
        .fold(0.0, f64::max);
    let phi0 = default_claim_eps()
        .into_iter()
        .map(|e| {
            let v = rmspace::extremal::uk_phi(rmspace::extremal::UkParams::new(e, 0.0).unwrap(), 0.0).unwrap();
            (v - (0.5 - e * e / (2.0 * (1.0 + e).powi(2)))).abs()
        })
        .fold(0.0, f64::max);
    (
        r.holds && r.max_violation <= 1e-9 && axis <= 1e-10 && phi0 <= 1e-10,
        format!("max violation {:.2e}, on-axis error {phi0:.1e}", r.max_violation),
    )
}

fn c0_kernel_constants() -> Check {
    let params = C0KernelParams::from_decay(0.1, 4, ExtExponent::Finite(1.0), 0.02).unwrap();
    let r = c0_constant_checks(&params, C0_DEPTH, 8).unwrap();
    let rho_ok = r.c2 == 256.0 && r.c3 == 8.0 && r.rho.iter().all(|&v| v <= 256.0);
    let diag =
        params.radii.iter().zip(&r.diagonal).map(|(&rn, &d)| (d - (1.0 + rn).powi(-3)).abs()).fold(0.0, f64::max);
    let off = r.offdiagonal.iter().copied().fold(0.0, f64::max);
    (
        rho_ok && diag <= 1e-9 && off <= 1.0 / 16.0 + 1e-9,
        format!(
            "max rho {:.4}, diagonal error {diag:.1e}, max off-diagonal {off:.3e}",
            r.rho.iter().copied().fold(0.0, f64::max)
        ),
    )
}

fn lacunary_equivalence() -> Check {
    let grid = DiscGrid::with_closure(4096, 16, 8, Closure::Graded).unwrap();
    let exps: Vec<u64> = (0..=10).map(|k| 1u64 << k).collect();
    let ones = vec![c(1.0); exps.len()];
    let scaled = vec![Complex64::new(0.0, 7.5); exps.len()];
    let p1 = ExtExponent::Finite(1.0);
    let mut ratios = Vec::new();
    let mut scaling = 0.0f64;
    for q in [ExtExponent::Finite(1.0), ExtExponent::Finite(2.0), ExtExponent::Infinite] {
        let pq = PQPair::new(p1, q);
        let a = lacunary_equiv(&exps, &ones, pq, &grid, false).unwrap().ratio;
        let b = lacunary_equiv(&exps, &scaled, pq, &grid, false).unwrap().ratio;
        scaling = scaling.max((a - b).abs());
        ratios.push(a);
    }
    let hi = ratios.iter().copied().fold(0.0, f64::max);
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    (
        hi / lo <= 4.0 && scaling <= 1e-12,
        format!("ratios {ratios:.4?}, bracket factor {:.3}, scaling drift {scaling:.1e}", hi / lo),
    )
}

fn symbol_diagnostics() -> Check {
    let grid = DiscGrid::standard();
    let g = FunctionSpec::log_kernel(c(1.0)).unwrap();
    let d = diagnose_symbol(&g, &grid, Thresholds::default(), &[]).unwrap();
    let cl = d.classification;
    let log_ok = cl.in_b == Verdict::Yes
        && cl.in_b0 == Verdict::No
        && cl.in_b0w == Verdict::Yes
        && (d.bloch_seminorm - 2.0).abs() <= 1e-3;
    let polys = random_polynomials(50, DEFAULT_SEED);
    let poly_ok = polys
        .iter()
        .filter(|f| diagnose_symbol(f, &grid, Thresholds::default(), &[]).unwrap().classification.in_b0 == Verdict::Yes)
        .count();
    (
        log_ok && poly_ok == 50,
        format!(
            "-log(1-z): seminorm {:.6}, {:?}/{:?}/{:?}; polynomials in B0: {poly_ok}/50",
            d.bloch_seminorm, cl.in_b, cl.in_b0, cl.in_b0w
        ),
    )
}

fn duality_exponents() -> Check {
    let grid = DiscGrid::standard();
    let pq = PQPair::finite(2.0, 2.0);
    let radii = [0.9, 0.95, 0.975, 0.9875];
    let gaps: Vec<f64> = radii.iter().map(|r| 1.0 - r).collect();
    let mut delta = Vec::new();
    let mut ratio = Vec::new();
    for r in radii {
        let d = delta_norm_lower(pq, c(r), &DEFAULT_KERNEL_POWERS, &grid).unwrap();
        let dp = delta_prime_norm_lower(pq, c(r), &DEFAULT_KERNEL_POWERS, &grid).unwrap();
        delta.push(d);
        ratio.push(dp / d);
    }
    let slope = loglog_slope(&gaps, &delta);
    let growth: Vec<f64> = ratio.windows(2).map(|w| w[1] / w[0]).collect();
    (
        (0.85..=1.15).contains(&slope.abs()) && growth.iter().all(|g| (1.5..=3.0).contains(g)),
        format!("slope {slope:.4}, ratio growth {growth:.3?}"),
    )
}

/// `sup ρ_{2,2}(M_R f)/ρ_{2,2}(f)` over 50 corpus polynomials at depth 10 on
/// the standard grid, frozen from the first run.
const MAXIMAL_R_BASELINE: f64 = 9.966_239_789_319_956e-1;
const MAXIMAL_DEPTH: u32 = 10;

fn maximal_regression() -> Check {
    let grid = DiscGrid::standard();
    let corpus = random_polynomials(50, DEFAULT_SEED);
    let pq = PQPair::finite(2.0, 2.0);
    let a = maximal_bound_experiment(&corpus, MaximalOperator::R, pq, &grid, MAXIMAL_DEPTH, false).unwrap();
    let b = maximal_bound_experiment(&corpus, MaximalOperator::R, pq, &grid, MAXIMAL_DEPTH, false).unwrap();
    let reproducible = (a.sup_ratio - b.sup_ratio).abs() <= 1e-9 && (a.sup_ratio - MAXIMAL_R_BASELINE).abs() <= 1e-9;
    let no_regression = a.sup_ratio.is_finite() && a.sup_ratio <= MAXIMAL_R_BASELINE * (1.0 + 1e-12);

    // M_D f(z) <= K(z) M_R~ f(z), K = m(R~)/m(D(z, (1-|z|)/2)), at every node below the deepest level
    let nodes = DiscGrid::new(64, 9, 4).unwrap();
    let gl = GaussLegendre::new(DISC_RULE_ORDER);
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for f in &corpus[..10] {
        let mtilde = maximal_rtilde(f, MAXIMAL_DEPTH, 8);
        for (&r, &t) in nodes.radial().nodes().iter().flat_map(|r| nodes.angles().iter().map(move |t| (r, t))) {
            let z = Complex64::from_polar(r, t);
            let idx = region_of(z, MAXIMAL_DEPTH).unwrap();
            let k = expanded_area(idx) / (PI * (0.5 * (1.0 - r)).powi(2));
            worst = worst.max(maximal_d_at(f, z, &gl) / (k * mtilde.at(z)));
            count += 1;
        }
    }
    (
        reproducible && no_regression && worst <= 1.0 + 1e-9,
        format!(
            "sup ratio {:.12} (baseline {MAXIMAL_R_BASELINE:.12}), max M_D/(K M_R~) {worst:.4} over {count} nodes",
            a.sup_ratio
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("Littlewood-Paley inequality on 200 polynomials x 9 exponent pairs", lp_inequality_suite),
        ("1-D equality witness -log(1-x), p = 1", one_dimensional_witness),
        ("l1-copy integral identity, beta = 2, n = 1..10, L = 20", l1_copy_identity),
        ("Luecking geometry: neighbour counts and areas", luecking_geometry),
        ("phi_k claim audit and on-axis closed form", claim_audit),
        ("c0 kernel constants at p = 1", c0_kernel_constants),
        ("lacunary equivalence uniform in q", lacunary_equivalence),
        ("symbol diagnostics for -log(1-z) and polynomials", symbol_diagnostics),
        ("point-evaluation growth exponents", duality_exponents),
        ("maximal operator regression and M_D domination", maximal_regression),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(r) => r,
            Err(_) => (false, "panicked".to_string()),
        };
        let status = if ok { "PASS" } else { "FAIL" };
        let line = format!("{status} criterion {}: {name}: {detail} ({:.1?})", i + 1, start.elapsed());
        let _ = writeln!(std::io::stderr().lock(), "{line}");
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
