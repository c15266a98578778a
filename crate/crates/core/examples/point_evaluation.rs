//! Growth of the point evaluations f -> f(r) and f -> f'(r) on RM(2,2) as r -> 1.
//!
//! Prints the lower bounds from the kernel family (1 - r w)^{-t}, the log-log
//! slope of ||delta_r|| against 1 - r, and the growth of ||delta'_r|| / ||delta_r||
//! per halving of 1 - r.

use num_complex::Complex64;
use rmspace::norm::{delta_norm_lower, delta_prime_norm_lower, loglog_slope, DEFAULT_KERNEL_POWERS};
use rmspace::{DiscGrid, ExtExponent, PQPair};

fn main() -> rmspace::Result<()> {
    let grid = DiscGrid::standard();
    let two = ExtExponent::Finite(2.0);
    let pq = PQPair::new(two, two);
    let radii = [0.9, 0.95, 0.975, 0.9875];

    let mut gaps = Vec::new();
    let mut delta = Vec::new();
    let mut ratio = Vec::new();
    println!("{:>8} {:>14} {:>14} {:>10}", "r", "|delta|", "|delta'|", "ratio");
    for r in radii {
        let z = Complex64::new(r, 0.0);
        let d = delta_norm_lower(pq, z, &DEFAULT_KERNEL_POWERS, &grid)?;
        let dp = delta_prime_norm_lower(pq, z, &DEFAULT_KERNEL_POWERS, &grid)?;
        println!("{r:>8} {d:>14.6e} {dp:>14.6e} {:>10.4}", dp / d);
        gaps.push(1.0 - r);
        delta.push(d);
        ratio.push(dp / d);
    }
    println!("slope of log|delta| against log(1-r): {:.4}", loglog_slope(&gaps, &delta));
    let growth: Vec<String> = ratio.windows(2).map(|w| format!("{:.4}", w[1] / w[0])).collect();
    println!("ratio growth per halving: {}", growth.join(", "));
    Ok(())
}
