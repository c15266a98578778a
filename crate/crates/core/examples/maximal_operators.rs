//! Maximal averages over Luecking regions and hyperbolic discs.
//!
//! Runs sup_f rho(Mf) / rho(f) over a seeded polynomial corpus for M_R, M_R~
//! and M_D at (p, q) = (2, 2), and the adjoint constants K1 <= K2.

use std::time::Instant;

use rmspace::corpus::{random_polynomials, DEFAULT_SEED};
use rmspace::luecking::{adjoint_constants, maximal_bound_experiment, MaximalOperator};
use rmspace::{DiscGrid, ExtExponent, PQPair};

fn main() -> rmspace::Result<()> {
    let depth = 10;
    let corpus = random_polynomials(50, DEFAULT_SEED);
    let two = ExtExponent::Finite(2.0);
    let pq = PQPair::new(two, two);
    let grid = DiscGrid::standard();
    let small = DiscGrid::new(64, 10, 8)?;

    for (op, grid) in [(MaximalOperator::R, &grid), (MaximalOperator::Rtilde, &grid), (MaximalOperator::D, &small)] {
        let start = Instant::now();
        let e = maximal_bound_experiment(&corpus, op, pq, grid, depth, false)?;
        println!("{op:?}: sup ratio {:.17e} over {} functions ({:.1?})", e.sup_ratio, e.ratios.len(), start.elapsed());
    }
    let (k1, k2) = adjoint_constants(depth);
    println!("adjoint constants: K1 = {k1:.6}, K2 = {k2:.6}");
    Ok(())
}
