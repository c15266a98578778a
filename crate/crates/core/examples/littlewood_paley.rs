//! The inequality rho(f) <= p rho(f'(z)(1-|z|)) + |f(0)| and its converse
//! ratio over a seeded corpus.

use rmspace::corpus::{random_polynomials, DEFAULT_SEED};
use rmspace::littlewood_paley::{converse_corpus, default_pairs, lp_corpus};
use rmspace::{DiscGrid, PQPair};

fn main() -> rmspace::Result<()> {
    let grid = DiscGrid::standard();
    let funcs = random_polynomials(40, DEFAULT_SEED);

    let s = lp_corpus(&funcs, &default_pairs(), &grid)?;
    println!(
        "{} checks, {} failures, min slack {:.3e}, max lhs/rhs {:.4}",
        s.checks, s.failures, s.min_slack, s.max_lhs_over_rhs
    );

    for (p, q) in [(1.0, 1.0), (2.0, 2.0), (3.0, 1.5)] {
        let c = converse_corpus(&funcs, PQPair::finite(p, q), &grid, false)?;
        println!("converse ({p}, {q}): max rho(f'(1-|z|))/rho(f) = {:.4} at #{}", c.max_ratio, c.argmax);
    }
    Ok(())
}
