//! Integrals behind the l1 copy in T_g(RM(1,q)) for g = -log(1-z).

use rmspace::extremal::{l1_copy_extraction, l1_copy_integral, L1CopyParams};
use rmspace::quadrature::Closure;
use rmspace::DiscGrid;

fn main() -> rmspace::Result<()> {
    let grid = DiscGrid::with_closure(16, 20, 8, Closure::Graded)?;
    for n in 1..=10 {
        let r = l1_copy_integral(L1CopyParams::new(2, n)?, &grid)?;
        println!("n = {n:>2}: {:.12} vs 2^n/(1+2^n) = {:.12}", r.quadrature, r.closed_form);
    }

    let e = l1_copy_extraction(2, 6, 16)?;
    println!("extraction with delta = {:.4}: verified = {}", e.delta, e.verified);
    for i in &e.intervals {
        println!(
            "  N = 2^{:<3} 1 - r in ({:.3e}, {:.3e}]: inside {:.4}, outside {:.2e}",
            i.n,
            1.0 - i.r_hi,
            1.0 - i.r_lo,
            i.inside,
            i.outside
        );
    }
    Ok(())
}
