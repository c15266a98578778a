//! Normalised kernels f_n(z) = (1 - r_n)(1 - r_n z)^{-(2+1/p)} with rapidly
//! separating radii, and the constants that make them a c0 sequence.

use rmspace::extremal::{c0_constant_checks, C0KernelParams, C0_DEPTH};
use rmspace::ExtExponent;

fn main() -> rmspace::Result<()> {
    for p in [1.0, 2.0] {
        let params = C0KernelParams::from_decay(0.1, 4, ExtExponent::Finite(p), 0.02)?;
        let r = c0_constant_checks(&params, C0_DEPTH, 8)?;
        println!("p = {p}: radii {:?}", params.radii);
        println!("  C2 = {:.3}, C3 = {:.3}", r.c2, r.c3);
        println!("  rho(f_n)       {:?}", r.rho);
        println!("  diagonal       {:?}", r.diagonal);
        println!("  off-diagonal   {:?}", r.offdiagonal);
        println!("  checks: rho {} diagonal {} off-diagonal {}", r.rho_bound_ok, r.diagonal_ok, r.offdiag_ok);
    }
    Ok(())
}
