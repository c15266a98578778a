//! Tail norms sup_t (int_rho^1 |f(r e^{it})|^p dr)^{1/p} and the RM(p,0) verdict.
//!
//! A bounded function decays like (1-rho)^{1/p}; (1-z)^{-1/p} keeps a
//! logarithmic amount of mass in every dyadic shell and stays away from zero.

use num_complex::Complex64;
use rmspace::norm::{rm_p0_verdict, tail_profile};
use rmspace::{DiscGrid, ExtExponent, FunctionSpec};

fn main() -> rmspace::Result<()> {
    let grid = DiscGrid::standard();
    let one = Complex64::new(1.0, 0.0);
    let p = 2.0;
    let cases = [
        ("z^3", FunctionSpec::polynomial(vec![Complex64::default(), Complex64::default(), Complex64::default(), one])?),
        ("-log(1-z)", FunctionSpec::log_kernel(one)?),
        ("(1-z)^(-1/2)", FunctionSpec::rational_power(one, 1.0 / p, one)?),
    ];
    for (name, f) in &cases {
        let prof = tail_profile(f, ExtExponent::Finite(p), &grid, &grid.default_abscissae())?;
        let tail: Vec<String> = prof.values.iter().rev().take(4).rev().map(|v| format!("{v:.3e}")).collect();
        println!("{name:<14} last tails [{}]  RM(2,0): {:?}", tail.join(", "), rm_p0_verdict(&prof, p, 1e-2));
    }
    Ok(())
}
