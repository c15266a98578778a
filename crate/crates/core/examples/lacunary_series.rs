//! For lacunary f = sum a_k z^{n_k}, rho_{p,q}(f) is comparable to
//! (sum |a_k|^p / n_k)^{1/p} whatever q is.

use num_complex::Complex64;
use rmspace::extremal::lacunary_equiv;
use rmspace::quadrature::Closure;
use rmspace::{DiscGrid, ExtExponent, PQPair};

fn main() -> rmspace::Result<()> {
    // degree 1024 needs M >= 4 * 1024 angles
    let grid = DiscGrid::with_closure(4096, 16, 8, Closure::Graded)?;
    let exps: Vec<u64> = (0..=10).map(|k| 1u64 << k).collect();
    let coeffs: Vec<Complex64> = (0..exps.len()).map(|k| Complex64::from_polar(1.0, k as f64)).collect();
    for p in [1.0, 2.0] {
        for q in [ExtExponent::Finite(1.0), ExtExponent::Finite(2.0), ExtExponent::Infinite] {
            let e = lacunary_equiv(&exps, &coeffs, PQPair::new(ExtExponent::Finite(p), q), &grid, false)?;
            println!("p = {p}, q = {q}: numeric {:.5}, model {:.5}, ratio {:.4}", e.numeric, e.model, e.ratio);
        }
    }
    Ok(())
}
