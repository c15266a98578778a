//! T_g f(z) = int_0^z f(w) g'(w) dw on Taylor coefficients, checked against
//! closed forms and against the bound rho(T_g f) <= p ||g||_B rho(f).

use num_complex::Complex64;
use rmspace::norm::rho_pq;
use rmspace::operators::bloch_seminorm;
use rmspace::series::{tg_apply, tg_closed_form};
use rmspace::{DiscGrid, FunctionSpec, PQPair};

fn main() -> rmspace::Result<()> {
    let one = Complex64::new(1.0, 0.0);
    let g = FunctionSpec::log_kernel(one)?;
    let f = FunctionSpec::real_polynomial(&[1.0, -0.5, 0.25]);

    // g' = 1/(1-z), so T_g f has coefficients sum_{j<k} a_j / k
    let series = tg_apply(&f, &g, 8);
    let closed = tg_closed_form(&f, &g)?.coefficients(8);
    for (k, (a, b)) in series.coeffs.iter().zip(&closed.coeffs).enumerate() {
        println!("k = {k}: {:>10.6} {:>10.6}", a.re, b.re);
    }

    let grid = DiscGrid::standard();
    let beta = bloch_seminorm(&g, &grid).value;
    let tg = tg_closed_form(&f, &g)?;
    for p in [1.0, 2.0, 4.0] {
        let pq = PQPair::finite(p, 2.0);
        let lhs = rho_pq(&tg, pq, &grid).value;
        let rhs = p * beta * rho_pq(&f, pq, &grid).value;
        println!("p = {p}: rho(T_g f) = {lhs:.6} <= {rhs:.6}");
    }
    Ok(())
}
