//! Bloch-type classification of symbols g for the integration operator T_g.

use num_complex::Complex64;
use rmspace::norm::rho_pq;
use rmspace::operators::{diagnose_symbol, Thresholds};
use rmspace::series::tg_closed_form;
use rmspace::{DiscGrid, FunctionSpec, PQPair};

fn main() -> rmspace::Result<()> {
    let grid = DiscGrid::standard();
    let one = Complex64::new(1.0, 0.0);
    let symbols = [
        ("-log(1-z)", FunctionSpec::log_kernel(one)?),
        (
            "z^4 - z",
            FunctionSpec::polynomial(vec![
                Complex64::default(),
                -one,
                Complex64::default(),
                Complex64::default(),
                one,
            ])?,
        ),
        ("(1-z)^(-1/4)", FunctionSpec::rational_power(one, 0.25, one)?),
    ];
    for (name, g) in &symbols {
        let d = diagnose_symbol(g, &grid, Thresholds::default(), &[])?;
        let c = d.classification;
        println!(
            "{name:<14} seminorm {:>10.5}  B: {:?}  B0: {:?}  B0w: {:?}",
            d.bloch_seminorm, c.in_b, c.in_b0, c.in_b0w
        );
    }

    // T_g applied to f = 1 with g = -log(1-z) gives g itself
    let g = &symbols[0].1;
    let tg = tg_closed_form(&FunctionSpec::constant(one), g)?;
    let pq = PQPair::finite(2.0, 2.0);
    println!("rho(T_g 1) = {:.6}, rho(g - g(0)) = {:.6}", rho_pq(&tg, pq, &grid).value, rho_pq(g, pq, &grid).value);
    Ok(())
}
