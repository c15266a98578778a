//! rho_{p,q} of a few closed-form functions over a table of exponents.

use num_complex::Complex64;
use rmspace::norm::rho_pq;
use rmspace::{DiscGrid, ExtExponent, FunctionSpec, PQPair};

fn main() -> rmspace::Result<()> {
    let grid = DiscGrid::standard();
    let one = Complex64::new(1.0, 0.0);
    let functions = [
        ("z", FunctionSpec::identity()),
        ("-log(1-z)", FunctionSpec::log_kernel(one)?),
        ("(1-z)^(-1/2)", FunctionSpec::rational_power(one, 0.5, one)?),
        ("1/(1.1-z)", FunctionSpec::rational_power(Complex64::new(1.1, 0.0), 1.0, one)?),
    ];
    let exps = [ExtExponent::Finite(1.0), ExtExponent::Finite(2.0), ExtExponent::Infinite];

    print!("{:<14}", "f");
    for p in exps {
        for q in exps {
            print!("{:>13}", format!("({p},{q})"));
        }
    }
    println!();
    for (name, f) in &functions {
        print!("{name:<14}");
        for p in exps {
            for q in exps {
                let r = rho_pq(f, PQPair::new(p, q), &grid);
                print!("{:>13.5e}", r.value);
            }
        }
        println!();
    }
    println!("{}", grid.truncation_note());
    Ok(())
}
