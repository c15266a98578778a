//! Luecking regions R_{n,j}: location, neighbours, areas.

use num_complex::Complex64;
use rmspace::luecking::{contiguous, disc_inclusion_check, expanded_area, region_area, region_of};

fn main() -> rmspace::Result<()> {
    for z in [Complex64::new(0.1, 0.2), Complex64::new(0.7, -0.1), Complex64::from_polar(0.99, 2.0)] {
        let idx = region_of(z, 12)?;
        let around: Vec<String> = contiguous(idx).iter().map(|b| format!("({},{})", b.n, b.j)).collect();
        println!(
            "z = {z:.3}: R_({},{}) area {:.4e}, expanded area {:.4e}, neighbours {}",
            idx.n,
            idx.j,
            region_area(idx),
            expanded_area(idx),
            around.join(" ")
        );
        println!("  D(z, (1-|z|)/2) inside the expanded region: {}", disc_inclusion_check(z, 12, 256)?);
    }
    Ok(())
}
