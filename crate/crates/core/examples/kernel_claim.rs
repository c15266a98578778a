use rmspace::extremal::{claim_check, default_claim_eps, default_claim_offsets, uk_phi, uk_phi_on_axis, UkParams};

fn main() -> rmspace::Result<()> {
    let r = claim_check(&default_claim_eps(), &default_claim_offsets())?;
    println!(
        "max of phi - min(1, 8 eps^2/theta^2): {:.3e} at eps = {}, theta = {:.4}; holds: {}",
        r.max_violation, r.worst_eps, r.worst_offset, r.holds
    );
    for eps in [0.125, 0.01] {
        let on_axis = uk_phi(UkParams::new(eps, 0.0)?, 0.0)?;
        println!("phi({eps}, 0) = {on_axis:.15} (closed form {:.15})", uk_phi_on_axis(eps));
    }
    Ok(())
}
