//! Full power-controlled recovery from a collision.
//!
//! One node in a collision boosts its transmit SNR to ρ_c so its SINR returns
//! to the no-collision value; every bystander's SINR then drops to ρ_s. The
//! loss factor α_c says how much of their collision-era capacity the
//! bystanders keep — and it is the delay-tolerant networks that pay most.
//!
//! ```bash
//! cargo run --example power_control
//! ```

use effcap::compensation::power_control_plan;

fn main() -> effcap::Result<()> {
    const SNR: f64 = 1.0;
    const N_NODES: u32 = 5;
    const BLOCKLENGTH: u32 = 1000;

    let plan = power_control_plan(SNR, N_NODES, 0.05, BLOCKLENGTH)?;
    println!("{N_NODES} nodes at SNR {SNR}: one node recovers by power control");
    println!("  boosted transmit SNR: {:.4}", plan.recovering_snr);
    println!("  bystander SINR:       {:.4}", plan.bystander_sinr);
    println!();

    println!("{:>8} {:>22}", "theta", "bystander loss factor");
    for theta in [0.001, 0.01, 0.05, 0.1] {
        let plan = power_control_plan(SNR, N_NODES, theta, BLOCKLENGTH)?;
        println!("{:>8} {:>22.6}", theta, plan.loss_factor);
    }
    println!();
    println!("lax delay constraints (small theta) leave bystanders most exposed");
    Ok(())
}
