//! Splitting recovery between a power boost and a delay relaxation.
//!
//! Full power control hurts the bystanders; full delay relaxation hurts the
//! recovering node's latency. The joint optimizer picks the bystander
//! operating SINR ρ_s_o ∈ [ρ_s, ρᵢ] maximizing a weighted objective
//! η = η_α·α + η_θ·θ₂, then reports the resulting mixed plan next to the two
//! pure strategies it interpolates between.
//!
//! ```bash
//! cargo run --example joint_compensation
//! ```

use effcap::channel::{sinr_collision, NetworkScenario};
use effcap::compensation::{bystander_sinr, joint_optimize, joint_plan_at, JointPriorities};

fn main() -> effcap::Result<()> {
    const SNR: f64 = 2.0;
    const N_NODES: u32 = 15;
    const THETA: f64 = 0.1;
    const BLOCKLENGTH: u32 = 1000;

    let scenario = NetworkScenario::new(N_NODES, SNR, BLOCKLENGTH, THETA)?;
    let rho_s = bystander_sinr(SNR, N_NODES)?;
    let rho_i = sinr_collision(&scenario);
    println!(
        "{N_NODES} nodes at SNR {SNR}, theta {THETA}: bystander band [{rho_s:.5}, {rho_i:.5}]"
    );
    println!();
    println!(
        "{:<16} {:>12} {:>14} {:>12} {:>12}",
        "plan", "rho_so", "boost SNR", "alpha", "theta_2"
    );

    let endpoints = [("pure power", rho_s), ("pure relaxation", rho_i)];
    for (label, rho_so) in endpoints {
        let plan = joint_plan_at(SNR, N_NODES, THETA, BLOCKLENGTH, rho_so)?;
        println!(
            "{:<16} {:>12.6} {:>14.4} {:>12.6} {:>12.6}",
            label, plan.bystander_sinr, plan.recovering_snr, plan.loss_factor, plan.new_theta
        );
    }

    let priorities = JointPriorities::new(1.0, 4.0)?;
    let plan = joint_optimize(SNR, N_NODES, THETA, BLOCKLENGTH, priorities)?;
    println!(
        "{:<16} {:>12.6} {:>14.4} {:>12.6} {:>12.6}",
        "joint optimum", plan.bystander_sinr, plan.recovering_snr, plan.loss_factor, plan.new_theta
    );
    println!();
    println!(
        "objective eta = 1.0*alpha + 4.0*theta_2 peaks at {:.8}",
        plan.objective_value.unwrap_or(f64::NAN)
    );
    println!("the optimum mixes a partial boost with a mild relaxation");
    Ok(())
}
