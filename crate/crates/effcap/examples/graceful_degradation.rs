//! Absorbing a collision by relaxing the delay constraint instead of power.
//!
//! The collided node keeps its transmit power and instead relaxes its delay
//! exponent from θ to θᵢ until the peak effective capacity returns to the
//! no-collision level. The price is a weaker delay guarantee: the budget at
//! the same violation probability grows.
//!
//! ```bash
//! cargo run --example graceful_degradation
//! ```

use effcap::channel::{sinr_collision, NetworkScenario};
use effcap::compensation::graceful_theta;
use effcap::effective_capacity::{max_delay, optimal_epsilon, EcMethod};

fn main() -> effcap::Result<()> {
    const SNR: f64 = 1.0;
    const N_NODES: u32 = 5;
    const THETA: f64 = 0.05;
    const BLOCKLENGTH: u32 = 1000;
    const OUTAGE: f64 = 1e-3;

    let scenario = NetworkScenario::new(N_NODES, SNR, BLOCKLENGTH, THETA)?;
    let sinr_i = sinr_collision(&scenario);
    let (theta_i, restored_ec) = graceful_theta(SNR, N_NODES, THETA, BLOCKLENGTH)?;

    println!("collision of {N_NODES} nodes at SNR {SNR}: SINR drops to {sinr_i:.4}");
    println!("delay exponent relaxes from {THETA} to {theta_i:.6}");
    println!("restored peak EC: {restored_ec:.6} bits/use");
    println!();

    // Delay budget before compensation: the collided link's own peak EC at
    // the original exponent. After: the restored EC at the relaxed exponent.
    let collided_ec = optimal_epsilon(sinr_i, THETA, BLOCKLENGTH, EcMethod::Direct)?.ec_max;
    let before = max_delay(collided_ec, THETA, OUTAGE)?;
    let after = max_delay(restored_ec, theta_i, OUTAGE)?;
    println!("delay budget at violation probability {OUTAGE:.0e}:");
    println!("  collided, original exponent: {before:>8.1} symbols");
    println!("  restored, relaxed exponent:  {after:>8.1} symbols");
    println!("  capacity back, delay up by:  {:>8.3}x", after / before);
    Ok(())
}
