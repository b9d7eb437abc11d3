//! The error probability that maximizes effective capacity.
//!
//! Retransmissions make a moderate decoding-error rate worthwhile: the
//! EC-optimal ε grows with interference while the achievable peak shrinks.
//! This sweeps the node count at fixed SNR and prints both.
//!
//! ```bash
//! cargo run --example optimal_error_probability
//! ```

use effcap::channel::{sinr_collision, NetworkScenario};
use effcap::effective_capacity::{optimal_epsilon, EcMethod};

fn main() -> effcap::Result<()> {
    const SNR: f64 = 2.0;
    const THETA: f64 = 0.01;
    const BLOCKLENGTH: u32 = 1000;

    println!("SNR {SNR}, theta {THETA}, blocklength {BLOCKLENGTH}");
    println!();
    println!(
        "{:>8} {:>12} {:>14} {:>18}",
        "n_nodes", "sinr", "epsilon*", "max EC (bits/use)"
    );
    for n_nodes in [1u32, 2, 5, 10] {
        let scenario = NetworkScenario::new(n_nodes, SNR, BLOCKLENGTH, THETA)?;
        let sinr = sinr_collision(&scenario);
        let opt = optimal_epsilon(sinr, THETA, BLOCKLENGTH, EcMethod::Direct)?;
        println!(
            "{:>8} {:>12.6} {:>14.6} {:>18.8}{}",
            n_nodes,
            sinr,
            opt.epsilon_star,
            opt.ec_max,
            if opt.degenerate { "  (boundary)" } else { "" }
        );
    }
    println!();
    println!("more contenders -> lower peak EC, but a higher optimal error rate");
    Ok(())
}
