//! Turning effective capacity into delay guarantees.
//!
//! Under the large-deviations queueing model, the probability that queueing
//! delay exceeds D decays as exp(-theta * EC * D). This prints the delay
//! budget a link can promise at a target violation probability, and the
//! violation probability at a fixed budget, across delay exponents.
//!
//! ```bash
//! cargo run --example delay_budget
//! ```

use effcap::channel::{sinr_collision, NetworkScenario};
use effcap::effective_capacity::{delay_outage, max_delay, optimal_epsilon, EcMethod};

fn main() -> effcap::Result<()> {
    const SNR: f64 = 1.0;
    const N_NODES: u32 = 1;
    const BLOCKLENGTH: u32 = 1000;
    const OUTAGE: f64 = 1e-3;
    const BUDGET: f64 = 1000.0;

    println!("single link at SNR {SNR}, blocklength {BLOCKLENGTH}");
    println!("violation target {OUTAGE:.0e}; fixed budget {BUDGET} symbols");
    println!();
    println!(
        "{:>8} {:>14} {:>18} {:>22}",
        "theta", "max EC", "delay @ target", "violation @ budget"
    );
    for theta in [0.001, 0.01, 0.1, 0.3] {
        let scenario = NetworkScenario::new(N_NODES, SNR, BLOCKLENGTH, theta)?;
        let sinr = sinr_collision(&scenario);
        let opt = optimal_epsilon(sinr, theta, BLOCKLENGTH, EcMethod::Direct)?;
        let budget = max_delay(opt.ec_max, theta, OUTAGE)?;
        let violation = delay_outage(opt.ec_max, theta, BUDGET)?;
        println!(
            "{:>8} {:>14.6} {:>15.1} sym {:>22.3e}",
            theta, opt.ec_max, budget, violation
        );
    }
    println!();
    println!("tightening theta buys sharper tails until the capacity loss eats the gain");
    Ok(())
}
