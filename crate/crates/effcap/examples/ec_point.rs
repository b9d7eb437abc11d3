//! Effective capacity of a single operating point, evaluated three ways.
//!
//! A five-node collision at SNR 2 is evaluated by the truncated-series route
//! at several orders and by direct quadrature, showing how the series
//! converges onto the reference value as the order grows.
//!
//! ```bash
//! cargo run --example ec_point
//! ```

use effcap::channel::{sinr_collision, NetworkScenario};
use effcap::effective_capacity::{ec_direct, ec_series};

fn main() -> effcap::Result<()> {
    let scenario = NetworkScenario::new(5, 2.0, 1000, 0.01)?;
    let sinr = sinr_collision(&scenario);
    let epsilon = 0.02;

    println!(
        "{} nodes at SNR {} -> operative SINR {:.6}, theta {}, blocklength {}",
        scenario.n_nodes, scenario.snr, sinr, scenario.delay_exponent, scenario.blocklength
    );
    println!("error probability: {epsilon}");
    println!();
    println!(
        "{:<10} {:>20} {:>14}",
        "route", "EC (bits/use)", "est. error"
    );

    for order in [0, 1, 2, 4] {
        let eval = ec_series(
            sinr,
            scenario.delay_exponent,
            epsilon,
            scenario.blocklength,
            order,
        )?;
        println!(
            "{:<10} {:>20.12} {:>14.2e}",
            format!("series:{order}"),
            eval.ec,
            eval.quadrature_error
        );
    }
    let direct = ec_direct(sinr, scenario.delay_exponent, epsilon, scenario.blocklength)?;
    println!(
        "{:<10} {:>20.12} {:>14.2e}",
        "direct", direct.ec, direct.quadrature_error
    );
    Ok(())
}
