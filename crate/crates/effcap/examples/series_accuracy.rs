//! How fast the series route converges on the direct quadrature.
//!
//! The exponential-of-dispersion factor inside the fading expectation is
//! expanded to a finite order M; this prints the relative EC error of each
//! truncation against the direct route at the EC-optimal error probability.
//!
//! ```bash
//! cargo run --example series_accuracy
//! ```

use effcap::channel::{sinr_collision, NetworkScenario};
use effcap::effective_capacity::series_truncation_error;

fn main() -> effcap::Result<()> {
    let scenario = NetworkScenario::new(5, 2.0, 1000, 0.01)?;
    let sinr = sinr_collision(&scenario);

    println!(
        "operative SINR {:.6}, theta {}, blocklength {}",
        sinr, scenario.delay_exponent, scenario.blocklength
    );
    println!();
    println!("{:>6} {:>22}", "order", "relative EC error");
    for order in 0..=4 {
        let err =
            series_truncation_error(sinr, scenario.delay_exponent, scenario.blocklength, order)?;
        println!("{order:>6} {:>21.5}%", 100.0 * err);
    }
    println!();
    println!("each added term buys roughly an order of magnitude");
    Ok(())
}
