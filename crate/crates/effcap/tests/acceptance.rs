//! Acceptance gate: the numbered behavioural contract this project ships
//! against. Every criterion prints one PASS/FAIL line per sub-check with the
//! measured values before asserting, so a red run still reports the complete
//! picture (`cargo test --test acceptance -- --nocapture` shows all lines).

use std::path::Path;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use effcap::channel::sinr_general;
use effcap::compensation::{
    bystander_sinr, compensation_loss, graceful_theta, joint_optimize, joint_plan_at,
    power_control_snr, JointPriorities,
};
use effcap::effective_capacity::{ec_direct, ec_series, max_delay, optimal_epsilon, EcMethod};
use effcap::montecarlo::ec_monte_carlo;

/// Collects sub-check verdicts so one criterion reports every measurement
/// before failing.
struct Gate {
    criterion: &'static str,
    failures: Vec<String>,
}

impl Gate {
    fn new(criterion: &'static str) -> Self {
        Gate {
            criterion,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, pass: bool, detail: String) {
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("{verdict} [{}] {name}: {detail}", self.criterion);
        if !pass {
            self.failures.push(format!("{name}: {detail}"));
        }
    }

    fn finish(self) {
        assert!(
            self.failures.is_empty(),
            "criterion {} failed {} sub-check(s):\n  {}",
            self.criterion,
            self.failures.len(),
            self.failures.join("\n  ")
        );
    }
}

fn in_band(value: f64, lo: f64, hi: f64) -> bool {
    value >= lo && value <= hi
}

/// Collision SINR for the (snr, n_nodes) pairs of the standard grid.
fn collision_sinr(snr: f64, n_nodes: u32) -> f64 {
    snr / (1.0 + snr * (n_nodes - 1) as f64)
}

const STANDARD_SNR: [f64; 3] = [0.5, 1.0, 2.0];
const STANDARD_NODES: [u32; 3] = [1, 5, 10];
const STANDARD_THETA: [f64; 3] = [0.001, 0.01, 0.1];
const STANDARD_BLOCKLENGTH: [u32; 3] = [500, 1000, 2000];

#[test]
fn criterion_01_delay_bound_arithmetic() {
    let mut gate = Gate::new("1");
    let lax = max_delay(1.0, 0.01, 1e-3).unwrap();
    gate.check(
        "delay budget at theta 0.01",
        in_band(lax, 690.0, 692.0),
        format!("max_delay = {lax:.4} (required within [690, 692])"),
    );
    let strict = max_delay(1.0, 0.3, 1e-3).unwrap();
    gate.check(
        "delay budget at theta 0.3",
        in_band(strict, 22.5, 23.5),
        format!("max_delay = {strict:.4} (required within [22.5, 23.5])"),
    );
    gate.finish();
}

#[test]
fn criterion_02_series_truncation_accuracy() {
    let mut gate = Gate::new("2");

    // Reference point: five colliding nodes at SNR 2, theta 0.01, Tf 1000,
    // evaluated at the direct route's optimal error probability.
    let sinr = collision_sinr(2.0, 5);
    let opt = optimal_epsilon(sinr, 0.01, 1000, EcMethod::Direct).unwrap();
    let direct = ec_direct(sinr, 0.01, opt.epsilon_star, 1000).unwrap().ec;
    for (order, bound_pct) in [(0usize, 8.0), (1, 1.5), (2, 0.5)] {
        let series = ec_series(sinr, 0.01, opt.epsilon_star, 1000, order)
            .unwrap()
            .ec;
        let rel_pct = ((series - direct) / direct).abs() * 100.0;
        gate.check(
            &format!("relative error at truncation order {order}"),
            rel_pct <= bound_pct,
            format!("{rel_pct:.4}% (required <= {bound_pct}%)"),
        );
    }

    // Monotone improvement in truncation order across the standard grid.
    let mut scenarios: Vec<(f64, f64, u32)> = Vec::new();
    for &snr in &STANDARD_SNR {
        for &n in &STANDARD_NODES {
            for &theta in &STANDARD_THETA {
                for &tf in &STANDARD_BLOCKLENGTH {
                    scenarios.push((collision_sinr(snr, n), theta, tf));
                }
            }
        }
    }
    let violations: Vec<String> = scenarios
        .par_iter()
        .filter_map(|&(sinr, theta, tf)| {
            let opt = optimal_epsilon(sinr, theta, tf, EcMethod::Direct).unwrap();
            let reference = ec_direct(sinr, theta, opt.epsilon_star, tf).unwrap().ec;
            let errors: Vec<f64> = [0usize, 1, 2, 4]
                .iter()
                .map(|&m| {
                    let ec = ec_series(sinr, theta, opt.epsilon_star, tf, m).unwrap().ec;
                    (ec - reference).abs()
                })
                .collect();
            let monotone = errors.windows(2).all(|w| w[1] <= w[0] + 1e-12);
            if monotone {
                None
            } else {
                Some(format!(
                    "sinr={sinr:.4} theta={theta} tf={tf}: errors {errors:?}"
                ))
            }
        })
        .collect();
    gate.check(
        "truncation error decreases with order on the standard grid",
        violations.is_empty(),
        if violations.is_empty() {
            format!(
                "all {} scenarios monotone over orders 0,1,2,4",
                scenarios.len()
            )
        } else {
            format!(
                "{} violation(s): {}",
                violations.len(),
                violations.join("; ")
            )
        },
    );
    gate.finish();
}

#[test]
fn criterion_03_collision_curve_structure() {
    let mut gate = Gate::new("3");
    let nodes = [1u32, 5, 10];
    let optima: Vec<_> = nodes
        .iter()
        .map(|&n| {
            let sinr = collision_sinr(2.0, n);
            optimal_epsilon(sinr, 0.01, 1000, EcMethod::Direct).unwrap()
        })
        .collect();

    let ec_values: Vec<f64> = optima.iter().map(|o| o.ec_max).collect();
    gate.check(
        "peak EC strictly decreases with node count",
        ec_values.windows(2).all(|w| w[1] < w[0]),
        format!("EC over N in {{1,5,10}}: {ec_values:.6?}"),
    );
    let eps_values: Vec<f64> = optima.iter().map(|o| o.epsilon_star).collect();
    gate.check(
        "optimal epsilon strictly increases with node count",
        eps_values.windows(2).all(|w| w[1] > w[0]),
        format!("epsilon* over N in {{1,5,10}}: {eps_values:.6?}"),
    );

    // Unimodality of each EC-vs-epsilon curve on 100 log-spaced samples.
    let points = 100usize;
    let (lo, hi) = (1e-3f64, 0.5f64);
    for &n in &nodes {
        let sinr = collision_sinr(2.0, n);
        let curve: Vec<f64> = (0..points)
            .into_par_iter()
            .map(|i| {
                let t = i as f64 / (points - 1) as f64;
                let eps = lo * (hi / lo).powf(t);
                ec_direct(sinr, 0.01, eps, 1000).unwrap().ec
            })
            .collect();
        let peak = curve
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        let rises = curve[..=peak].windows(2).all(|w| w[1] >= w[0] - 1e-12);
        let falls = curve[peak..].windows(2).all(|w| w[1] <= w[0] + 1e-12);
        gate.check(
            &format!("EC-vs-epsilon curve unimodal at N = {n}"),
            rises && falls,
            format!(
                "peak at sample {peak} (epsilon = {:.4}), rises {rises}, falls {falls}",
                lo * (hi / lo).powf(peak as f64 / (points - 1) as f64)
            ),
        );
    }
    gate.finish();
}

#[test]
fn criterion_04_graceful_degradation_workout() {
    let mut gate = Gate::new("4");
    let (snr, n, theta, tf) = (1.0, 5u32, 0.05, 1000u32);
    let (theta_i, ec) = graceful_theta(snr, n, theta, tf).unwrap();
    gate.check(
        "relaxed delay exponent",
        in_band(theta_i, 0.021, 0.025),
        format!("theta_i = {theta_i:.6} (required within [0.021, 0.025])"),
    );
    gate.check(
        "restored EC level",
        in_band(ec, 0.063, 0.069),
        format!("EC = {ec:.6} (required within [0.063, 0.069])"),
    );

    // Delay budgets at 1e-3 outage: collided link before relaxation vs the
    // restored link at theta_i.
    let sinr = collision_sinr(snr, n);
    let collided = optimal_epsilon(sinr, theta, tf, EcMethod::Direct).unwrap();
    let before = max_delay(collided.ec_max, theta, 1e-3).unwrap();
    let after = max_delay(ec, theta_i, 1e-3).unwrap();
    gate.check(
        "collided delay budget near 3600",
        (before - 3600.0).abs() / 3600.0 <= 0.05,
        format!(
            "D_max = {before:.1} ({:+.2}% of 3600)",
            (before / 3600.0 - 1.0) * 100.0
        ),
    );
    gate.check(
        "relaxed delay budget near 4600",
        (after - 4600.0).abs() / 4600.0 <= 0.05,
        format!(
            "D_max = {after:.1} ({:+.2}% of 4600)",
            (after / 4600.0 - 1.0) * 100.0
        ),
    );
    gate.finish();
}

#[test]
fn criterion_05_joint_optimum_workout() {
    let mut gate = Gate::new("5");
    let priorities = JointPriorities::new(1.0, 4.0).unwrap();
    let plan = joint_optimize(2.0, 15, 0.1, 1000, priorities).unwrap();
    gate.check(
        "bystander operating SINR",
        in_band(plan.bystander_sinr, 0.052, 0.062),
        format!(
            "rho_so = {:.6} (required within [0.052, 0.062])",
            plan.bystander_sinr
        ),
    );
    gate.check(
        "operational loss factor",
        in_band(plan.loss_factor, 0.93, 0.95),
        format!(
            "alpha = {:.6} (required within [0.93, 0.95])",
            plan.loss_factor
        ),
    );
    gate.check(
        "residual delay exponent",
        in_band(plan.new_theta, 0.048, 0.058),
        format!(
            "theta_2 = {:.6} (required within [0.048, 0.058])",
            plan.new_theta
        ),
    );
    gate.check(
        "recovering operational SNR",
        in_band(plan.recovering_snr, 7.8, 8.4),
        format!(
            "rho_co = {:.6} (required within [7.8, 8.4])",
            plan.recovering_snr
        ),
    );
    let loss_points = (1.0 - plan.loss_factor) * 100.0;
    gate.check(
        "bystander EC loss near 6 percent",
        (loss_points - 6.0).abs() <= 1.5,
        format!("loss = {loss_points:.2} percentage points (required within 6 +/- 1.5)"),
    );
    gate.finish();
}

#[test]
fn criterion_06_sinr_sensitivity_ordering() {
    let mut gate = Gate::new("6");
    let epsilons = [0.01, 0.05, 0.1];

    // Central-difference dEC/d(sinr) at fixed epsilon.
    let derivative = |sinr: f64, theta: f64, eps: f64, tf: u32| -> f64 {
        let h = 1e-4 * sinr;
        let up = ec_direct(sinr + h, theta, eps, tf).unwrap().ec;
        let down = ec_direct(sinr - h, theta, eps, tf).unwrap().ec;
        (up - down) / (2.0 * h)
    };

    let mut grid: Vec<(f64, f64, u32)> = Vec::new();
    for &snr in &STANDARD_SNR {
        for &n in &STANDARD_NODES {
            for &eps in &epsilons {
                for &tf in &STANDARD_BLOCKLENGTH {
                    grid.push((collision_sinr(snr, n), eps, tf));
                }
            }
        }
    }

    let results: Vec<(bool, bool, String)> = grid
        .par_iter()
        .map(|&(sinr, eps, tf)| {
            let d_lax = derivative(sinr, 0.001, eps, tf);
            let d_mid = derivative(sinr, 0.01, eps, tf);
            let d_strict = derivative(sinr, 0.1, eps, tf);
            let positive = d_lax > 0.0 && d_mid > 0.0 && d_strict > 0.0;
            let ordered = d_strict < d_lax;
            (
                positive,
                ordered,
                format!(
                    "sinr={sinr:.4} eps={eps} tf={tf}: d(0.001)={d_lax:.5} d(0.1)={d_strict:.5}"
                ),
            )
        })
        .collect();

    let positive_violations: Vec<&String> = results
        .iter()
        .filter(|(p, _, _)| !p)
        .map(|(_, _, d)| d)
        .collect();
    gate.check(
        "EC increases with SINR everywhere on the grid",
        positive_violations.is_empty(),
        if positive_violations.is_empty() {
            format!("{} grid points, all derivatives positive", results.len())
        } else {
            format!("violations: {positive_violations:?}")
        },
    );
    let ordering_violations: Vec<&String> = results
        .iter()
        .filter(|(_, o, _)| !o)
        .map(|(_, _, d)| d)
        .collect();
    gate.check(
        "strict delay constraints damp the SINR sensitivity",
        ordering_violations.is_empty(),
        if ordering_violations.is_empty() {
            format!(
                "{} grid points, d(theta=0.1) < d(theta=0.001) everywhere",
                results.len()
            )
        } else {
            format!("violations: {ordering_violations:?}")
        },
    );
    gate.finish();
}

#[test]
fn criterion_07_route_triangle_agreement() {
    let mut gate = Gate::new("7");
    let scenarios: Vec<(f64, u32)> = STANDARD_SNR
        .iter()
        .flat_map(|&snr| STANDARD_NODES.iter().map(move |&n| (snr, n)))
        .collect();

    let rows: Vec<(String, f64, f64, bool, bool)> = scenarios
        .par_iter()
        .map(|&(snr, n)| {
            let sinr = collision_sinr(snr, n);
            let opt = optimal_epsilon(sinr, 0.01, 1000, EcMethod::Direct).unwrap();
            let direct = ec_direct(sinr, 0.01, opt.epsilon_star, 1000).unwrap();
            let series = ec_series(sinr, 0.01, opt.epsilon_star, 1000, 4).unwrap();
            let (_, mc) =
                ec_monte_carlo(sinr, 0.01, opt.epsilon_star, 1000, 1_000_000, 42).unwrap();
            let series_rel = ((series.ec - direct.ec) / direct.ec).abs();
            let z = (mc.mean - direct.inner_expectation).abs() / mc.std_error;
            (
                format!("snr={snr} N={n}"),
                series_rel,
                z,
                series_rel <= 1e-3,
                z <= 3.0,
            )
        })
        .collect();

    for (label, series_rel, z, series_ok, mc_ok) in &rows {
        gate.check(
            &format!("series order 4 vs direct at {label}"),
            *series_ok,
            format!("relative gap {series_rel:.2e} (required <= 1e-3)"),
        );
        gate.check(
            &format!("Monte Carlo vs direct at {label}"),
            *mc_ok,
            format!("|z| = {z:.3} (required <= 3)"),
        );
    }
    gate.finish();
}

#[test]
fn criterion_08_joint_band_endpoints() {
    let mut gate = Gate::new("8");
    for (snr, n, theta, tf) in [(2.0, 15u32, 0.1, 1000u32), (1.0, 5, 0.05, 1000)] {
        let label = format!("snr={snr} N={n} theta={theta}");
        let rho_s = bystander_sinr(snr, n).unwrap();
        let rho_i = collision_sinr(snr, n);

        let at_power = joint_plan_at(snr, n, theta, tf, rho_s).unwrap();
        let alpha_c = compensation_loss(snr, n, theta, tf).unwrap();
        gate.check(
            &format!("power-control endpoint keeps theta ({label})"),
            (at_power.new_theta - theta).abs() <= 1e-4,
            format!("theta_2 = {:.8} vs theta = {theta}", at_power.new_theta),
        );
        gate.check(
            &format!("power-control endpoint reproduces alpha_c ({label})"),
            (at_power.loss_factor - alpha_c).abs() <= 1e-4,
            format!(
                "alpha = {:.8} vs alpha_c = {alpha_c:.8}",
                at_power.loss_factor
            ),
        );

        let at_graceful = joint_plan_at(snr, n, theta, tf, rho_i).unwrap();
        let (theta_i, _) = graceful_theta(snr, n, theta, tf).unwrap();
        gate.check(
            &format!("graceful endpoint is lossless ({label})"),
            at_graceful.loss_factor == 1.0,
            format!("alpha = {} (required exactly 1)", at_graceful.loss_factor),
        );
        gate.check(
            &format!("graceful endpoint reproduces theta_i ({label})"),
            (at_graceful.new_theta - theta_i).abs() <= 1e-6,
            format!(
                "theta_2 = {:.8} vs theta_i = {theta_i:.8}",
                at_graceful.new_theta
            ),
        );
    }
    gate.finish();
}

#[test]
fn criterion_09_power_control_exactness() {
    let mut gate = Gate::new("9");
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        // SNR log-uniform over [0.1, 50], node count uniform over 1..=32.
        let snr = 0.1 * (500.0f64).powf(rng.gen::<f64>());
        let n: u32 = rng.gen_range(1..=32);
        let boosted = power_control_snr(snr, n).unwrap();
        // The bystanders keep transmitting at the original SNR, so the
        // recovering node sees interference snr·(N−1) behind its boost.
        let interference = snr * (n - 1) as f64 / boosted;
        let restored = sinr_general(boosted, interference).unwrap();
        let rel = ((restored - snr) / snr).abs();
        worst = worst.max(rel);
    }
    gate.check(
        "boosted SNR restores the original operating point",
        worst <= 1e-13,
        format!("worst relative error over 20 seeded pairs = {worst:.2e} (required <= 1e-13)"),
    );
    gate.finish();
}

#[test]
fn criterion_10_loss_factor_theta_ordering() {
    let mut gate = Gate::new("10");
    let pairs: Vec<(u32, f64, f64)> = (2u32..=10)
        .into_par_iter()
        .map(|n| {
            let lax = compensation_loss(1.0, n, 0.001, 1000).unwrap();
            let strict = compensation_loss(1.0, n, 0.1, 1000).unwrap();
            (n, lax, strict)
        })
        .collect();
    let violations: Vec<String> = pairs
        .iter()
        .filter(|(_, lax, strict)| lax >= strict)
        .map(|(n, lax, strict)| format!("N={n}: {lax:.6} !< {strict:.6}"))
        .collect();
    gate.check(
        "lax delay exponents suffer the larger bystander loss",
        violations.is_empty(),
        if violations.is_empty() {
            format!(
                "alpha_c(0.001) < alpha_c(0.1) for all N in 2..=10 \
                 (N=2: {:.4} < {:.4}; N=10: {:.4} < {:.4})",
                pairs[0].1, pairs[0].2, pairs[8].1, pairs[8].2
            )
        } else {
            format!("violations: {violations:?}")
        },
    );
    gate.finish();
}

#[test]
fn criterion_11_byte_identical_outputs() {
    let mut gate = Gate::new("11");
    let bin = env!("CARGO_BIN_EXE_effcap");
    let dir = tempfile::TempDir::new().unwrap();

    let config_path = dir.path().join("sweep.json");
    std::fs::write(
        &config_path,
        r#"{
  "schema_version": 1,
  "scenario": {
    "n_nodes": 5,
    "snr": { "value": 1.0, "unit": "linear" },
    "blocklength": 1000,
    "delay_exponent": 0.05
  },
  "sweep": { "variable": "epsilon", "min": 0.005, "max": 0.2, "points": 12, "spacing": "log" }
}"#,
    )
    .unwrap();

    let run = |args: &[&str]| {
        let output = Command::new(bin).args(args).output().expect("spawn");
        assert!(
            output.status.success(),
            "{:?}: {}",
            args,
            String::from_utf8_lossy(&output.stderr)
        );
    };
    let bytes = |path: &Path| std::fs::read(path).unwrap();
    let config = config_path.to_str().unwrap();

    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    run(&["sweep", "--config", config, "--out", a.to_str().unwrap()]);
    run(&["sweep", "--config", config, "--out", b.to_str().unwrap()]);
    gate.check(
        "sweep reruns are byte-identical",
        bytes(&a) == bytes(&b),
        format!("{} bytes", bytes(&a).len()),
    );

    let (j1, j8) = (dir.path().join("j1.csv"), dir.path().join("j8.csv"));
    run(&[
        "sweep",
        "--config",
        config,
        "--out",
        j1.to_str().unwrap(),
        "--jobs",
        "1",
    ]);
    run(&[
        "sweep",
        "--config",
        config,
        "--out",
        j8.to_str().unwrap(),
        "--jobs",
        "8",
    ]);
    gate.check(
        "sweep output is independent of worker count",
        bytes(&j1) == bytes(&j8),
        format!("--jobs 1 vs --jobs 8, {} bytes", bytes(&j1).len()),
    );

    let (m1, m2) = (dir.path().join("m1.csv"), dir.path().join("m2.csv"));
    for out in [&m1, &m2] {
        run(&[
            "mc-validate",
            "--config",
            config,
            "--samples",
            "200000",
            "--seed",
            "42",
            "--out",
            out.to_str().unwrap(),
        ]);
    }
    gate.check(
        "seeded sampling reruns are byte-identical",
        bytes(&m1) == bytes(&m2),
        format!("{} bytes", bytes(&m1).len()),
    );

    let (f1, f2) = (dir.path().join("f1.csv"), dir.path().join("f2.csv"));
    run(&["figure", "fig3", "--out", f1.to_str().unwrap()]);
    run(&[
        "figure",
        "fig3",
        "--out",
        f2.to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    gate.check(
        "figure datasets are byte-identical across runs and worker counts",
        bytes(&f1) == bytes(&f2),
        format!("{} bytes", bytes(&f1).len()),
    );
    gate.finish();
}
