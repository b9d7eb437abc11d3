//! Implementations behind the binary's subcommands: scenario evaluation,
//! sweeps, compensation planning, reference datasets, and the sampling
//! cross-check.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::channel::{sinr_collision, NetworkScenario};
use crate::compensation::{
    bystander_sinr, joint_optimize, joint_plan_at, power_control_plan, CompensationPlan,
    CompensationStrategy,
};
use crate::effective_capacity::{
    delay_outage, ec_direct, ec_series, max_delay, optimal_epsilon, EcEvaluation, EcMethod,
    EpsilonOpt, DEFAULT_TRUNCATION_ORDER,
};
use crate::error::{Error, Result};
use crate::montecarlo::ec_monte_carlo;

use super::config::{MethodSpec, ScenarioConfig, SweepSpec, SweepVariable};
use super::figures;
use super::output::{Dataset, Field};

/// Sample count used by the sampling route when none is requested.
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
/// Seed used by the sampling route when none is requested.
pub const DEFAULT_SEED: u64 = 42;

const SCENARIO_COLUMNS: [&str; 4] = ["n_nodes", "snr", "blocklength", "delay_exponent"];

/// Evaluation knobs after merging command-line flags over the config file:
/// flags win, then the config, then defaults.
#[derive(Debug, Clone, Copy)]
pub struct EvalSettings {
    pub method: MethodSpec,
    pub samples: u64,
    pub seed: u64,
}

impl EvalSettings {
    pub fn resolve(
        method_flag: Option<MethodSpec>,
        config: &ScenarioConfig,
        samples: Option<u64>,
        seed: Option<u64>,
    ) -> Self {
        EvalSettings {
            method: method_flag
                .or(config.method)
                .unwrap_or(MethodSpec::Series(DEFAULT_TRUNCATION_ORDER)),
            samples: samples.unwrap_or(DEFAULT_SAMPLES),
            seed: seed.unwrap_or(DEFAULT_SEED),
        }
    }
}

fn warn_short_blocklength(scenario: &NetworkScenario) {
    if scenario.blocklength < 100 {
        eprintln!(
            "warning: blocklength {} is below 100 symbols; the normal approximation \
             behind the rate model loses accuracy for very short packets",
            scenario.blocklength
        );
    }
}

fn scenario_fields(scenario: &NetworkScenario) -> Vec<Field> {
    vec![
        scenario.n_nodes.into(),
        scenario.snr.into(),
        scenario.blocklength.into(),
        scenario.delay_exponent.into(),
    ]
}

/// One evaluated operating point: the EC-optimal error probability for the
/// scenario plus the EC evaluation at the error probability actually used.
struct PointResult {
    epsilon: f64,
    opt: EpsilonOpt,
    eval: EcEvaluation,
}

fn evaluate_point(
    sinr: f64,
    theta: f64,
    blocklength: u32,
    epsilon: Option<f64>,
    settings: EvalSettings,
) -> Result<PointResult> {
    // The sampling route cannot drive the optimizer, so the optimum is
    // located by quadrature either way.
    let opt_method = match settings.method {
        MethodSpec::Series(order) => EcMethod::Series {
            truncation_order: order,
        },
        MethodSpec::Direct | MethodSpec::MonteCarlo => EcMethod::Direct,
    };
    let opt = optimal_epsilon(sinr, theta, blocklength, opt_method)?;
    let epsilon = epsilon.unwrap_or(opt.epsilon_star);
    let eval = match settings.method {
        MethodSpec::Direct => ec_direct(sinr, theta, epsilon, blocklength)?,
        MethodSpec::Series(order) => ec_series(sinr, theta, epsilon, blocklength, order)?,
        MethodSpec::MonteCarlo => {
            ec_monte_carlo(
                sinr,
                theta,
                epsilon,
                blocklength,
                settings.samples,
                settings.seed,
            )?
            .0
        }
    };
    Ok(PointResult { epsilon, opt, eval })
}

fn point_columns(with_qos: bool) -> Vec<String> {
    let mut cols: Vec<String> = SCENARIO_COLUMNS.iter().map(|s| s.to_string()).collect();
    cols.extend(
        [
            "epsilon",
            "epsilon_star",
            "degenerate",
            "ec",
            "inner_expectation",
            "error_estimate",
            "method",
        ]
        .map(String::from),
    );
    if with_qos {
        cols.push("delay_outage".into());
        cols.push("max_delay".into());
    }
    cols
}

fn point_row(
    scenario: &NetworkScenario,
    point: &PointResult,
    qos: Option<crate::effective_capacity::QosTarget>,
) -> Result<Vec<Field>> {
    let mut row = scenario_fields(scenario);
    row.push(point.epsilon.into());
    row.push(point.opt.epsilon_star.into());
    row.push(point.opt.degenerate.into());
    row.push(point.eval.ec.into());
    row.push(point.eval.inner_expectation.into());
    row.push(point.eval.quadrature_error.into());
    row.push(point.eval.method.to_string().into());
    if let Some(qos) = qos {
        row.push(delay_outage(point.eval.ec, scenario.delay_exponent, qos.max_delay)?.into());
        row.push(
            max_delay(
                point.eval.ec,
                scenario.delay_exponent,
                qos.outage_probability,
            )?
            .into(),
        );
    }
    Ok(row)
}

fn scenario_comment(scenario: &NetworkScenario) -> String {
    format!(
        "scenario: n_nodes={} snr={} (linear) blocklength={} delay_exponent={}",
        scenario.n_nodes, scenario.snr, scenario.blocklength, scenario.delay_exponent
    )
}

fn print_scenario(scenario: &NetworkScenario) {
    println!(
        "scenario: {} node(s), SNR {} (linear), blocklength {} symbols, delay exponent {}",
        scenario.n_nodes, scenario.snr, scenario.blocklength, scenario.delay_exponent
    );
    println!(
        "operative SINR under collision: {:.6}",
        sinr_collision(scenario)
    );
}

fn report_written(path: &Path, dataset: &Dataset) {
    println!("wrote {} ({} rows)", path.display(), dataset.row_count());
}

/// `ec`: effective capacity of one scenario at a fixed or optimized ε.
pub fn run_ec(
    config_path: &Path,
    out: Option<PathBuf>,
    method_flag: Option<MethodSpec>,
    samples: Option<u64>,
    seed: Option<u64>,
) -> Result<()> {
    let config = ScenarioConfig::load(config_path)?;
    warn_short_blocklength(&config.scenario);
    let settings = EvalSettings::resolve(method_flag, &config, samples, seed);
    let scenario = &config.scenario;
    let sinr = sinr_collision(scenario);
    let point = evaluate_point(
        sinr,
        scenario.delay_exponent,
        scenario.blocklength,
        config.epsilon,
        settings,
    )?;

    print_scenario(scenario);
    println!("method: {}", settings.method);
    match config.epsilon {
        Some(_) => println!("epsilon: {:.6} (fixed by config)", point.epsilon),
        None => println!("epsilon: {:.6} (EC-optimal)", point.epsilon),
    }
    println!(
        "epsilon*: {:.6}{}",
        point.opt.epsilon_star,
        if point.opt.degenerate {
            " (degenerate: boundary optimum)"
        } else {
            ""
        }
    );
    println!("effective capacity: {:.6} bits/use", point.eval.ec);
    if let Some(qos) = config.qos {
        let outage = delay_outage(point.eval.ec, scenario.delay_exponent, qos.max_delay)?;
        let budget = max_delay(
            point.eval.ec,
            scenario.delay_exponent,
            qos.outage_probability,
        )?;
        println!(
            "delay-outage probability at D_max {}: {:.3e}",
            qos.max_delay, outage
        );
        println!(
            "delay budget at outage {:.1e}: {:.1} symbols",
            qos.outage_probability, budget
        );
    }

    if let Some(path) = out.or_else(|| config.output_path.clone()) {
        let mut dataset = Dataset::new(point_columns(config.qos.is_some()));
        dataset.comment(scenario_comment(scenario));
        dataset.comment(format!("method: {}", settings.method));
        dataset.push_row(point_row(scenario, &point, config.qos)?);
        dataset.write_to(&path)?;
        report_written(&path, &dataset);
    }
    Ok(())
}

/// `epsilon-opt`: locate the EC-maximizing error probability.
pub fn run_epsilon_opt(
    config_path: &Path,
    out: Option<PathBuf>,
    method_flag: Option<MethodSpec>,
) -> Result<()> {
    let config = ScenarioConfig::load(config_path)?;
    warn_short_blocklength(&config.scenario);
    let settings = EvalSettings::resolve(method_flag, &config, None, None);
    let scenario = &config.scenario;
    let sinr = sinr_collision(scenario);
    let method = match settings.method {
        MethodSpec::Series(order) => EcMethod::Series {
            truncation_order: order,
        },
        MethodSpec::Direct => EcMethod::Direct,
        MethodSpec::MonteCarlo => {
            return Err(Error::config(
                "method",
                "epsilon-opt needs a deterministic method (series:M or direct)",
            ))
        }
    };
    let opt = optimal_epsilon(sinr, scenario.delay_exponent, scenario.blocklength, method)?;

    print_scenario(scenario);
    println!("method: {}", settings.method);
    println!("epsilon*: {:.8}", opt.epsilon_star);
    println!("EC at epsilon*: {:.8} bits/use", opt.ec_max);
    if opt.degenerate {
        println!("note: the optimum sits on the search boundary");
    }

    if let Some(path) = out.or_else(|| config.output_path.clone()) {
        let mut cols: Vec<String> = SCENARIO_COLUMNS.iter().map(|s| s.to_string()).collect();
        cols.extend(["epsilon_star", "ec_max", "degenerate", "method"].map(String::from));
        let mut dataset = Dataset::new(cols);
        dataset.comment(scenario_comment(scenario));
        let mut row = scenario_fields(scenario);
        row.push(opt.epsilon_star.into());
        row.push(opt.ec_max.into());
        row.push(opt.degenerate.into());
        row.push(settings.method.to_string().into());
        dataset.push_row(row);
        dataset.write_to(&path)?;
        report_written(&path, &dataset);
    }
    Ok(())
}

/// Applies one sweep-axis value to the base config, yielding the scenario and
/// the (possibly overridden) error probability for that point.
fn apply_sweep_value(
    config: &ScenarioConfig,
    variable: SweepVariable,
    value: f64,
) -> Result<(NetworkScenario, Option<f64>)> {
    let base = &config.scenario;
    let scenario = match variable {
        SweepVariable::Epsilon => *base,
        SweepVariable::NNodes => NetworkScenario::new(
            value.round().max(1.0) as u32,
            base.snr,
            base.blocklength,
            base.delay_exponent,
        )?,
        SweepVariable::Snr => {
            NetworkScenario::new(base.n_nodes, value, base.blocklength, base.delay_exponent)?
        }
        SweepVariable::Theta => {
            NetworkScenario::new(base.n_nodes, base.snr, base.blocklength, value)?
        }
        SweepVariable::Blocklength => NetworkScenario::new(
            base.n_nodes,
            base.snr,
            value.round().max(1.0) as u32,
            base.delay_exponent,
        )?,
        SweepVariable::BystanderOpSinr => {
            unreachable!("bystander sweeps are handled separately")
        }
    };
    let epsilon = match variable {
        SweepVariable::Epsilon => Some(value),
        _ => config.epsilon,
    };
    Ok((scenario, epsilon))
}

fn validate_sweep_bounds(sweep: &SweepSpec) -> Result<()> {
    match sweep.variable {
        SweepVariable::Epsilon => {
            if sweep.min <= 0.0 || sweep.max >= 1.0 {
                return Err(Error::config(
                    "sweep",
                    "epsilon sweeps must stay strictly inside (0, 1)",
                ));
            }
        }
        SweepVariable::Snr | SweepVariable::Theta | SweepVariable::BystanderOpSinr => {
            if sweep.min <= 0.0 {
                return Err(Error::config(
                    "sweep",
                    format!("{} sweeps need a positive minimum", sweep.variable),
                ));
            }
        }
        SweepVariable::NNodes | SweepVariable::Blocklength => {
            if sweep.min < 1.0 {
                return Err(Error::config(
                    "sweep",
                    format!("{} sweeps must start at 1 or above", sweep.variable),
                ));
            }
        }
    }
    Ok(())
}

/// `sweep`: evaluate the scenario across a one-dimensional grid and write the
/// rows in grid order.
pub fn run_sweep(
    config_path: &Path,
    out: Option<PathBuf>,
    method_flag: Option<MethodSpec>,
    samples: Option<u64>,
    seed: Option<u64>,
) -> Result<()> {
    let config = ScenarioConfig::load(config_path)?;
    warn_short_blocklength(&config.scenario);
    let sweep = config
        .sweep
        .ok_or_else(|| Error::config("sweep", "the sweep command needs a sweep section"))?;
    validate_sweep_bounds(&sweep)?;
    let path = out
        .or_else(|| config.output_path.clone())
        .ok_or_else(|| Error::config("output", "sweep needs --out or an output_path entry"))?;
    let settings = EvalSettings::resolve(method_flag, &config, samples, seed);
    let grid = sweep.grid();

    let dataset = if sweep.variable == SweepVariable::BystanderOpSinr {
        bystander_sweep_dataset(&config, &sweep, &grid)?
    } else {
        scalar_sweep_dataset(&config, &sweep, &grid, settings)?
    };
    dataset.write_to(&path)?;
    println!(
        "sweep over {}: {} points, {} to {}",
        sweep.variable, sweep.points, sweep.min, sweep.max
    );
    report_written(&path, &dataset);
    Ok(())
}

fn scalar_sweep_dataset(
    config: &ScenarioConfig,
    sweep: &SweepSpec,
    grid: &[f64],
    settings: EvalSettings,
) -> Result<Dataset> {
    let rows: Result<Vec<Vec<Field>>> = grid
        .par_iter()
        .map(|&value| {
            let (scenario, epsilon) = apply_sweep_value(config, sweep.variable, value)?;
            let point = evaluate_point(
                sinr_collision(&scenario),
                scenario.delay_exponent,
                scenario.blocklength,
                epsilon,
                settings,
            )?;
            point_row(&scenario, &point, config.qos)
        })
        .collect();
    let mut dataset = Dataset::new(point_columns(config.qos.is_some()));
    dataset.comment(scenario_comment(&config.scenario));
    dataset.comment(format!(
        "sweep: variable={} min={} max={} points={}",
        sweep.variable, sweep.min, sweep.max, sweep.points
    ));
    dataset.comment(format!("method: {}", settings.method));
    for row in rows? {
        dataset.push_row(row);
    }
    Ok(dataset)
}

fn bystander_sweep_dataset(
    config: &ScenarioConfig,
    sweep: &SweepSpec,
    grid: &[f64],
) -> Result<Dataset> {
    let scenario = &config.scenario;
    if scenario.n_nodes < 2 {
        return Err(Error::config(
            "scenario.n_nodes",
            "bystander sweeps describe a collision and need at least 2 nodes",
        ));
    }
    let rows: Result<Vec<Vec<Field>>> = grid
        .par_iter()
        .map(|&rho_so| {
            let mut row = scenario_fields(scenario);
            row.push(rho_so.into());
            match joint_plan_at(
                scenario.snr,
                scenario.n_nodes,
                scenario.delay_exponent,
                scenario.blocklength,
                rho_so,
            ) {
                Ok(plan) => {
                    row.push(plan.recovering_snr.into());
                    row.push(plan.loss_factor.into());
                    row.push(plan.new_theta.into());
                    row.push(true.into());
                }
                Err(Error::Infeasible(_)) => {
                    row.push(f64::NAN.into());
                    row.push(f64::NAN.into());
                    row.push(f64::NAN.into());
                    row.push(false.into());
                }
                Err(other) => return Err(other),
            }
            Ok(row)
        })
        .collect();
    let mut cols: Vec<String> = SCENARIO_COLUMNS.iter().map(|s| s.to_string()).collect();
    cols.extend(
        [
            "bystander_op_sinr",
            "recovering_snr",
            "loss_factor",
            "new_theta",
            "feasible",
        ]
        .map(String::from),
    );
    let mut dataset = Dataset::new(cols);
    dataset.comment(scenario_comment(scenario));
    dataset.comment(format!(
        "sweep: variable={} min={} max={} points={}",
        sweep.variable, sweep.min, sweep.max, sweep.points
    ));
    for row in rows? {
        dataset.push_row(row);
    }
    Ok(dataset)
}

fn print_plan(plan: &CompensationPlan, restored_ec: f64) {
    println!("strategy: {}", plan.strategy);
    println!("recovering node transmit SNR: {:.6}", plan.recovering_snr);
    println!("bystander SINR: {:.6}", plan.bystander_sinr);
    println!("delay exponent after compensation: {:.6}", plan.new_theta);
    println!("bystander loss factor: {:.6}", plan.loss_factor);
    println!("restored effective capacity: {:.6} bits/use", restored_ec);
    if let Some(eta) = plan.objective_value {
        println!("objective value: {:.8}", eta);
    }
}

/// `compensate`: plan one of the three interference-compensation strategies.
pub fn run_compensate(
    strategy: CompensationStrategy,
    config_path: &Path,
    out: Option<PathBuf>,
) -> Result<()> {
    let config = ScenarioConfig::load(config_path)?;
    warn_short_blocklength(&config.scenario);
    let scenario = &config.scenario;
    let plan = match strategy {
        CompensationStrategy::PowerControl => power_control_plan(
            scenario.snr,
            scenario.n_nodes,
            scenario.delay_exponent,
            scenario.blocklength,
        )?,
        CompensationStrategy::GracefulTheta => crate::compensation::graceful_plan(
            scenario.snr,
            scenario.n_nodes,
            scenario.delay_exponent,
            scenario.blocklength,
        )?,
        CompensationStrategy::Joint => {
            let priorities = config.priorities.ok_or_else(|| {
                Error::config(
                    "priorities",
                    "joint compensation needs a priorities section with eta_alpha and eta_theta",
                )
            })?;
            joint_optimize(
                scenario.snr,
                scenario.n_nodes,
                scenario.delay_exponent,
                scenario.blocklength,
                priorities,
            )?
        }
    };
    // EC level every strategy restores the recovering node to: its own
    // no-collision ceiling.
    let restored_ec = optimal_epsilon(
        scenario.snr,
        scenario.delay_exponent,
        scenario.blocklength,
        EcMethod::Direct,
    )?
    .ec_max;

    print_scenario(scenario);
    print_plan(&plan, restored_ec);

    if let Some(path) = out.or_else(|| config.output_path.clone()) {
        let dataset = match strategy {
            CompensationStrategy::Joint => joint_audit_dataset(&config, &plan, restored_ec)?,
            _ => plan_dataset(scenario, &plan, restored_ec),
        };
        dataset.write_to(&path)?;
        report_written(&path, &dataset);
    }
    Ok(())
}

fn plan_dataset(scenario: &NetworkScenario, plan: &CompensationPlan, restored_ec: f64) -> Dataset {
    let mut cols: Vec<String> = SCENARIO_COLUMNS.iter().map(|s| s.to_string()).collect();
    cols.extend(
        [
            "strategy",
            "recovering_snr",
            "bystander_sinr",
            "new_theta",
            "loss_factor",
            "restored_ec",
        ]
        .map(String::from),
    );
    let mut dataset = Dataset::new(cols);
    dataset.comment(scenario_comment(scenario));
    let mut row = scenario_fields(scenario);
    row.push(plan.strategy.to_string().into());
    row.push(plan.recovering_snr.into());
    row.push(plan.bystander_sinr.into());
    row.push(plan.new_theta.into());
    row.push(plan.loss_factor.into());
    row.push(restored_ec.into());
    dataset.push_row(row);
    dataset
}

/// Number of audit-grid points written alongside a joint plan.
const JOINT_AUDIT_POINTS: usize = 64;

/// The joint plan plus the objective curve it was chosen from, so the
/// trade-off behind the optimizer's pick can be inspected.
fn joint_audit_dataset(
    config: &ScenarioConfig,
    plan: &CompensationPlan,
    restored_ec: f64,
) -> Result<Dataset> {
    let scenario = &config.scenario;
    let priorities = config
        .priorities
        .expect("joint plans are only built with priorities present");
    let rho_s = bystander_sinr(scenario.snr, scenario.n_nodes)?;
    let rho_i = sinr_collision(scenario);
    let step = (rho_i - rho_s) / (JOINT_AUDIT_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..JOINT_AUDIT_POINTS)
        .map(|k| rho_s + step * k as f64)
        .collect();

    let eta_of = |p: &CompensationPlan| {
        priorities.eta_alpha * p.loss_factor + priorities.eta_theta * p.new_theta
    };
    let audit_row = |rho_so: f64, chosen: bool, p: &CompensationPlan, eta: f64| {
        let mut row = scenario_fields(scenario);
        row.push(rho_so.into());
        row.push(p.recovering_snr.into());
        row.push(p.loss_factor.into());
        row.push(p.new_theta.into());
        row.push(eta.into());
        row.push(true.into());
        row.push(chosen.into());
        row
    };

    let rows: Result<Vec<Vec<Field>>> = grid
        .par_iter()
        .map(|&rho_so| {
            match joint_plan_at(
                scenario.snr,
                scenario.n_nodes,
                scenario.delay_exponent,
                scenario.blocklength,
                rho_so,
            ) {
                Ok(p) => {
                    let eta = eta_of(&p);
                    Ok(audit_row(rho_so, false, &p, eta))
                }
                Err(Error::Infeasible(_)) => {
                    let mut row = scenario_fields(scenario);
                    row.push(rho_so.into());
                    row.push(f64::NAN.into());
                    row.push(f64::NAN.into());
                    row.push(f64::NAN.into());
                    row.push(f64::NAN.into());
                    row.push(false.into());
                    row.push(false.into());
                    Ok(row)
                }
                Err(other) => Err(other),
            }
        })
        .collect();

    let mut cols: Vec<String> = SCENARIO_COLUMNS.iter().map(|s| s.to_string()).collect();
    cols.extend(
        [
            "bystander_op_sinr",
            "recovering_snr",
            "loss_factor",
            "new_theta",
            "eta",
            "feasible",
            "chosen",
        ]
        .map(String::from),
    );
    let mut dataset = Dataset::new(cols);
    dataset.comment(scenario_comment(scenario));
    dataset.comment(format!(
        "joint objective: eta = {}*loss_factor + {}*new_theta",
        priorities.eta_alpha, priorities.eta_theta
    ));
    dataset.comment(format!("restored effective capacity: {restored_ec}"));
    dataset.comment(format!(
        "audit grid: {JOINT_AUDIT_POINTS} points on [{rho_s}, {rho_i}]; final row is the optimized plan"
    ));
    for row in rows? {
        dataset.push_row(row);
    }
    let eta = plan.objective_value.unwrap_or_else(|| eta_of(plan));
    dataset.push_row(audit_row(plan.bystander_sinr, true, plan, eta));
    Ok(dataset)
}

/// `figure <id>`: write one of the named reference datasets.
pub fn run_figure(id: &str, out: &Path) -> Result<()> {
    let dataset = figures::dataset(id)?;
    dataset.write_to(out)?;
    report_written(out, &dataset);
    Ok(())
}

/// `mc-validate`: cross-check both quadrature routes against independent
/// Monte Carlo sampling at one operating point.
pub fn run_mc_validate(
    config_path: &Path,
    out: Option<PathBuf>,
    samples: Option<u64>,
    seed: Option<u64>,
) -> Result<()> {
    let config = ScenarioConfig::load(config_path)?;
    warn_short_blocklength(&config.scenario);
    let scenario = &config.scenario;
    let settings = EvalSettings::resolve(None, &config, samples, seed);
    let truncation_order = match settings.method {
        MethodSpec::Series(order) => order,
        _ => DEFAULT_TRUNCATION_ORDER,
    };
    let sinr = sinr_collision(scenario);
    let theta = scenario.delay_exponent;
    let blocklength = scenario.blocklength;
    let epsilon = match config.epsilon {
        Some(eps) => eps,
        None => optimal_epsilon(sinr, theta, blocklength, EcMethod::Direct)?.epsilon_star,
    };

    let direct = ec_direct(sinr, theta, epsilon, blocklength)?;
    let series = ec_series(sinr, theta, epsilon, blocklength, truncation_order)?;
    let (mc_eval, estimate) = ec_monte_carlo(
        sinr,
        theta,
        epsilon,
        blocklength,
        settings.samples,
        settings.seed,
    )?;
    let sigma = estimate.std_error.max(f64::MIN_POSITIVE);
    let z_direct = (estimate.mean - direct.inner_expectation).abs() / sigma;
    let z_series = (estimate.mean - series.inner_expectation).abs() / sigma;

    print_scenario(scenario);
    println!("epsilon: {:.6}", epsilon);
    println!(
        "sampling: {} samples, seed {}, mean {:.10e}, standard error {:.3e}",
        estimate.samples, estimate.seed, estimate.mean, estimate.std_error
    );
    println!(
        "direct quadrature: {:.10e} ({:.2} standard errors away)",
        direct.inner_expectation, z_direct
    );
    println!(
        "series (order {}): {:.10e} ({:.2} standard errors away)",
        truncation_order, series.inner_expectation, z_series
    );
    println!(
        "verdict: direct {}, series {}",
        if z_direct <= 3.0 {
            "agrees within 3 SE"
        } else {
            "DISAGREES beyond 3 SE"
        },
        if z_series <= 3.0 {
            "agrees within 3 SE"
        } else {
            "DISAGREES beyond 3 SE"
        },
    );

    if let Some(path) = out.or_else(|| config.output_path.clone()) {
        let mut cols: Vec<String> = SCENARIO_COLUMNS.iter().map(|s| s.to_string()).collect();
        cols.extend(
            [
                "epsilon",
                "samples",
                "seed",
                "mc_inner",
                "mc_std_error",
                "mc_ec",
                "direct_inner",
                "direct_ec",
                "series_inner",
                "series_ec",
                "z_direct",
                "z_series",
            ]
            .map(String::from),
        );
        let mut dataset = Dataset::new(cols);
        dataset.comment(scenario_comment(scenario));
        dataset.comment(format!("series truncation order: {truncation_order}"));
        let mut row = scenario_fields(scenario);
        row.push(epsilon.into());
        row.push(estimate.samples.into());
        row.push(estimate.seed.into());
        row.push(estimate.mean.into());
        row.push(estimate.std_error.into());
        row.push(mc_eval.ec.into());
        row.push(direct.inner_expectation.into());
        row.push(direct.ec.into());
        row.push(series.inner_expectation.into());
        row.push(series.ec.into());
        row.push(z_direct.into());
        row.push(z_series.into());
        dataset.push_row(row);
        dataset.write_to(&path)?;
        report_written(&path, &dataset);
    }
    Ok(())
}
