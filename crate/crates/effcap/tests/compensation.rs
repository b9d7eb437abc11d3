//! Contract tests for the interference-compensation planners: power control,
//! graceful delay relaxation, and the joint optimizer.

use effcap::compensation::{
    bystander_sinr, compensation_loss, ec_sinr_sensitivity, graceful_plan, graceful_theta,
    joint_operational_snr, joint_optimize, joint_plan_at, joint_theta2, power_control_plan,
    power_control_snr, CompensationStrategy, JointPriorities,
};
use effcap::Error;

#[test]
fn power_control_closed_forms() {
    assert_eq!(power_control_snr(1.0, 5).unwrap(), 5.0);
    assert_eq!(power_control_snr(2.0, 1).unwrap(), 2.0);
    let rho_s = bystander_sinr(1.0, 5).unwrap();
    assert!((rho_s - 1.0 / 9.0).abs() < 1e-16);
    assert!(bystander_sinr(1.0, 1).is_err());
    assert!(power_control_snr(-1.0, 5).is_err());
}

#[test]
fn loss_factor_matches_reference_values() {
    let lax = compensation_loss(1.0, 5, 0.001, 1000).unwrap();
    assert!(
        (lax - 5.771_921_979_254_521e-1).abs() < 1e-9,
        "alpha(0.001) = {lax:.15}"
    );
    let strict = compensation_loss(1.0, 5, 0.1, 1000).unwrap();
    assert!(
        (strict - 8.029_150_595_791_03e-1).abs() < 1e-9,
        "alpha(0.1) = {strict:.15}"
    );
}

#[test]
fn graceful_relaxation_matches_reference_solution() {
    let (theta_i, ec) = graceful_theta(1.0, 5, 0.05, 1000).unwrap();
    assert!(
        (theta_i - 2.337_678_010_1e-2).abs() < 1e-8,
        "theta_i = {theta_i:.12}"
    );
    assert!((ec - 6.381_851_251_2e-2).abs() < 1e-8, "ec = {ec:.12}");

    let plan = graceful_plan(1.0, 5, 0.05, 1000).unwrap();
    assert_eq!(plan.strategy, CompensationStrategy::GracefulTheta);
    assert_eq!(plan.loss_factor, 1.0);
    assert_eq!(plan.recovering_snr, 1.0);
    assert!((plan.new_theta - theta_i).abs() < 1e-15);
}

#[test]
fn graceful_relaxation_without_collision_is_identity() {
    let (theta_i, _) = graceful_theta(1.0, 1, 0.05, 1000).unwrap();
    assert_eq!(theta_i, 0.05);
}

#[test]
fn graceful_relaxation_reports_infeasibility() {
    // A 500-node pileup at a lax exponent: even θ = θ_min cannot recover the
    // no-collision level.
    let err = graceful_theta(10.0, 500, 0.001, 1000).unwrap_err();
    assert!(matches!(err, Error::Infeasible(_)), "{err}");
}

#[test]
fn joint_residual_relaxation_matches_reference_value() {
    let theta2 = joint_theta2(2.0, 15, 0.1, 1000, 8.08).unwrap();
    assert!((theta2 - 0.055_385).abs() < 1e-4, "theta_2 = {theta2:.6}");
}

#[test]
fn joint_optimizer_matches_reference_plan() {
    let priorities = JointPriorities::new(1.0, 4.0).unwrap();
    let plan = joint_optimize(2.0, 15, 0.1, 1000, priorities).unwrap();
    assert!(
        (plan.bystander_sinr - 5.751_377_710_62e-2).abs() < 1e-5,
        "rho_so = {:.10}",
        plan.bystander_sinr
    );
    assert!(
        (plan.loss_factor - 9.174_790_234_15e-1).abs() < 1e-5,
        "alpha = {:.10}",
        plan.loss_factor
    );
    assert!(
        (plan.new_theta - 5.442_464_414_79e-2).abs() < 1e-5,
        "theta_2 = {:.10}",
        plan.new_theta
    );
    assert!(
        (plan.recovering_snr - 7.774_276_715).abs() < 1e-3,
        "rho_co = {:.8}",
        plan.recovering_snr
    );
    let eta = plan
        .objective_value
        .expect("optimizer reports its objective");
    assert!((eta - 1.135_177_600_01).abs() < 1e-8, "eta = {eta:.12}");
}

#[test]
fn joint_band_endpoints_reduce_to_the_pure_strategies() {
    let (snr, n, theta, tf) = (1.0, 5u32, 0.05, 1000u32);
    let rho_s = bystander_sinr(snr, n).unwrap();
    let rho_i = snr / (1.0 + snr * (n - 1) as f64);

    let at_power = joint_plan_at(snr, n, theta, tf, rho_s).unwrap();
    assert!((at_power.new_theta - theta).abs() < 1e-6);
    let alpha_c = compensation_loss(snr, n, theta, tf).unwrap();
    assert!((at_power.loss_factor - alpha_c).abs() < 1e-9);

    let at_graceful = joint_plan_at(snr, n, theta, tf, rho_i).unwrap();
    assert_eq!(at_graceful.loss_factor, 1.0);
    let (theta_i, _) = graceful_theta(snr, n, theta, tf).unwrap();
    assert!((at_graceful.new_theta - theta_i).abs() < 1e-6);
}

#[test]
fn operational_snr_enforces_the_bystander_band() {
    let rho_s = bystander_sinr(1.0, 5).unwrap();
    let rho_i = 0.2;
    assert!((joint_operational_snr(1.0, 5, rho_s).unwrap() - 5.0).abs() < 1e-9);
    assert!((joint_operational_snr(1.0, 5, rho_i).unwrap() - 1.0).abs() < 1e-12);
    assert!(joint_operational_snr(1.0, 5, 0.5).is_err());
    assert!(joint_operational_snr(1.0, 5, 0.01).is_err());
}

#[test]
fn capacity_is_insensitive_to_sinr_under_strict_delay_constraints() {
    let lax = ec_sinr_sensitivity(0.2, 0.001, 0.05, 1000, None).unwrap();
    let strict = ec_sinr_sensitivity(0.2, 0.1, 0.05, 1000, None).unwrap();
    assert!(lax > 0.0 && strict > 0.0);
    assert!(strict < lax, "strict {strict} vs lax {lax}");

    // Halving the step barely moves the estimate: the difference quotient is
    // resolving a genuine derivative, not noise.
    let half = ec_sinr_sensitivity(0.2, 0.1, 0.05, 1000, Some(1e-5 * 0.2)).unwrap();
    assert!(
        ((half - strict) / strict).abs() < 1e-3,
        "{half} vs {strict}"
    );
    assert!(ec_sinr_sensitivity(0.2, 0.1, 0.05, 1000, Some(0.3)).is_err());
}

#[test]
fn power_plan_reports_the_full_boost() {
    let plan = power_control_plan(1.0, 5, 0.05, 1000).unwrap();
    assert_eq!(plan.strategy, CompensationStrategy::PowerControl);
    assert_eq!(plan.recovering_snr, 5.0);
    assert!((plan.bystander_sinr - 1.0 / 9.0).abs() < 1e-16);
    assert_eq!(plan.new_theta, 0.05);
    assert!(plan.loss_factor > 0.7 && plan.loss_factor < 0.85);
}

#[test]
fn joint_priorities_are_validated() {
    assert!(JointPriorities::new(1.0, 4.0).is_ok());
    assert!(JointPriorities::new(0.0, 1.0).is_ok());
    assert!(JointPriorities::new(0.0, 0.0).is_err());
    assert!(JointPriorities::new(-1.0, 1.0).is_err());
}
