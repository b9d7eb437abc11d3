//! Interference-compensation planning for one recovering node in an N-node
//! collision: full power control, graceful relaxation of the delay exponent,
//! and the jointly optimized mix of the two.

use crate::channel::{sinr_collision, NetworkScenario};
use crate::effective_capacity::{ec_direct, optimal_epsilon, EcMethod};
use crate::error::{Error, Result};
use crate::numerics::{find_root_monotone, minimize_scalar_convex, Tolerance};

/// Floor of the delay-exponent search. Below this the effective capacity has
/// saturated toward its θ→0 limit, so a compensation target unreachable by
/// here is unreachable, full stop; infeasibility is reported rather than
/// silently clamped.
pub const THETA_MIN: f64 = 1e-5;

/// Grid resolution of the joint optimizer's coarse scan. The objective is
/// observed unimodal but not proven so; the scan guards against landing a
/// local refinement in the wrong basin.
const JOINT_GRID_POINTS: usize = 64;

/// Which compensation strategy a plan implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompensationStrategy {
    /// Boost the recovering node's transmit power until its SINR is restored.
    PowerControl,
    /// Keep power unchanged and relax the delay exponent to θᵢ instead.
    GracefulTheta,
    /// Split the recovery between a partial power boost and a partial delay
    /// relaxation, at an operational point chosen by weighted objective.
    Joint,
}

impl std::fmt::Display for CompensationStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CompensationStrategy::PowerControl => write!(f, "power_control"),
            CompensationStrategy::GracefulTheta => write!(f, "graceful_theta"),
            CompensationStrategy::Joint => write!(f, "joint"),
        }
    }
}

/// A complete compensation prescription for the recovering node, together
/// with its side effects on the bystander nodes.
#[derive(Debug, Clone, Copy)]
pub struct CompensationPlan {
    pub strategy: CompensationStrategy,
    /// Transmit SNR of the recovering node after compensation (ρ_c, or the
    /// operational ρ_c_o; equals the original ρ when only θ is relaxed).
    pub recovering_snr: f64,
    /// SINR the bystander nodes are left with (ρ_s, or the operational
    /// ρ_s_o; equals the collision SINR when no power is boosted).
    pub bystander_sinr: f64,
    /// Delay exponent the recovering node operates under after the plan
    /// (θᵢ or θ₂; equals the original θ for pure power control).
    pub new_theta: f64,
    /// Ratio of the bystanders' maximum EC after vs before compensation
    /// (α_c or α_c_o), in (0, 1].
    pub loss_factor: f64,
    /// Joint-objective value η at the chosen operational point; only present
    /// for plans produced by the joint optimizer.
    pub objective_value: Option<f64>,
}

/// Relative weights of the two joint-objective terms,
/// η = η_α·α_c_o + η_θ·θ₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointPriorities {
    pub eta_alpha: f64,
    pub eta_theta: f64,
}

impl JointPriorities {
    /// Validated constructor: both weights nonnegative, not both zero.
    pub fn new(eta_alpha: f64, eta_theta: f64) -> Result<Self> {
        if !(eta_alpha >= 0.0) || !(eta_theta >= 0.0) {
            return Err(Error::domain("priority weights must be nonnegative"));
        }
        if eta_alpha == 0.0 && eta_theta == 0.0 {
            return Err(Error::domain("priority weights must not both be zero"));
        }
        Ok(JointPriorities {
            eta_alpha,
            eta_theta,
        })
    }
}

/// Transmit SNR that restores the recovering node's SINR to ρ against N−1
/// interferers: ρ_c = ρ(1 + ρ(N−1)).
pub fn power_control_snr(snr: f64, n_nodes: u32) -> Result<f64> {
    if !(snr > 0.0) || !snr.is_finite() {
        return Err(Error::domain("snr must be finite and > 0"));
    }
    if n_nodes < 1 {
        return Err(Error::domain("n_nodes must be at least 1"));
    }
    Ok(snr * (1.0 + snr * (n_nodes - 1) as f64))
}

/// SINR of each bystander node after one node's full power-controlled
/// recovery: ρ_s = ρ/(1 + ρ(ρ+1)(N−1)).
pub fn bystander_sinr(snr: f64, n_nodes: u32) -> Result<f64> {
    if !(snr > 0.0) || !snr.is_finite() {
        return Err(Error::domain("snr must be finite and > 0"));
    }
    if n_nodes < 2 {
        return Err(Error::domain(
            "bystander_sinr needs n_nodes >= 2 (a lone node has no bystanders)",
        ));
    }
    Ok(snr / (1.0 + snr * (snr + 1.0) * (n_nodes - 1) as f64))
}

/// Maximum EC (over ε) at the given SINR and delay exponent — the quantity
/// every compensation equation balances. Ground truth is the direct
/// quadrature route so truncation bias never enters a solver target.
fn max_ec(sinr: f64, theta: f64, blocklength: u32) -> Result<f64> {
    Ok(optimal_epsilon(sinr, theta, blocklength, EcMethod::Direct)?.ec_max)
}

fn collision_sinr_of(snr: f64, n_nodes: u32, blocklength: u32, theta: f64) -> Result<f64> {
    let scenario = NetworkScenario::new(n_nodes, snr, blocklength, theta)?;
    Ok(sinr_collision(&scenario))
}

/// Compensation loss factor of full power control,
/// α_c = EC(ρ_s, θ, ε_s*) / EC(ρᵢ, θ, ε_i*): how much of their collision-era
/// EC the bystander nodes keep once one node boosts to ρ_c.
pub fn compensation_loss(snr: f64, n_nodes: u32, theta: f64, blocklength: u32) -> Result<f64> {
    let rho_s = bystander_sinr(snr, n_nodes)?;
    let rho_i = collision_sinr_of(snr, n_nodes, blocklength, theta)?;
    Ok(max_ec(rho_s, theta, blocklength)? / max_ec(rho_i, theta, blocklength)?)
}

/// Graceful degradation: the relaxed delay exponent θᵢ ≤ θ at which the
/// collided link's maximum EC returns to its no-collision level, found by
/// root solving EC(ρ, θ, ε*) = EC(ρᵢ, θᵢ, ε_i*). Also returns that common
/// EC level. Fails as infeasible when even θᵢ = θ_min cannot absorb the
/// collision loss.
pub fn graceful_theta(snr: f64, n_nodes: u32, theta: f64, blocklength: u32) -> Result<(f64, f64)> {
    let target = max_ec(snr, theta, blocklength)?;
    if n_nodes == 1 {
        return Ok((theta, target));
    }
    let rho_i = collision_sinr_of(snr, n_nodes, blocklength, theta)?;
    let theta_i = solve_theta_for_target(rho_i, theta, blocklength, target)?;
    let ec_max = max_ec(rho_i, theta_i, blocklength)?;
    Ok((theta_i, ec_max))
}

/// Finds θ' ∈ [θ_min, θ] with EC(sinr, θ', ε*) = target. EC is strictly
/// decreasing in θ, so the difference is monotone and Brent applies.
fn solve_theta_for_target(sinr: f64, theta: f64, blocklength: u32, target: f64) -> Result<f64> {
    let at_ceiling = max_ec(sinr, theta, blocklength)?;
    if at_ceiling >= target {
        // Already at or above the target without any relaxation.
        return Ok(theta);
    }
    let at_floor = max_ec(sinr, THETA_MIN, blocklength)?;
    if at_floor < target {
        return Err(Error::Infeasible(format!(
            "delay relaxation cannot restore the target EC: even at theta = {THETA_MIN:e} \
             the link reaches only {at_floor:.6} of the required {target:.6}"
        )));
    }
    find_root_monotone(
        |th| Ok(max_ec(sinr, th, blocklength)? - target),
        THETA_MIN,
        theta,
        &Tolerance::default(),
    )
}

/// Operational transmit SNR of the recovering node for a chosen bystander
/// operating point ρ_s_o ∈ [ρ_s, ρᵢ]: ρ_c_o = ρ/ρ_s_o − 1 − ρ(N−2).
pub fn joint_operational_snr(snr: f64, n_nodes: u32, bystander_op_sinr: f64) -> Result<f64> {
    let rho_s = bystander_sinr(snr, n_nodes)?;
    let rho_i = snr / (1.0 + snr * (n_nodes - 1) as f64);
    let slack = 1e-9 * rho_i;
    if !(bystander_op_sinr >= rho_s - slack && bystander_op_sinr <= rho_i + slack) {
        return Err(Error::domain(format!(
            "bystander operating SINR {bystander_op_sinr} outside [{rho_s}, {rho_i}]"
        )));
    }
    let rho_so = bystander_op_sinr.clamp(rho_s, rho_i);
    Ok(snr / rho_so - 1.0 - snr * (n_nodes - 2) as f64)
}

/// The residual delay relaxation θ₂ after a partial power boost to ρ_c_o:
/// solves EC(ρ, θ, ε*) = EC(ρ_c_o/(1 + ρ(N−1)), θ₂, ε₂*).
pub fn joint_theta2(
    snr: f64,
    n_nodes: u32,
    theta: f64,
    blocklength: u32,
    rho_c_o: f64,
) -> Result<f64> {
    let rho_c = power_control_snr(snr, n_nodes)?;
    if n_nodes < 2 {
        return Err(Error::domain("joint compensation needs n_nodes >= 2"));
    }
    let slack = 1e-9 * rho_c;
    if !(rho_c_o >= snr - slack && rho_c_o <= rho_c + slack) {
        return Err(Error::domain(format!(
            "operational SNR {rho_c_o} outside [{snr}, {rho_c}]"
        )));
    }
    let target = max_ec(snr, theta, blocklength)?;
    let restored_sinr = rho_c_o.clamp(snr, rho_c) / (1.0 + snr * (n_nodes - 1) as f64);
    solve_theta_for_target(restored_sinr, theta, blocklength, target)
}

/// Precomputed context for evaluating joint plans at many operational points
/// without re-solving the fixed quantities.
struct JointContext {
    snr: f64,
    n_nodes: u32,
    theta: f64,
    blocklength: u32,
    rho_s: f64,
    rho_i: f64,
    /// No-collision EC ceiling the recovering node must get back to.
    target_ec: f64,
    /// Bystanders' collision-era maximum EC (the loss-factor denominator).
    collided_ec: f64,
}

impl JointContext {
    fn prepare(snr: f64, n_nodes: u32, theta: f64, blocklength: u32) -> Result<Self> {
        let rho_s = bystander_sinr(snr, n_nodes)?;
        let rho_i = collision_sinr_of(snr, n_nodes, blocklength, theta)?;
        Ok(JointContext {
            snr,
            n_nodes,
            theta,
            blocklength,
            rho_s,
            rho_i,
            target_ec: max_ec(snr, theta, blocklength)?,
            collided_ec: max_ec(rho_i, theta, blocklength)?,
        })
    }

    /// Operational loss factor α_c_o = EC(ρ_s_o, θ, ε*)/EC(ρᵢ, θ, ε_i*).
    fn alpha_at(&self, rho_so: f64) -> Result<f64> {
        Ok(max_ec(rho_so, self.theta, self.blocklength)? / self.collided_ec)
    }

    fn theta2_at(&self, rho_so: f64) -> Result<f64> {
        let rho_co = joint_operational_snr(self.snr, self.n_nodes, rho_so)?;
        let restored_sinr =
            rho_co.clamp(self.snr, f64::INFINITY) / (1.0 + self.snr * (self.n_nodes - 1) as f64);
        solve_theta_for_target(restored_sinr, self.theta, self.blocklength, self.target_ec)
    }

    fn plan_at(&self, rho_so: f64, objective_value: Option<f64>) -> Result<CompensationPlan> {
        Ok(CompensationPlan {
            strategy: CompensationStrategy::Joint,
            recovering_snr: joint_operational_snr(self.snr, self.n_nodes, rho_so)?,
            bystander_sinr: rho_so,
            new_theta: self.theta2_at(rho_so)?,
            loss_factor: self.alpha_at(rho_so)?,
            objective_value,
        })
    }
}

/// Joint plan at one explicitly chosen bystander operating point — the
/// building block for trade-off sweeps over ρ_s_o.
pub fn joint_plan_at(
    snr: f64,
    n_nodes: u32,
    theta: f64,
    blocklength: u32,
    bystander_op_sinr: f64,
) -> Result<CompensationPlan> {
    let ctx = JointContext::prepare(snr, n_nodes, theta, blocklength)?;
    ctx.plan_at(bystander_op_sinr, None)
}

/// Maximizes η = η_α·α_c_o(ρ_s_o) + η_θ·θ₂(ρ_s_o) over ρ_s_o ∈ [ρ_s, ρᵢ]
/// by a coarse grid scan followed by golden-section refinement around the
/// best cell. Operational points whose θ₂ is infeasible are excluded; an
/// entirely infeasible interval is an error. Ties break toward smaller
/// ρ_s_o (more power control).
pub fn joint_optimize(
    snr: f64,
    n_nodes: u32,
    theta: f64,
    blocklength: u32,
    priorities: JointPriorities,
) -> Result<CompensationPlan> {
    if n_nodes < 2 {
        return Err(Error::domain("joint compensation needs n_nodes >= 2"));
    }
    let ctx = JointContext::prepare(snr, n_nodes, theta, blocklength)?;
    let objective = |rho_so: f64| -> Result<Option<f64>> {
        let alpha = ctx.alpha_at(rho_so)?;
        match ctx.theta2_at(rho_so) {
            Ok(theta2) => Ok(Some(
                priorities.eta_alpha * alpha + priorities.eta_theta * theta2,
            )),
            Err(Error::Infeasible(_)) => Ok(None),
            Err(other) => Err(other),
        }
    };

    // Coarse scan; first-encountered maximum wins, which breaks ties toward
    // smaller ρ_s_o.
    let step = (ctx.rho_i - ctx.rho_s) / (JOINT_GRID_POINTS - 1) as f64;
    let grid_point = |k: usize| ctx.rho_s + step * k as f64;
    let mut best: Option<(usize, f64)> = None;
    for k in 0..JOINT_GRID_POINTS {
        if let Some(eta) = objective(grid_point(k))? {
            if best.is_none_or(|(_, b)| eta > b) {
                best = Some((k, eta));
            }
        }
    }
    let (best_k, grid_eta) = best.ok_or_else(|| {
        Error::Infeasible(
            "no operational point on [rho_s, rho_i] admits a feasible delay relaxation".into(),
        )
    })?;

    // Golden-section refinement inside the bracket spanned by the neighbors
    // of the best cell. Infeasible probes rank as +inf so the search slides
    // off them.
    let lo = grid_point(best_k.saturating_sub(1));
    let hi = grid_point((best_k + 1).min(JOINT_GRID_POINTS - 1));
    let (mut best_rho_so, mut best_eta) = (grid_point(best_k), grid_eta);
    if lo < hi {
        let (x, neg_eta) = minimize_scalar_convex(
            |rho_so| Ok(objective(rho_so)?.map_or(f64::INFINITY, |eta| -eta)),
            lo,
            hi,
            &Tolerance::default(),
        )?;
        if -neg_eta > best_eta {
            best_rho_so = x;
            best_eta = -neg_eta;
        }
    }
    ctx.plan_at(best_rho_so, Some(best_eta))
}

/// Full power-control plan: the recovering node boosts to ρ_c and keeps θ;
/// the bystanders drop to ρ_s and keep the loss factor α_c.
pub fn power_control_plan(
    snr: f64,
    n_nodes: u32,
    theta: f64,
    blocklength: u32,
) -> Result<CompensationPlan> {
    Ok(CompensationPlan {
        strategy: CompensationStrategy::PowerControl,
        recovering_snr: power_control_snr(snr, n_nodes)?,
        bystander_sinr: bystander_sinr(snr, n_nodes)?,
        new_theta: theta,
        loss_factor: compensation_loss(snr, n_nodes, theta, blocklength)?,
        objective_value: None,
    })
}

/// Pure graceful-degradation plan: power stays at ρ, the delay exponent
/// relaxes to θᵢ, and the bystanders are untouched (loss factor 1).
pub fn graceful_plan(
    snr: f64,
    n_nodes: u32,
    theta: f64,
    blocklength: u32,
) -> Result<CompensationPlan> {
    let (theta_i, _ec_max) = graceful_theta(snr, n_nodes, theta, blocklength)?;
    let bystander = if n_nodes >= 2 {
        collision_sinr_of(snr, n_nodes, blocklength, theta)?
    } else {
        snr
    };
    Ok(CompensationPlan {
        strategy: CompensationStrategy::GracefulTheta,
        recovering_snr: snr,
        bystander_sinr: bystander,
        new_theta: theta_i,
        loss_factor: 1.0,
        objective_value: None,
    })
}

/// Central finite-difference estimate of ∂EC/∂ρᵢ at fixed ε. A `None` step
/// defaults to 1e−4·sinr. Reports a numeric error when the one-sided
/// differences disagree in sign — the step is then too large (or too small)
/// to resolve the derivative.
pub fn ec_sinr_sensitivity(
    sinr: f64,
    theta: f64,
    epsilon: f64,
    blocklength: u32,
    step: Option<f64>,
) -> Result<f64> {
    let h = step.unwrap_or(1e-4 * sinr);
    if !(h > 0.0) || h >= sinr {
        return Err(Error::domain(
            "finite-difference step must satisfy 0 < step < sinr",
        ));
    }
    let up = ec_direct(sinr + h, theta, epsilon, blocklength)?.ec;
    let mid = ec_direct(sinr, theta, epsilon, blocklength)?.ec;
    let down = ec_direct(sinr - h, theta, epsilon, blocklength)?.ec;
    let forward = up - mid;
    let backward = mid - down;
    if forward * backward < 0.0 {
        return Err(Error::Numeric(format!(
            "finite-difference step {h:e} cannot resolve the EC slope at sinr {sinr}"
        )));
    }
    Ok((up - down) / (2.0 * h))
}
