//! Physical-layer model: collision-channel SINR and the finite-blocklength
//! achievable rate of a node under quasi-static Rayleigh block fading.

use crate::error::{Error, Result};
use crate::numerics::{gaussian_q_inv, LOG2_E};

/// Operating point of an N-node network: all nodes transmit with equal power
/// over packets of a fixed symbol count, under a common statistical delay
/// constraint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkScenario {
    /// Number of simultaneously transmitting nodes, N ≥ 1.
    pub n_nodes: u32,
    /// Per-node transmit SNR as a linear power ratio, ρ > 0.
    pub snr: f64,
    /// Packet blocklength in symbols, T_f ≥ 1.
    pub blocklength: u32,
    /// Delay QoS exponent θ > 0; larger values mean stricter delay targets.
    pub delay_exponent: f64,
}

impl NetworkScenario {
    /// Validated constructor. Blocklengths below 100 symbols are accepted —
    /// the normal-approximation rate model merely degrades there — and the
    /// CLI is the layer that warns about them.
    pub fn new(n_nodes: u32, snr: f64, blocklength: u32, delay_exponent: f64) -> Result<Self> {
        if n_nodes < 1 {
            return Err(Error::domain("n_nodes must be at least 1"));
        }
        if !(snr > 0.0) || !snr.is_finite() {
            return Err(Error::domain("snr must be a finite positive linear ratio"));
        }
        if blocklength < 1 {
            return Err(Error::domain("blocklength must be at least 1 symbol"));
        }
        if !(delay_exponent > 0.0) || !delay_exponent.is_finite() {
            return Err(Error::domain("delay_exponent must be finite and > 0"));
        }
        Ok(NetworkScenario {
            n_nodes,
            snr,
            blocklength,
            delay_exponent,
        })
    }
}

/// One channel draw: the squared Rayleigh envelope z = |h|², which under the
/// fading model is unit-exponentially distributed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingRealization {
    /// Squared fading envelope, z ≥ 0 (dimensionless).
    pub envelope_sq: f64,
}

impl FadingRealization {
    /// Validated constructor; the envelope power must be finite and ≥ 0.
    pub fn new(envelope_sq: f64) -> Result<Self> {
        if !(envelope_sq >= 0.0) || !envelope_sq.is_finite() {
            return Err(Error::domain("envelope_sq must be finite and >= 0"));
        }
        Ok(FadingRealization { envelope_sq })
    }
}

/// SINR of a node facing an arbitrary interference envelope sum:
/// ρ / (1 + ρ·Σ|h_s|²).
pub fn sinr_general(snr: f64, interference_envelope_sum: f64) -> Result<f64> {
    if !(snr > 0.0) {
        return Err(Error::domain("sinr_general requires snr > 0"));
    }
    if interference_envelope_sum < 0.0 {
        return Err(Error::domain(
            "interference envelope sum cannot be negative",
        ));
    }
    Ok(snr / (1.0 + snr * interference_envelope_sum))
}

/// SINR of each node in a full N-node collision, with the interference
/// envelope sum replaced by its mean N − 1: ρ / (1 + ρ(N − 1)).
pub fn sinr_collision(scenario: &NetworkScenario) -> f64 {
    let interferers = (scenario.n_nodes - 1) as f64;
    scenario.snr / (1.0 + scenario.snr * interferers)
}

/// Finite-blocklength achievable rate in bpcu for a given fading draw:
///
/// r = log₂(1 + ρᵢz) − √((1/T_f)(1 − (1 + ρᵢz)⁻²)) · Q⁻¹(ε) · log₂e
///
/// The value is returned as-is even when negative: the effective-capacity
/// expectation integrates this expression verbatim over all fades, and
/// clamping would break its correspondence with the series expansion.
pub fn fb_rate(
    sinr: f64,
    fading: FadingRealization,
    blocklength: u32,
    epsilon: f64,
) -> Result<f64> {
    if !(sinr > 0.0) {
        return Err(Error::domain("fb_rate requires sinr > 0"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(
            "fb_rate requires epsilon strictly inside (0, 1)",
        ));
    }
    let q_inv = gaussian_q_inv(epsilon)?;
    Ok(rate_given_q_inv(
        sinr,
        fading.envelope_sq,
        blocklength as f64,
        q_inv,
    ))
}

/// Rate formula with Q⁻¹(ε) precomputed, for integrands that evaluate many
/// fades at one ε. The dispersion radicand 1 − (1 + w)⁻² is computed as
/// w(2 + w)/(1 + w)², which stays fully accurate for tiny fades where the
/// direct form cancels to noise.
pub(crate) fn rate_given_q_inv(sinr: f64, envelope_sq: f64, blocklength: f64, q_inv: f64) -> f64 {
    let w = sinr * envelope_sq;
    let capacity = LOG2_E * libm::log1p(w);
    let dispersion = (w * (2.0 + w)).sqrt() / (1.0 + w) / blocklength.sqrt();
    capacity - dispersion * q_inv * LOG2_E
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispersion_radicand_form_matches_naive_expression() {
        // w(2+w)/(1+w)² ≡ 1 − (1+w)⁻²; the rewritten form must agree where
        // the naive one is still accurate, and stay sane where it is not.
        for &w in &[1e-3f64, 0.1, 1.0, 10.0, 1e4] {
            let rewritten = w * (2.0 + w) / ((1.0 + w) * (1.0 + w));
            let naive = 1.0 - (1.0 + w).powi(-2);
            assert!(
                (rewritten - naive).abs() < 1e-12,
                "w={w}: {rewritten} vs {naive}"
            );
        }
        let tiny = 1e-14f64;
        let rewritten = tiny * (2.0 + tiny) / ((1.0 + tiny) * (1.0 + tiny));
        assert!((rewritten / (2.0 * tiny) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn zero_fade_gives_zero_rate() {
        let fade = FadingRealization::new(0.0).unwrap();
        for &eps in &[0.001, 0.1, 0.9] {
            let r = fb_rate(1.5, fade, 1000, eps).unwrap();
            assert_eq!(r, 0.0, "eps={eps}");
        }
    }

    #[test]
    fn median_error_probability_removes_dispersion_penalty() {
        let fade = FadingRealization::new(2.3).unwrap();
        let r = fb_rate(0.7, fade, 500, 0.5).unwrap();
        let shannon = LOG2_E * libm::log1p(0.7 * 2.3);
        assert!((r - shannon).abs() < 1e-12);
    }
}
