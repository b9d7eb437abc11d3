//! Numerical kernels shared by the whole crate: the Gaussian Q-function and
//! its inverse, exponential-weighted integration over [0, ∞), derivative-free
//! convex minimization, and monotone root finding.
//!
//! Every routine here is a pure, deterministic function of its inputs:
//! identical arguments produce bit-identical results, which the reproducible
//! CSV contract of the CLI relies on.

use crate::error::{Error, Result};

/// log₂(e), the nat→bit conversion factor that appears throughout the rate
/// and capacity expressions.
pub const LOG2_E: f64 = std::f64::consts::LOG2_E;

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

// ---------------------------------------------------------------------------
// Tolerance policy
// ---------------------------------------------------------------------------

/// Absolute/relative tolerance pair plus an iteration budget, threaded through
/// the iterative kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Tolerance {
    /// Validated constructor; all fields must be strictly positive.
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(Error::domain("tolerance abs_tol must be > 0"));
        }
        if !(rel_tol > 0.0) {
            return Err(Error::domain("tolerance rel_tol must be > 0"));
        }
        if max_iter < 1 {
            return Err(Error::domain("tolerance max_iter must be >= 1"));
        }
        Ok(Tolerance {
            abs_tol,
            rel_tol,
            max_iter,
        })
    }

    /// A copy of `self` with a different absolute tolerance.
    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            max_iter: 200,
        }
    }
}

// ---------------------------------------------------------------------------
// Gaussian Q-function and its inverse
// ---------------------------------------------------------------------------

/// Upper tail of the standard normal distribution,
/// Q(t) = ∫ₜ^∞ (1/√(2π)) e^(−u²/2) du, evaluated through the complementary
/// error function so the far tail keeps full relative accuracy.
pub fn gaussian_q(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain("gaussian_q requires a finite argument"));
    }
    Ok(0.5 * libm::erfc(t / SQRT_2))
}

// Rational approximation for the standard normal quantile (Acklam's
// coefficients). Gives ~1e-9 relative accuracy, which the Newton polish below
// tightens to machine precision.
const PPF_A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const PPF_B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const PPF_C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const PPF_D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];

fn norm_ppf_estimate(p: f64) -> f64 {
    const P_LOW: f64 = 0.02425;
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((PPF_C[0] * q + PPF_C[1]) * q + PPF_C[2]) * q + PPF_C[3]) * q + PPF_C[4]) * q
            + PPF_C[5])
            / ((((PPF_D[0] * q + PPF_D[1]) * q + PPF_D[2]) * q + PPF_D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((PPF_A[0] * r + PPF_A[1]) * r + PPF_A[2]) * r + PPF_A[3]) * r + PPF_A[4]) * r
            + PPF_A[5])
            * q
            / (((((PPF_B[0] * r + PPF_B[1]) * r + PPF_B[2]) * r + PPF_B[3]) * r + PPF_B[4]) * r
                + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -((((((PPF_C[0] * q + PPF_C[1]) * q + PPF_C[2]) * q + PPF_C[3]) * q + PPF_C[4]) * q
            + PPF_C[5])
            / ((((PPF_D[0] * q + PPF_D[1]) * q + PPF_D[2]) * q + PPF_D[3]) * q + 1.0))
    }
}

/// Inverse of [`gaussian_q`] on (0, 1): a rational initial estimate refined by
/// Newton iterations on Q itself, so the round trip Q(Q⁻¹(p)) = p holds to
/// near machine precision even deep in the tails.
pub fn gaussian_q_inv(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(
            "gaussian_q_inv requires a probability strictly inside (0, 1)",
        ));
    }
    // Q⁻¹(p) = −Φ⁻¹(p); evaluating the quantile at p (not 1−p) keeps the
    // small-p branch of the rational approximation in play for tiny ε.
    let mut x = -norm_ppf_estimate(p);
    for _ in 0..3 {
        let q = 0.5 * libm::erfc(x / SQRT_2);
        let pdf = (-0.5 * x * x).exp() / SQRT_2PI;
        if pdf == 0.0 {
            break;
        }
        x += (q - p) / pdf;
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// Exponential-weighted integration on [0, ∞)
// ---------------------------------------------------------------------------

/// Value and error estimate of a quadrature evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    /// Accumulated local error estimate plus the analytic tail bound.
    pub error_estimate: f64,
}

// Fixed cross-check rule: composite Gauss–Legendre in the transformed
// variable, with panel cuts clustered near the origin where the integrands
// of this crate concentrate their structure.
const LEGENDRE_ORDER: usize = 32;
const CROSS_CUTS: [f64; 4] = [0.0, 0.5, 1.5, 3.0];
// Disagreement thresholds for the cross-check. The fixed rule has no error
// control of its own, so the guard is deliberately coarse: it exists to
// expose gross quadrature failure (a missed region, a divergent panel), not
// to re-verify the last digits.
const CROSS_REL: f64 = 5e-3;
const CROSS_ABS: f64 = 5e-4;

/// ∫₀^∞ f(z) e^(−z) dz.
///
/// Both evaluation routes work under the substitution z = u², which turns the
/// half-power behaviour near z = 0 shared by this crate's integrand family
/// (everything here is analytic in √z) into smooth polynomial behaviour:
///
///   ∫₀^∞ f(z) e^(−z) dz = ∫₀^∞ 2u f(u²) e^(−u²) du
///
/// The returned value comes from adaptive Simpson refinement of the
/// transformed integrand on [0, √Z_max], with Z_max extended until the
/// analytic tail bound |f(Z_max)|·e^(−Z_max) drops below the requested
/// tolerance. Every call is additionally cross-checked against an
/// algorithmically independent fixed-order Gauss–Laguerre rule; a gross
/// disagreement between the two routes is reported as a numeric failure
/// instead of a silently wrong value.
pub fn integrate_exp_weighted<F>(mut f: F, tol: &Tolerance) -> Result<Quadrature>
where
    F: FnMut(f64) -> f64,
{
    // Tail cut-off: extend while the integrand still carries weight there.
    let mut z_max = 40.0;
    let tail_threshold = 0.01 * tol.abs_tol;
    while z_max < 320.0 {
        let tail = f(z_max).abs() * (-z_max).exp();
        if !tail.is_finite() {
            return Err(Error::Numeric(format!(
                "integrand is not finite at z = {z_max}"
            )));
        }
        if tail <= tail_threshold {
            break;
        }
        z_max += 20.0;
    }
    let u_max = z_max.sqrt();

    let mut evals = 0usize;
    let mut g = |u: f64, evals: &mut usize| -> Result<f64> {
        *evals += 1;
        if *evals > 4_000_000 {
            return Err(Error::Numeric(
                "quadrature evaluation budget exhausted".into(),
            ));
        }
        let v = 2.0 * u * f(u * u) * (-u * u).exp();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Numeric(format!(
                "integrand is not finite at z = {}",
                u * u
            )))
        }
    };

    // Seed panels: a uniform split so adaptive refinement cannot overlook
    // structure that happens to cancel at coarse midpoints.
    const SEED_PANELS: usize = 16;
    let mut value = 0.0;
    let mut err_acc = 0.0;
    let width = u_max / SEED_PANELS as f64;
    let panel_tol = tol.abs_tol / SEED_PANELS as f64;
    for k in 0..SEED_PANELS {
        let a = k as f64 * width;
        let b = a + width;
        let fa = g(a, &mut evals)?;
        let fm = g(0.5 * (a + b), &mut evals)?;
        let fb = g(b, &mut evals)?;
        let s = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        let (v, e) = simpson_refine(&mut g, &mut evals, a, b, fa, fm, fb, s, panel_tol, 52)?;
        value += v;
        err_acc += e;
    }

    // Analytic tail bound: beyond z_max the weight alone caps the remainder.
    let tail_bound = f(z_max).abs() * (-z_max).exp();
    let error_estimate = err_acc + tail_bound;

    // Independent fixed-order route: composite Gauss–Legendre over the same
    // transformed interval.
    let (nodes, weights) = gauss_legendre_32();
    let mut fixed = 0.0;
    for panel in 0..CROSS_CUTS.len() {
        let a = CROSS_CUTS[panel];
        let b = if panel + 1 < CROSS_CUTS.len() {
            CROSS_CUTS[panel + 1]
        } else {
            u_max
        };
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (&x, &w) in nodes.iter().zip(weights.iter()) {
            let u = mid + half * x;
            fixed += w * half * 2.0 * u * f(u * u) * (-u * u).exp();
        }
    }
    let disagreement = (fixed - value).abs();
    if disagreement > CROSS_ABS.max(CROSS_REL * value.abs()) {
        return Err(Error::Numeric(format!(
            "quadrature cross-check failed: adaptive {value:.6e} vs fixed-order {fixed:.6e}"
        )));
    }

    Ok(Quadrature {
        value,
        error_estimate,
    })
}

/// One level of adaptive Simpson refinement with Richardson extrapolation.
#[allow(clippy::too_many_arguments)]
fn simpson_refine<G>(
    g: &mut G,
    evals: &mut usize,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<(f64, f64)>
where
    G: FnMut(f64, &mut usize) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = g(lm, evals)?;
    let frm = g(rm, evals)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 {
        return Err(Error::Numeric(format!(
            "adaptive quadrature did not converge on [{a}, {b}] (best estimate {})",
            left + right + delta / 15.0
        )));
    }
    if delta.abs() <= 15.0 * tol {
        return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
    }
    let (lv, le) = simpson_refine(g, evals, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let (rv, re) = simpson_refine(g, evals, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok((lv + rv, le + re))
}

// ---------------------------------------------------------------------------
// Gauss–Legendre rule (fixed order, used as the cross-check route)
// ---------------------------------------------------------------------------

fn gauss_legendre_32() -> &'static (Vec<f64>, Vec<f64>) {
    use std::sync::OnceLock;
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(LEGENDRE_ORDER))
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1], found by
/// Newton iteration on the Legendre three-term recurrence.
fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Chebyshev-based initial guess for the i-th root.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_{n−1} by upward recurrence.
            let mut p1 = 1.0f64;
            let mut p2 = 0.0f64;
            for j in 0..n {
                let jf = j as f64;
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0); // P_n'(z)
            let z_old = z;
            z -= p1 / pp;
            if (z - z_old).abs() <= 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

// ---------------------------------------------------------------------------
// Scalar optimization and root finding
// ---------------------------------------------------------------------------

const INV_PHI: f64 = 0.618_033_988_749_894_8; // (√5 − 1)/2

/// Golden-section minimizer for a convex (unimodal) objective on [lo, hi].
/// Returns the located argmin and the objective there. Minima on the bracket
/// boundary are returned as such; callers that need to treat them specially
/// can compare against the bracket ends.
pub fn minimize_scalar_convex<F>(mut f: F, lo: f64, hi: f64, tol: &Tolerance) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain("minimize_scalar_convex requires lo < hi"));
    }
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut iterations = 0usize;
    while (b - a) > tol.abs_tol {
        iterations += 1;
        if iterations > tol.max_iter {
            return Err(Error::MaxIter {
                routine: "minimize_scalar_convex".into(),
                max_iter: tol.max_iter,
                best: 0.5 * (a + b),
            });
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x)?;
    Ok((x, fx))
}

/// Brent's method for a continuous monotone function with a sign change on
/// [lo, hi]. Stops when |f| falls below the absolute tolerance or the bracket
/// shrinks below it.
pub fn find_root_monotone<F>(mut f: F, lo: f64, hi: f64, tol: &Tolerance) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain("find_root_monotone requires lo < hi"));
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Bracket {
            context: "find_root_monotone".into(),
            lo,
            hi,
        });
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut bisected = true;
    for _ in 0..tol.max_iter {
        if fb.abs() <= tol.abs_tol || (b - a).abs() <= tol.abs_tol {
            return Ok(b);
        }
        let mut s = if fa != fc && fb != fc {
            // Inverse quadratic interpolation.
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            // Secant step.
            b - fb * (b - a) / (fb - fa)
        };
        let lo_guard = 0.25 * (3.0 * a + b);
        let out_of_range = !((s > lo_guard.min(b) && s < lo_guard.max(b))
            || (s > b.min(lo_guard) && s < b.max(lo_guard)));
        let step_too_small = if bisected {
            (s - b).abs() >= 0.5 * (b - c).abs()
        } else {
            (s - b).abs() >= 0.5 * (c - d).abs()
        };
        if out_of_range || step_too_small {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }
        let fs = f(s)?;
        d = c;
        c = b;
        fc = fb;
        if fa * fs < 0.0 {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Err(Error::MaxIter {
        routine: "find_root_monotone".into(),
        max_iter: tol.max_iter,
        best: b,
    })
}
