//! Gamma moment matching for the eavesdropper's signal power `T` and
//! jamming power `I`, and the closed-form tail of their ratio.
//!
//! Given Gamma fits `T ~ Γ(ν_T, θ_T)` and `I ~ Γ(ν_I, θ_I)`, the outage
//! probability `P{T > β I}` is
//!
//! ```text
//!   q^ν_T Γ(ν_T + ν_I)
//!   ──────────────────────────────── · ₂F₁(1, ν_T + ν_I; ν_I + 1; 1/(q + 1)),   q = β θ_I / θ_T
//!   ν_I (q + 1)^(ν_T+ν_I) Γ(ν_T) Γ(ν_I)
//! ```
//!
//! evaluated entirely in log space. [`sop_oracle_numeric`] computes the same
//! probability by direct quadrature of `E_I[P(T ≤ β I)]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Scenario;
use crate::quadrature::adaptive::{integrate_adaptive, AdaptiveOptions};
use crate::quadrature::{jam_integral, q_z};
use crate::specfun::gamma::{ln_gamma_unchecked, reg_lower_gamma};
use crate::specfun::{hyp2f1_parts, GammaParams, Hyp2f1};

/// Slack allowed before a closed-form probability outside [0, 1] is an error.
pub const PROBABILITY_SLACK: f64 = 1e-9;

/// Largest ₂F₁ argument accepted; closer to 1 the series is not trusted.
pub const MAX_HYP_ARGUMENT: f64 = 1.0 - 1e-6;

/// Above this argument the complementary expression is summed instead.
const COMPLEMENT_ABOVE: f64 = 0.999;

/// Mean and variance of `T(z)`.
///
/// Conditioned on the relay layout `T` is exponential with mean
/// `M = P_s Σ d^(−α)`, so `Var T = E[M²] + Var M`; Campbell's theorem gives
/// `E M = P_s λ_R Q₁` and `Var M = P_s² λ_R Q₂`.
pub fn moments_signal(lambda_r: f64, ps: f64, q1: f64, q2: f64) -> Result<(f64, f64)> {
    if lambda_r == 0.0 {
        return Err(Error::DegenerateSignal);
    }
    if !(lambda_r > 0.0 && ps > 0.0 && q1 > 0.0 && q2 >= 0.0) {
        return Err(Error::domain(
            "moments_signal",
            format!("need λ_R, P_s, Q1 > 0 and Q2 >= 0 (got {lambda_r}, {ps}, {q1}, {q2})"),
        ));
    }
    let mean = ps * lambda_r * q1;
    let var = ps * ps * (lambda_r * lambda_r * q1 * q1 + 2.0 * lambda_r * q2);
    Ok((mean, var))
}

/// Mean and variance of `I(z)` from the first two cumulants of a
/// Rayleigh-faded Poisson shot noise (`E h² = 2` for unit-mean exponential
/// power fading).
pub fn moments_jamming(lambda_j: f64, pj: f64, j1: f64, j2: f64) -> Result<(f64, f64)> {
    if lambda_j == 0.0 {
        return Err(Error::DegenerateJamming);
    }
    if !(lambda_j > 0.0 && pj > 0.0 && j1 > 0.0 && j2 > 0.0) {
        return Err(Error::domain(
            "moments_jamming",
            format!("need positive λ_J, P_j, J1, J2 (got {lambda_j}, {pj}, {j1}, {j2})"),
        ));
    }
    Ok((lambda_j * pj * j1, 2.0 * lambda_j * pj * pj * j2))
}

/// Gamma law with the given mean and variance: `ν = μ²/σ²`, `θ = σ²/μ`.
pub fn moment_match(mean: f64, var: f64) -> Result<GammaParams> {
    if !(mean > 0.0 && var > 0.0) {
        return Err(Error::domain(
            "moment_match",
            format!("mean and variance must be positive (got {mean}, {var})"),
        ));
    }
    GammaParams::new(mean * mean / var, var / mean)
}

/// The signal fit with the shape numerator `λ_R Q₁` in place of the
/// moment-matched `λ_R Q₁²`. Kept so the validation suite can show that this
/// form disagrees with simulated moments.
pub fn signal_params_unsquared_numerator(lambda_r: f64, ps: f64, q1: f64, q2: f64) -> Result<GammaParams> {
    let denom = lambda_r * q1 * q1 + 2.0 * q2;
    GammaParams::new(lambda_r * q1 / denom, ps * denom / q1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DgrInputs {
    pub params_t: GammaParams,
    pub params_i: GammaParams,
    pub beta_e: f64,
}

impl DgrInputs {
    pub fn new(params_t: GammaParams, params_i: GammaParams, beta_e: f64) -> Result<Self> {
        if !(beta_e > 0.0 && beta_e.is_finite()) {
            return Err(Error::domain("dgr_sop", format!("β_e must be positive and finite, got {beta_e}")));
        }
        Ok(DgrInputs {
            params_t,
            params_i,
            beta_e,
        })
    }

    pub fn q_e(&self) -> f64 {
        self.beta_e * self.params_i.scale / self.params_t.scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DgrValue {
    pub sop: f64,
    pub q_e: f64,
    /// ₂F₁(1, ν_T + ν_I; ν_I + 1; 1/(q_e + 1)), or for arguments above 0.999
    /// the ₂F₁ of the complementary event; may be `inf` when only its
    /// logarithm is representable.
    pub hypergeom_value: f64,
    pub hypergeom_terms: usize,
}

pub fn dgr_sop_detailed(inp: &DgrInputs) -> Result<DgrValue> {
    let nu_t = inp.params_t.shape;
    let nu_i = inp.params_i.shape;
    let q = inp.q_e();
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::domain("dgr_sop", format!("q_e must be positive and finite, got {q}")));
    }
    let ln_q1 = q.ln_1p();
    let x = (-ln_q1).exp();
    if x > MAX_HYP_ARGUMENT {
        return Err(Error::domain(
            "dgr_sop",
            format!("q_e = {q:e} puts the hypergeometric argument {x} too close to 1"),
        ));
    }
    let (sop, f) = if x > COMPLEMENT_ABOVE {
        // Near x = 1 the series converges only algebraically; evaluate the
        // complementary event P{I > T/β} instead, whose argument is 1 − x.
        let (v, f) = tail_expression(nu_i, nu_t, 1.0 / q)?;
        (1.0 - v, f)
    } else {
        tail_expression(nu_t, nu_i, q)?
    };
    if !sop.is_finite() || !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&sop) {
        return Err(Error::Range { value: sop });
    }
    Ok(DgrValue {
        sop: sop.clamp(0.0, 1.0),
        q_e: q,
        hypergeom_value: f.value(),
        hypergeom_terms: f.terms,
    })
}

/// `q^a Γ(a+b) / (b (q+1)^(a+b) Γ(a) Γ(b)) · ₂F₁(1, a+b; b+1; 1/(q+1))`.
fn tail_expression(a: f64, b: f64, q: f64) -> Result<(f64, Hyp2f1)> {
    let ln_q1 = q.ln_1p();
    let x = (-ln_q1).exp();
    let f = hyp2f1_parts(1.0, a + b, b + 1.0, x)?;
    let ln_front = a * q.ln() + ln_gamma_unchecked(a + b)
        - b.ln()
        - (a + b) * ln_q1
        - ln_gamma_unchecked(a)
        - ln_gamma_unchecked(b);
    Ok(((ln_front + f.log_scale).exp() * f.series, f))
}

/// Closed-form `P{T > β_e I}` for independent Gamma `T` and `I`.
pub fn dgr_sop(inp: &DgrInputs) -> Result<f64> {
    dgr_sop_detailed(inp).map(|v| v.sop)
}

/// Upper integration limit for the oracle: beyond it the Gamma-I law has
/// less than 1e-12 of its mass.
fn oracle_upper_limit(params_i: &GammaParams) -> f64 {
    let nu = params_i.shape;
    params_i.scale * (nu + 40.0 * nu.sqrt()).max(40.0)
}

/// `ln P(ν, t)` given `ln t`, valid even when `t` underflows.
fn ln_lower_gamma_from_log(nu: f64, ln_t: f64) -> f64 {
    if ln_t < -40.0 {
        // P(ν, t) = t^ν/Γ(ν+1) · (1 − ν t/(ν+1) + O(t²))
        let t = ln_t.exp();
        nu * ln_t - ln_gamma_unchecked(nu + 1.0) + (-nu * t / (nu + 1.0)).ln_1p()
    } else {
        reg_lower_gamma(nu, ln_t.exp()).map(f64::ln).unwrap_or(f64::NAN)
    }
}

/// `P{T > β_e I} = 1 − ∫ f_I(x) P(ν_T, β_e x / θ_T) dx` by adaptive
/// quadrature. Independent of the hypergeometric route.
pub fn sop_oracle_numeric(inp: &DgrInputs) -> Result<f64> {
    let GammaParams {
        shape: nu_t,
        scale: theta_t,
    } = inp.params_t;
    let GammaParams {
        shape: nu_i,
        scale: theta_i,
    } = inp.params_i;
    let ln_rate = (inp.beta_e / theta_t).ln();
    let ln_norm = -nu_i * theta_i.ln() - ln_gamma_unchecked(nu_i);
    let ln_integrand = move |ln_x: f64| {
        let x = ln_x.exp();
        (nu_i - 1.0) * ln_x - x / theta_i + ln_norm + ln_lower_gamma_from_log(nu_t, ln_rate + ln_x)
    };

    let upper = oracle_upper_limit(&inp.params_i);
    let split = theta_i.min(upper);
    // Near zero the integrand behaves like x^(s−1), s = ν_I + ν_T. The map
    // x = split · y^k with k = ⌈s⌉/s turns that into an integer power of y.
    let s = nu_i + nu_t;
    let k = s.ceil() / s;
    let ln_split = split.ln();
    let ln_jac_const = ln_split + k.ln();
    let head = move |y: f64| {
        if y <= 0.0 {
            return 0.0;
        }
        let ln_y = y.ln();
        let ln_x = ln_split + k * ln_y;
        (ln_integrand(ln_x) + ln_jac_const + (k - 1.0) * ln_y).exp()
    };
    let tail = move |x: f64| if x <= 0.0 { 0.0 } else { ln_integrand(x.ln()).exp() };

    let opts = AdaptiveOptions {
        abs_tol: 2e-11,
        rel_tol: 0.0,
        max_subdivisions: 20_000,
    };
    let mut cdf_mass = integrate_adaptive(head, 0.0, 1.0, &opts, false)?.value;

    // Put a breakpoint where P(ν_T, β x/θ_T) changes fastest.
    let knee = theta_t * nu_t.max(1.0) / inp.beta_e;
    let mut cuts = vec![split];
    for c in [knee, theta_i * nu_i] {
        if c > split && c < upper {
            cuts.push(c);
        }
    }
    cuts.push(upper);
    cuts.sort_by(f64::total_cmp);
    for w in cuts.windows(2) {
        if w[1] > w[0] {
            cdf_mass += integrate_adaptive(tail, w[0], w[1], &opts, false)?.value;
        }
    }
    Ok((1.0 - cdf_mass).clamp(0.0, 1.0))
}

/// Output of the closed-form pipeline, with every intermediate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticBreakdown {
    pub sop: f64,
    pub q_e: f64,
    pub hypergeom_value: f64,
    pub params_t: GammaParams,
    pub params_i: GammaParams,
    pub lambda_r: f64,
    pub lambda_j: f64,
    /// `(Q_z(1), Q_z(2))`.
    pub q_z_values: (f64, f64),
    /// Jamming-region integrals for exponents `α` and `2α`.
    pub jam_integrals: (f64, f64),
}

/// Diagnostics of a Monte Carlo SOP run.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct McDiagnostics {
    pub mean_relays: f64,
    pub mean_active_jammers: f64,
    pub empty_relay_fraction: f64,
    pub empty_jammer_fraction: f64,
    /// Trials where both powers were zero (SIR taken as 0).
    pub zero_over_zero: u64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SopReport {
    pub analytic: Option<AnalyticBreakdown>,
    pub mc_estimate: Option<f64>,
    pub mc_stderr: Option<f64>,
    pub mc_diagnostics: Option<McDiagnostics>,
    pub trials: u64,
    pub seed: u64,
}

impl SopReport {
    pub fn sop_analytic(&self) -> Option<f64> {
        self.analytic.as_ref().map(|a| a.sop)
    }

    /// `|analytic − Monte Carlo|` when both are present.
    pub fn abs_gap(&self) -> Option<f64> {
        Some((self.sop_analytic()? - self.mc_estimate?).abs())
    }
}

/// Which shape formula to use for the signal fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignalFit {
    #[default]
    MomentMatched,
    UnsquaredNumerator,
}

/// Closed-form pipeline: thinned densities → power-law integrals → moments →
/// Gamma fits → closed-form SOP.
pub fn analytic_sop(sc: &Scenario) -> Result<SopReport> {
    Ok(SopReport {
        analytic: Some(analytic_breakdown(sc, SignalFit::MomentMatched)?),
        ..Default::default()
    })
}

pub fn analytic_breakdown(sc: &Scenario, fit: SignalFit) -> Result<AnalyticBreakdown> {
    sc.check_analytic_geometry().map_err(|e| e.at("geometry"))?;
    let (lambda_r, lambda_j) = sc.thinned_densities();
    if lambda_r == 0.0 {
        return Err(Error::DegenerateSignal.at("relay density"));
    }
    if lambda_j == 0.0 {
        return Err(Error::DegenerateJamming.at("jammer density"));
    }
    let q1 = q_z(1, sc, sc.eve).map_err(|e| e.at("relay integral Q_z(1)"))?;
    let q2 = q_z(2, sc, sc.eve).map_err(|e| e.at("relay integral Q_z(2)"))?;
    let j1 = jam_integral(1, sc).map_err(|e| e.at("jamming integral (alpha)"))?;
    let j2 = jam_integral(2, sc).map_err(|e| e.at("jamming integral (2 alpha)"))?;

    let params_t = match fit {
        SignalFit::MomentMatched => {
            let (m, v) = moments_signal(lambda_r, sc.ps, q1, q2).map_err(|e| e.at("signal moments"))?;
            moment_match(m, v).map_err(|e| e.at("signal fit"))?
        }
        SignalFit::UnsquaredNumerator => signal_params_unsquared_numerator(lambda_r, sc.ps, q1, q2)
            .map_err(|e| e.at("signal fit"))?,
    };
    let (m, v) = moments_jamming(lambda_j, sc.pj, j1, j2).map_err(|e| e.at("jamming moments"))?;
    let params_i = moment_match(m, v).map_err(|e| e.at("jamming fit"))?;

    let inputs = DgrInputs::new(params_t, params_i, sc.beta_e).map_err(|e| e.at("closed form"))?;
    let dgr = dgr_sop_detailed(&inputs).map_err(|e| e.at("closed form"))?;
    Ok(AnalyticBreakdown {
        sop: dgr.sop,
        q_e: dgr.q_e,
        hypergeom_value: dgr.hypergeom_value,
        params_t,
        params_i,
        lambda_r,
        lambda_j,
        q_z_values: (q1, q2),
        jam_integrals: (j1, j2),
    })
}
