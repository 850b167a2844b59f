//! Self-checks of every numerical building block against independent
//! oracles and distributional facts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{analytic_breakdown, dgr_sop, sop_oracle_numeric, DgrInputs, SignalFit};
use crate::error::Result;
use crate::model::nodes::role_of;
use crate::model::{classify_nodes, sample_ppp, NetworkConfig, NodeRole, Point2D, Region, Scenario};
use crate::montecarlo::{
    estimate_sop, sample_channels, sample_full_network, sample_power_fade, signal_power_eve, simulate_trials,
    trial_rng, ComplexGain, McOptions,
};
use crate::quadrature::{disk_inverse_fourth_closed_form, jam_integral, q_z};
use crate::specfun::gamma::{lower_series, upper_continued_fraction};
use crate::specfun::{hyp2f1_parts, hyp2f1_series, ln_gamma, GammaParams};
use crate::stats::{correlation_p_value, jackknife_moments, ks_test, poisson_check, proportion_p_value};

pub const SIGNIFICANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Error-type check: passes when `measured <= threshold`.
    AtMost,
    /// p-value-type check: passes when `measured >= threshold`.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub detail: String,
}

impl Check {
    pub fn at_most(name: &str, measured: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            measured,
            threshold,
            bound: Bound::AtMost,
            detail: detail.into(),
        }
    }

    pub fn at_least(name: &str, measured: f64, threshold: f64, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            measured,
            threshold,
            bound: Bound::AtLeast,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.measured <= self.threshold,
            Bound::AtLeast => self.measured >= self.threshold,
        }
    }

    pub fn line(&self) -> String {
        let (sym, what) = match self.bound {
            Bound::AtMost => ("<=", "error"),
            Bound::AtLeast => (">=", "p"),
        };
        format!(
            "{} {}: {what} {:.3e} (need {sym} {:.1e}){}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.threshold,
            if self.detail.is_empty() { String::new() } else { format!("  [{}]", self.detail) }
        )
    }
}

/// One row of the eavesdropper-exclusion sensitivity table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityRow {
    pub epsilon_z: f64,
    pub j1: f64,
    pub j2: f64,
    pub nu_i: f64,
    pub theta_i: f64,
    pub sop: f64,
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub sensitivity: Vec<SensitivityRow>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateOptions {
    /// Trials for the moment comparison.
    pub moment_trials: u64,
    /// Network draws for the thinning and void-probability checks.
    pub network_draws: u64,
    /// Samples for each goodness-of-fit test.
    pub ks_samples: usize,
    pub seed: u64,
    pub signal_fit: SignalFit,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            moment_trials: 1_000_000,
            network_draws: 100_000,
            ks_samples: 100_000,
            seed: 1,
            signal_fit: SignalFit::MomentMatched,
        }
    }
}

pub const GRID_NU_T: [f64; 4] = [0.1, 0.5, 1.0, 2.0];
pub const GRID_NU_I: [f64; 4] = [1.0, 5.0, 20.0, 80.0];
pub const GRID_Q: [f64; 5] = [0.01, 0.1, 1.0, 10.0, 100.0];

/// Largest `|closed form − numerical integral|` over the reference grid, and
/// where it occurred.
pub fn dgr_grid_error() -> Result<(f64, String)> {
    let mut worst = (0.0, String::new());
    for &nt in &GRID_NU_T {
        for &ni in &GRID_NU_I {
            for &q in &GRID_Q {
                let inp = DgrInputs::new(GammaParams::new(nt, 1.0)?, GammaParams::new(ni, 1.0)?, q)?;
                let err = (dgr_sop(&inp)? - sop_oracle_numeric(&inp)?).abs();
                if err > worst.0 || worst.1.is_empty() {
                    worst = (err, format!("worst at nu_t={nt}, nu_i={ni}, q={q}"));
                }
            }
        }
    }
    Ok(worst)
}

/// Largest deviation from `1/(1+q)` when both shapes equal one.
pub fn exponential_case_error(qs: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &q in qs {
        let inp = DgrInputs::new(GammaParams::new(1.0, 2.0)?, GammaParams::new(1.0, 0.5)?, 4.0 * q)?;
        worst = worst.max((dgr_sop(&inp)? - 1.0 / (1.0 + q)).abs());
    }
    Ok(worst)
}

/// Fitted Gamma moments against simulated moments of `T(z)` and `I(z)`.
pub fn moment_checks(sc: &Scenario, fit: SignalFit, trials: u64, seed: u64) -> Result<Vec<Check>> {
    let a = analytic_breakdown(sc, fit)?;
    let outcomes = simulate_trials(sc, &McOptions::new(trials, seed));
    let t = jackknife_moments(&outcomes.iter().map(|o| o.t_z).collect::<Vec<_>>());
    let i = jackknife_moments(&outcomes.iter().map(|o| o.i_z).collect::<Vec<_>>());
    drop(outcomes);
    let rel = |fit: f64, mc: f64| (fit - mc).abs() / mc.abs();
    let det = |fit: f64, mc: f64, se: f64| format!("fit {fit:.6e}, mc {mc:.6e} ± {se:.2e}");
    Ok(vec![
        Check::at_most(
            "signal_mean",
            rel(a.params_t.mean(), t.mean),
            0.02,
            det(a.params_t.mean(), t.mean, t.mean_stderr),
        ),
        Check::at_most(
            "signal_variance",
            rel(a.params_t.variance(), t.variance),
            0.05,
            det(a.params_t.variance(), t.variance, t.variance_stderr),
        ),
        Check::at_most(
            "jamming_mean",
            rel(a.params_i.mean(), i.mean),
            0.02,
            det(a.params_i.mean(), i.mean, i.mean_stderr),
        ),
        Check::at_most(
            "jamming_variance",
            rel(a.params_i.variance(), i.variance),
            0.05,
            det(a.params_i.variance(), i.variance, i.variance_stderr),
        ),
    ])
}

/// Per draw of the unthinned process on `Disk(o, l2)`: number of relays,
/// number of jammers (active or silenced), and the radii of the jammers.
pub struct ThinningSample {
    pub relays: Vec<usize>,
    pub jammers: Vec<usize>,
    pub jammer_radii: Vec<f64>,
}

pub fn thinning_sample(sc: &Scenario, draws: u64, seed: u64) -> ThinningSample {
    let region = Region::disk(Point2D::ORIGIN, sc.l2);
    let mut out = ThinningSample {
        relays: Vec::with_capacity(draws as usize),
        jammers: Vec::with_capacity(draws as usize),
        jammer_radii: Vec::new(),
    };
    for k in 0..draws {
        let mut rng = trial_rng(seed, k);
        let pts = sample_ppp(&region, sc.lambda, &mut rng);
        let (mut nr, mut nj) = (0, 0);
        for p in pts {
            let trust: f64 = rng.random();
            match role_of(p, trust, sc) {
                NodeRole::Relay => nr += 1,
                NodeRole::ActiveJammer | NodeRole::SilencedJammer => {
                    nj += 1;
                    if out.jammer_radii.len() < 100_000 {
                        out.jammer_radii.push(p.norm());
                    }
                }
                NodeRole::Dummy => {}
            }
        }
        out.relays.push(nr);
        out.jammers.push(nj);
    }
    out
}

/// Thinning, independence and void-probability tests.
pub fn network_checks(sc: &Scenario, draws: u64, seed: u64) -> Result<Vec<Check>> {
    let (lr, lj) = sc.thinned_densities();
    let mean_r = lr * sc.relay_region().area();
    let mean_j = lj * sc.jammer_annulus().area();
    let th = thinning_sample(sc, draws, seed);
    let pr = poisson_check(&th.relays, mean_r);
    let pj = poisson_check(&th.jammers, mean_j);
    let (r, p_corr) = correlation_p_value(
        &th.relays.iter().map(|&x| x as f64).collect::<Vec<_>>(),
        &th.jammers.iter().map(|&x| x as f64).collect::<Vec<_>>(),
    );
    let (r_in, r_out) = (sc.l1, sc.l2);
    let radial = ks_test(&th.jammer_radii, |r| {
        ((r * r - r_in * r_in) / (r_out * r_out - r_in * r_in)).clamp(0.0, 1.0)
    });

    // Void probability of the relay process, on the windowed sampler.
    let est = estimate_sop(sc, &McOptions::new(draws, seed ^ 0x5eed));
    let empties = (est.diagnostics.empty_relay_fraction * draws as f64).round() as usize;
    let p_void = (-mean_r).exp();

    Ok(vec![
        Check::at_least(
            "relay_count_mean",
            pr.mean_p_value,
            SIGNIFICANCE,
            format!("mean {:.4} vs {mean_r:.4}", pr.mean),
        ),
        Check::at_least(
            "relay_count_dispersion",
            pr.dispersion_p_value,
            SIGNIFICANCE,
            format!("variance {:.4}", pr.variance),
        ),
        Check::at_least(
            "jammer_count_mean",
            pj.mean_p_value,
            SIGNIFICANCE,
            format!("mean {:.4} vs {mean_j:.4}", pj.mean),
        ),
        Check::at_least(
            "jammer_count_dispersion",
            pj.dispersion_p_value,
            SIGNIFICANCE,
            format!("variance {:.4}", pj.variance),
        ),
        Check::at_least("relay_jammer_independence", p_corr, SIGNIFICANCE, format!("r = {r:.4}")),
        Check::at_least(
            "jammer_radial_ks",
            radial.p_value,
            SIGNIFICANCE,
            format!("{} radii", radial.n),
        ),
        Check::at_least(
            "relay_void_probability",
            proportion_p_value(empties, draws as usize, p_void),
            SIGNIFICANCE,
            format!("{empties}/{draws} empty vs {p_void:.5}"),
        ),
    ])
}

/// Goodness-of-fit tests for the fading draws and for `T(z)` given a fixed
/// relay layout, which must be exponential with mean `P_s Σ d^(−α)`.
pub fn distribution_checks(sc: &Scenario, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gains: Vec<f64> = (0..samples).map(|_| ComplexGain::sample_cn(&mut rng).norm_sq()).collect();
    let fades: Vec<f64> = (0..samples).map(|_| sample_power_fade(&mut rng)).collect();
    let exp_cdf = |x: f64| 1.0 - (-x).exp();

    let mut layout_rng = trial_rng(seed, 0);
    let nodes = sample_full_network(sc, &mut layout_rng);
    let pts: Vec<_> = nodes.iter().map(|n| n.position).collect();
    let trust: Vec<_> = nodes.iter().map(|n| n.trust).collect();
    let realization = classify_nodes(&pts, &trust, sc)?.realization;

    let mut checks = vec![
        Check::at_least(
            "rayleigh_power_ks",
            ks_test(&gains, exp_cdf).p_value,
            SIGNIFICANCE,
            "|H|^2 ~ Exp(1)",
        ),
        Check::at_least(
            "jamming_fade_ks",
            ks_test(&fades, exp_cdf).p_value,
            SIGNIFICANCE,
            "h ~ Exp(1)",
        ),
    ];
    if !realization.relays.is_empty() {
        let mean: f64 = sc.ps
            * realization
                .relays
                .iter()
                .map(|x| x.distance(sc.eve).powf(-sc.alpha))
                .sum::<f64>();
        let ts: Vec<f64> = (0..samples)
            .map(|_| signal_power_eve(&realization, &sample_channels(&realization, &mut rng), sc))
            .collect();
        checks.push(Check::at_least(
            "conditional_signal_exponential_ks",
            ks_test(&ts, |x| 1.0 - (-x / mean).exp()).p_value,
            SIGNIFICANCE,
            format!("{} relays", realization.relays.len()),
        ));
    }
    Ok(checks)
}

/// Identities of the special functions.
pub fn specfun_checks() -> Result<Vec<Check>> {
    let mut rec: f64 = 0.0;
    for k in 1..=400 {
        let x = 0.05 * k as f64;
        let lhs = ln_gamma(x + 1.0)?;
        let rhs = ln_gamma(x)? + x.ln();
        rec = rec.max((lhs - rhs).abs() / lhs.abs().max(1.0));
    }

    let mut comp: f64 = 0.0;
    for &nu in &[0.1, 0.5, 1.0, 3.0, 20.0, 80.0] {
        for &f in &[1.0, 1.3, 1.8] {
            let x = f * (nu + 1.0);
            comp = comp.max((lower_series(nu, x)? + upper_continued_fraction(nu, x)? - 1.0).abs());
        }
    }

    let mut euler: f64 = 0.0;
    for &nu_t in &GRID_NU_T {
        for &nu_i in &GRID_NU_I {
            let (b, c) = (nu_t + nu_i, nu_i + 1.0);
            for &x in &[0.55, 0.7, 0.85, 0.95] {
                let direct = hyp2f1_series(1.0, b, c, x)?.value();
                let transformed = hyp2f1_parts(1.0, b, c, x)?.value();
                euler = euler.max((direct - transformed).abs() / direct.abs());
            }
        }
    }

    Ok(vec![
        Check::at_most("ln_gamma_recurrence", rec, 1e-12, ""),
        Check::at_most("incomplete_gamma_complement", comp, 1e-12, ""),
        Check::at_most("hyp2f1_euler_vs_direct", euler, 1e-9, "relative"),
    ])
}

/// Relay-disk integral against `πR²/(d² − R²)²` for `α = 4`, and the
/// monotone dependence of the jamming integral on the exclusion radius.
pub fn quadrature_checks(cfg: &NetworkConfig) -> Result<Vec<Check>> {
    let mut base = cfg.clone();
    base.alpha = 4.0;
    let mut worst: f64 = 0.0;
    for d in [40.0, 80.0] {
        base.eve.r = d;
        let sc = Scenario::from_config(&base)?;
        let exact = disk_inverse_fourth_closed_form(sc.l1, d);
        worst = worst.max((q_z(1, &sc, sc.eve)? - exact).abs() / exact);
    }

    let mut mono = true;
    let mut prev = f64::INFINITY;
    for eps in [0.5, 1.0, 2.0, 4.0] {
        let mut c = cfg.clone();
        c.epsilon_z = eps;
        let j = jam_integral(2, &Scenario::from_config(&c)?)?;
        mono &= j < prev;
        prev = j;
    }

    Ok(vec![
        Check::at_most("relay_disk_closed_form", worst, 1e-6, "relative, d in {40, 80}"),
        Check::at_most(
            "jam_integral_decreasing_in_exclusion",
            if mono { 0.0 } else { 1.0 },
            0.0,
            "epsilon_z in {0.5, 1, 2, 4}",
        ),
    ])
}

pub fn epsilon_sensitivity(cfg: &NetworkConfig, epsilons: &[f64]) -> Result<Vec<SensitivityRow>> {
    epsilons
        .iter()
        .map(|&eps| {
            let mut c = cfg.clone();
            c.epsilon_z = eps;
            let a = analytic_breakdown(&Scenario::from_config(&c)?, SignalFit::MomentMatched)?;
            Ok(SensitivityRow {
                epsilon_z: eps,
                j1: a.jam_integrals.0,
                j2: a.jam_integrals.1,
                nu_i: a.params_i.shape,
                theta_i: a.params_i.scale,
                sop: a.sop,
            })
        })
        .collect()
}

pub fn run_validate(cfg: &NetworkConfig, opts: &ValidateOptions) -> Result<ValidationReport> {
    let sc = Scenario::from_config(cfg).map_err(|e| e.at("configuration"))?;
    let mut checks = Vec::new();

    let (grid, where_) = dgr_grid_error()?;
    checks.push(Check::at_most("closed_form_vs_numeric_grid", grid, 1e-8, where_));
    checks.push(Check::at_most(
        "closed_form_exponential_case",
        exponential_case_error(&[0.1, 1.0, 3.0, 10.0])?,
        1e-9,
        "",
    ));
    checks.extend(specfun_checks()?);
    checks.extend(quadrature_checks(cfg)?);
    checks.extend(moment_checks(&sc, opts.signal_fit, opts.moment_trials, opts.seed)?);
    checks.extend(network_checks(&sc, opts.network_draws, opts.seed)?);
    checks.extend(distribution_checks(&sc, opts.ks_samples, opts.seed)?);

    let base = cfg.epsilon_z;
    let sensitivity = epsilon_sensitivity(cfg, &[0.25 * base, 0.5 * base, base, 2.0 * base, 4.0 * base])?;
    Ok(ValidationReport { checks, sensitivity })
}
