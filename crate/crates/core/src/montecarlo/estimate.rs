//! Parallel, reproducible Monte Carlo estimators.
//!
//! Trial `k` draws from its own ChaCha8 stream `k` under the run seed, and
//! trials are reduced in fixed-size chunks merged in index order, so results
//! are bit-identical for any number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::network::{evaluate_nodes, sample_marked_nodes, TrialOutcome, TrustWindow};
use crate::analytic::McDiagnostics;
use crate::model::Scenario;
use crate::stats::{jackknife_moments, JackknifeMoments};

const CHUNK: u64 = 1024;

/// Independent random stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McOptions {
    pub trials: u64,
    pub seed: u64,
    /// Trust bands to sample; defaults to the scenario's own bands. Pass a
    /// common window to compare several scenarios under common random numbers.
    pub window: Option<TrustWindow>,
}

impl McOptions {
    pub fn new(trials: u64, seed: u64) -> Self {
        McOptions {
            trials,
            seed,
            window: None,
        }
    }

    pub fn with_window(mut self, window: TrustWindow) -> Self {
        self.window = Some(window);
        self
    }
}

/// Run `opts.trials` independent trials and return their outcomes in order.
pub fn simulate_trials(sc: &Scenario, opts: &McOptions) -> Vec<TrialOutcome> {
    let window = opts.window.unwrap_or_else(|| TrustWindow::for_scenario(sc));
    (0..opts.trials as usize)
        .into_par_iter()
        .with_min_len(CHUNK as usize)
        .map(|k| {
            let mut rng = trial_rng(opts.seed, k as u64);
            let nodes = sample_marked_nodes(sc, &window, &mut rng);
            evaluate_nodes(&nodes, sc)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    trials: u64,
    outages: u64,
    relays: u64,
    jammers: u64,
    empty_relays: u64,
    empty_jammers: u64,
    zero_over_zero: u64,
}

impl Tally {
    fn add(&mut self, o: &TrialOutcome, beta_e: f64) {
        self.trials += 1;
        self.outages += u64::from(o.is_outage(beta_e));
        self.relays += o.n_relays as u64;
        self.jammers += o.n_active_jammers as u64;
        self.empty_relays += u64::from(o.n_relays == 0);
        self.empty_jammers += u64::from(o.n_active_jammers == 0);
        self.zero_over_zero += u64::from(o.t_z == 0.0 && o.i_z == 0.0);
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.trials += o.trials;
        self.outages += o.outages;
        self.relays += o.relays;
        self.jammers += o.jammers;
        self.empty_relays += o.empty_relays;
        self.empty_jammers += o.empty_jammers;
        self.zero_over_zero += o.zero_over_zero;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SopEstimate {
    pub sop: f64,
    pub stderr: f64,
    pub outages: u64,
    pub trials: u64,
    pub diagnostics: McDiagnostics,
}

/// Fraction of trials in which the eavesdropper SIR strictly exceeds `β_e`.
pub fn estimate_sop(sc: &Scenario, opts: &McOptions) -> SopEstimate {
    let window = opts.window.unwrap_or_else(|| TrustWindow::for_scenario(sc));
    let n_chunks = opts.trials.div_ceil(CHUNK);
    let tallies: Vec<Tally> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut t = Tally::default();
            for k in c * CHUNK..((c + 1) * CHUNK).min(opts.trials) {
                let mut rng = trial_rng(opts.seed, k);
                let nodes = sample_marked_nodes(sc, &window, &mut rng);
                t.add(&evaluate_nodes(&nodes, sc), sc.beta_e);
            }
            t
        })
        .collect();
    let t = tallies.into_iter().fold(Tally::default(), Tally::merge);
    if t.zero_over_zero > 0 {
        log_zero_over_zero(t.zero_over_zero);
    }
    let n = t.trials.max(1) as f64;
    let p = t.outages as f64 / n;
    SopEstimate {
        sop: p,
        stderr: (p * (1.0 - p) / n).sqrt(),
        outages: t.outages,
        trials: t.trials,
        diagnostics: McDiagnostics {
            mean_relays: t.relays as f64 / n,
            mean_active_jammers: t.jammers as f64 / n,
            empty_relay_fraction: t.empty_relays as f64 / n,
            empty_jammer_fraction: t.empty_jammers as f64 / n,
            zero_over_zero: t.zero_over_zero,
        },
    }
}

fn log_zero_over_zero(count: u64) {
    if std::env::var_os("SECNET_QUIET").is_none() {
        eprintln!("note: {count} trial(s) had zero signal and zero jamming at the eavesdropper; SIR taken as 0");
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    /// Beamformed signal power at the eavesdropper, `T(z)`.
    Signal,
    /// Aggregate jamming power at the eavesdropper, `I(z)`.
    Jamming,
}

/// Sample mean and variance of `T(z)` or `I(z)` with jackknife errors.
pub fn estimate_moments(sc: &Scenario, quantity: Quantity, opts: &McOptions) -> JackknifeMoments {
    let xs: Vec<f64> = simulate_trials(sc, opts)
        .into_iter()
        .map(|o| match quantity {
            Quantity::Signal => o.t_z,
            Quantity::Jamming => o.i_z,
        })
        .collect();
    jackknife_moments(&xs)
}
