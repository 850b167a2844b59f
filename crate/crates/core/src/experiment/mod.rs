//! Composition of the analytic and simulation pipelines: single points,
//! parameter sweeps and the validation suite.

mod sweep;
pub mod validate;

use std::fmt;
use std::str::FromStr;

use crate::analytic::{analytic_breakdown, SignalFit, SopReport};
use crate::error::{Error, Result};
use crate::model::{NetworkConfig, Scenario};
use crate::montecarlo::{estimate_sop, McOptions, TrustWindow};

pub use sweep::{format_number, run_sweep, CsvRow, SweepSpec, SweepVariable, CSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Analytic,
    Mc,
    Both,
}

impl Mode {
    pub fn analytic(self) -> bool {
        matches!(self, Mode::Analytic | Mode::Both)
    }

    pub fn mc(self) -> bool {
        matches!(self, Mode::Mc | Mode::Both)
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Mode::Analytic),
            "mc" => Ok(Mode::Mc),
            "both" => Ok(Mode::Both),
            _ => Err(Error::Config(format!("unknown mode {s:?} (expected analytic|mc|both)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Analytic => "analytic",
            Mode::Mc => "mc",
            Mode::Both => "both",
        })
    }
}

/// Evaluate one configuration. `window` fixes the sampled trust bands so
/// that several points can share random numbers.
pub fn run_point_with(cfg: &NetworkConfig, mode: Mode, window: Option<TrustWindow>) -> Result<SopReport> {
    let sc = Scenario::from_config(cfg).map_err(|e| e.at("configuration"))?;
    let mut report = SopReport {
        trials: cfg.trials,
        seed: cfg.seed,
        ..Default::default()
    };
    if mode.analytic() {
        report.analytic = Some(analytic_breakdown(&sc, SignalFit::MomentMatched)?);
    }
    if mode.mc() {
        let mut opts = McOptions::new(cfg.trials, cfg.seed);
        opts.window = window;
        let est = estimate_sop(&sc, &opts);
        report.mc_estimate = Some(est.sop);
        report.mc_stderr = Some(est.stderr);
        report.mc_diagnostics = Some(est.diagnostics);
    }
    Ok(report)
}

pub fn run_point(cfg: &NetworkConfig, mode: Mode) -> Result<SopReport> {
    run_point_with(cfg, mode, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_mode_has_no_mc_fields() {
        let r = run_point(&NetworkConfig::default(), Mode::Analytic).unwrap();
        assert!(r.analytic.is_some());
        assert!(r.mc_estimate.is_none() && r.mc_stderr.is_none());
        assert!(r.abs_gap().is_none());
    }

    #[test]
    fn both_mode_reports_gap() {
        let mut cfg = NetworkConfig::default();
        cfg.trials = 2_000;
        let r = run_point(&cfg, Mode::Both).unwrap();
        assert!(r.abs_gap().is_some());
        assert_eq!(r.trials, 2_000);
    }

    #[test]
    fn invalid_config_is_attributed() {
        let mut cfg = NetworkConfig::default();
        cfg.l1 = 200.0;
        let err = run_point(&cfg, Mode::Analytic).unwrap_err();
        assert!(err.is_config());
        let msg = err.to_string();
        assert!(msg.contains("configuration") && msg.contains("l1 < l2"), "{msg}");
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("both".parse::<Mode>().unwrap(), Mode::Both);
        assert!("plot".parse::<Mode>().is_err());
    }
}
