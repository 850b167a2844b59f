use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{run_point_with, Mode};
use crate::analytic::SopReport;
use crate::error::{Error, Result};
use crate::model::{NetworkConfig, Scenario};
use crate::montecarlo::TrustWindow;

pub const CSV_HEADER: [&str; 12] = [
    "variable",
    "value",
    "sop_analytic",
    "sop_mc",
    "mc_stderr",
    "nu_t",
    "theta_t",
    "nu_i",
    "theta_i",
    "q_e",
    "n_trials",
    "seed",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    BetaEDb,
    EveR,
    C1,
    /// `c1 − c2`, with `c1` held fixed.
    CQ,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::BetaEDb => "beta_e_db",
            SweepVariable::EveR => "eve_r",
            SweepVariable::C1 => "c1",
            SweepVariable::CQ => "c_q",
        }
    }

    pub fn apply(self, cfg: &NetworkConfig, value: f64) -> NetworkConfig {
        let mut c = cfg.clone();
        match self {
            SweepVariable::BetaEDb => c.beta_e_db = value,
            SweepVariable::EveR => c.eve.r = value,
            SweepVariable::C1 => c.c1 = value,
            SweepVariable::CQ => c.c2 = c.c1 - value,
        }
        c
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "beta_e_db" => Ok(SweepVariable::BetaEDb),
            "eve_r" => Ok(SweepVariable::EveR),
            "c1" => Ok(SweepVariable::C1),
            "c_q" => Ok(SweepVariable::CQ),
            _ => Err(Error::Config(format!(
                "unknown sweep variable {s:?} (expected beta_e_db|eve_r|c1|c_q)"
            ))),
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    pub mode: Mode,
}

impl SweepSpec {
    /// Parse `var=v1,v2,...`.
    pub fn parse(text: &str, mode: Mode) -> Result<Self> {
        let (var, vals) = text
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("sweep must look like var=v1,v2,... (got {text:?})")))?;
        let variable: SweepVariable = var.trim().parse()?;
        let values = vals
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("bad sweep value {v:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("sweep values must be non-empty and finite".into()));
        }
        Ok(SweepSpec {
            variable,
            values,
            mode,
        })
    }
}

/// One output line. Numeric cells are pre-formatted; empty means absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvRow {
    pub cells: [String; 12],
}

/// Locale-free, round-trip exact number formatting.
pub fn format_number(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e9) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.filter(|v| v.is_finite()).map(format_number).unwrap_or_default()
}

impl CsvRow {
    fn from_report(var: SweepVariable, value: f64, cfg: &NetworkConfig, mode: Mode, r: Option<&SopReport>) -> Self {
        let a = r.and_then(|r| r.analytic.as_ref());
        CsvRow {
            cells: [
                var.name().to_string(),
                format_number(value),
                opt(a.map(|a| a.sop)),
                opt(r.and_then(|r| r.mc_estimate)),
                opt(r.and_then(|r| r.mc_stderr)),
                opt(a.map(|a| a.params_t.shape)),
                opt(a.map(|a| a.params_t.scale)),
                opt(a.map(|a| a.params_i.shape)),
                opt(a.map(|a| a.params_i.scale)),
                opt(a.map(|a| a.q_e)),
                if mode.mc() { cfg.trials.to_string() } else { String::new() },
                cfg.seed.to_string(),
            ],
        }
    }

    pub fn get(&self, column: &str) -> Option<&str> {
        CSV_HEADER.iter().position(|c| *c == column).map(|i| self.cells[i].as_str())
    }

    pub fn number(&self, column: &str) -> Option<f64> {
        self.get(column).and_then(|s| s.parse().ok())
    }
}

/// Evaluate every sweep point (concurrently) and return the rows in input
/// order. All Monte Carlo points share the seed and one trust window, so
/// they see common random numbers. A failing point yields a row with empty
/// result cells; the error is returned alongside.
pub fn run_sweep(cfg: &NetworkConfig, sweep: &SweepSpec) -> (Vec<CsvRow>, Vec<(f64, Error)>) {
    let configs: Vec<NetworkConfig> = sweep.values.iter().map(|&v| sweep.variable.apply(cfg, v)).collect();
    let scenarios: Vec<Scenario> = configs.iter().filter_map(|c| Scenario::from_config(c).ok()).collect();
    let window = TrustWindow::covering(&scenarios);

    let results: Vec<Result<SopReport>> = configs
        .par_iter()
        .map(|c| run_point_with(c, sweep.mode, window))
        .collect();

    let mut rows = Vec::with_capacity(results.len());
    let mut errors = Vec::new();
    for ((res, c), &v) in results.into_iter().zip(&configs).zip(&sweep.values) {
        match res {
            Ok(r) => rows.push(CsvRow::from_report(sweep.variable, v, c, sweep.mode, Some(&r))),
            Err(e) => {
                rows.push(CsvRow::from_report(sweep.variable, v, c, sweep.mode, None));
                errors.push((v, e));
            }
        }
    }
    (rows, errors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sweep() {
        let s = SweepSpec::parse("eve_r=40, 50,60", Mode::Both).unwrap();
        assert_eq!(s.variable, SweepVariable::EveR);
        assert_eq!(s.values, vec![40.0, 50.0, 60.0]);
        assert!(SweepSpec::parse("eve_r", Mode::Both).is_err());
        assert!(SweepSpec::parse("seed=1,2", Mode::Both).is_err());
        assert!(SweepSpec::parse("c1=0.8,x", Mode::Both).is_err());
    }

    #[test]
    fn c_q_holds_c1() {
        let cfg = NetworkConfig::default();
        let c = SweepVariable::CQ.apply(&cfg, 0.02);
        assert_eq!(c.c1, 0.8);
        assert!((c.c2 - 0.78).abs() < 1e-15);
    }

    #[test]
    fn failing_point_leaves_empty_cells() {
        let spec = SweepSpec::parse("c_q=0.01,0.9", Mode::Analytic).unwrap();
        let (rows, errs) = run_sweep(&NetworkConfig::default(), &spec);
        assert_eq!(rows.len(), 2);
        assert_eq!(errs.len(), 1);
        assert!(rows[0].number("sop_analytic").is_some());
        assert_eq!(rows[1].get("sop_analytic"), Some(""));
        assert_eq!(rows[1].get("value"), Some("0.9"));
    }

    #[test]
    fn analytic_rows_are_input_ordered_and_trend_down_in_distance() {
        let spec = SweepSpec::parse("eve_r=90,40,60", Mode::Analytic).unwrap();
        let (rows, errs) = run_sweep(&NetworkConfig::default(), &spec);
        assert!(errs.is_empty());
        let v: Vec<f64> = rows.iter().map(|r| r.number("value").unwrap()).collect();
        assert_eq!(v, vec![90.0, 40.0, 60.0]);
        let sop: Vec<f64> = rows.iter().map(|r| r.number("sop_analytic").unwrap()).collect();
        assert!(sop[1] > sop[2] && sop[2] > sop[0]);
        assert_eq!(rows[0].get("n_trials"), Some(""));
    }

    #[test]
    fn number_format_round_trips() {
        for x in [0.0, 1.0, -5.0, 0.123_456_789, 4.623_6e-5, 1e-300, 3.2e12] {
            assert_eq!(format_number(x).parse::<f64>().unwrap(), x);
        }
    }
}
