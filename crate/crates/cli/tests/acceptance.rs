//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use secnet_core::analytic::SignalFit;
use secnet_core::experiment::validate::{
    distribution_checks, dgr_grid_error, exponential_case_error, moment_checks, network_checks, Check,
};
use secnet_core::experiment::{run_sweep, CsvRow, Mode, SweepSpec};
use secnet_core::quadrature::{disk_inverse_fourth_closed_form, q_z};
use secnet_core::{NetworkConfig, Scenario};

struct Outcome {
    passed: bool,
    summary: String,
}

impl Outcome {
    fn new(passed: bool, summary: impl Into<String>) -> Self {
        Outcome {
            passed,
            summary: summary.into(),
        }
    }
}

fn within(limit: Duration, t: Duration) -> bool {
    t <= limit
}

fn column(rows: &[CsvRow], name: &str) -> Vec<f64> {
    rows.iter().map(|r| r.number(name).unwrap_or(f64::NAN)).collect()
}

fn nonincreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] <= w[0])
}

fn fmt(xs: &[f64]) -> String {
    xs.iter()
        .map(|&x| if x == 0.0 || x >= 1e-3 { format!("{x:.5}") } else { format!("{x:.3e}") })
        .collect::<Vec<_>>()
        .join(", ")
}

fn checks_outcome(checks: &[Check]) -> (bool, Vec<String>) {
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed()).map(Check::line).collect();
    (failed.is_empty(), checks.iter().map(Check::line).collect())
}

fn closed_form_grid() -> Outcome {
    let t0 = Instant::now();
    let (err, at) = dgr_grid_error().expect("grid evaluates");
    let t = t0.elapsed();
    Outcome::new(
        err <= 1e-8 && within(Duration::from_secs(10), t),
        format!("max |closed form − numeric| = {err:.2e} ({at}), {:.2} s", t.as_secs_f64()),
    )
}

fn exponential_case() -> Outcome {
    let err = exponential_case_error(&[0.1, 1.0, 3.0, 10.0]).expect("evaluates");
    Outcome::new(err <= 1e-9, format!("max |sop − 1/(1+q)| = {err:.2e}"))
}

fn moment_fidelity(details: &mut Vec<String>) -> Outcome {
    let mut cfg = NetworkConfig::default();
    cfg.eve.r = 60.0;
    cfg.eve.phi = std::f64::consts::FRAC_PI_2;
    let sc = Scenario::from_config(&cfg).unwrap();
    let t0 = Instant::now();
    let checks = moment_checks(&sc, SignalFit::MomentMatched, 1_000_000, cfg.seed).expect("moments evaluate");
    let t = t0.elapsed();
    let (ok, lines) = checks_outcome(&checks);
    details.extend(lines);
    let worst = checks
        .iter()
        .map(|c| format!("{} {:.2}%", c.name, 100.0 * c.measured))
        .collect::<Vec<_>>()
        .join(", ");
    Outcome::new(
        ok && within(Duration::from_secs(300), t),
        format!("{worst}; {:.1} s", t.as_secs_f64()),
    )
}

fn distance_sweep() -> (Vec<CsvRow>, Duration) {
    let mut cfg = NetworkConfig::default();
    cfg.trials = 100_000;
    let spec = SweepSpec::parse("eve_r=40,50,60,70,80,90", Mode::Both).unwrap();
    let t0 = Instant::now();
    let (rows, errors) = run_sweep(&cfg, &spec);
    assert!(errors.is_empty(), "{errors:?}");
    (rows, t0.elapsed())
}

fn end_to_end(rows: &[CsvRow], t: Duration) -> Outcome {
    let a = column(rows, "sop_analytic");
    let m = column(rows, "sop_mc");
    let gaps: Vec<f64> = a.iter().zip(&m).map(|(a, m)| (a - m).abs()).collect();
    let worst = gaps.iter().cloned().fold(0.0, f64::max);
    Outcome::new(
        worst <= 0.05 && within(Duration::from_secs(600), t),
        format!(
            "analytic [{}], mc [{}], max gap {worst:.4}; {:.1} s",
            fmt(&a),
            fmt(&m),
            t.as_secs_f64()
        ),
    )
}

fn trends(distance_rows: &[CsvRow], details: &mut Vec<String>) -> Outcome {
    let mut ok = true;
    let mut note = |name: &str, pass: bool, text: String| {
        ok &= pass;
        details.push(format!("{} {name}: {text}", if pass { "PASS" } else { "FAIL" }));
    };

    let a = column(distance_rows, "sop_analytic");
    let m = column(distance_rows, "sop_mc");
    note("distance analytic", nonincreasing(&a), fmt(&a));
    note("distance mc", nonincreasing(&m), fmt(&m));

    // At 10 dB the outage probability is of order 1e-5, so the simulated
    // comparison there needs 1e6 trials to see any outages at all.
    for db in [-5.0, 0.0, 5.0, 10.0] {
        let mut cfg = NetworkConfig::default();
        cfg.trials = if db >= 10.0 { 1_000_000 } else { 100_000 };
        cfg.beta_e_db = db;
        let spec = SweepSpec::parse("c1=0.8,0.9", Mode::Both).unwrap();
        let (rows, errors) = run_sweep(&cfg, &spec);
        assert!(errors.is_empty(), "{errors:?}");
        let a = column(&rows, "sop_analytic");
        let m = column(&rows, "sop_mc");
        note(&format!("c1 at {db} dB analytic"), a[1] < a[0], fmt(&a));
        note(&format!("c1 at {db} dB mc"), m[1] < m[0], fmt(&m));
    }

    let mut cfg = NetworkConfig::default();
    cfg.trials = 100_000;
    let spec = SweepSpec::parse("c_q=0.005,0.01,0.02", Mode::Both).unwrap();
    let (rows, errors) = run_sweep(&cfg, &spec);
    assert!(errors.is_empty(), "{errors:?}");
    let a = column(&rows, "sop_analytic");
    let m = column(&rows, "sop_mc");
    note("c_q analytic", nonincreasing(&a), fmt(&a));
    note("c_q mc", nonincreasing(&m), fmt(&m));

    Outcome::new(ok, "distance, c1 and c_q trends on analytic and simulated values")
}

fn quadrature_oracle() -> Outcome {
    let mut cfg = NetworkConfig::default();
    cfg.alpha = 4.0;
    let mut worst: f64 = 0.0;
    for d in [40.0, 80.0] {
        cfg.eve.r = d;
        let sc = Scenario::from_config(&cfg).unwrap();
        let exact = disk_inverse_fourth_closed_form(sc.l1, d);
        worst = worst.max(((q_z(1, &sc, sc.eve).unwrap() - exact) / exact).abs());
    }
    Outcome::new(worst <= 1e-6, format!("max relative error {worst:.2e}"))
}

fn statistical_invariants(details: &mut Vec<String>) -> Outcome {
    let cfg = NetworkConfig::default();
    let sc = Scenario::from_config(&cfg).unwrap();
    let mut checks = network_checks(&sc, 100_000, cfg.seed).expect("network checks run");
    checks.extend(distribution_checks(&sc, 100_000, cfg.seed).expect("distribution checks run"));
    let (ok, lines) = checks_outcome(&checks);
    details.extend(lines);
    let min_p = checks.iter().map(|c| c.measured).fold(f64::INFINITY, f64::min);
    Outcome::new(ok, format!("{} tests at 1%, smallest p = {min_p:.3}", checks.len()))
}

fn determinism() -> Outcome {
    let run = |workers: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_secnet"))
            .args([
                "--workers",
                workers,
                "sweep",
                "--mode",
                "both",
                "--trials",
                "20000",
                "--seed",
                "12345",
                "--sweep",
                "eve_r=40,60,90",
            ])
            .env_remove("SECNET_SEED")
            .output()
            .expect("binary runs");
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        o.stdout
    };
    let one = run("1");
    let four = run("4");
    Outcome::new(
        one == four && !one.is_empty(),
        format!("{} bytes with 1 worker, {} with 4, identical: {}", one.len(), four.len(), one == four),
    )
}

fn main() -> ExitCode {
    std::env::set_var("SECNET_QUIET", "1");
    let mut details = Vec::new();
    let (distance_rows, distance_time) = distance_sweep();
    let results = [
        ("1 closed form vs numeric oracle grid", closed_form_grid()),
        ("2 exponential special case", exponential_case()),
        ("3 moment-matching fidelity", moment_fidelity(&mut details)),
        ("4 end-to-end accuracy", end_to_end(&distance_rows, distance_time)),
        ("5 trend reproduction", trends(&distance_rows, &mut details)),
        ("6 quadrature closed form", quadrature_oracle()),
        ("7 statistical invariants", statistical_invariants(&mut details)),
        ("8 determinism across worker counts", determinism()),
    ];
    println!();
    for d in &details {
        println!("    {d}");
    }
    println!();
    for (name, r) in &results {
        println!("{} criterion {name}: {}", if r.passed { "PASS" } else { "FAIL" }, r.summary);
    }
    let failed = results.iter().filter(|(_, r)| !r.passed).count();
    println!("\n{} criteria, {failed} failed", results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
