//! Planar power-law integrals `∫_region ‖x − pole‖^(−p) dx`.
//!
//! The integral is taken in polar coordinates centred at the pole. The
//! angular part is exact (circle arc extents per radius), leaving a 1-D
//! radial integral `∫ r^(1−p) Θ(r) dr` that is split at every radius where
//! `Θ` has a kink and then integrated adaptively.

pub mod adaptive;

use crate::error::{Error, Result};
use crate::model::{Point2D, Region, Scenario};
use adaptive::{integrate_adaptive, AdaptiveOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralSpec {
    pub region: Region,
    pub pole: Point2D,
    pub exponent: f64,
    pub rel_tol: f64,
}

impl IntegralSpec {
    pub fn new(region: Region, pole: Point2D, exponent: f64) -> Self {
        IntegralSpec {
            region,
            pole,
            exponent,
            rel_tol: 1e-8,
        }
    }

    pub fn with_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

/// Ratio above which a radial piece is split geometrically; keeps the
/// `r^(1−p)` factor within a modest dynamic range on each piece.
const MAX_PIECE_RATIO: f64 = 1.5;

pub fn integrate_power_law(spec: &IntegralSpec) -> Result<f64> {
    spec.region.validate()?;
    if !(spec.rel_tol > 0.0 && spec.rel_tol <= 1e-3) {
        return Err(Error::domain(
            "integrate_power_law",
            format!("rel_tol must lie in (0, 1e-3], got {}", spec.rel_tol),
        ));
    }
    let p = spec.exponent;
    if spec.exponent >= 2.0 && spec.region.contains(spec.pole) {
        return Err(Error::DivergentIntegral {
            pole: (spec.pole.x, spec.pole.y),
            exponent: p,
        });
    }

    let cuts = spec.region.radial_pieces(spec.pole);
    let mut pieces = Vec::with_capacity(cuts.len() * 4);
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        if a > 0.0 && b / a > MAX_PIECE_RATIO {
            let n = ((b / a).ln() / MAX_PIECE_RATIO.ln()).ceil() as usize;
            let step = (b / a).powf(1.0 / n as f64);
            let mut lo = a;
            for k in 1..=n {
                let hi = if k == n { b } else { a * step.powi(k as i32) };
                // Interior splits are smooth points; only the outer ends need
                // the endpoint regularisation.
                pieces.push((lo, hi, k == 1, k == n));
                lo = hi;
            }
        } else {
            pieces.push((a, b, true, true));
        }
    }

    let region = &spec.region;
    let pole = spec.pole;
    let integrand = |r: f64| {
        let theta = region.angular_measure(pole, r);
        if theta == 0.0 {
            0.0
        } else {
            r.powf(1.0 - p) * theta
        }
    };

    // First pass at a loose tolerance to learn the total's magnitude, then
    // give every piece an absolute budget proportional to it.
    let coarse: f64 = pieces
        .iter()
        .map(|&(a, b, _, _)| {
            integrate_adaptive(
                integrand,
                a,
                b,
                &AdaptiveOptions {
                    abs_tol: 0.0,
                    rel_tol: 1e-3,
                    max_subdivisions: 200,
                },
                true,
            )
            .map(|q| q.value.abs())
            .unwrap_or(0.0)
        })
        .sum();
    if coarse == 0.0 {
        return Ok(0.0);
    }
    let budget = spec.rel_tol * coarse / pieces.len() as f64;

    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut subdivisions = 0;
    for &(a, b, lo_kink, hi_kink) in &pieces {
        let opts = AdaptiveOptions {
            abs_tol: budget * 0.5,
            rel_tol: 0.0,
            max_subdivisions: 2_000,
        };
        let q = if lo_kink || hi_kink {
            integrate_adaptive(integrand, a, b, &opts, true)?
        } else {
            integrate_adaptive(integrand, a, b, &opts, false)?
        };
        total += q.value;
        total_err += q.error;
        subdivisions += q.subdivisions;
    }
    if total_err > spec.rel_tol * total.abs() {
        return Err(Error::ToleranceNotMet {
            estimate: total_err,
            requested: spec.rel_tol * total.abs(),
            subdivisions,
        });
    }
    Ok(total)
}

/// `Q_z(n) = ∫_{Disk(o, l1)} ‖x − z‖^(−nα) dx`.
pub fn q_z(n: u32, sc: &Scenario, z: Point2D) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("q_z", "n must be a positive integer"));
    }
    integrate_power_law(
        &IntegralSpec::new(sc.relay_region(), z, f64::from(n) * sc.alpha).with_tol(sc.quad_tol),
    )
}

/// `∫_{D̄} ‖x − eve‖^(−nα) dx` over the active-jammer region (annulus minus
/// protected zone minus the eavesdropper exclusion disk).
pub fn jam_integral(n: u32, sc: &Scenario) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("jam_integral", "n must be a positive integer"));
    }
    integrate_power_law(
        &IntegralSpec::new(
            sc.active_jammer_region(true),
            sc.eve,
            f64::from(n) * sc.alpha,
        )
        .with_tol(sc.quad_tol),
    )
}

/// Closed form of `∫_{Disk(o,R)} ‖x − z‖^(−4) dx` for `‖z‖ = d > R`:
/// `πR² / (d² − R²)²`.
pub fn disk_inverse_fourth_closed_form(radius: f64, d: f64) -> f64 {
    let r2 = radius * radius;
    std::f64::consts::PI * r2 / (d * d - r2).powi(2)
}
