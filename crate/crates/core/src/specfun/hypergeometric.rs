//! Gauss hypergeometric function ₂F₁(a, b; c; x) on `0 ≤ x < 1`.

use crate::error::{Error, Result};

pub const MAX_TERMS: usize = 1_000_000;
pub const SERIES_TOL: f64 = 1e-12;
/// The transformed series alternates in sign for about `−(c−b)` terms; past
/// this many the cancellation costs more digits than the direct series.
const EULER_MAX_ALTERNATION: f64 = 4.0;

/// A value represented as `exp(log_scale) · series`, which keeps large
/// Euler-transformation prefactors out of floating-point overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2f1 {
    pub log_scale: f64,
    pub series: f64,
    pub terms: usize,
    pub euler: bool,
}

impl Hyp2f1 {
    pub fn value(&self) -> f64 {
        self.log_scale.exp() * self.series
    }
}

fn check(a: f64, b: f64, c: f64, x: f64) -> Result<()> {
    if !(c > 0.0) || !a.is_finite() || !b.is_finite() || !c.is_finite() {
        return Err(Error::domain(
            "hyp2f1",
            format!("need finite a, b and c > 0 (got a={a}, b={b}, c={c})"),
        ));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::domain("hyp2f1", format!("x must lie in [0, 1), got {x}")));
    }
    Ok(())
}

/// Direct Gauss series `Σ (a)ₙ(b)ₙ / ((c)ₙ n!) xⁿ`.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, x: f64) -> Result<Hyp2f1> {
    check(a, b, c, x)?;
    let (series, terms) = gauss_series(a, b, c, x)?;
    Ok(Hyp2f1 {
        log_scale: 0.0,
        series,
        terms,
        euler: false,
    })
}

/// ₂F₁ with the Euler transformation
/// `₂F₁(a,b;c;x) = (1−x)^(c−a−b) ₂F₁(c−a, c−b; c; x)` applied for x > 1/2
/// unless the transformed parameters are strongly negative.
pub fn hyp2f1_parts(a: f64, b: f64, c: f64, x: f64) -> Result<Hyp2f1> {
    check(a, b, c, x)?;
    if x <= 0.5 || (c - a).min(c - b) < -EULER_MAX_ALTERNATION {
        return hyp2f1_series(a, b, c, x);
    }
    let (series, terms) = gauss_series(c - a, c - b, c, x)?;
    Ok(Hyp2f1 {
        log_scale: (c - a - b) * (-x).ln_1p(),
        series,
        terms,
        euler: true,
    })
}

pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    hyp2f1_parts(a, b, c, x).map(|h| h.value())
}

fn gauss_series(a: f64, b: f64, c: f64, x: f64) -> Result<(f64, usize)> {
    let mut sum = 1.0;
    let mut term = 1.0;
    if x == 0.0 {
        return Ok((sum, 1));
    }
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        term *= ratio;
        sum += term;
        if term == 0.0 {
            return Ok((sum, n + 2));
        }
        // Once the term ratio settles below one, the remaining tail is bounded
        // by a geometric series.
        let r = ratio.abs();
        if r < 1.0 {
            let tail = term.abs() * r / (1.0 - r);
            if term.abs() <= SERIES_TOL * sum.abs() && tail <= SERIES_TOL * sum.abs() {
                return Ok((sum, n + 2));
            }
        }
    }
    Err(Error::NonConvergence {
        func: "hyp2f1",
        iterations: MAX_TERMS,
    })
}
