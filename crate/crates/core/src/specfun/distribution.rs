//! The Gamma(shape, scale) law.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use super::gamma::{ln_gamma_unchecked, reg_lower_gamma};
use crate::error::{Error, Result};

/// Gamma law with density `x^(ν−1) e^(−x/θ) / (θ^ν Γ(ν))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaParams {
    pub shape: f64,
    pub scale: f64,
}

impl GammaParams {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        if !(shape > 0.0 && shape.is_finite() && scale > 0.0 && scale.is_finite()) {
            return Err(Error::domain(
                "GammaParams",
                format!("shape and scale must be positive and finite (got {shape}, {scale})"),
            ));
        }
        Ok(GammaParams { shape, scale })
    }

    pub fn mean(&self) -> f64 {
        self.shape * self.scale
    }

    pub fn variance(&self) -> f64 {
        self.shape * self.scale * self.scale
    }

    pub fn ln_pdf(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::domain("gamma_pdf", format!("x must be non-negative, got {x}")));
        }
        let (nu, theta) = (self.shape, self.scale);
        if x == 0.0 {
            return Ok(match nu.partial_cmp(&1.0) {
                Some(std::cmp::Ordering::Less) => f64::INFINITY,
                Some(std::cmp::Ordering::Equal) => -theta.ln(),
                _ => f64::NEG_INFINITY,
            });
        }
        Ok((nu - 1.0) * x.ln() - x / theta - nu * theta.ln() - ln_gamma_unchecked(nu))
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.ln_pdf(x).map(f64::exp)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::domain("gamma_cdf", format!("x must be non-negative, got {x}")));
        }
        reg_lower_gamma(self.shape, x / self.scale)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        Gamma::new(self.shape, self.scale)
            .expect("validated parameters")
            .sample(rng)
    }

    /// A reusable sampler for drawing many variates.
    pub fn sampler(&self) -> Gamma<f64> {
        Gamma::new(self.shape, self.scale).expect("validated parameters")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive::{integrate_adaptive, AdaptiveOptions};
    use crate::stats::{ks_test, OnlineMoments};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exponential_case() {
        let g = GammaParams::new(1.0, 1.0).unwrap();
        for x in [0.0, 0.3, 1.0, 4.0] {
            assert!((g.pdf(x).unwrap() - (-x).exp()).abs() < 1e-15);
        }
        assert!((g.cdf(1.0).unwrap() - 0.632_120_558_828_557_7).abs() < 1e-12);
        assert!(g.pdf(-1.0).is_err());
        assert!(GammaParams::new(0.0, 1.0).is_err());
        assert!(GammaParams::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn pdf_normalises() {
        let opts = AdaptiveOptions {
            abs_tol: 1e-11,
            rel_tol: 0.0,
            max_subdivisions: 5_000,
        };
        for (nu, theta) in [(1.0, 1.0), (2.0, 3.0), (0.7, 0.5), (12.0, 0.1)] {
            let g = GammaParams::new(nu, theta).unwrap();
            let upper = theta * (nu + 40.0 * nu.sqrt() + 40.0);
            let q = integrate_adaptive(|x| g.pdf(x).unwrap(), 0.0, upper, &opts, false).unwrap();
            assert!((q.value - 1.0).abs() < 1e-8, "({nu},{theta}): {}", q.value);
        }
    }

    #[test]
    fn cdf_derivative_is_pdf() {
        let g = GammaParams::new(2.5, 1.7).unwrap();
        let h = 1e-5;
        for x in [0.5, 1.0, 3.0, 6.0, 12.0] {
            let deriv = (g.cdf(x + h).unwrap() - g.cdf(x - h).unwrap()) / (2.0 * h);
            assert!((deriv - g.pdf(x).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn sample_moments() {
        let g = GammaParams::new(2.0, 3.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let dist = g.sampler();
        let mut m = OnlineMoments::default();
        let n = 1_000_000;
        for _ in 0..n {
            m.push(dist.sample(&mut rng));
        }
        let se_mean = (g.variance() / n as f64).sqrt();
        assert!((m.mean() - 6.0).abs() < 3.0 * se_mean);
        // Var of the sample variance for Gamma: (μ4 − σ⁴)/n with μ4 = 3νθ⁴(ν+2)
        let mu4 = 3.0 * 2.0 * 3f64.powi(4) * 4.0;
        let se_var = ((mu4 - g.variance().powi(2)) / n as f64).sqrt();
        assert!((m.variance() - g.variance()).abs() < 3.0 * se_var);
    }

    #[test]
    fn exponential_sampler_passes_ks() {
        let g = GammaParams::new(1.0, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let xs: Vec<f64> = (0..100_000).map(|_| g.sample(&mut rng)).collect();
        let ks = ks_test(&xs, |x| 1.0 - (-x / 2.0).exp());
        assert!(ks.p_value > 0.01, "{ks:?}");
    }
}
