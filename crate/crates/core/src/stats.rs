//! Small statistics toolkit used by the estimators and the validation suite.

use crate::specfun::gamma::reg_upper_gamma;

/// Welford accumulator for mean and variance.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct OnlineMoments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl OnlineMoments {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Chan et al. pairwise merge. Merging in a fixed order gives a
    /// reproducible result.
    pub fn merge(&mut self, other: &OnlineMoments) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        self.mean += delta * other.n as f64 / n as f64;
        self.m2 += other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64;
        self.n = n;
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }
}

/// Sample mean and variance with delete-one jackknife standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JackknifeMoments {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub mean_stderr: f64,
    pub variance_stderr: f64,
}

pub fn jackknife_moments(xs: &[f64]) -> JackknifeMoments {
    let n = xs.len();
    let mut acc = OnlineMoments::default();
    xs.iter().for_each(|&x| acc.push(x));
    let mean = acc.mean();
    let variance = acc.variance();
    if n < 3 {
        return JackknifeMoments {
            n,
            mean,
            variance,
            mean_stderr: f64::NAN,
            variance_stderr: f64::NAN,
        };
    }
    let nf = n as f64;
    let m2 = variance * (nf - 1.0);
    // Leave-one-out variances in closed form; the jackknife SE of the mean
    // reduces to the usual s/√n.
    let loo: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let d = x - mean;
            (m2 - nf / (nf - 1.0) * d * d) / (nf - 2.0)
        })
        .collect();
    let loo_mean = loo.iter().sum::<f64>() / nf;
    let ss: f64 = loo.iter().map(|v| (v - loo_mean).powi(2)).sum();
    JackknifeMoments {
        n,
        mean,
        variance,
        mean_stderr: (variance / nf).sqrt(),
        variance_stderr: ((nf - 1.0) / nf * ss).sqrt(),
    }
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    // Φ(z) = ½ erfc(−z/√2) and erfc(t) = Q(½, t²) for t ≥ 0.
    let t = z / std::f64::consts::SQRT_2;
    let tail = 0.5 * reg_upper_gamma(0.5, t * t).unwrap_or(0.0);
    if z >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Two-sided p-value for a standard normal statistic.
pub fn z_test_p_value(z: f64) -> f64 {
    2.0 * (1.0 - normal_cdf(z.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
}

/// One-sample Kolmogorov–Smirnov test against a continuous CDF.
pub fn ks_test<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> KsResult {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    let nf = n as f64;
    let d = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / nf).max((i + 1) as f64 / nf - f)
        })
        .fold(0.0, f64::max);
    let sqrt_n = nf.sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    KsResult {
        statistic: d,
        p_value: kolmogorov_survival(lambda),
        n,
    }
}

/// `P(K > λ)` for the Kolmogorov distribution.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100 {
        let jf = j as f64;
        let term = 2.0 * (-2.0 * jf * jf * lambda * lambda).exp();
        sum += if j % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

/// Test that integer counts are Poisson with the given mean: a z-test on the
/// sample mean and the index-of-dispersion test on the variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonCheck {
    pub mean: f64,
    pub variance: f64,
    pub mean_p_value: f64,
    pub dispersion_p_value: f64,
}

pub fn poisson_check(counts: &[usize], expected_mean: f64) -> PoissonCheck {
    let mut acc = OnlineMoments::default();
    counts.iter().for_each(|&c| acc.push(c as f64));
    let n = counts.len() as f64;
    let z_mean = (acc.mean() - expected_mean) / (expected_mean / n).sqrt();
    // Σ(x − x̄)²/x̄ ~ χ²(n−1); normal approximation at large n.
    let dispersion = acc.variance() * (n - 1.0) / acc.mean();
    let z_disp = (dispersion - (n - 1.0)) / (2.0 * (n - 1.0)).sqrt();
    PoissonCheck {
        mean: acc.mean(),
        variance: acc.variance(),
        mean_p_value: z_test_p_value(z_mean),
        dispersion_p_value: z_test_p_value(z_disp),
    }
}

/// Two-sided p-value for zero correlation between paired samples (`r·√n` is
/// asymptotically standard normal under independence).
pub fn correlation_p_value(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    let r = sxy / (sxx * syy).sqrt();
    (r, z_test_p_value(r * n.sqrt()))
}

/// Two-sided p-value for an observed binomial proportion against `p0`.
pub fn proportion_p_value(successes: usize, n: usize, p0: f64) -> f64 {
    let nf = n as f64;
    let z = (successes as f64 / nf - p0) / (p0 * (1.0 - p0) / nf).sqrt();
    z_test_p_value(z)
}
