//! Fading draws and the received-power expressions at the destination and
//! the eavesdropper.

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::model::{NodeRealization, Point2D, Scenario};

/// A complex small-scale fading coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexGain {
    pub re: f64,
    pub im: f64,
}

impl ComplexGain {
    pub const fn new(re: f64, im: f64) -> Self {
        ComplexGain { re, im }
    }

    /// Draw from CN(0, 1): independent N(0, 1/2) components.
    pub fn sample_cn<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        ComplexGain::new(s * re, s * im)
    }

    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn norm_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn conj(self) -> Self {
        ComplexGain::new(self.re, -self.im)
    }

    pub fn times(self, o: ComplexGain) -> Self {
        ComplexGain::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    pub fn scale(self, k: f64) -> Self {
        ComplexGain::new(self.re * k, self.im * k)
    }
}

/// Unit-mean exponential power fade.
pub fn sample_power_fade<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    Exp1.sample(rng)
}

/// Fading for every transmitter towards the destination and the
/// eavesdropper, aligned with the order in a [`NodeRealization`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ChannelTable {
    pub relay_to_dest: Vec<ComplexGain>,
    pub relay_to_eve: Vec<ComplexGain>,
    pub jammer_to_dest: Vec<f64>,
    pub jammer_to_eve: Vec<f64>,
}

pub fn sample_channels<R: Rng + ?Sized>(realization: &NodeRealization, rng: &mut R) -> ChannelTable {
    let mut t = ChannelTable::default();
    for _ in &realization.relays {
        t.relay_to_dest.push(ComplexGain::sample_cn(rng));
        t.relay_to_eve.push(ComplexGain::sample_cn(rng));
    }
    for _ in &realization.active_jammers {
        t.jammer_to_dest.push(sample_power_fade(rng));
        t.jammer_to_eve.push(sample_power_fade(rng));
    }
    t
}

#[inline]
fn path_gain(a: Point2D, b: Point2D, alpha: f64) -> f64 {
    // d^(−α) computed from the squared distance.
    a.distance_sq(b).powf(-0.5 * alpha)
}

/// Coherent beamformed power at the destination:
/// `(Σ √P_s |H_{x,d}| d_{x,d}^(−α/2))²`.
pub fn signal_power_dest(realization: &NodeRealization, channels: &ChannelTable, sc: &Scenario) -> f64 {
    let amp: f64 = realization
        .relays
        .iter()
        .zip(&channels.relay_to_dest)
        .map(|(&x, h)| h.norm() * path_gain(x, sc.dest, sc.alpha).sqrt())
        .sum();
    sc.ps * amp * amp
}

/// Power at the eavesdropper, `T(z) = |Σ √P_s H_{x,z} H*_{x,d}/|H_{x,d}| d_{x,z}^(−α/2)|²`.
pub fn signal_power_eve(realization: &NodeRealization, channels: &ChannelTable, sc: &Scenario) -> f64 {
    let mut acc = ComplexGain::default();
    for ((&x, hd), hz) in realization
        .relays
        .iter()
        .zip(&channels.relay_to_dest)
        .zip(&channels.relay_to_eve)
    {
        let mag = hd.norm();
        if mag == 0.0 {
            continue;
        }
        let rotated = hz.times(hd.conj()).scale(path_gain(x, sc.eve, sc.alpha).sqrt() / mag);
        acc.re += rotated.re;
        acc.im += rotated.im;
    }
    sc.ps * acc.norm_sq()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Dest,
    Eve,
}

/// Aggregate jamming power `Σ P_j h d^(−α)` at the destination or the eavesdropper.
pub fn jamming_power(
    realization: &NodeRealization,
    channels: &ChannelTable,
    target: Target,
    sc: &Scenario,
) -> f64 {
    let (at, fades) = match target {
        Target::Dest => (sc.dest, &channels.jammer_to_dest),
        Target::Eve => (sc.eve, &channels.jammer_to_eve),
    };
    sc.pj
        * realization
            .active_jammers
            .iter()
            .zip(fades)
            .map(|(&x, &h)| h * path_gain(x, at, sc.alpha))
            .sum::<f64>()
}

/// `t / i`, with `+∞` when only the interference vanishes and `0` for `0/0`.
pub fn sir_at(t: f64, i: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else if i == 0.0 {
        f64::INFINITY
    } else {
        t / i
    }
}
