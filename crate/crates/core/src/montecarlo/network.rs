//! Sampling of marked node layouts and evaluation of a single trial.
//!
//! Each candidate node carries its own trust mark and fading draws. The role
//! of a node is decided afterwards from the scenario thresholds, so changing
//! `c1`, `c2`, the eavesdropper position or `β_e` while keeping the seed
//! re-uses exactly the same randomness (common random numbers).

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::channels::{
    jamming_power, sample_power_fade, signal_power_dest, signal_power_eve, sir_at, ChannelTable, ComplexGain,
    Target,
};
use crate::model::geometry::poisson_count;
use crate::model::nodes::role_of;
use crate::model::{NodeRealization, NodeRole, Point2D, Region, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeFading {
    pub to_dest: ComplexGain,
    pub to_eve: ComplexGain,
    pub power_to_dest: f64,
    pub power_to_eve: f64,
}

impl NodeFading {
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        NodeFading {
            to_dest: ComplexGain::sample_cn(rng),
            to_eve: ComplexGain::sample_cn(rng),
            power_to_dest: sample_power_fade(rng),
            power_to_eve: sample_power_fade(rng),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarkedNode {
    pub position: Point2D,
    pub trust: f64,
    pub fading: NodeFading,
}

/// Trust bands that are actually sampled. Nodes outside these bands can only
/// be dummies, so dropping them is exact by the thinning property of the
/// Poisson process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrustWindow {
    /// Relay-disk nodes are sampled with trust in `[relay_floor, 1)`.
    pub relay_floor: f64,
    /// Annulus nodes are sampled with trust in `[jammer_lo, jammer_hi)`.
    pub jammer_lo: f64,
    pub jammer_hi: f64,
}

impl TrustWindow {
    pub fn for_scenario(sc: &Scenario) -> Self {
        TrustWindow {
            relay_floor: sc.c1,
            jammer_lo: sc.c2,
            jammer_hi: sc.c1,
        }
    }

    /// Smallest window that is exact for every scenario in `scs`.
    pub fn covering<'a>(scs: impl IntoIterator<Item = &'a Scenario>) -> Option<Self> {
        scs.into_iter().map(Self::for_scenario).reduce(|a, b| TrustWindow {
            relay_floor: a.relay_floor.min(b.relay_floor),
            jammer_lo: a.jammer_lo.min(b.jammer_lo),
            jammer_hi: a.jammer_hi.max(b.jammer_hi),
        })
    }

    /// The full trust range; equivalent to sampling every legitimate node.
    pub fn everything() -> Self {
        TrustWindow {
            relay_floor: 0.0,
            jammer_lo: 0.0,
            jammer_hi: 1.0,
        }
    }
}

fn sample_band<R: Rng + ?Sized>(
    region: &Region,
    lambda: f64,
    lo: f64,
    hi: f64,
    rng: &mut R,
    out: &mut Vec<MarkedNode>,
) {
    let width = (hi - lo).max(0.0);
    let n = poisson_count(lambda * width * region.area(), rng);
    for _ in 0..n {
        let position = region.sample_uniform(rng);
        let trust = lo + width * rng.random::<f64>();
        let fading = NodeFading::sample(rng);
        out.push(MarkedNode {
            position,
            trust,
            fading,
        });
    }
}

/// Candidate relays on the relay disk and candidate jammers on the annulus.
/// Geometry (l1, l2, λ) comes from `sc`; the trust bands from `window`.
pub fn sample_marked_nodes<R: Rng + ?Sized>(sc: &Scenario, window: &TrustWindow, rng: &mut R) -> Vec<MarkedNode> {
    let mut out = Vec::new();
    sample_band(&sc.relay_region(), sc.lambda, window.relay_floor, 1.0, rng, &mut out);
    sample_band(
        &sc.jammer_annulus(),
        sc.lambda,
        window.jammer_lo,
        window.jammer_hi,
        rng,
        &mut out,
    );
    out
}

/// Every legitimate node in `Disk(o, l2)` with trust uniform on `[0, 1)`.
pub fn sample_full_network<R: Rng + ?Sized>(sc: &Scenario, rng: &mut R) -> Vec<MarkedNode> {
    let mut out = Vec::new();
    sample_band(
        &Region::disk(Point2D::ORIGIN, sc.l2),
        sc.lambda,
        0.0,
        1.0,
        rng,
        &mut out,
    );
    out
}

/// Split marked nodes into the transmitting realization and its channels.
pub fn realize(nodes: &[MarkedNode], sc: &Scenario) -> (NodeRealization, ChannelTable) {
    let mut r = NodeRealization::default();
    let mut ch = ChannelTable::default();
    for n in nodes {
        match role_of(n.position, n.trust, sc) {
            NodeRole::Relay => {
                r.relays.push(n.position);
                ch.relay_to_dest.push(n.fading.to_dest);
                ch.relay_to_eve.push(n.fading.to_eve);
            }
            NodeRole::ActiveJammer => {
                r.active_jammers.push(n.position);
                ch.jammer_to_dest.push(n.fading.power_to_dest);
                ch.jammer_to_eve.push(n.fading.power_to_eve);
            }
            NodeRole::SilencedJammer | NodeRole::Dummy => {}
        }
    }
    (r, ch)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub sir_d: f64,
    pub sir_z: f64,
    pub t_z: f64,
    pub i_z: f64,
    pub n_relays: usize,
    pub n_active_jammers: usize,
}

impl TrialOutcome {
    /// Secrecy outage: the eavesdropper's SIR strictly exceeds `β_e`.
    pub fn is_outage(&self, beta_e: f64) -> bool {
        self.sir_z > beta_e
    }
}

pub fn evaluate(realization: &NodeRealization, channels: &ChannelTable, sc: &Scenario) -> TrialOutcome {
    let s_d = signal_power_dest(realization, channels, sc);
    let i_d = jamming_power(realization, channels, Target::Dest, sc);
    let t_z = signal_power_eve(realization, channels, sc);
    let i_z = jamming_power(realization, channels, Target::Eve, sc);
    TrialOutcome {
        sir_d: sir_at(s_d, i_d),
        sir_z: sir_at(t_z, i_z),
        t_z,
        i_z,
        n_relays: realization.relays.len(),
        n_active_jammers: realization.active_jammers.len(),
    }
}

pub fn evaluate_nodes(nodes: &[MarkedNode], sc: &Scenario) -> TrialOutcome {
    let (r, ch) = realize(nodes, sc);
    evaluate(&r, &ch, sc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NetworkConfig;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dummies_do_not_affect_outcome() {
        let mut cfg = NetworkConfig::default();
        cfg.l2 = 40.0;
        cfg.dest.r = 30.0;
        cfg.eve.r = 25.0;
        let sc = Scenario::from_config(&cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let all = sample_full_network(&sc, &mut rng);
            let kept: Vec<MarkedNode> = all
                .iter()
                .copied()
                .filter(|n| role_of(n.position, n.trust, &sc) != NodeRole::Dummy)
                .collect();
            assert!(kept.len() < all.len());
            let a = evaluate_nodes(&all, &sc);
            let b = evaluate_nodes(&kept, &sc);
            assert_eq!(a.t_z.to_bits(), b.t_z.to_bits());
            assert_eq!(a.i_z.to_bits(), b.i_z.to_bits());
            assert_eq!(a.sir_d.to_bits(), b.sir_d.to_bits());
        }
    }

    #[test]
    fn window_covers_scenarios() {
        let mut a = NetworkConfig::default();
        a.c1 = 0.9;
        let sa = Scenario::from_config(&a).unwrap();
        let sb = Scenario::from_config(&NetworkConfig::default()).unwrap();
        let w = TrustWindow::covering([&sa, &sb]).unwrap();
        assert_eq!(w.relay_floor, 0.8);
        assert_eq!(w.jammer_lo, 0.79);
        assert_eq!(w.jammer_hi, 0.9);
    }

    #[test]
    fn realized_nodes_respect_regions() {
        let sc = Scenario::from_config(&NetworkConfig::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let active = sc.active_jammer_region(true);
        for _ in 0..200 {
            let nodes = sample_marked_nodes(&sc, &TrustWindow::for_scenario(&sc), &mut rng);
            let (r, ch) = realize(&nodes, &sc);
            assert_eq!(r.relays.len(), ch.relay_to_eve.len());
            assert!(r.relays.iter().all(|p| p.norm() <= sc.l1));
            assert!(r.active_jammers.iter().all(|p| active.contains(*p)));
        }
    }
}
