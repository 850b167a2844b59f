//! Physical-layer simulation of the two-hop relay/jammer network and Monte
//! Carlo estimation of the secrecy outage probability.

pub mod channels;
pub mod estimate;
pub mod network;

pub use channels::{
    jamming_power, sample_channels, sample_power_fade, signal_power_dest, signal_power_eve, sir_at, ChannelTable, ComplexGain,
    Target,
};
pub use estimate::{estimate_moments, estimate_sop, simulate_trials, trial_rng, McOptions, Quantity, SopEstimate};
pub use network::{
    evaluate, evaluate_nodes, realize, sample_full_network, sample_marked_nodes, MarkedNode, TrialOutcome,
    TrustWindow,
};
