//! Secrecy outage analysis for cooperative relay beamforming with friendly
//! jamming, where nodes are split into relays, jammers and dummies by a
//! per-node social trust degree.
//!
//! Two independent routes to the secrecy outage probability are provided:
//!
//! * [`montecarlo`] simulates Poisson node layouts, Rayleigh fading and the
//!   resulting eavesdropper SIR;
//! * [`analytic`] fits Gamma laws to the eavesdropper's signal and jamming
//!   powers by moment matching and evaluates the tail of their ratio in
//!   closed form through a Gauss hypergeometric function.
//!
//! [`experiment`] composes the two into single-point reports, parameter
//! sweeps and a validation suite.

pub mod analytic;
pub mod error;
pub mod experiment;
pub mod model;
pub mod montecarlo;
pub mod quadrature;
pub mod specfun;
pub mod stats;

pub use analytic::{analytic_sop, dgr_sop, sop_oracle_numeric, DgrInputs, SopReport};
pub use error::{Error, Result};
pub use model::{NetworkConfig, Point2D, Region, Scenario};
pub use specfun::GammaParams;
