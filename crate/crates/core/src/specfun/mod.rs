//! Special functions for the Gamma-ratio closed form and its oracles.

pub mod distribution;
pub mod gamma;
pub mod hypergeometric;

pub use distribution::GammaParams;
pub use gamma::{ln_gamma, reg_lower_gamma, reg_upper_gamma};
pub use hypergeometric::{hyp2f1, hyp2f1_parts, hyp2f1_series, Hyp2f1};
