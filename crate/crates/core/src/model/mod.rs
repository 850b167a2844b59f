//! Scenario model: geometry, configuration, node classification and units.

pub mod config;
pub mod geometry;
pub mod nodes;
pub mod units;

pub use config::{thinned_densities, NetworkConfig, Polar, Scenario};
pub use geometry::{lens_area, sample_ppp, Disk, Point2D, Region};
pub use nodes::{classify_nodes, Classification, NodeRealization, NodeRole};
pub use units::{db_to_linear, dbm_to_mw, linear_to_db};
