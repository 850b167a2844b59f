//! Scenario configuration.
//!
//! [`NetworkConfig`] is the on-disk form (TOML, powers in dBm, threshold in
//! dB). [`Scenario`] is the validated, linear-scale form every algorithm
//! consumes.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::geometry::{Disk, Point2D, Region};
use super::units::{db_to_linear, dbm_to_mw};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Polar {
    pub r: f64,
    pub phi: f64,
}

impl Polar {
    pub fn to_point(self) -> Point2D {
        Point2D::from_polar(self.r, self.phi)
    }
}

/// Scenario parameters as read from a config file. Missing keys take the
/// defaults below (the reference scenario: β_e = 0 dB, α = 4, L₁ = 6 m,
/// L₂ = 100 m, L_G = 5 m, C₁ = 0.8, C₂ = 0.79, λ = 0.2 /m², P_s = 10 dBm,
/// P_j = 1 dBm).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NetworkConfig {
    /// Density of legitimate nodes, nodes/m².
    pub lambda: f64,
    /// Relay trust threshold.
    pub c1: f64,
    /// Jammer trust threshold.
    pub c2: f64,
    /// Relay disk radius, m.
    pub l1: f64,
    /// Outer radius of the jammer annulus, m.
    pub l2: f64,
    /// Protected-zone radius around the destination, m.
    pub lg: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    pub ps_dbm: f64,
    pub pj_dbm: f64,
    pub beta_e_db: f64,
    pub dest: Polar,
    pub eve: Polar,
    /// Radius of the jammer-free disk around the eavesdropper, m.
    pub epsilon_z: f64,
    pub quad_tol: f64,
    pub trials: u64,
    pub seed: u64,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        NetworkConfig {
            lambda: 0.2,
            c1: 0.8,
            c2: 0.79,
            l1: 6.0,
            l2: 100.0,
            lg: 5.0,
            alpha: 4.0,
            ps_dbm: 10.0,
            pj_dbm: 1.0,
            beta_e_db: 0.0,
            dest: Polar { r: 50.0, phi: 0.0 },
            eve: Polar {
                r: 60.0,
                phi: FRAC_PI_2,
            },
            epsilon_z: 1.0,
            quad_tol: 1e-8,
            trials: 100_000,
            seed: 1,
        }
    }
}

impl NetworkConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config is always serialisable")
    }

    /// Set one key from its textual value, as used by command-line overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = || {
            value
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("{key}: expected a number, got {value:?}")))
        };
        let int = || {
            value
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("{key}: expected an integer, got {value:?}")))
        };
        match key {
            "lambda" => self.lambda = num()?,
            "c1" => self.c1 = num()?,
            "c2" => self.c2 = num()?,
            "c_q" => self.c2 = self.c1 - num()?,
            "l1" => self.l1 = num()?,
            "l2" => self.l2 = num()?,
            "lg" => self.lg = num()?,
            "alpha" => self.alpha = num()?,
            "ps_dbm" => self.ps_dbm = num()?,
            "pj_dbm" => self.pj_dbm = num()?,
            "beta_e_db" => self.beta_e_db = num()?,
            "dest_r" | "dest.r" => self.dest.r = num()?,
            "dest_phi" | "dest.phi" => self.dest.phi = num()?,
            "eve_r" | "eve.r" => self.eve.r = num()?,
            "eve_phi" | "eve.phi" => self.eve.phi = num()?,
            "epsilon_z" => self.epsilon_z = num()?,
            "quad_tol" => self.quad_tol = num()?,
            "trials" => self.trials = int()?,
            "seed" => self.seed = int()?,
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        let finite = [
            ("lambda", self.lambda),
            ("c1", self.c1),
            ("c2", self.c2),
            ("l1", self.l1),
            ("l2", self.l2),
            ("lg", self.lg),
            ("alpha", self.alpha),
            ("ps_dbm", self.ps_dbm),
            ("pj_dbm", self.pj_dbm),
            ("beta_e_db", self.beta_e_db),
            ("dest.r", self.dest.r),
            ("dest.phi", self.dest.phi),
            ("eve.r", self.eve.r),
            ("eve.phi", self.eve.phi),
            ("epsilon_z", self.epsilon_z),
            ("quad_tol", self.quad_tol),
        ];
        if let Some((k, v)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return fail(format!("{k} must be finite (got {v})"));
        }
        if self.lambda < 0.0 {
            return fail(format!("lambda >= 0 violated (lambda = {})", self.lambda));
        }
        if !(self.c1 > 0.0 && self.c1 <= 1.0) {
            return fail(format!("0 < c1 <= 1 violated (c1 = {})", self.c1));
        }
        if !(self.c2 >= 0.0 && self.c2 <= self.c1) {
            return fail(format!(
                "0 <= c2 <= c1 violated (c1 = {}, c2 = {})",
                self.c1, self.c2
            ));
        }
        if !(self.l1 > 0.0 && self.l1 < self.l2) {
            return fail(format!(
                "0 < l1 < l2 violated (l1 = {}, l2 = {})",
                self.l1, self.l2
            ));
        }
        if self.lg < 0.0 {
            return fail(format!("lg >= 0 violated (lg = {})", self.lg));
        }
        if self.alpha <= 2.0 {
            return fail(format!("alpha > 2 violated (alpha = {})", self.alpha));
        }
        if self.epsilon_z <= 0.0 {
            return fail(format!("epsilon_z > 0 violated (epsilon_z = {})", self.epsilon_z));
        }
        if self.dest.r < 0.0 || self.eve.r < 0.0 {
            return fail("polar radii of dest and eve must be >= 0".into());
        }
        if !(self.quad_tol > 0.0 && self.quad_tol <= 1e-3) {
            return fail(format!("quad_tol in (0, 1e-3] violated (quad_tol = {})", self.quad_tol));
        }
        if self.trials == 0 {
            return fail("trials >= 1 violated".into());
        }
        Ok(())
    }
}

/// Thinned relay and jammer densities `((1 − c1)·λ, (c1 − c2)·λ)`.
pub fn thinned_densities(lambda: f64, c1: f64, c2: f64) -> (f64, f64) {
    ((1.0 - c1) * lambda, (c1 - c2) * lambda)
}

/// Validated scenario in linear units.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub lambda: f64,
    pub c1: f64,
    pub c2: f64,
    pub l1: f64,
    pub l2: f64,
    pub lg: f64,
    pub alpha: f64,
    /// Relay transmit power, mW.
    pub ps: f64,
    /// Jammer transmit power, mW.
    pub pj: f64,
    /// Linear SIR threshold.
    pub beta_e: f64,
    pub dest: Point2D,
    pub eve: Point2D,
    pub epsilon_z: f64,
    pub quad_tol: f64,
    /// Silence jammers inside `Disk(eve, epsilon_z)`. Only the simulator
    /// honours `false`; the analytic integrals always carve the disk.
    pub eve_exclusion: bool,
}

impl Scenario {
    pub fn from_config(cfg: &NetworkConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Scenario {
            lambda: cfg.lambda,
            c1: cfg.c1,
            c2: cfg.c2,
            l1: cfg.l1,
            l2: cfg.l2,
            lg: cfg.lg,
            alpha: cfg.alpha,
            ps: dbm_to_mw(cfg.ps_dbm),
            pj: dbm_to_mw(cfg.pj_dbm),
            beta_e: db_to_linear(cfg.beta_e_db),
            dest: cfg.dest.to_point(),
            eve: cfg.eve.to_point(),
            epsilon_z: cfg.epsilon_z,
            quad_tol: cfg.quad_tol,
            eve_exclusion: true,
        })
    }

    pub fn thinned_densities(&self) -> (f64, f64) {
        thinned_densities(self.lambda, self.c1, self.c2)
    }

    pub fn relay_region(&self) -> Region {
        Region::disk(Point2D::ORIGIN, self.l1)
    }

    pub fn jammer_annulus(&self) -> Region {
        Region::annulus(Point2D::ORIGIN, self.l1, self.l2)
    }

    pub fn protected_zone(&self) -> Option<Disk> {
        (self.lg > 0.0).then(|| Disk::new(self.dest, self.lg))
    }

    pub fn eve_zone(&self) -> Option<Disk> {
        (self.epsilon_z > 0.0).then(|| Disk::new(self.eve, self.epsilon_z))
    }

    /// The region in which jammers transmit: the annulus minus the protected
    /// zone and, if requested, minus the eavesdropper exclusion disk.
    pub fn active_jammer_region(&self, exclude_eve: bool) -> Region {
        let holes = self
            .protected_zone()
            .into_iter()
            .chain(self.eve_zone().filter(|_| exclude_eve));
        Region::difference(self.jammer_annulus(), holes)
    }

    /// Whether the closed-form pipeline is applicable: the eavesdropper must
    /// sit outside the relay disk by more than the exclusion radius.
    pub fn check_analytic_geometry(&self) -> Result<()> {
        let r = self.eve.norm();
        if r <= self.l1 + self.epsilon_z {
            return Err(Error::Config(format!(
                "eve.r > l1 + epsilon_z violated (eve.r = {r}, l1 = {}, epsilon_z = {})",
                self.l1, self.epsilon_z
            )));
        }
        Ok(())
    }
}
