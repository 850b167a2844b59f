//! Trust-degree classification of legitimate nodes into relays, jammers and
//! dummies.

use serde::{Deserialize, Serialize};

use super::config::Scenario;
use super::geometry::Point2D;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeRole {
    Relay,
    ActiveJammer,
    /// A jammer by trust and location that stays silent (protected zone or
    /// eavesdropper exclusion disk).
    SilencedJammer,
    Dummy,
}

/// One sampled network: the transmitting relays and jammers.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NodeRealization {
    pub relays: Vec<Point2D>,
    pub active_jammers: Vec<Point2D>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Classification {
    pub realization: NodeRealization,
    pub silenced_jammers: Vec<Point2D>,
    pub dummies: Vec<Point2D>,
    /// Role of each input node, aligned with the input order.
    pub roles: Vec<NodeRole>,
}

pub fn role_of(p: Point2D, trust: f64, sc: &Scenario) -> NodeRole {
    let r2 = p.distance_sq(Point2D::ORIGIN);
    if trust >= sc.c1 && r2 <= sc.l1 * sc.l1 {
        return NodeRole::Relay;
    }
    // Trust exactly c1 belongs to the relay band, so jammers use [c2, c1).
    if trust >= sc.c2 && trust < sc.c1 && r2 >= sc.l1 * sc.l1 && r2 <= sc.l2 * sc.l2 {
        let in_protected = sc.protected_zone().is_some_and(|d| d.contains(p));
        let near_eve = sc.eve_exclusion && sc.eve_zone().is_some_and(|d| d.contains(p));
        return if in_protected || near_eve {
            NodeRole::SilencedJammer
        } else {
            NodeRole::ActiveJammer
        };
    }
    NodeRole::Dummy
}

pub fn classify_nodes(points: &[Point2D], trust: &[f64], sc: &Scenario) -> Result<Classification> {
    if points.len() != trust.len() {
        return Err(Error::domain(
            "classify_nodes",
            format!("{} points but {} trust values", points.len(), trust.len()),
        ));
    }
    let mut out = Classification {
        roles: Vec::with_capacity(points.len()),
        ..Default::default()
    };
    for (&p, &t) in points.iter().zip(trust) {
        let role = role_of(p, t, sc);
        match role {
            NodeRole::Relay => out.realization.relays.push(p),
            NodeRole::ActiveJammer => out.realization.active_jammers.push(p),
            NodeRole::SilencedJammer => out.silenced_jammers.push(p),
            NodeRole::Dummy => out.dummies.push(p),
        }
        out.roles.push(role);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::config::NetworkConfig;
    use proptest::prelude::*;

    fn scenario() -> Scenario {
        Scenario::from_config(&NetworkConfig::default()).unwrap()
    }

    #[test]
    fn relay_by_trust_and_location() {
        let sc = scenario();
        assert_eq!(role_of(Point2D::new(3.0, 0.0), 0.9, &sc), NodeRole::Relay);
        assert_eq!(role_of(Point2D::new(3.0, 0.0), 0.795, &sc), NodeRole::Dummy);
        assert_eq!(role_of(Point2D::new(30.0, 0.0), 0.9, &sc), NodeRole::Dummy);
        assert_eq!(role_of(Point2D::new(30.0, 0.0), 0.8, &sc), NodeRole::Dummy);
        assert_eq!(role_of(Point2D::new(30.0, 0.0), 0.795, &sc), NodeRole::ActiveJammer);
    }

    #[test]
    fn protected_zone_silences_jammer() {
        let sc = scenario();
        assert_eq!(
            role_of(Point2D::new(50.0, 0.5), 0.795, &sc),
            NodeRole::SilencedJammer
        );
        // eavesdropper exclusion disk
        assert_eq!(
            role_of(Point2D::new(0.0, 60.5), 0.795, &sc),
            NodeRole::SilencedJammer
        );
        let mut open = sc.clone();
        open.eve_exclusion = false;
        assert_eq!(
            role_of(Point2D::new(0.0, 60.5), 0.795, &open),
            NodeRole::ActiveJammer
        );
    }

    #[test]
    fn c1_of_one_leaves_no_relays() {
        let mut cfg = NetworkConfig::default();
        cfg.c1 = 1.0;
        let sc = Scenario::from_config(&cfg).unwrap();
        let pts = vec![Point2D::new(1.0, 1.0); 4];
        let c = classify_nodes(&pts, &[0.2, 0.5, 0.99, 0.999_999], &sc).unwrap();
        assert!(c.realization.relays.is_empty());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(classify_nodes(&[Point2D::ORIGIN], &[], &scenario()).is_err());
    }

    proptest! {
        #[test]
        fn classification_partitions_input(
            nodes in prop::collection::vec((-110.0f64..110.0, -110.0f64..110.0, 0.0f64..1.0), 0..200)
        ) {
            let sc = scenario();
            let pts: Vec<Point2D> = nodes.iter().map(|&(x, y, _)| Point2D::new(x, y)).collect();
            let trust: Vec<f64> = nodes.iter().map(|n| n.2).collect();
            let c = classify_nodes(&pts, &trust, &sc).unwrap();
            let total = c.realization.relays.len() + c.realization.active_jammers.len()
                + c.silenced_jammers.len() + c.dummies.len();
            prop_assert_eq!(total, pts.len());
            prop_assert_eq!(c.roles.len(), pts.len());
            for (i, role) in c.roles.iter().enumerate() {
                prop_assert_eq!(*role, role_of(pts[i], trust[i], &sc));
            }
            for p in &c.realization.relays {
                prop_assert!(p.norm() <= sc.l1);
            }
            let active = sc.active_jammer_region(true);
            for p in &c.realization.active_jammers {
                prop_assert!(active.contains(*p));
            }
        }
    }
}
