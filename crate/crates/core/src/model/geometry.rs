//! Planar geometry: points, disks, annuli and disk-carved regions.
//!
//! Regions are closed point sets: boundary points count as inside. A
//! `Difference` removes the open interior of each hole, so a point on a hole
//! boundary is on the boundary of the difference and therefore inside it.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::adaptive::{integrate_adaptive, AdaptiveOptions};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const ORIGIN: Point2D = Point2D { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2D { x, y }
    }

    pub fn from_polar(r: f64, phi: f64) -> Self {
        Point2D {
            x: r * phi.cos(),
            y: r * phi.sin(),
        }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2D) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn distance_sq(self, other: Point2D) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Polar angle of `other - self`.
    fn bearing_to(self, other: Point2D) -> f64 {
        (other.y - self.y).atan2(other.x - self.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point2D,
    pub radius: f64,
}

impl Disk {
    pub const fn new(center: Point2D, radius: f64) -> Self {
        Disk { center, radius }
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    /// Closed containment.
    pub fn contains(&self, p: Point2D) -> bool {
        p.distance_sq(self.center) <= self.radius * self.radius
    }

    /// Open containment (strict interior).
    pub fn contains_strictly(&self, p: Point2D) -> bool {
        p.distance_sq(self.center) < self.radius * self.radius
    }

    /// Whether `other` lies entirely inside this disk.
    pub fn covers(&self, other: &Disk) -> bool {
        self.center.distance(other.center) + other.radius <= self.radius
    }
}

/// Area of the intersection of two disks (circle-circle lens).
pub fn lens_area(a: &Disk, b: &Disk) -> f64 {
    let d = a.center.distance(b.center);
    let (r1, r2) = (a.radius, b.radius);
    if d >= r1 + r2 {
        return 0.0;
    }
    if d <= (r1 - r2).abs() {
        let r = r1.min(r2);
        return PI * r * r;
    }
    let c1 = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0);
    let c2 = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0);
    let kite = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
    r1 * r1 * c1.acos() + r2 * r2 * c2.acos() - 0.5 * kite.max(0.0).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Region {
    Disk(Disk),
    Annulus {
        center: Point2D,
        r_inner: f64,
        r_outer: f64,
    },
    Difference {
        base: Box<Region>,
        holes: Vec<Disk>,
    },
}

/// A circle bounding a region, tagged with whether its interior is kept or removed.
#[derive(Debug, Clone, Copy)]
struct Boundary {
    disk: Disk,
    keep: bool,
}

impl Region {
    pub fn disk(center: Point2D, radius: f64) -> Self {
        Region::Disk(Disk::new(center, radius))
    }

    pub fn annulus(center: Point2D, r_inner: f64, r_outer: f64) -> Self {
        Region::Annulus {
            center,
            r_inner,
            r_outer,
        }
    }

    /// `base` minus the given disks. Nested differences are flattened so the
    /// stored base is always a disk or an annulus.
    pub fn difference(base: Region, holes: impl IntoIterator<Item = Disk>) -> Self {
        let mut holes: Vec<Disk> = holes.into_iter().collect();
        match base {
            Region::Difference {
                base,
                holes: mut inner,
            } => {
                inner.append(&mut holes);
                Region::Difference { base, holes: inner }
            }
            base => Region::Difference {
                base: Box::new(base),
                holes,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Region::Disk(d) => check_disk(d),
            Region::Annulus {
                center,
                r_inner,
                r_outer,
            } => {
                if !center.is_finite() {
                    return Err(Error::Config("annulus center must be finite".into()));
                }
                if !(*r_inner >= 0.0 && r_inner < r_outer && r_outer.is_finite()) {
                    return Err(Error::Config(format!(
                        "annulus radii must satisfy 0 <= r_inner < r_outer (got {r_inner}, {r_outer})"
                    )));
                }
                Ok(())
            }
            Region::Difference { base, holes } => {
                base.validate()?;
                holes.iter().try_for_each(check_disk)
            }
        }
    }

    fn primitive_and_holes(&self) -> (&Region, Vec<Disk>) {
        match self {
            Region::Difference { base, holes } => {
                let (prim, mut all) = base.primitive_and_holes();
                all.extend_from_slice(holes);
                (prim, all)
            }
            r => (r, Vec::new()),
        }
    }

    fn boundaries(&self) -> Vec<Boundary> {
        let (prim, holes) = self.primitive_and_holes();
        let mut out = Vec::with_capacity(holes.len() + 2);
        match prim {
            Region::Disk(d) => out.push(Boundary {
                disk: *d,
                keep: true,
            }),
            Region::Annulus {
                center,
                r_inner,
                r_outer,
            } => {
                out.push(Boundary {
                    disk: Disk::new(*center, *r_outer),
                    keep: true,
                });
                if *r_inner > 0.0 {
                    out.push(Boundary {
                        disk: Disk::new(*center, *r_inner),
                        keep: false,
                    });
                }
            }
            Region::Difference { .. } => unreachable!("flattened above"),
        }
        out.extend(holes.into_iter().filter(|h| h.radius > 0.0).map(|disk| Boundary {
            disk,
            keep: false,
        }));
        out
    }

    pub fn contains(&self, p: Point2D) -> bool {
        match self {
            Region::Disk(d) => d.contains(p),
            Region::Annulus {
                center,
                r_inner,
                r_outer,
            } => {
                let r2 = p.distance_sq(*center);
                r2 >= r_inner * r_inner && r2 <= r_outer * r_outer
            }
            Region::Difference { base, holes } => {
                base.contains(p) && !holes.iter().any(|h| h.contains_strictly(p))
            }
        }
    }

    /// Exact area. Holes are subtracted through the circle-circle lens formula;
    /// overlapping holes are corrected pairwise when both lie inside a disk
    /// base or the annulus body, otherwise the area falls back to a polar
    /// quadrature of the angular extent.
    pub fn area(&self) -> f64 {
        match self {
            Region::Disk(d) => d.area(),
            Region::Annulus {
                r_inner, r_outer, ..
            } => PI * (r_outer * r_outer - r_inner * r_inner),
            Region::Difference { .. } => {
                let (prim, holes) = self.primitive_and_holes();
                let holes: Vec<Disk> = holes.into_iter().filter(|h| h.radius > 0.0).collect();
                let base_area = prim.area();
                let mut removed: f64 = holes.iter().map(|h| prim.overlap_with_disk(h)).sum();
                for (i, a) in holes.iter().enumerate() {
                    for b in &holes[i + 1..] {
                        if lens_area(a, b) == 0.0 {
                            continue;
                        }
                        if !(prim.covers_disk(a) && prim.covers_disk(b)) || holes.len() > 2 {
                            return self.area_by_quadrature();
                        }
                        removed -= lens_area(a, b);
                    }
                }
                (base_area - removed).max(0.0)
            }
        }
    }

    /// Area of `self ∩ hole` for a disk or annulus.
    pub fn overlap_with_disk(&self, hole: &Disk) -> f64 {
        match self {
            Region::Disk(d) => lens_area(d, hole),
            Region::Annulus {
                center,
                r_inner,
                r_outer,
            } => {
                let outer = lens_area(&Disk::new(*center, *r_outer), hole);
                let inner = if *r_inner > 0.0 {
                    lens_area(&Disk::new(*center, *r_inner), hole)
                } else {
                    0.0
                };
                outer - inner
            }
            Region::Difference { .. } => {
                self.area() - Region::difference(self.clone(), [*hole]).area()
            }
        }
    }

    fn covers_disk(&self, d: &Disk) -> bool {
        match self {
            Region::Disk(b) => b.covers(d),
            Region::Annulus {
                center,
                r_inner,
                r_outer,
            } => {
                let c = center.distance(d.center);
                c + d.radius <= *r_outer && c - d.radius >= *r_inner
            }
            Region::Difference { .. } => false,
        }
    }

    fn area_by_quadrature(&self) -> f64 {
        let (prim, _) = self.primitive_and_holes();
        let center = match prim {
            Region::Disk(d) => d.center,
            Region::Annulus { center, .. } => *center,
            Region::Difference { .. } => unreachable!(),
        };
        let opts = AdaptiveOptions {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            max_subdivisions: 20_000,
        };
        self.radial_pieces(center)
            .windows(2)
            .map(|w| {
                integrate_adaptive(|r| r * self.angular_measure(center, r), w[0], w[1], &opts, true)
                    .map(|q| q.value)
                    .unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// Angular measure in `[0, 2π]` of the set of directions `φ` for which
    /// `pole + r·(cos φ, sin φ)` lies in the region. Computed from exact
    /// circle–circle arc extents (law of cosines).
    pub fn angular_measure(&self, pole: Point2D, r: f64) -> f64 {
        let bounds = self.boundaries();
        if r <= 0.0 {
            return if self.contains(pole) { TAU } else { 0.0 };
        }
        let arcs: Vec<(Arc, bool)> = bounds
            .iter()
            .map(|b| (Arc::of(&b.disk, pole, r), b.keep))
            .collect();

        // Fast exits: any kept circle missed entirely.
        if arcs.iter().any(|(a, keep)| *keep && matches!(a, Arc::Empty)) {
            return 0.0;
        }
        if arcs
            .iter()
            .any(|(a, keep)| !*keep && matches!(a, Arc::Full))
        {
            return 0.0;
        }
        let partial: Vec<(f64, f64, bool)> = arcs
            .iter()
            .filter_map(|(a, keep)| match a {
                Arc::Partial { mid, half } => Some((*mid, *half, *keep)),
                _ => None,
            })
            .collect();
        if partial.is_empty() {
            return TAU;
        }
        if partial.len() == 1 {
            let (_, half, keep) = partial[0];
            return if keep { 2.0 * half } else { TAU - 2.0 * half };
        }

        let mut cuts: Vec<f64> = Vec::with_capacity(2 * partial.len() + 2);
        cuts.push(0.0);
        cuts.push(TAU);
        for &(mid, half, _) in &partial {
            cuts.push((mid - half).rem_euclid(TAU));
            cuts.push((mid + half).rem_euclid(TAU));
        }
        cuts.sort_by(f64::total_cmp);
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let len = w[1] - w[0];
            if len <= 0.0 {
                continue;
            }
            let m = 0.5 * (w[0] + w[1]);
            let inside = partial.iter().all(|&(mid, half, keep)| {
                let off = angle_diff(m, mid).abs();
                (off < half) == keep
            });
            if inside {
                total += len;
            }
        }
        total
    }

    /// Radii about `pole` at which the angular measure may fail to be smooth:
    /// tangencies of every boundary circle and the distances to pairwise
    /// circle intersection points. Sorted, deduplicated, starting at 0 and
    /// ending at the farthest point of the region.
    pub fn radial_pieces(&self, pole: Point2D) -> Vec<f64> {
        let bounds = self.boundaries();
        let mut cuts = vec![0.0];
        let mut r_max: f64 = 0.0;
        for b in &bounds {
            let d = pole.distance(b.disk.center);
            let far = d + b.disk.radius;
            if b.keep {
                r_max = r_max.max(far);
            }
            cuts.push((d - b.disk.radius).abs());
            cuts.push(far);
        }
        for (i, a) in bounds.iter().enumerate() {
            for b in &bounds[i + 1..] {
                for p in circle_intersections(&a.disk, &b.disk) {
                    cuts.push(pole.distance(p));
                }
            }
        }
        cuts.retain(|c| c.is_finite() && *c <= r_max);
        cuts.push(r_max);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
        cuts
    }

    /// Uniform sample from the region. Disks and annuli use radial inverse-CDF
    /// sampling; holes are handled by rejection.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Point2D {
        match self {
            Region::Disk(d) => sample_annulus(rng, d.center, 0.0, d.radius),
            Region::Annulus {
                center,
                r_inner,
                r_outer,
            } => sample_annulus(rng, *center, *r_inner, *r_outer),
            Region::Difference { base, holes } => loop {
                let p = base.sample_uniform(rng);
                if !holes.iter().any(|h| h.contains_strictly(p)) {
                    return p;
                }
            },
        }
    }
}

fn check_disk(d: &Disk) -> Result<()> {
    if !d.center.is_finite() || !(d.radius > 0.0 && d.radius.is_finite()) {
        return Err(Error::Config(format!(
            "disk radius must be positive and finite (got {})",
            d.radius
        )));
    }
    Ok(())
}

fn sample_annulus<R: Rng + ?Sized>(rng: &mut R, center: Point2D, r_in: f64, r_out: f64) -> Point2D {
    let u: f64 = rng.random();
    let r = (r_in * r_in + u * (r_out * r_out - r_in * r_in)).sqrt();
    let phi = TAU * rng.random::<f64>();
    Point2D::new(center.x + r * phi.cos(), center.y + r * phi.sin())
}

/// Homogeneous Poisson point process on `region` with the given density.
pub fn sample_ppp<R: Rng + ?Sized>(region: &Region, density: f64, rng: &mut R) -> Vec<Point2D> {
    let n = poisson_count(density * region.area(), rng);
    (0..n).map(|_| region.sample_uniform(rng)).collect()
}

pub(crate) fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    if !(mean > 0.0) {
        return 0;
    }
    let dist = Poisson::new(mean).expect("finite positive Poisson mean");
    dist.sample(rng) as usize
}

#[derive(Debug, Clone, Copy)]
enum Arc {
    Empty,
    Full,
    Partial { mid: f64, half: f64 },
}

impl Arc {
    /// Directions from `pole` at distance `r` that fall inside `disk`.
    fn of(disk: &Disk, pole: Point2D, r: f64) -> Arc {
        let d = pole.distance(disk.center);
        let big_r = disk.radius;
        if d == 0.0 {
            return if r <= big_r { Arc::Full } else { Arc::Empty };
        }
        let cos_half = (r * r + d * d - big_r * big_r) / (2.0 * r * d);
        if cos_half <= -1.0 {
            Arc::Full
        } else if cos_half >= 1.0 {
            Arc::Empty
        } else {
            Arc::Partial {
                mid: pole.bearing_to(disk.center),
                half: cos_half.acos(),
            }
        }
    }
}

fn angle_diff(a: f64, b: f64) -> f64 {
    (a - b + PI).rem_euclid(TAU) - PI
}

fn circle_intersections(a: &Disk, b: &Disk) -> Vec<Point2D> {
    let d = a.center.distance(b.center);
    if d == 0.0 || d > a.radius + b.radius || d < (a.radius - b.radius).abs() {
        return Vec::new();
    }
    let along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
    let h = (a.radius * a.radius - along * along).max(0.0).sqrt();
    let ux = (b.center.x - a.center.x) / d;
    let uy = (b.center.y - a.center.y) / d;
    let mx = a.center.x + along * ux;
    let my = a.center.y + along * uy;
    vec![
        Point2D::new(mx - h * uy, my + h * ux),
        Point2D::new(mx + h * uy, my - h * ux),
    ]
}
