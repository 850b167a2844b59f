//! Polar power-law quadrature against an independent Cartesian slice oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use secnet_core::model::{Disk, NetworkConfig, Point2D, Region, Scenario};
use secnet_core::quadrature::adaptive::{integrate_adaptive, AdaptiveOptions};
use secnet_core::quadrature::{integrate_power_law, jam_integral, q_z, IntegralSpec};

/// Bounding circles of a region, split into kept disks and removed disks.
fn circles(region: &Region) -> (Vec<Disk>, Vec<Disk>) {
    match region {
        Region::Disk(d) => (vec![*d], vec![]),
        Region::Annulus {
            center,
            r_inner,
            r_outer,
        } => (vec![Disk::new(*center, *r_outer)], vec![Disk::new(*center, *r_inner)]),
        Region::Difference { base, holes } => {
            let (keep, mut cut) = circles(base);
            cut.extend(holes.iter().copied());
            (keep, cut)
        }
    }
}

fn chord(d: &Disk, x: f64) -> Option<(f64, f64)> {
    let dx = x - d.center.x;
    let h2 = d.radius * d.radius - dx * dx;
    (h2 > 0.0).then(|| {
        let h = h2.sqrt();
        (d.center.y - h, d.center.y + h)
    })
}

/// `y`-intervals of the vertical line at `x` that lie in the region.
fn slice(keep: &[Disk], cut: &[Disk], x: f64) -> Vec<(f64, f64)> {
    let mut ivs: Vec<(f64, f64)> = keep.iter().filter_map(|d| chord(d, x)).collect();
    for d in cut {
        if let Some((lo, hi)) = chord(d, x) {
            ivs = ivs
                .into_iter()
                .flat_map(|(a, b)| {
                    let mut out = Vec::new();
                    if lo > a {
                        out.push((a, lo.min(b)));
                    }
                    if hi < b {
                        out.push((hi.max(a), b));
                    }
                    out.into_iter().filter(|(a, b)| b > a)
                })
                .collect();
        }
    }
    ivs
}

fn slice_oracle(region: &Region, pole: Point2D, exponent: f64) -> f64 {
    let (keep, cut) = circles(region);
    let all: Vec<Disk> = keep.iter().chain(&cut).copied().collect();
    let mut xs: Vec<f64> = all
        .iter()
        .flat_map(|d| [d.center.x - d.radius, d.center.x + d.radius])
        .collect();
    xs.push(pole.x);
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            let d = a.center.distance(b.center);
            if d == 0.0 || d >= a.radius + b.radius || d <= (a.radius - b.radius).abs() {
                continue;
            }
            let along = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
            let h = (a.radius * a.radius - along * along).max(0.0).sqrt();
            let ux = (b.center.x - a.center.x) / d;
            let uy = (b.center.y - a.center.y) / d;
            let mx = a.center.x + along * ux;
            xs.push(mx - h * uy);
            xs.push(mx + h * uy);
        }
    }
    let lo = keep.iter().map(|d| d.center.x - d.radius).fold(f64::INFINITY, f64::min);
    let hi = keep.iter().map(|d| d.center.x + d.radius).fold(f64::NEG_INFINITY, f64::max);
    xs.retain(|x| (lo..=hi).contains(x));
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let inner_opts = AdaptiveOptions {
        abs_tol: 0.0,
        rel_tol: 1e-11,
        max_subdivisions: 2_000,
    };
    let outer_opts = AdaptiveOptions {
        abs_tol: 0.0,
        rel_tol: 1e-9,
        max_subdivisions: 20_000,
    };
    let column = |x: f64| -> f64 {
        let a2 = (x - pole.x).powi(2);
        slice(&keep, &cut, x)
            .into_iter()
            .map(|(y0, y1)| {
                let f = |y: f64| (a2 + (y - pole.y).powi(2)).powf(-0.5 * exponent);
                integrate_adaptive(f, y0, y1, &inner_opts, false).unwrap().value
            })
            .sum()
    };
    xs.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| integrate_adaptive(column, w[0], w[1], &outer_opts, true).unwrap().value)
        .sum()
}

fn polar(region: &Region, pole: Point2D, exponent: f64) -> f64 {
    integrate_power_law(&IntegralSpec::new(region.clone(), pole, exponent)).unwrap()
}

fn random_case(rng: &mut ChaCha8Rng) -> (Region, Point2D, f64) {
    let r_in = rng.random_range(2.0..10.0);
    let r_out = r_in + rng.random_range(5.0..40.0);
    let annulus = Region::annulus(Point2D::ORIGIN, r_in, r_out);
    let n_holes = rng.random_range(0..=2);
    let mut holes = Vec::new();
    for _ in 0..n_holes {
        let rad = rng.random_range(r_in..r_out);
        let phi = rng.random_range(0.0..std::f64::consts::TAU);
        holes.push(Disk::new(Point2D::from_polar(rad, phi), rng.random_range(1.0..6.0)));
    }
    let exponent = if rng.random_bool(0.5) { 4.0 } else { 8.0 };
    let pole = match (holes.first(), rng.random_range(0..3)) {
        (Some(h), 0) => h.center,
        (_, 1) => Point2D::from_polar(r_out + rng.random_range(1.0..20.0), rng.random_range(0.0..6.0)),
        _ => Point2D::from_polar(rng.random_range(0.0..r_in - 1.0), rng.random_range(0.0..6.0)),
    };
    let region = if holes.is_empty() {
        annulus
    } else {
        Region::difference(annulus, holes)
    };
    (region, pole, exponent)
}

#[test]
fn random_regions_match_slice_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..20 {
        let (region, pole, exponent) = random_case(&mut rng);
        let got = polar(&region, pole, exponent);
        let want = slice_oracle(&region, pole, exponent);
        assert!(
            ((got - want) / want).abs() < 1e-4,
            "case {case}: {region:?}, pole {pole:?}, exponent {exponent}: {got} vs {want}"
        );
    }
}

#[test]
fn relay_integral_of_second_order_matches_oracle() {
    let sc = Scenario::from_config(&NetworkConfig::default()).unwrap();
    let got = q_z(2, &sc, sc.eve).unwrap();
    let want = slice_oracle(&sc.relay_region(), sc.eve, 2.0 * sc.alpha);
    assert!(((got - want) / want).abs() < 1e-6, "{got} vs {want}");
}

#[test]
fn jamming_region_matches_oracle() {
    let sc = Scenario::from_config(&NetworkConfig::default()).unwrap();
    let region = sc.active_jammer_region(true);
    for n in [1, 2] {
        let got = jam_integral(n, &sc).unwrap();
        let want = slice_oracle(&region, sc.eve, f64::from(n) * sc.alpha);
        assert!(((got - want) / want).abs() < 1e-6, "n={n}: {got} vs {want}");
    }
}

#[test]
fn additive_over_split_annulus() {
    let pole = Point2D::new(0.0, 60.0);
    let hole = Disk::new(pole, 1.0);
    let whole = Region::difference(Region::annulus(Point2D::ORIGIN, 6.0, 100.0), [hole]);
    let inner = Region::annulus(Point2D::ORIGIN, 6.0, 45.0);
    let outer = Region::difference(Region::annulus(Point2D::ORIGIN, 45.0, 100.0), [hole]);
    for e in [4.0, 8.0] {
        let sum = polar(&inner, pole, e) + polar(&outer, pole, e);
        let all = polar(&whole, pole, e);
        assert!(((sum - all) / all).abs() < 1e-8, "exponent {e}: {sum} vs {all}");
    }
}

#[test]
fn shrinking_exclusion_increases_integral() {
    let pole = Point2D::new(0.0, 60.0);
    let mut prev = 0.0;
    for eps in [4.0, 2.0, 1.0, 0.5, 0.25] {
        let region = Region::difference(Region::annulus(Point2D::ORIGIN, 6.0, 100.0), [Disk::new(pole, eps)]);
        let v = polar(&region, pole, 8.0);
        assert!(v > prev, "eps {eps}: {v} <= {prev}");
        prev = v;
    }
}

#[test]
fn scaling_law() {
    // Scaling every length by s multiplies the integral by s^(2 − exponent).
    let s: f64 = 2.0;
    let pole = Point2D::new(3.0, 58.0);
    let base = Region::difference(
        Region::annulus(Point2D::ORIGIN, 6.0, 100.0),
        [Disk::new(Point2D::new(50.0, 0.0), 5.0), Disk::new(pole, 1.5)],
    );
    let scaled = Region::difference(
        Region::annulus(Point2D::ORIGIN, 12.0, 200.0),
        [Disk::new(Point2D::new(100.0, 0.0), 10.0), Disk::new(Point2D::new(6.0, 116.0), 3.0)],
    );
    let spole = Point2D::new(6.0, 116.0);
    for e in [4.0, 8.0] {
        let a = polar(&base, pole, e);
        let b = polar(&scaled, spole, e);
        let want = a * s.powf(2.0 - e);
        assert!(((b - want) / want).abs() < 1e-8, "exponent {e}: {b} vs {want}");
    }
}
