use potato::convex_ops::{
    enumerate_max_clique_bruteforce, gamma_parallelogram, levels_gap_check, phi, quantile_height,
};
use potato::geom::{convex_hull, ConvexPolygon, Point2};
use potato::sampling::{ConvexSampler, RandomSource};
use potato::visibility::VisibilityGraph;
use proptest::prelude::*;

/// Shoelace area of the part of `ring` with `y <= t`, clipped independently
/// of the library.
fn area_below_oracle(ring: &[Point2<f64>], t: f64) -> f64 {
    let mut out = Vec::new();
    for i in 0..ring.len() {
        let p = ring[i];
        let q = ring[(i + 1) % ring.len()];
        if p.y <= t {
            out.push((p.x, p.y));
        }
        if (p.y < t) != (q.y < t) && p.y != q.y {
            let s = (t - p.y) / (q.y - p.y);
            out.push((p.x + s * (q.x - p.x), t));
        }
    }
    let n = out.len();
    (0..n)
        .map(|i| {
            let (x0, y0) = out[i];
            let (x1, y1) = out[(i + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum::<f64>()
        / 2.0
}

fn random_convex(rng: &mut RandomSource, max_pts: usize) -> ConvexPolygon<f64> {
    loop {
        let n = 3 + (rng.unit() * (max_pts - 2) as f64) as usize;
        let pts: Vec<_> = (0..n)
            .map(|_| Point2::new(rng.unit() * 4.0 - 2.0, rng.unit() * 3.0 - 1.0))
            .collect();
        let k = convex_hull(&pts);
        if k.len() >= 3 && k.area() > 1e-3 {
            return k;
        }
    }
}

#[test]
fn quantile_consistency() {
    let mut rng = RandomSource::new(101, 0);
    for _ in 0..1000 {
        let k = random_convex(&mut rng, 50);
        let area = k.area();
        for i in 1..=9 {
            let alpha = i as f64 / 10.0;
            let y = quantile_height(&k, alpha).unwrap();
            let below = area_below_oracle(k.vertices(), y);
            assert!(
                (below - alpha * area).abs() <= 1e-8 * area,
                "alpha {alpha}: {below} vs {}",
                alpha * area
            );
        }
    }
}

#[test]
fn levels_lemma() {
    let mut rng = RandomSource::new(102, 0);
    for _ in 0..10_000 {
        let k = random_convex(&mut rng, 50);
        let (top, mid, bottom) = levels_gap_check(&k).unwrap();
        assert!(top <= mid + 1e-9, "{top} > {mid}");
        assert!(bottom <= mid + 1e-9, "{bottom} > {mid}");
    }
}

#[test]
fn gamma_identities() {
    let mut rng = RandomSource::new(103, 0);
    let mut checked = 0;
    while checked < 10_000 {
        let a = Point2::new(rng.unit() * 10.0 - 5.0, rng.unit() * 10.0 - 5.0);
        let b = Point2::new(rng.unit() * 10.0 - 5.0, rng.unit() * 10.0 - 5.0);
        let big_a = 0.01 + rng.unit() * 100.0;
        let Ok(g) = gamma_parallelogram(a, b, big_a) else { continue };
        checked += 1;
        assert!((g.area() / big_a - 12.0).abs() <= 1e-9 * 12.0);
        // a' = 2a - b and b' = 2b - a are three times as far apart as a, b.
        let ab = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt();
        let u = (g.edge_u.x.powi(2) + g.edge_u.y.powi(2)).sqrt();
        assert!((u - 3.0 * ab).abs() <= 1e-9 * ab.max(1.0));
        let c = g.center();
        assert!((c.x - (a.x + b.x) / 2.0).abs() <= 1e-9 && (c.y - (a.y + b.y) / 2.0).abs() <= 1e-9);
        assert_eq!(g.edge_v.y, 0.0);
        assert!((g.edge_v.x.abs() - 4.0 * big_a / (a.y - b.y).abs()).abs() <= 1e-9 * g.edge_v.x.abs());
    }
}

/// Point-in-parallelogram by solving for the affine coordinates.
fn in_parallelogram(anchor: Point2<f64>, u: Point2<f64>, v: Point2<f64>, p: Point2<f64>, tol: f64) -> bool {
    let det = u.x * v.y - u.y * v.x;
    let (dx, dy) = (p.x - anchor.x, p.y - anchor.y);
    let s = (dx * v.y - dy * v.x) / det;
    let t = (u.x * dy - u.y * dx) / det;
    (-tol..=1.0 + tol).contains(&s) && (-tol..=1.0 + tol).contains(&t)
}

#[test]
fn gamma_containment_lemma() {
    let mut rng = RandomSource::new(104, 0);
    let mut checked = 0;
    while checked < 10_000 {
        let k = random_convex(&mut rng, 30);
        let (y0, y1) = k.y_range();
        let lo = quantile_height(&k, 0.2).unwrap();
        let hi = quantile_height(&k, 0.8).unwrap();
        let sampler = ConvexSampler::new(&k);
        let pts = sampler.sample(40, &mut rng);
        let Some(&a) = pts.iter().find(|p| p.y >= hi) else { continue };
        let Some(&b) = pts.iter().find(|p| p.y <= lo) else { continue };
        let big_a = k.area() * (1.0 + rng.unit());
        let g = gamma_parallelogram(a, b, big_a).unwrap();
        let tol = 1e-9;
        for &v in k.vertices() {
            assert!(
                in_parallelogram(g.anchor, g.edge_u, g.edge_v, v, tol),
                "vertex {v:?} of K (y range {y0}..{y1}) outside Gamma"
            );
        }
        checked += 1;
    }
}

fn random_graph(rng: &mut RandomSource, n: usize, density: f64, grid: Option<f64>) -> VisibilityGraph<f64> {
    let coord = |rng: &mut RandomSource| match grid {
        Some(g) => (rng.unit() * g).floor(),
        None => rng.unit(),
    };
    let mut pts: Vec<Point2<f64>> = Vec::new();
    while pts.len() < n {
        let p = Point2::new(coord(rng), coord(rng));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.unit() < density {
                edges.push((i, j));
            }
        }
    }
    VisibilityGraph::from_edges(pts, edges).unwrap()
}

#[test]
fn phi_matches_bruteforce() {
    let mut rng = RandomSource::new(105, 0);
    for trial in 0..500 {
        let n = 2 + trial % 11;
        let grid = if trial % 3 == 0 { Some(4.0) } else { None };
        let density = 0.3 + 0.7 * rng.unit();
        let g = random_graph(&mut rng, n, density, grid);
        for s in 0..n {
            let fast = phi(&g, s).unwrap();
            let slow = enumerate_max_clique_bruteforce(&g, s).unwrap();
            assert!(
                (fast.area() - slow.area()).abs() <= 1e-12,
                "trial {trial} root {s}: {} vs {}",
                fast.area(),
                slow.area()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn phi_output_is_valid_and_monotone(seed in any::<u64>(), n in 2usize..11, density in 0.2f64..1.0) {
        let mut rng = RandomSource::new(seed, 0);
        let g = random_graph(&mut rng, n, density, None);
        let s = seed as usize % n;
        let c = phi(&g, s).unwrap();
        prop_assert!(c.is_clique_of(&g));
        prop_assert!(c.indices.contains(&s));
        let top = g.points()[s];
        for &i in &c.indices {
            if i != s {
                let p = g.points()[i];
                prop_assert!(p.y < top.y || (p.y == top.y && p.x < top.x));
            }
        }
        let hull_area = convex_hull(&c.indices.iter().map(|&i| g.points()[i]).collect::<Vec<_>>()).area();
        prop_assert!((hull_area - c.area()).abs() <= 1e-12);
        // Adding any missing edge never lowers the optimum.
        let missing = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !g.has_edge(i, j));
        if let Some((i, j)) = missing {
            let more = phi(&g.with_edge(i, j).unwrap(), s).unwrap();
            prop_assert!(more.area() >= c.area() - 1e-12);
        }
    }
}
