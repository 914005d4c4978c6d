use std::cmp::Ordering;
use std::time::{Duration, Instant};

use crate::convex_ops::{gamma_parallelogram, solve_rooted_indexed, AngularIndex, GammaParallelogram};
use crate::error::{Error, Result};
use crate::geom::{clip_convex, convex_hull, ConvexPolygon, Point2, Similarity, SimplePolygon};
use crate::sampling::{purpose, triangulate, ConvexSampler, RandomSource, Triangulation};
use crate::scalar::Scalar;
use crate::visibility::{build_unchecked, edge_cap, VisibilityGraph};

use super::config::PeelConfig;
use super::estimate::{estimate_area_lower_bound, AreaEstimate, EstimateMethod};

/// Output of a peeling run. Geometry is in input coordinates.
#[derive(Debug, Clone)]
pub struct PeelResult<T> {
    pub polygon: ConvexPolygon<T>,
    pub area: T,
    pub iterations_run: usize,
    pub iterations_aborted_by_cap: usize,
    /// Edges for which a parallelogram was built.
    pub edges_processed: usize,
    /// Edges skipped as too close to horizontal.
    pub edges_degenerate: usize,
    /// Edges whose samples were skipped because they could not improve.
    pub edges_pruned: usize,
    pub edges_dominated: usize,
    pub phi_calls: usize,
    pub wall_time: Duration,
    pub seed: u64,
    pub area_estimate: AreaEstimate<T>,
    /// Points per iteration sample and the edge cap.
    pub r: usize,
    pub cap: usize,
    /// Best clique area of each iteration (zero when aborted or empty).
    pub iteration_best: Vec<T>,
    /// Parallelogram of the edge that produced the answer.
    pub gamma: Option<GammaParallelogram<T>>,
    /// Sample points in the polygon for that edge.
    pub samples: Vec<Point2<T>>,
}

impl<T: Scalar> PeelResult<T> {
    /// Fraction of iterations whose best clique reached `target`.
    pub fn iteration_success_fraction(&self, target: T) -> f64 {
        if self.iteration_best.is_empty() {
            return 0.0;
        }
        let hits = self.iteration_best.iter().filter(|&&a| a >= target).count();
        hits as f64 / self.iteration_best.len() as f64
    }

    pub fn all_aborted(&self) -> bool {
        self.iterations_run > 0 && self.iterations_aborted_by_cap == self.iterations_run
    }
}

/// The polygon scaled to unit area and centered at its bounding-box center.
struct Normalized<T> {
    poly: SimplePolygon<T>,
    tri: Triangulation<T>,
    to_input: Similarity<T>,
    diameter: T,
}

impl<T: Scalar> Normalized<T> {
    fn new(input: &SimplePolygon<T>) -> Result<Self> {
        let bb = input.bbox();
        let to_unit = Similarity::normalizing(bb.min.midpoint(bb.max), T::one() / input.area());
        let poly = input.map_similarity(|p| to_unit.apply(p));
        let tri = triangulate(&poly)?;
        let diameter = poly.diameter();
        Ok(Normalized {
            poly,
            tri,
            to_input: to_unit.inverse(),
            diameter,
        })
    }
}

#[derive(Debug, Clone)]
struct Candidate<T> {
    points: Vec<Point2<T>>,
    area: T,
    gamma: GammaParallelogram<T>,
    samples: Vec<Point2<T>>,
}

#[derive(Default)]
struct Counters {
    processed: usize,
    degenerate: usize,
    pruned: usize,
    dominated: usize,
    phi_calls: usize,
}

/// Sample of one parallelogram, restricted to the polygon.
struct EdgeSample<T> {
    pts: Vec<Point2<T>>,
    /// `pts[..n_r]` came from `R_ab`, the rest from `S_ab`.
    n_r: usize,
}

/// Memoized pairwise visibility among the points of one edge sample.
struct VisCache<'a, T> {
    poly: &'a SimplePolygon<T>,
    pts: &'a [Point2<T>],
    all_visible: bool,
    dense: Option<Vec<u8>>,
}

const DENSE_CACHE_MAX: usize = 4096;

impl<'a, T: Scalar> VisCache<'a, T> {
    fn new(poly: &'a SimplePolygon<T>, pts: &'a [Point2<T>]) -> Self {
        let m = pts.len();
        let all_visible = poly.is_convex();
        VisCache {
            poly,
            pts,
            all_visible,
            dense: (!all_visible && m <= DENSE_CACHE_MAX).then(|| vec![0u8; m * m]),
        }
    }

    fn sees(&mut self, i: usize, j: usize) -> bool {
        if self.all_visible || i == j {
            return true;
        }
        let m = self.pts.len();
        if let Some(d) = &mut self.dense {
            let k = i.min(j) * m + i.max(j);
            if d[k] == 0 {
                let v = self.poly.segment_inside_unchecked(self.pts[i], self.pts[j]);
                d[k] = if v { 1 } else { 2 };
            }
            return d[k] == 1;
        }
        self.poly.segment_inside_unchecked(self.pts[i], self.pts[j])
    }
}

struct Run<'a, T> {
    norm: &'a Normalized<T>,
    hull: &'a ConvexPolygon<T>,
    gamma_area: T,
    n_r: usize,
    n_s: usize,
    skip_dominated: bool,
    counters: Counters,
}

impl<'a, T: Scalar> Run<'a, T> {
    fn iteration(&mut self, rng: &RandomSource, graph: &VisibilityGraph<T>) -> Option<Candidate<T>> {
        let tol = T::lit(1e-12) * self.norm.diameter;
        let mut jobs: Vec<(usize, GammaParallelogram<T>, ConvexPolygon<T>)> = Vec::new();
        for (e, (i, j)) in graph.edges().enumerate() {
            let (a, b) = (graph.points()[i], graph.points()[j]);
            if (a.y - b.y).abs() < tol {
                self.counters.degenerate += 1;
                continue;
            }
            let Ok(g) = gamma_parallelogram(a, b, self.gamma_area) else {
                self.counters.degenerate += 1;
                continue;
            };
            self.counters.processed += 1;
            let region = clip_convex(self.hull, &g.corners());
            jobs.push((e, g, region));
        }
        // Largest regions first; ties keep edge order.
        jobs.sort_by(|x, y| y.2.area().partial_cmp(&x.2.area()).unwrap_or(Ordering::Equal).then(x.0.cmp(&y.0)));
        let mut kept: Vec<usize> = Vec::new();
        let mut best: Option<Candidate<T>> = None;
        let mut best_area = T::zero();
        for idx in 0..jobs.len() {
            let (e, g, region) = &jobs[idx];
            if region.area() <= best_area {
                self.counters.pruned += 1;
                continue;
            }
            if self.skip_dominated {
                let covered = kept
                    .iter()
                    .any(|&k| region.vertices().iter().all(|&p| jobs[k].1.contains(p)));
                if covered {
                    self.counters.dominated += 1;
                    continue;
                }
                kept.push(idx);
            }
            let mut erng = rng.derive(&[purpose::EDGE, *e as u64]);
            let sample = self.sample_edge(region, g.area(), &mut erng);
            if let Some((area, points)) = self.best_in_sample(&sample, best_area) {
                best_area = area;
                best = Some(Candidate {
                    points,
                    area,
                    gamma: *g,
                    samples: sample.pts,
                });
            }
        }
        best
    }

    /// Draws `R_ab` and `S_ab` in the parallelogram and keeps the points in
    /// the polygon. Only the part of the parallelogram inside the convex
    /// hull is sampled, with binomially thinned counts, which leaves the
    /// distribution of the surviving points unchanged.
    fn sample_edge(&self, region: &ConvexPolygon<T>, gamma_area: T, rng: &mut RandomSource) -> EdgeSample<T> {
        let poly = &self.norm.poly;
        let sampler = ConvexSampler::new(region);
        let mut pts = sampler.sample_thinned(gamma_area, self.n_r, rng);
        pts.retain(|&p| poly.contains_hull_point(p));
        let n_r = pts.len();
        let mut s_pts = sampler.sample_thinned(gamma_area, self.n_s, rng);
        s_pts.retain(|&p| poly.contains_hull_point(p));
        pts.extend(s_pts);
        EdgeSample { pts, n_r }
    }

    /// `max over s in S_ab of phi(G_ab, s)`, if it beats `floor`.
    ///
    /// Roots are visited from the highest down; the hull of the points not
    /// above a root bounds its clique and shrinks as the root descends, so
    /// the scan stops once that bound drops to `floor`.
    fn best_in_sample(&mut self, sample: &EdgeSample<T>, floor: T) -> Option<(T, Vec<Point2<T>>)> {
        let pts = &sample.pts;
        if convex_hull(pts).area() <= floor {
            self.counters.pruned += 1;
            return None;
        }
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_unstable_by(|&i, &j| pts[i].lex_cmp(&pts[j]).then(i.cmp(&j)));
        let mut cache = VisCache::new(&self.norm.poly, pts);
        let mut index: Option<AngularIndex> = None;
        let mut best_area = floor;
        let mut best: Option<Vec<Point2<T>>> = None;
        let mut below: Vec<Point2<T>> = Vec::with_capacity(pts.len());
        for pos in (0..order.len()).rev() {
            let s = order[pos];
            if s < sample.n_r {
                continue;
            }
            below.clear();
            below.extend(order[..=pos].iter().map(|&k| pts[k]));
            if convex_hull(&below).area() <= best_area {
                break;
            }
            // Strictly lower points that see s.
            let sp = pts[s];
            let nbrs: Vec<usize> = order[..pos]
                .iter()
                .copied()
                .filter(|&q| pts[q].lex_cmp(&sp) == Ordering::Less && cache.sees(s, q))
                .collect();
            let mut local: Vec<Point2<T>> = Vec::with_capacity(nbrs.len() + 1);
            local.push(sp);
            local.extend(nbrs.iter().map(|&q| pts[q]));
            let local_hull = convex_hull(&local);
            if local_hull.area() <= best_area {
                continue;
            }
            let complete = nbrs
                .iter()
                .enumerate()
                .all(|(x, &a)| nbrs[x + 1..].iter().all(|&b| cache.sees(a, b)));
            self.counters.phi_calls += 1;
            let (area, clique) = if complete {
                // Every hull vertex sees every other and s is the highest, so
                // the hull itself is the optimum.
                (local_hull.area(), local_hull.vertices().to_vec())
            } else {
                let index = index.get_or_insert_with(|| AngularIndex::new(pts));
                let (area, members) = solve_rooted_indexed(pts, index, s, &nbrs, |a, b| cache.sees(a, b));
                (area, members.iter().map(|&q| pts[q]).collect())
            };
            if area > best_area {
                best_area = area;
                best = Some(clique);
            }
        }
        best.map(|b| (best_area, b))
    }
}

/// Randomized large convex polygon inside `polygon`.
pub fn large_potato<T: Scalar>(polygon: &SimplePolygon<T>, cfg: &PeelConfig) -> Result<PeelResult<T>> {
    let start = Instant::now();
    cfg.validate()?;
    let n = polygon.len();
    if cfg.epsilon <= 1.0 / n as f64 {
        log::warn!(
            "epsilon {} is at most 1/n = {}; the analysis assumes epsilon > 1/n",
            cfg.epsilon,
            1.0 / n as f64
        );
    }
    let norm = Normalized::new(polygon)?;
    let root = RandomSource::new(cfg.seed, 0);
    let area_factor = norm.to_input.area_factor();

    let estimate_norm = match cfg.area_estimate {
        Some(a) => {
            let a = T::lit(a);
            if a > polygon.area() {
                return Err(Error::domain(
                    "area_estimate",
                    format!("{a} exceeds the polygon area {}", polygon.area()),
                ));
            }
            AreaEstimate {
                value: a / area_factor,
                method: EstimateMethod::UserSupplied,
                claimed_c2: cfg.c2,
            }
        }
        None => estimate_area_lower_bound(&norm.poly, &norm.tri, &root, cfg.c2)?,
    };
    if !(estimate_norm.value > T::zero()) {
        return Err(Error::Estimator(format!(
            "non-positive area estimate {}",
            estimate_norm.value
        )));
    }
    let r = PeelConfig::sample_radius(estimate_norm.value.as_f64());
    let cap = edge_cap(cfg.c3, n);
    let hull = norm.poly.convex_hull().clone();
    let mut run = Run {
        norm: &norm,
        hull: &hull,
        gamma_area: T::lit(cfg.c2) * estimate_norm.value,
        n_r: cfg.r_ab_size() as usize,
        n_s: cfg.s_ab_size() as usize,
        skip_dominated: cfg.skip_dominated,
        counters: Counters::default(),
    };
    log::debug!(
        "peel: n={n} A(P)={} r={r} cap={cap} |R_ab|={} |S_ab|={}",
        estimate_norm.value,
        run.n_r,
        run.n_s
    );

    let iterations = cfg.iterations();
    let mut aborted = 0;
    let mut per_iteration: Vec<Option<Candidate<T>>> = Vec::with_capacity(iterations);
    for it in 0..iterations {
        let irng = root.derive(&[purpose::ITERATION, it as u64]);
        let mut prng = irng.derive(&[purpose::POINTS]);
        let pts = norm.tri.sample(r, &mut prng);
        let outcome = build_unchecked(&norm.poly, &pts, Some(cap));
        match outcome.graph {
            Some(graph) if outcome.completed => per_iteration.push(run.iteration(&irng, &graph)),
            _ => {
                log::debug!("iteration {it}: edge cap {cap} exceeded");
                aborted += 1;
                per_iteration.push(None);
            }
        }
    }

    let to_input = norm.to_input;
    let iteration_best: Vec<T> = per_iteration
        .iter()
        .map(|c| c.as_ref().map_or(T::zero(), |c| c.area * area_factor))
        .collect();

    // Certify in input coordinates, falling back to the next best iteration
    // if rounding in the inverse transform ever breaks containment.
    let mut ranked: Vec<&Candidate<T>> = per_iteration.iter().flatten().collect();
    ranked.sort_by(|a, b| b.area.partial_cmp(&a.area).unwrap_or(Ordering::Equal));
    let mut winner: Option<(&Candidate<T>, ConvexPolygon<T>)> = None;
    for c in ranked {
        let pts: Vec<Point2<T>> = c.points.iter().map(|&p| to_input.apply(p)).collect();
        let hull = convex_hull(&pts);
        if certify(polygon, &hull) {
            winner = Some((c, hull));
            break;
        }
        log::warn!("candidate of area {} failed certification; trying the next", c.area);
    }
    let (polygon_out, gamma, samples) = match winner {
        Some((c, hull)) => (
            hull,
            Some(c.gamma.map(to_input.scale, to_input.offset)),
            c.samples.iter().map(|&p| to_input.apply(p)).collect(),
        ),
        None => (ConvexPolygon::empty(), None, Vec::new()),
    };
    let c = run.counters;
    Ok(PeelResult {
        area: polygon_out.area(),
        polygon: polygon_out,
        iterations_run: iterations,
        iterations_aborted_by_cap: aborted,
        edges_processed: c.processed,
        edges_degenerate: c.degenerate,
        edges_pruned: c.pruned,
        edges_dominated: c.dominated,
        phi_calls: c.phi_calls,
        wall_time: start.elapsed(),
        seed: cfg.seed,
        area_estimate: AreaEstimate {
            value: estimate_norm.value * area_factor,
            ..estimate_norm
        },
        r,
        cap,
        iteration_best,
        gamma,
        samples,
    })
}

/// `large_potato` with per-iteration statistics logged; the per-iteration
/// bests are in [`PeelResult::iteration_best`].
pub fn run_amplified<T: Scalar>(polygon: &SimplePolygon<T>, cfg: &PeelConfig) -> Result<PeelResult<T>> {
    let res = large_potato(polygon, cfg)?;
    log::info!(
        "amplified run: {} iterations, {} aborted, best {}",
        res.iterations_run,
        res.iterations_aborted_by_cap,
        res.area
    );
    Ok(res)
}

/// Every hull edge (and vertex) lies in the polygon.
pub fn certify<T: Scalar>(polygon: &SimplePolygon<T>, k: &ConvexPolygon<T>) -> bool {
    match k.len() {
        0 => true,
        1 => polygon.contains(k.vertices()[0]),
        _ => k.edges().all(|(a, b)| polygon.contains_segment(a, b)),
    }
}
