use potato::geom::{segment_in_polygon, Point2, Segment, SimplePolygon};
use potato::oracles::{l_shape, make_comb, oracle_lshape, random_convex_polygon, staircase};
use potato::peeler::{large_potato, run_amplified, Mode, PeelConfig, PeelResult};
use potato::sampling::RandomSource;

fn square(side: f64) -> SimplePolygon<f64> {
    SimplePolygon::new(vec![
        Point2::new(0.0, 0.0),
        Point2::new(side, 0.0),
        Point2::new(side, side),
        Point2::new(0.0, side),
    ])
    .unwrap()
}

fn assert_sound(p: &SimplePolygon<f64>, res: &PeelResult<f64>, upper: f64) {
    for (a, b) in res.polygon.edges() {
        assert!(segment_in_polygon(p, Segment::new(a, b)), "edge {a:?}-{b:?} leaves the polygon");
    }
    assert!(res.area <= upper + 1e-9, "area {} above upper bound {upper}", res.area);
    let best = res.iteration_best.iter().cloned().fold(0.0, f64::max);
    assert!(res.area >= best * (1.0 - 1e-9), "returned {} below iteration best {best}", res.area);
}

#[test]
fn convex_runs_are_sound_and_accurate() {
    let mut rng = RandomSource::new(5, 0);
    for n in [8, 20, 64] {
        let p = random_convex_polygon::<f64>(n, &mut rng).unwrap();
        let res = large_potato(&p, &PeelConfig::practical(0.2, 0.5, n as u64)).unwrap();
        assert_sound(&p, &res, p.area());
        assert!(res.area >= 0.8 * p.area(), "n = {n}: {} of {}", res.area, p.area());
    }
}

#[test]
fn lshape_run_is_sound_and_accurate() {
    let oracle = oracle_lshape::<f64>().unwrap();
    let res = large_potato(&oracle.polygon, &PeelConfig::practical(0.2, 0.5, 3)).unwrap();
    assert_sound(&oracle.polygon, &res, oracle.astar_upper);
    assert!(res.area >= 0.8 * oracle.astar_lower);
    assert_eq!(res.iterations_run, 3);
}

#[test]
fn comb_and_staircase_runs_are_sound() {
    let comb = make_comb::<f64>(4, 1.0, 1.0, 2.0, 1.0).unwrap();
    let mut cfg = PeelConfig::practical(0.3, 0.5, 11);
    cfg.max_repeat_override = Some(1);
    let res = large_potato(&comb.polygon, &cfg).unwrap();
    assert_sound(&comb.polygon, &res, comb.astar_upper);
    assert!(res.area > 0.0);

    let stairs = staircase::<f64>(12).unwrap();
    let res = large_potato(&stairs, &cfg).unwrap();
    assert_sound(&stairs, &res, stairs.area());
}

#[test]
fn identical_seeds_give_identical_results() {
    let p = l_shape::<f64>();
    let mut cfg = PeelConfig::practical(0.25, 0.5, 42);
    cfg.max_repeat_override = Some(1);
    let a = large_potato(&p, &cfg).unwrap();
    let b = large_potato(&p, &cfg).unwrap();
    assert_eq!(a.polygon.vertices(), b.polygon.vertices());
    assert_eq!(a.iteration_best, b.iteration_best);
    assert_eq!(a.samples, b.samples);
    assert_eq!(a.edges_processed, b.edges_processed);
}

#[test]
fn scaling_and_translation_commute_with_peeling() {
    let p = l_shape::<f64>();
    let (s, dx, dy) = (4.0, 8.0, -16.0);
    let q = SimplePolygon::new(p.vertices().iter().map(|v| Point2::new(v.x * s + dx, v.y * s + dy)).collect())
        .unwrap();
    let mut cfg = PeelConfig::practical(0.25, 0.5, 9);
    cfg.max_repeat_override = Some(1);
    let a = large_potato(&p, &cfg).unwrap();
    let b = large_potato(&q, &cfg).unwrap();
    assert_eq!(a.polygon.len(), b.polygon.len());
    for (u, v) in a.polygon.vertices().iter().zip(b.polygon.vertices()) {
        assert!((u.x * s + dx - v.x).abs() <= 1e-9 * s && (u.y * s + dy - v.y).abs() <= 1e-9 * s);
    }
    assert!((a.area * s * s - b.area).abs() <= 1e-9 * b.area);
}

#[test]
fn tiny_edge_cap_aborts_every_iteration() {
    let mut cfg = PeelConfig::practical(0.2, 0.5, 1);
    cfg.c3 = 1e-3;
    let res = large_potato(&l_shape::<f64>(), &cfg).unwrap();
    assert!(res.all_aborted());
    assert_eq!(res.iterations_aborted_by_cap, 3);
    assert!(res.polygon.is_empty());
    assert_eq!(res.area, 0.0);
}

#[test]
fn exhaustive_edge_mode_on_convex_input() {
    let p = square(3.0);
    let mut cfg = PeelConfig::practical(0.2, 0.5, 2);
    cfg.skip_dominated = false;
    let res = run_amplified(&p, &cfg).unwrap();
    assert_eq!(res.edges_dominated, 0);
    assert_sound(&p, &res, 9.0);
    assert!(res.area >= 0.8 * 9.0);
}

#[test]
fn paper_mode_sizes() {
    let cfg = PeelConfig::paper(0.5, 0.1, 0);
    assert_eq!(cfg.mode, Mode::Paper);
    assert!(!cfg.skip_dominated);
    // 96 * 164.3167... * 4 / 0.25^1.5 = 504781.1...
    assert_eq!(cfg.r_ab_size(), 504_782);
    assert_eq!(cfg.s_ab_size(), 2304);
}

#[test]
fn supplied_area_estimate_is_checked() {
    let p = square(1.0);
    let cfg = PeelConfig::practical(0.2, 0.5, 0).with_area_estimate(2.0);
    assert!(large_potato(&p, &cfg).is_err());
    let cfg = PeelConfig::practical(0.2, 0.5, 0).with_area_estimate(0.5);
    let res = large_potato(&p, &cfg).unwrap();
    assert_eq!(res.r, 120);
    assert_sound(&p, &res, 1.0);
}

#[test]
fn single_precision_run() {
    let p = SimplePolygon::<f32>::new(vec![
        Point2::new(0.0, 0.0),
        Point2::new(2.0, 0.0),
        Point2::new(2.0, 1.0),
        Point2::new(0.0, 1.0),
    ])
    .unwrap();
    let res = large_potato(&p, &PeelConfig::practical(0.2, 0.5, 4)).unwrap();
    assert!(res.area >= 1.6);
    assert!(res.area <= 2.0 + 1e-5);
}
