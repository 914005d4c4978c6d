//! Polygon families with known or bracketed optimum `A*(P)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{clip_halfplane, orientation, ConvexPolygon, Orientation, Point2, SimplePolygon};
use crate::peeler::certify;
use crate::sampling::RandomSource;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ConvexIdentity,
    SingleReflexSweep,
    SandwichConstruction,
}

/// A polygon with bounds on its largest convex subset and a witness
/// attaining the lower bound.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct OracleInstance<T> {
    pub polygon: SimplePolygon<T>,
    pub astar_lower: T,
    pub astar_upper: T,
    pub provenance: Provenance,
    pub witness: ConvexPolygon<T>,
}

impl<T: Scalar> OracleInstance<T> {
    /// Bounds are ordered, the witness lies in the polygon and reaches the
    /// lower bound.
    pub fn verify(&self) -> bool {
        self.astar_lower <= self.astar_upper
            && certify(&self.polygon, &self.witness)
            && self.witness.area() >= self.astar_lower * (T::one() - T::lit(1e-12))
    }
}

pub fn oracle_convex<T: Scalar>(polygon: &SimplePolygon<T>) -> Result<OracleInstance<T>> {
    if !polygon.is_convex() {
        return Err(Error::Precondition("polygon is not convex".into()));
    }
    Ok(OracleInstance {
        polygon: polygon.clone(),
        astar_lower: polygon.area(),
        astar_upper: polygon.area(),
        provenance: Provenance::ConvexIdentity,
        witness: polygon.convex_hull().clone(),
    })
}

/// Directions in the coarse sweep.
pub const SWEEP_DIRECTIONS: usize = 4096;

/// Reflex vertex and pocket of a polygon with exactly one reflex vertex.
struct Notch<T> {
    v: Point2<T>,
    pocket: Vec<Point2<T>>,
    /// Neighbors of `v` along the polygon.
    prev: Point2<T>,
    next: Point2<T>,
}

fn notch<T: Scalar>(polygon: &SimplePolygon<T>) -> Result<Option<Notch<T>>> {
    let reflex = polygon.reflex_vertices();
    let vs = polygon.vertices();
    let n = vs.len();
    match reflex.len() {
        0 => return Ok(None),
        1 => {}
        k => return Err(Error::Precondition(format!("{k} reflex vertices; exactly one is required"))),
    }
    let r = reflex[0];
    let on_hull = |i: usize| polygon.convex_hull().vertices().contains(&vs[i]);
    let mut start = r;
    while !on_hull(start) {
        start = (start + n - 1) % n;
    }
    let mut pocket = vec![vs[start]];
    let mut i = start;
    loop {
        i = (i + 1) % n;
        pocket.push(vs[i]);
        if on_hull(i) {
            break;
        }
    }
    // The pocket, closed by its lid, must turn one way only.
    let m = pocket.len();
    let mut left = false;
    let mut right = false;
    for j in 0..m {
        match orientation(pocket[j], pocket[(j + 1) % m], pocket[(j + 2) % m]) {
            Orientation::Left => left = true,
            Orientation::Right => right = true,
            Orientation::Collinear => {}
        }
    }
    if left && right {
        return Err(Error::Precondition("the pocket is not convex".into()));
    }
    Ok(Some(Notch {
        v: vs[r],
        pocket,
        prev: vs[(r + n - 1) % n],
        next: vs[(r + 1) % n],
    }))
}

/// Part of the hull on the right of the directed line through `v` with
/// direction `d`, if the pocket lies on its closed left side.
fn halfplane_part<T: Scalar>(
    polygon: &SimplePolygon<T>,
    notch: &Notch<T>,
    d: Point2<T>,
) -> Option<ConvexPolygon<T>> {
    let b = notch.v + d;
    if notch
        .pocket
        .iter()
        .any(|&p| orientation(notch.v, b, p) == Orientation::Right)
    {
        return None;
    }
    let ring = clip_halfplane(polygon.convex_hull().vertices(), b, notch.v);
    let mut ring = ring;
    ring.dedup();
    while ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    Some(ConvexPolygon::from_ccw_unchecked(ring))
}

fn direction<T: Scalar>(theta: f64) -> Point2<T> {
    Point2::new(T::lit(theta.cos()), T::lit(theta.sin()))
}

/// Area kept by the line through the reflex vertex at angle `theta`, or
/// `None` if that line cuts into the pocket.
pub fn single_reflex_sweep_value<T: Scalar>(polygon: &SimplePolygon<T>, theta: f64) -> Result<Option<T>> {
    let Some(notch) = notch(polygon)? else {
        return Err(Error::Precondition("polygon has no reflex vertex".into()));
    };
    Ok(halfplane_part(polygon, &notch, direction(theta)).map(|k| k.area()))
}

/// Best halfplane cut through the reflex vertex that excludes the pocket.
///
/// The largest convex subset of such a polygon is its hull cut by a line
/// through the reflex vertex. The coarse sweep is refined by golden-section
/// search; the upper bound adds the sweep's Lipschitz slack: turning the
/// line by `dt` changes the area by at most `R^2 dt`, where `R` is the
/// largest distance from the vertex to the hull.
pub fn oracle_single_reflex<T: Scalar>(polygon: &SimplePolygon<T>) -> Result<OracleInstance<T>> {
    let Some(notch) = notch(polygon)? else {
        return oracle_convex(polygon);
    };
    let eval = |theta: f64| halfplane_part(polygon, &notch, direction(theta));
    let step = std::f64::consts::TAU / SWEEP_DIRECTIONS as f64;
    let mut best: Option<(T, ConvexPolygon<T>, f64)> = None;
    let consider = |best: &mut Option<(T, ConvexPolygon<T>, f64)>, k: ConvexPolygon<T>, theta: f64| {
        if best.as_ref().is_none_or(|b| k.area() > b.0) {
            *best = Some((k.area(), k, theta));
        }
    };
    for s in 0..SWEEP_DIRECTIONS {
        let theta = s as f64 * step;
        if let Some(k) = eval(theta) {
            consider(&mut best, k, theta);
        }
    }
    // The ends of the feasible range lie along the edges at the vertex.
    for q in [notch.prev, notch.next] {
        for d in [q - notch.v, notch.v - q] {
            if let Some(k) = halfplane_part(polygon, &notch, d) {
                let theta = d.y.as_f64().atan2(d.x.as_f64());
                consider(&mut best, k, theta);
            }
        }
    }
    let Some((_, _, theta0)) = best.clone() else {
        return Err(Error::Precondition("no line through the reflex vertex avoids the pocket".into()));
    };
    let f = |t: f64| eval(t).map_or(f64::NEG_INFINITY, |k| k.area().as_f64());
    let (mut lo, mut hi) = (theta0 - step, theta0 + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    for t in [x1, x2] {
        if let Some(k) = eval(t) {
            consider(&mut best, k, t);
        }
    }
    let (_, witness, _) = best.expect("sweep found a feasible cut");
    let witness = certified_witness(polygon, witness)?;
    let reach = polygon
        .convex_hull()
        .vertices()
        .iter()
        .map(|&p| (p - notch.v).norm().as_f64())
        .fold(0.0, f64::max);
    let slack = T::lit(reach * reach * step / 2.0);
    Ok(OracleInstance {
        polygon: polygon.clone(),
        astar_lower: witness.area(),
        astar_upper: (witness.area() + slack).min(polygon.area()),
        provenance: Provenance::SingleReflexSweep,
        witness,
    })
}

/// Shrinks a computed witness towards its centroid until rounding no longer
/// pushes it outside the polygon.
fn certified_witness<T: Scalar>(polygon: &SimplePolygon<T>, k: ConvexPolygon<T>) -> Result<ConvexPolygon<T>> {
    if certify(polygon, &k) {
        return Ok(k);
    }
    let n = T::lit(k.len() as f64);
    let c = k
        .vertices()
        .iter()
        .fold(Point2::new(T::zero(), T::zero()), |acc, &p| acc + p)
        * (T::one() / n);
    for f in [1e-12, 1e-9, 1e-6] {
        let s = T::one() - T::lit(f);
        let shrunk = k.map(|p| c + (p - c) * s);
        if certify(polygon, &shrunk) {
            return Ok(shrunk);
        }
    }
    Err(Error::Precondition("witness could not be certified".into()))
}

/// The L-shape `(0,0),(2,0),(2,1),(1,1),(1,2),(0,2)`.
pub fn l_shape<T: Scalar>() -> SimplePolygon<T> {
    from_pairs(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)])
}

pub fn oracle_lshape<T: Scalar>() -> Result<OracleInstance<T>> {
    oracle_single_reflex(&l_shape())
}

/// A rectangular base with `teeth` rectangular teeth on top.
///
/// A convex set cannot reach into two teeth above the base, since the
/// segment between them crosses a gap, so the optimum is at most the base
/// plus one tooth.
pub fn make_comb<T: Scalar>(
    teeth: usize,
    tooth_width: f64,
    gap: f64,
    tooth_height: f64,
    base_height: f64,
) -> Result<OracleInstance<T>> {
    if teeth < 2 {
        return Err(Error::domain("teeth", format!("{teeth} is below 2")));
    }
    for (field, v) in [
        ("tooth_width", tooth_width),
        ("gap", gap),
        ("tooth_height", tooth_height),
        ("base_height", base_height),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::domain(field, format!("{v} must be positive")));
        }
    }
    let (w, g, h, b) = (tooth_width, gap, tooth_height, base_height);
    let width = teeth as f64 * w + (teeth - 1) as f64 * g;
    let mut pts = vec![(0.0, 0.0), (width, 0.0)];
    for i in (0..teeth).rev() {
        let x0 = i as f64 * (w + g);
        pts.push((x0 + w, b + h));
        pts.push((x0, b + h));
        if i > 0 {
            pts.push((x0, b));
            pts.push((x0 - g, b));
        }
    }
    let polygon = from_pairs(&pts);
    let base = rect(0.0, 0.0, width, b);
    let column = rect(0.0, 0.0, w, b + h);
    let witness = if base.area() >= column.area() { base } else { column };
    Ok(OracleInstance {
        polygon,
        astar_lower: witness.area(),
        astar_upper: T::lit(width * b + w * h),
        provenance: Provenance::SandwichConstruction,
        witness,
    })
}

fn rect<T: Scalar>(x0: f64, y0: f64, x1: f64, y1: f64) -> ConvexPolygon<T> {
    ConvexPolygon::from_ccw_unchecked(
        [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
            .iter()
            .map(|&(x, y)| Point2::new(T::lit(x), T::lit(y)))
            .collect(),
    )
}

fn from_pairs<T: Scalar>(pts: &[(f64, f64)]) -> SimplePolygon<T> {
    SimplePolygon::new(pts.iter().map(|&(x, y)| Point2::new(T::lit(x), T::lit(y))).collect())
        .expect("construction is a simple polygon")
}

/// Regular `n`-gon with the given circumradius, centered at the origin.
pub fn regular_polygon<T: Scalar>(n: usize, radius: f64) -> Result<SimplePolygon<T>> {
    if n < 3 {
        return Err(Error::domain("n", format!("{n} is below 3")));
    }
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / n as f64;
            (radius * a.cos(), radius * a.sin())
        })
        .collect();
    SimplePolygon::new(pts.iter().map(|&(x, y)| Point2::new(T::lit(x), T::lit(y))).collect())
}

/// Convex polygon with `n` vertices at random angles on an ellipse with a
/// random aspect ratio in `[0.5, 2.5]`.
pub fn random_convex_polygon<T: Scalar>(n: usize, rng: &mut RandomSource) -> Result<SimplePolygon<T>> {
    if n < 3 {
        return Err(Error::domain("n", format!("{n} is below 3")));
    }
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.unit() * std::f64::consts::TAU).collect();
        angles.sort_by(f64::total_cmp);
        let rx = 0.5 + rng.unit() * 2.0;
        let pts = angles
            .iter()
            .map(|a| Point2::new(T::lit(rx * a.cos()), T::lit(a.sin())))
            .collect();
        if let Ok(p) = SimplePolygon::new(pts) {
            if p.len() == n {
                return Ok(p);
            }
        }
    }
}

/// Staircase with `n` vertices (`n` even, at least 4): `k = (n - 2) / 2`
/// unit steps descending from `(k, 0)` to `(0, k)`.
pub fn staircase<T: Scalar>(n: usize) -> Result<SimplePolygon<T>> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::domain("n", format!("{n} must be even and at least 4")));
    }
    let k = (n - 2) / 2;
    let mut pts = vec![(0.0, 0.0), (k as f64, 0.0)];
    for i in 1..=k {
        pts.push(((k - i + 1) as f64, i as f64));
        pts.push(((k - i) as f64, i as f64));
    }
    SimplePolygon::new(pts.iter().map(|&(x, y)| Point2::new(T::lit(x), T::lit(y))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convex_identity() {
        let sq: SimplePolygon<f64> = from_pairs(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]);
        let o = oracle_convex(&sq).unwrap();
        assert_eq!((o.astar_lower, o.astar_upper), (1.0, 1.0));
        assert!(o.verify());
        let hex = regular_polygon::<f64>(6, 1.0).unwrap();
        let o = oracle_convex(&hex).unwrap();
        assert!((o.astar_lower - 3.0 * 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(oracle_convex(&l_shape::<f64>()).is_err());
    }

    #[test]
    fn lshape_sweep() {
        let o = oracle_lshape::<f64>().unwrap();
        assert!((o.astar_lower - 2.0).abs() < 1e-9);
        assert!(o.astar_upper >= 2.0 && o.astar_upper < 2.01);
        assert!(o.verify());
        assert_eq!(o.provenance, Provenance::SingleReflexSweep);
    }

    #[test]
    fn lshape_sweep_matches_clipped_areas() {
        let l = l_shape::<f64>();
        // Lines through (1, 1) of slope -1, -2 and vertical; the kept part is
        // below or to the left, and each analytic area is 2.
        for d in [(1.0f64, -1.0f64), (1.0, -2.0), (0.0, -1.0)] {
            let theta = d.1.atan2(d.0);
            let v = single_reflex_sweep_value(&l, theta).unwrap().unwrap();
            assert!((v - 2.0).abs() < 1e-6, "{d:?}: {v}");
        }
        // A line into the pocket is not a candidate.
        assert!(single_reflex_sweep_value(&l, std::f64::consts::FRAC_PI_4).unwrap().is_none());
    }

    #[test]
    fn zero_depth_notch_is_convex() {
        let p: SimplePolygon<f64> = from_pairs(&[(0., 0.), (1., 0.), (1., 0.5), (1., 1.), (0., 1.)]);
        let o = oracle_single_reflex(&p).unwrap();
        assert_eq!(o.provenance, Provenance::ConvexIdentity);
        assert_eq!(o.astar_lower, 1.0);
    }

    #[test]
    fn two_reflex_vertices_rejected() {
        let u: SimplePolygon<f64> =
            from_pairs(&[(0., 0.), (3., 0.), (3., 2.), (2., 2.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]);
        assert!(oracle_single_reflex(&u).is_err());
    }

    #[test]
    fn comb_sandwich() {
        let c = make_comb::<f64>(16, 1.0, 1.0, 8.0, 1.0).unwrap();
        assert_eq!(c.astar_lower, 31.0);
        assert_eq!(c.astar_upper, 39.0);
        assert_eq!(c.polygon.len(), 4 * 16);
        assert_eq!(c.polygon.area(), 31.0 + 16.0 * 8.0);
        assert!(c.verify());
        assert!(make_comb::<f64>(0, 1.0, 1.0, 8.0, 1.0).is_err());
        let tall = make_comb::<f64>(2, 1.0, 1.0, 8.0, 1.0).unwrap();
        assert_eq!(tall.astar_lower, 9.0);
        assert!(tall.verify());
    }

    #[test]
    fn staircase_shape() {
        let s = staircase::<f64>(10).unwrap();
        assert_eq!(s.len(), 10);
        // k = 4: rows of width 4, 3, 2, 1.
        assert_eq!(s.area(), 10.0);
        assert_eq!(s.reflex_vertices().len(), 3);
        assert!(staircase::<f64>(7).is_err());
    }

    #[test]
    fn random_convex_has_n_vertices() {
        let mut rng = RandomSource::new(9, 0);
        for n in [3, 8, 64] {
            let p = random_convex_polygon::<f64>(n, &mut rng).unwrap();
            assert_eq!(p.len(), n);
            assert!(p.is_convex());
        }
    }
}
