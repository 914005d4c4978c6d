use serde::{Serialize, Serializer};

use super::convex::{convex_hull, shoelace, ConvexPolygon};
use super::point::{Bbox, Point2, Segment};
use super::predicates::{on_segment, orientation, segments_cross_properly, segments_intersect, Orientation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Where a point sits relative to a closed ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// A region of `conv(P) \ P`: the polygon chain between two consecutive
/// hull vertices of `P`, closed by the hull edge (the lid) joining them.
#[derive(Debug, Clone)]
struct Pocket<T> {
    /// Chain vertices from one hull vertex to the next, in polygon order.
    chain: Vec<Point2<T>>,
    bbox: Bbox<T>,
}

impl<T: Scalar> Pocket<T> {
    fn chain_edges(&self) -> impl Iterator<Item = (Point2<T>, Point2<T>)> + '_ {
        self.chain.windows(2).map(|w| (w[0], w[1]))
    }

    fn on_chain(&self, p: Point2<T>) -> bool {
        self.chain_edges().any(|(a, b)| on_segment(a, b, p))
    }

    /// True if `p` lies in the pocket but not on the polygon boundary, i.e.
    /// in the pocket interior or on the open lid.
    fn excludes(&self, p: Point2<T>) -> bool {
        if !self.bbox.contains(p) {
            return false;
        }
        match locate_in_ring(&self.chain, p) {
            Location::Outside => false,
            Location::Inside => true,
            Location::Boundary => !self.on_chain(p),
        }
    }
}

/// A simple polygon with counterclockwise vertices and no holes.
///
/// Construction normalizes the input: consecutive duplicates and collinear
/// vertices (including zero-width spikes) are removed and clockwise input is
/// reversed. The result is checked for simplicity once, so downstream code
/// may assume validity.
#[derive(Debug, Clone)]
pub struct SimplePolygon<T> {
    vertices: Vec<Point2<T>>,
    area: T,
    bbox: Bbox<T>,
    hull: ConvexPolygon<T>,
    pockets: Vec<Pocket<T>>,
}

impl<T: Scalar> SimplePolygon<T> {
    /// Validates and normalizes a vertex ring.
    pub fn new(vertices: Vec<Point2<T>>) -> Result<Self> {
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let mut ring = normalize_ring(vertices);
        if ring.len() < 3 {
            return Err(Error::TooFewVertices(ring.len()));
        }
        check_simple(&ring)?;
        let signed = shoelace(&ring);
        if signed == T::zero() {
            return Err(Error::ZeroArea);
        }
        if signed < T::zero() {
            log::warn!("polygon vertices are clockwise; reversing to counterclockwise order");
            ring.reverse();
            ring.rotate_right(1);
        }
        Ok(Self::from_ccw_unchecked(ring))
    }

    /// Wraps a ring already known to be simple, normalized and CCW.
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point2<T>>) -> Self {
        let area = shoelace(&vertices);
        let bbox = Bbox::of_points(&vertices).expect("non-empty ring");
        let hull = convex_hull(&vertices);
        let pockets = build_pockets(&vertices, &hull);
        SimplePolygon {
            vertices,
            area,
            bbox,
            hull,
            pockets,
        }
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Cached shoelace area.
    pub fn area(&self) -> T {
        self.area
    }

    pub fn bbox(&self) -> Bbox<T> {
        self.bbox
    }

    pub fn convex_hull(&self) -> &ConvexPolygon<T> {
        &self.hull
    }

    pub fn is_convex(&self) -> bool {
        self.pockets.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2<T>, Point2<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Vertices whose interior angle exceeds 180 degrees.
    pub fn reflex_vertices(&self) -> Vec<usize> {
        let n = self.vertices.len();
        (0..n)
            .filter(|&i| {
                orientation(
                    self.vertices[(i + n - 1) % n],
                    self.vertices[i],
                    self.vertices[(i + 1) % n],
                ) == Orientation::Right
            })
            .collect()
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> T {
        let h = self.hull.vertices();
        let mut best = T::zero();
        for i in 0..h.len() {
            for j in i + 1..h.len() {
                best = best.max(h[i].dist(h[j]));
            }
        }
        best
    }

    pub fn locate(&self, p: Point2<T>) -> Location {
        if !self.bbox.contains(p) {
            return Location::Outside;
        }
        locate_in_ring(&self.vertices, p)
    }

    /// Closed containment: boundary points count as inside.
    pub fn contains(&self, p: Point2<T>) -> bool {
        self.locate(p) != Location::Outside
    }

    /// True iff the closed segment `ab` lies in the closed polygon.
    pub fn contains_segment(&self, a: Point2<T>, b: Point2<T>) -> bool {
        self.contains(a) && self.contains(b) && self.segment_inside_unchecked(a, b)
    }

    /// Segment containment for endpoints already known to lie in the polygon.
    ///
    /// Only edges off the convex hull can separate two points of the polygon,
    /// so the test runs against the pocket chains alone: any proper crossing
    /// rejects; otherwise the segment is split at every pocket vertex it
    /// touches and each piece is classified by its midpoint.
    pub fn segment_inside_unchecked(&self, a: Point2<T>, b: Point2<T>) -> bool {
        if a == b || self.pockets.is_empty() {
            return true;
        }
        let sb = Bbox::of_segment(a, b);
        let mut touches: Vec<T> = Vec::new();
        let d = b - a;
        let len2 = d.dot(d);
        for pocket in &self.pockets {
            if !pocket.bbox.overlaps(&sb) {
                continue;
            }
            for (c, e) in pocket.chain_edges() {
                if !Bbox::of_segment(c, e).overlaps(&sb) {
                    continue;
                }
                if segments_cross_properly(a, b, c, e) {
                    return false;
                }
            }
            for &v in &pocket.chain {
                if sb.contains(v) && orientation(a, b, v) == Orientation::Collinear {
                    touches.push((v - a).dot(d) / len2);
                }
            }
        }
        if touches.is_empty() {
            return !self.pockets_exclude(a.midpoint(b));
        }
        touches.push(T::zero());
        touches.push(T::one());
        touches.sort_by(|x, y| x.partial_cmp(y).unwrap());
        touches.dedup();
        touches.windows(2).all(|w| {
            let t = (w[0] + w[1]) * T::lit(0.5);
            !self.pockets_exclude(a + d * t)
        })
    }

    /// Membership for a point already known to lie in the convex hull.
    pub fn contains_hull_point(&self, p: Point2<T>) -> bool {
        !self.pockets_exclude(p)
    }

    fn pockets_exclude(&self, p: Point2<T>) -> bool {
        self.pockets.iter().any(|k| k.excludes(p))
    }

    /// Applies `f` to every vertex. `f` must be an orientation-preserving
    /// similarity, so validity carries over.
    pub fn map_similarity(&self, f: impl Fn(Point2<T>) -> Point2<T>) -> Self {
        SimplePolygon::from_ccw_unchecked(self.vertices.iter().map(|&p| f(p)).collect())
    }

    pub fn cast<U: Scalar>(&self) -> Result<SimplePolygon<U>> {
        SimplePolygon::new(self.vertices.iter().map(|p| p.cast()).collect())
    }
}

impl<T: Scalar> Serialize for SimplePolygon<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a, T: Scalar> {
            vertices: &'a [Point2<T>],
        }
        Repr {
            vertices: &self.vertices,
        }
        .serialize(s)
    }
}

/// Area of a valid polygon (cached shoelace value).
pub fn polygon_area<T: Scalar>(polygon: &SimplePolygon<T>) -> T {
    polygon.area()
}

pub fn point_in_polygon<T: Scalar>(polygon: &SimplePolygon<T>, p: Point2<T>) -> bool {
    polygon.contains(p)
}

/// Closed segment containment; an endpoint outside the polygon gives `false`.
pub fn segment_in_polygon<T: Scalar>(polygon: &SimplePolygon<T>, s: Segment<T>) -> bool {
    polygon.contains_segment(s.a, s.b)
}

/// Winding-number point location with exact orientation tests.
pub fn locate_in_ring<T: Scalar>(ring: &[Point2<T>], p: Point2<T>) -> Location {
    let n = ring.len();
    let mut winding = 0i32;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        let (ylo, yhi) = if a.y <= b.y { (a.y, b.y) } else { (b.y, a.y) };
        if p.y < ylo || p.y > yhi {
            continue;
        }
        if p.x < a.x.min(b.x) {
            // Left of the whole edge: only the crossing rule can apply.
            if a.y <= p.y && b.y > p.y {
                winding += 1;
            } else if b.y <= p.y && a.y > p.y {
                winding -= 1;
            }
            continue;
        }
        if p.x > a.x.max(b.x) {
            continue;
        }
        let o = orientation(a, b, p);
        if o == Orientation::Collinear {
            return Location::Boundary;
        }
        if a.y <= p.y {
            if b.y > p.y && o == Orientation::Left {
                winding += 1;
            }
        } else if b.y <= p.y && o == Orientation::Right {
            winding -= 1;
        }
    }
    if winding != 0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

fn normalize_ring<T: Scalar>(mut ring: Vec<Point2<T>>) -> Vec<Point2<T>> {
    loop {
        ring.dedup();
        while ring.len() > 1 && ring.first() == ring.last() {
            ring.pop();
        }
        let n = ring.len();
        if n < 3 {
            return ring;
        }
        let collinear = (0..n).find(|&i| {
            orientation(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) == Orientation::Collinear
        });
        match collinear {
            Some(i) => {
                ring.remove(i);
            }
            None => return ring,
        }
    }
}

fn check_simple<T: Scalar>(ring: &[Point2<T>]) -> Result<()> {
    let n = ring.len();
    let bbs: Vec<Bbox<T>> = (0..n)
        .map(|i| Bbox::of_segment(ring[i], ring[(i + 1) % n]))
        .collect();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if !bbs[i].overlaps(&bbs[j]) {
                continue;
            }
            if segments_intersect(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n]) {
                return Err(Error::SelfIntersection(i, j));
            }
        }
    }
    Ok(())
}

fn build_pockets<T: Scalar>(ring: &[Point2<T>], hull: &ConvexPolygon<T>) -> Vec<Pocket<T>> {
    let n = ring.len();
    let on_hull: Vec<usize> = (0..n)
        .filter(|&i| hull.edges().any(|(a, b)| on_segment(a, b, ring[i])))
        .collect();
    let mut pockets = Vec::new();
    for (k, &start) in on_hull.iter().enumerate() {
        let end = on_hull[(k + 1) % on_hull.len()];
        let gap = (end + n - start) % n;
        if gap <= 1 && on_hull.len() > 1 {
            continue;
        }
        let chain: Vec<Point2<T>> = (0..=gap).map(|t| ring[(start + t) % n]).collect();
        let bbox = Bbox::of_points(&chain).expect("non-empty chain");
        pockets.push(Pocket { chain, bbox });
    }
    pockets
}
