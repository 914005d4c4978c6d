use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{convex_hull, orientation, triangle_area, ConvexPolygon, Orientation, Point2};
use crate::scalar::Scalar;
use crate::visibility::VisibilityGraph;

/// Pairwise adjacent vertices in convex position, listed counterclockwise
/// from the highest one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct ConvexClique<T> {
    pub indices: Vec<usize>,
    pub hull: ConvexPolygon<T>,
}

impl<T: Scalar> ConvexClique<T> {
    pub fn singleton(graph: &VisibilityGraph<T>, s: usize) -> Self {
        ConvexClique {
            indices: vec![s],
            hull: ConvexPolygon::from_ccw_unchecked(vec![graph.points()[s]]),
        }
    }

    /// Orders `members` counterclockwise starting at their highest point.
    pub fn from_members(graph: &VisibilityGraph<T>, members: &[usize]) -> Self {
        let pts = graph.points();
        let Some(&s) = members.iter().max_by(|&&i, &&j| pts[i].lex_cmp(&pts[j])) else {
            return ConvexClique {
                indices: Vec::new(),
                hull: ConvexPolygon::empty(),
            };
        };
        let mut rest: Vec<usize> = members.iter().copied().filter(|&i| i != s).collect();
        sort_around(pts, s, &mut rest);
        // Points on the closing edge back to s come farthest first.
        if let Some(&last) = rest.last() {
            let tail = rest
                .iter()
                .rev()
                .take_while(|&&i| {
                    orientation(pts[s], pts[i], pts[last]) == Orientation::Collinear
                })
                .count();
            let len = rest.len();
            if tail < len {
                rest[len - tail..].reverse();
            }
        }
        let mut indices = vec![s];
        indices.extend(rest);
        let hull_pts: Vec<Point2<T>> = indices.iter().map(|&i| pts[i]).collect();
        ConvexClique {
            indices,
            hull: convex_hull(&hull_pts),
        }
    }

    pub fn area(&self) -> T {
        self.hull.area()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// True if the members are pairwise adjacent in `graph`.
    pub fn is_clique_of(&self, graph: &VisibilityGraph<T>) -> bool {
        self.indices.iter().enumerate().all(|(k, &i)| {
            self.indices[k + 1..].iter().all(|&j| graph.has_edge(i, j))
        })
    }
}

/// One filled cell of the dynamic program.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DpEntry {
    /// Positions in the radial order (`i < j`).
    pub i: usize,
    pub j: usize,
    pub best_area: f64,
    pub predecessor: Option<usize>,
}

/// The dynamic-programming table of one `phi` call.
///
/// `order[p]` is the graph index of the point at radial position `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DpTable {
    pub root: usize,
    pub order: Vec<usize>,
    pub entries: Vec<DpEntry>,
    /// True when the table optimum was not a clique and the exact search ran.
    pub fallback_used: bool,
}

/// Radial order around `s` for points below it: counterclockwise, closer
/// first along a common ray.
fn sort_around<T: Scalar>(pts: &[Point2<T>], s: usize, idx: &mut [usize]) {
    sort_around_point(pts[s], pts, idx)
}

fn sort_around_point<T: Scalar>(o: Point2<T>, pts: &[Point2<T>], idx: &mut [usize]) {
    idx.sort_unstable_by(|&p, &q| match orientation(o, pts[p], pts[q]) {
        Orientation::Left => Ordering::Less,
        Orientation::Right => Ordering::Greater,
        Orientation::Collinear => (pts[p] - o)
            .dot(pts[p] - o)
            .partial_cmp(&(pts[q] - o).dot(pts[q] - o))
            .unwrap()
            .then(p.cmp(&q)),
    });
}

fn angle_cmp<T: Scalar>(center: Point2<T>, p: Point2<T>, q: Point2<T>) -> Ordering {
    match orientation(center, p, q) {
        Orientation::Left => Ordering::Less,
        Orientation::Right => Ordering::Greater,
        Orientation::Collinear => Ordering::Equal,
    }
}

struct Dp<T> {
    k: usize,
    /// Radial position -> point.
    x: Vec<Point2<T>>,
    adj: Vec<bool>,
    opt: Vec<T>,
    pred: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl<T: Scalar> Dp<T> {
    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        i * self.k + j
    }

    fn edge(&self, i: usize, j: usize) -> bool {
        self.adj[self.at(i, j)]
    }

    /// Fills `opt[i][j]` for `i < j`: the largest fan `s, .., x_i, x_j`
    /// whose boundary turns never go right, using only graph edges along
    /// the chain. `lists` yields the neighbors of `x_i` before and after it,
    /// each in counterclockwise order around `x_i` starting from the ray
    /// towards `s` (resp. away from `s`).
    fn fill(&mut self, s: Point2<T>, mut lists: impl FnMut(&Self, usize, &mut Vec<usize>, &mut Vec<usize>)) {
        let k = self.k;
        let mut incoming = Vec::with_capacity(k);
        let mut outgoing = Vec::with_capacity(k);
        for i in 0..k {
            let xi = self.x[i];
            lists(self, i, &mut incoming, &mut outgoing);
            let mut ptr = 0;
            let mut best = T::zero();
            let mut best_h = NONE;
            for &j in &outgoing {
                let xj = self.x[j];
                while ptr < incoming.len()
                    && orientation(self.x[incoming[ptr]], xi, xj) != Orientation::Right
                {
                    let h = incoming[ptr];
                    let v = self.opt[self.at(h, i)];
                    if v > best {
                        best = v;
                        best_h = h as u32;
                    }
                    ptr += 1;
                }
                let cell = self.at(i, j);
                self.opt[cell] = triangle_area(s, xi, xj) + best;
                self.pred[cell] = best_h;
            }
        }
    }

    /// Neighbor lists by sorting; directions `x_i - x_h` and `x_j - x_i`
    /// share a half-plane, in which the left-turn condition is a prefix of
    /// the angular order.
    fn sorted_lists(&self, i: usize, incoming: &mut Vec<usize>, outgoing: &mut Vec<usize>) {
        let xi = self.x[i];
        incoming.clear();
        outgoing.clear();
        incoming.extend((0..i).filter(|&h| self.edge(h, i)));
        outgoing.extend((i + 1..self.k).filter(|&j| self.edge(i, j)));
        incoming.sort_by(|&a, &b| angle_cmp(xi, self.x[a], self.x[b]));
        outgoing.sort_by(|&a, &b| angle_cmp(xi, self.x[a], self.x[b]));
    }

    /// Largest chain, falling back to the exact search if the table's
    /// optimum is not a clique.
    fn solve(&self, s: Point2<T>) -> (Vec<usize>, bool) {
        match self.argmax() {
            None => (Vec::new(), false),
            Some((i, j)) => {
                let chain = self.chain(i, j);
                if self.is_clique(&chain) {
                    (chain, false)
                } else {
                    (self.exact_search(s).1, true)
                }
            }
        }
    }

    fn chain(&self, mut i: usize, mut j: usize) -> Vec<usize> {
        let mut rev = vec![j, i];
        loop {
            let h = self.pred[self.at(i, j)];
            if h == NONE {
                break;
            }
            j = i;
            i = h as usize;
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    fn argmax(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_v = T::zero();
        for i in 0..self.k {
            for j in i + 1..self.k {
                if self.edge(i, j) && self.opt[self.at(i, j)] > best_v {
                    best_v = self.opt[self.at(i, j)];
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn is_clique(&self, chain: &[usize]) -> bool {
        chain
            .iter()
            .enumerate()
            .all(|(a, &i)| chain[a + 1..].iter().all(|&j| self.edge(i, j)))
    }

    /// Exact search over chains, extended backwards from their last two
    /// vertices, requiring every new vertex to see all current members.
    /// The table values bound what any extension can add.
    fn exact_search(&self, s: Point2<T>) -> (T, Vec<usize>) {
        let mut pairs: Vec<(usize, usize)> = (0..self.k)
            .flat_map(|i| (i + 1..self.k).map(move |j| (i, j)))
            .filter(|&(i, j)| self.edge(i, j))
            .collect();
        pairs.sort_by(|&(a, b), &(c, d)| {
            self.opt[self.at(c, d)]
                .partial_cmp(&self.opt[self.at(a, b)])
                .unwrap()
                .then((a, b).cmp(&(c, d)))
        });
        let mut best = T::zero();
        let mut best_chain = Vec::new();
        for (i, j) in pairs {
            if self.opt[self.at(i, j)] <= best {
                break;
            }
            let mut chain = vec![i, j];
            let area = triangle_area(s, self.x[i], self.x[j]);
            self.extend(s, &mut chain, area, &mut best, &mut best_chain);
        }
        (best, best_chain)
    }

    fn extend(
        &self,
        s: Point2<T>,
        chain: &mut Vec<usize>,
        area: T,
        best: &mut T,
        best_chain: &mut Vec<usize>,
    ) {
        if area > *best {
            *best = area;
            *best_chain = chain.clone();
        }
        let (i, next) = (chain[0], chain[1]);
        let mut cands: Vec<(T, usize)> = (0..i)
            .filter(|&h| {
                self.edge(h, i)
                    && orientation(self.x[h], self.x[i], self.x[next]) != Orientation::Right
                    && chain.iter().all(|&c| self.edge(h, c))
            })
            .map(|h| (self.opt[self.at(h, i)], h))
            .collect();
        cands.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        for (bound, h) in cands {
            // opt[h][i] covers everything before and including (h, i).
            if area + bound <= *best {
                break;
            }
            chain.insert(0, h);
            let added = triangle_area(s, self.x[h], self.x[i]);
            self.extend(s, chain, area + added, best, best_chain);
            chain.remove(0);
        }
    }
}

pub(crate) struct Solved<T> {
    /// Radial order: `order[p]` is the candidate at position `p`.
    pub order: Vec<usize>,
    /// Chain of radial positions, counterclockwise after the root.
    pub chain: Vec<usize>,
    pub fallback_used: bool,
    dp: Dp<T>,
}

/// Anchored search on explicit data: `cands` are the points strictly below
/// the root `sp` that are adjacent to it, and `edge(a, b)` reports adjacency
/// between candidates `a` and `b`.
pub(crate) fn solve_rooted<T: Scalar>(
    sp: Point2<T>,
    cands: &[Point2<T>],
    edge: impl Fn(usize, usize) -> bool,
) -> Solved<T> {
    let mut order: Vec<usize> = (0..cands.len()).collect();
    sort_around_point(sp, cands, &mut order);
    let k = order.len();
    let mut adj = vec![false; k * k];
    for a in 0..k {
        for b in a + 1..k {
            if edge(order[a], order[b]) {
                adj[a * k + b] = true;
                adj[b * k + a] = true;
            }
        }
    }
    let mut dp = Dp {
        k,
        x: order.iter().map(|&i| cands[i]).collect(),
        adj,
        opt: vec![T::zero(); k * k],
        pred: vec![NONE; k * k],
    };
    dp.fill(sp, Dp::sorted_lists);
    let (chain, fallback_used) = dp.solve(sp);
    Solved {
        order,
        chain,
        fallback_used,
        dp,
    }
}

/// Counterclockwise order of all other points around each point of a set,
/// starting from the positive x direction.
pub(crate) struct AngularIndex {
    around: Vec<Vec<u32>>,
}

/// Half-turn of a direction: 0 for angles in `[0, pi)`, 1 for `[pi, 2pi)`.
fn half<T: Scalar>(o: Point2<T>, p: Point2<T>) -> u8 {
    let (dx, dy) = (p.x - o.x, p.y - o.y);
    if dy > T::zero() || (dy == T::zero() && dx > T::zero()) {
        0
    } else {
        1
    }
}

fn full_angle_cmp<T: Scalar>(o: Point2<T>, p: Point2<T>, q: Point2<T>) -> Ordering {
    half(o, p).cmp(&half(o, q)).then_with(|| angle_cmp(o, p, q))
}

impl AngularIndex {
    pub(crate) fn new<T: Scalar>(pts: &[Point2<T>]) -> Self {
        let m = pts.len();
        let mut keyed: Vec<(f64, u32)> = Vec::with_capacity(m);
        let around = (0..m)
            .map(|c| {
                let o = pts[c];
                keyed.clear();
                keyed.extend((0..m).filter(|&q| q != c).map(|q| {
                    let (dx, dy) = ((pts[q].x - o.x).as_f64(), (pts[q].y - o.y).as_f64());
                    let a = dy.atan2(dx);
                    (if a < 0.0 { a + std::f64::consts::TAU } else { a }, q as u32)
                }));
                keyed.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                let mut ring: Vec<u32> = keyed.iter().map(|&(_, q)| q).collect();
                // The float keys are only nearly right; finish with exact
                // comparisons, which touch little beyond near-ties.
                let exact = |a: u32, b: u32| {
                    full_angle_cmp(o, pts[a as usize], pts[b as usize]).then(a.cmp(&b))
                };
                for x in 1..ring.len() {
                    let mut y = x;
                    while y > 0 && exact(ring[y - 1], ring[y]) == Ordering::Greater {
                        ring.swap(y - 1, y);
                        y -= 1;
                    }
                }
                ring
            })
            .collect();
        AngularIndex { around }
    }
}

/// [`solve_rooted`] over a point set with a prebuilt [`AngularIndex`]:
/// `cands` index into `pts` and `sees` reports adjacency between points.
/// Returns the area and the members, root first.
pub(crate) fn solve_rooted_indexed<T: Scalar>(
    pts: &[Point2<T>],
    index: &AngularIndex,
    root: usize,
    cands: &[usize],
    mut sees: impl FnMut(usize, usize) -> bool,
) -> (T, Vec<usize>) {
    let sp = pts[root];
    let mut order = cands.to_vec();
    sort_around_point(sp, pts, &mut order);
    let k = order.len();
    let mut pos_of = vec![NONE; pts.len()];
    for (p, &g) in order.iter().enumerate() {
        pos_of[g] = p as u32;
    }
    let mut adj = vec![false; k * k];
    for a in 0..k {
        for b in a + 1..k {
            if sees(order[a], order[b]) {
                adj[a * k + b] = true;
                adj[b * k + a] = true;
            }
        }
    }
    let mut dp = Dp {
        k,
        x: order.iter().map(|&g| pts[g]).collect(),
        adj,
        opt: vec![T::zero(); k * k],
        pred: vec![NONE; k * k],
    };
    dp.fill(sp, |dp, i, incoming, outgoing| {
        incoming.clear();
        outgoing.clear();
        let g = order[i];
        for &q in &index.around[g] {
            let p = pos_of[q as usize];
            if p == NONE || !dp.edge(p as usize, i) {
                continue;
            }
            if (p as usize) < i {
                incoming.push(p as usize);
            } else {
                outgoing.push(p as usize);
            }
        }
        // Rotate to start at the ray towards (resp. away from) the root.
        let xi = dp.x[i];
        let before = |q: usize, towards: bool| {
            let hq = half(xi, dp.x[q]);
            let hs = if towards { half(xi, sp) } else { 1 - half(xi, sp) };
            let o = orientation(xi, dp.x[q], sp);
            hq < hs || (hq == hs && o == if towards { Orientation::Left } else { Orientation::Right })
        };
        let split = incoming.partition_point(|&q| before(q, true));
        incoming.rotate_left(split);
        let split = outgoing.partition_point(|&q| before(q, false));
        outgoing.rotate_left(split);
    });
    let (chain, _) = dp.solve(sp);
    let area = if chain.is_empty() {
        T::zero()
    } else {
        let mut fan = T::zero();
        for w in chain.windows(2) {
            fan = fan + triangle_area(sp, dp.x[w[0]], dp.x[w[1]]);
        }
        fan
    };
    let mut members = vec![root];
    members.extend(chain.iter().map(|&p| order[p]));
    (area, members)
}


/// Maximum-area convex clique of `graph` whose strictly highest member
/// (by y, then x) is `s`.
pub fn phi<T: Scalar>(graph: &VisibilityGraph<T>, s: usize) -> Result<ConvexClique<T>> {
    phi_with_table(graph, s).map(|(c, _)| c)
}

/// `phi` together with its filled table.
pub fn phi_with_table<T: Scalar>(
    graph: &VisibilityGraph<T>,
    s: usize,
) -> Result<(ConvexClique<T>, DpTable)> {
    if s >= graph.len() {
        return Err(Error::domain(
            "s",
            format!("vertex {s} out of range for a graph with {} vertices", graph.len()),
        ));
    }
    let pts = graph.points();
    let sp = pts[s];
    let cands: Vec<usize> = graph
        .neighbors(s)
        .iter()
        .copied()
        .filter(|&i| pts[i].lex_cmp(&sp) == Ordering::Less)
        .collect();
    let cand_pts: Vec<Point2<T>> = cands.iter().map(|&i| pts[i]).collect();
    let solved = solve_rooted(sp, &cand_pts, |a, b| graph.has_edge(cands[a], cands[b]));
    let order: Vec<usize> = solved.order.iter().map(|&p| cands[p]).collect();
    let (chain, dp, fallback_used) = (solved.chain, solved.dp, solved.fallback_used);
    let k = dp.k;
    let clique = if chain.is_empty() {
        ConvexClique::singleton(graph, s)
    } else {
        let mut members = vec![s];
        members.extend(chain.iter().map(|&p| order[p]));
        let hull_pts: Vec<Point2<T>> = members.iter().map(|&i| pts[i]).collect();
        ConvexClique {
            indices: members,
            hull: convex_hull(&hull_pts),
        }
    };
    let entries = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| dp.edge(i, j))
        .map(|(i, j)| {
            let c = dp.at(i, j);
            DpEntry {
                i,
                j,
                best_area: dp.opt[c].as_f64(),
                predecessor: (dp.pred[c] != NONE).then_some(dp.pred[c] as usize),
            }
        })
        .collect();
    Ok((
        clique,
        DpTable {
            root: s,
            order,
            entries,
            fallback_used,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex_ops::enumerate_max_clique_bruteforce;

    fn diamond() -> VisibilityGraph<f64> {
        VisibilityGraph::complete(vec![
            Point2::new(0.0, 1.0),
            Point2::new(-1.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, -1.0),
        ])
    }

    #[test]
    fn complete_diamond() {
        let c = phi(&diamond(), 0).unwrap();
        assert_eq!(c.area(), 2.0);
        assert_eq!(c.indices, vec![0, 1, 3, 2]);
        assert!(c.is_clique_of(&diamond()));
    }

    #[test]
    fn diamond_without_middle_edge() {
        let g = diamond().without_edge(1, 2);
        let (c, table) = phi_with_table(&g, 0).unwrap();
        assert_eq!(c.area(), 1.0);
        assert!(c.is_clique_of(&g));
        assert!(table.fallback_used);
        assert_eq!(
            enumerate_max_clique_bruteforce(&g, 0).unwrap().area(),
            1.0
        );
    }

    #[test]
    fn singleton_cases() {
        let g = VisibilityGraph::complete(vec![Point2::new(0.0, 0.0)]);
        let c = phi(&g, 0).unwrap();
        assert_eq!(c.indices, vec![0]);
        assert_eq!(c.area(), 0.0);
        // The lowest vertex of the diamond has nobody below it.
        assert_eq!(phi(&diamond(), 3).unwrap().indices, vec![3]);
        let empty = VisibilityGraph::from_edges(diamond().points().to_vec(), []).unwrap();
        assert_eq!(phi(&empty, 0).unwrap().area(), 0.0);
        assert!(phi(&diamond(), 4).is_err());
    }

    #[test]
    fn collinear_points_count() {
        // Square with midpoints on two sides; non-strict convexity keeps them.
        let g = VisibilityGraph::complete(vec![
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.0, 0.5),
            Point2::new(0.0, 0.0),
            Point2::new(0.5, 0.0),
            Point2::new(1.0, 0.0),
        ]);
        let c = phi(&g, 0).unwrap();
        assert_eq!(c.area(), 1.0);
    }

    #[test]
    fn ties_in_height_use_x() {
        let g = VisibilityGraph::complete(vec![
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
        ]);
        assert_eq!(phi(&g, 0).unwrap().area(), 1.0);
        // (0,1) is below (1,1) lexicographically, so it cannot use it.
        assert_eq!(phi(&g, 1).unwrap().area(), 0.5);
    }

    #[test]
    fn table_dump_is_consistent() {
        let (_, t) = phi_with_table(&diamond(), 0).unwrap();
        assert_eq!(t.order, vec![1, 3, 2]);
        for e in &t.entries {
            assert!(e.i < e.j);
            let (a, b) = (t.order[e.i], t.order[e.j]);
            let p = diamond().points().to_vec();
            assert!(e.best_area >= triangle_area(p[0], p[a], p[b]) - 1e-15);
        }
        assert!(serde_json::to_string(&t).unwrap().contains("\"entries\""));
    }

    #[test]
    fn indexed_route_matches_sorting_route() {
        use crate::sampling::RandomSource;
        let mut rng = RandomSource::new(5, 0);
        for trial in 0..200 {
            let m = 3 + trial % 14;
            // Small integer grid to force collinear and equal-height points.
            let grid = if trial % 2 == 0 { 4.0 } else { 1e6 };
            let mut pts: Vec<Point2<f64>> = Vec::new();
            while pts.len() < m {
                let p = Point2::new((rng.unit() * grid).floor(), (rng.unit() * grid).floor());
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            let mut adj = vec![false; m * m];
            for a in 0..m {
                for b in a + 1..m {
                    let e = rng.unit() < 0.8;
                    adj[a * m + b] = e;
                    adj[b * m + a] = e;
                }
            }
            let index = AngularIndex::new(&pts);
            for root in 0..m {
                let sp = pts[root];
                let cands: Vec<usize> = (0..m)
                    .filter(|&q| adj[root * m + q] && pts[q].lex_cmp(&sp) == Ordering::Less)
                    .collect();
                let (area, members) = solve_rooted_indexed(&pts, &index, root, &cands, |a, b| adj[a * m + b]);
                let cand_pts: Vec<Point2<f64>> = cands.iter().map(|&q| pts[q]).collect();
                let solved = solve_rooted(sp, &cand_pts, |a, b| adj[cands[a] * m + cands[b]]);
                let mut chain = vec![sp];
                chain.extend(solved.chain.iter().map(|&p| cand_pts[solved.order[p]]));
                let expect = if solved.chain.is_empty() { 0.0 } else { convex_hull(&chain).area() };
                assert!((area - expect).abs() <= 1e-9 * grid * grid, "trial {trial} root {root}");
                for (x, &a) in members.iter().enumerate() {
                    for &b in &members[x + 1..] {
                        assert!(adj[a * m + b]);
                    }
                }
            }
        }
    }
}
