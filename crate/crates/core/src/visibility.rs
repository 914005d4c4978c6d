//! Visibility graphs of point sets inside a simple polygon.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, SimplePolygon};
use crate::sampling::{RandomSource, Triangulation};
use crate::scalar::Scalar;

/// Points plus the pairs whose connecting segment lies in the polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityGraph<T> {
    points: Vec<Point2<T>>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Wire format: `{"points": [[x, y], ...], "edges": [[i, j], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct GraphRepr<T> {
    points: Vec<Point2<T>>,
    edges: Vec<[usize; 2]>,
}

impl<T: Scalar> Serialize for VisibilityGraph<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            points: self.points.clone(),
            edges: self.edges().map(|(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for VisibilityGraph<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GraphRepr::<T>::deserialize(d)?;
        VisibilityGraph::from_edges(r.points, r.edges.iter().map(|e| (e[0], e[1])))
            .map_err(serde::de::Error::custom)
    }
}

impl<T: Scalar> VisibilityGraph<T> {
    /// A graph on `points` with the given undirected edges. Duplicates are
    /// merged; self-loops and out-of-range indices are rejected.
    pub fn from_edges(
        points: Vec<Point2<T>>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = points.len();
        let mut adjacency = vec![Vec::new(); n];
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::domain("edges", format!("index out of range in ({i}, {j})")));
            }
            if i == j {
                return Err(Error::domain("edges", format!("self-loop at {i}")));
            }
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for a in &mut adjacency {
            a.sort_unstable();
            a.dedup();
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(VisibilityGraph {
            points,
            adjacency,
            edge_count,
        })
    }

    pub fn complete(points: Vec<Point2<T>>) -> Self {
        let n = points.len();
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::from_edges(points, edges).expect("valid indices")
    }

    pub fn points(&self) -> &[Point2<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Each undirected edge once, as `(i, j)` with `i < j`, in order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, a)| a.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    /// A copy with edge `(i, j)` removed.
    pub fn without_edge(&self, i: usize, j: usize) -> Self {
        let edges = self.edges().filter(|&e| e != (i.min(j), i.max(j)));
        Self::from_edges(self.points.clone(), edges).expect("valid indices")
    }

    /// A copy with edge `(i, j)` added.
    pub fn with_edge(&self, i: usize, j: usize) -> Result<Self> {
        Self::from_edges(self.points.clone(), self.edges().chain(std::iter::once((i, j))))
    }
}

/// Result of a capped construction.
#[derive(Debug, Clone)]
pub struct EdgeCapOutcome<T> {
    pub completed: bool,
    pub graph: Option<VisibilityGraph<T>>,
    pub cap: Option<usize>,
    /// Edges found before finishing or aborting.
    pub edges_seen: usize,
}

/// The edge cap `c3 * n * log2(n)` for a polygon with `n` vertices.
pub fn edge_cap(c3: f64, n: usize) -> usize {
    let n = n as f64;
    (c3 * n * n.log2()).ceil().min(usize::MAX as f64) as usize
}

/// Closed visibility between two points of the polygon.
pub fn visible<T: Scalar>(polygon: &SimplePolygon<T>, a: Point2<T>, b: Point2<T>) -> bool {
    polygon.contains_segment(a, b)
}

/// Pairwise construction of `G(P, R)`, aborting once more than `cap` edges
/// have been found.
pub fn build_visibility_graph<T: Scalar>(
    polygon: &SimplePolygon<T>,
    points: &[Point2<T>],
    cap: Option<usize>,
) -> Result<EdgeCapOutcome<T>> {
    if let Some(i) = points.iter().position(|&p| !polygon.contains(p)) {
        return Err(Error::PointOutside(i));
    }
    Ok(build_unchecked(polygon, points, cap))
}

pub(crate) fn build_unchecked<T: Scalar>(
    polygon: &SimplePolygon<T>,
    points: &[Point2<T>],
    cap: Option<usize>,
) -> EdgeCapOutcome<T> {
    let n = points.len();
    let mut adjacency = vec![Vec::new(); n];
    let mut count = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if polygon.segment_inside_unchecked(points[i], points[j]) {
                adjacency[i].push(j);
                adjacency[j].push(i);
                count += 1;
                if cap.is_some_and(|c| count > c) {
                    return EdgeCapOutcome {
                        completed: false,
                        graph: None,
                        cap,
                        edges_seen: count,
                    };
                }
            }
        }
    }
    for a in &mut adjacency {
        a.sort_unstable();
    }
    EdgeCapOutcome {
        completed: true,
        graph: Some(VisibilityGraph {
            points: points.to_vec(),
            adjacency,
            edge_count: count,
        }),
        cap,
        edges_seen: count,
    }
}

/// Mean edge count of `G(P, R)` over `trials` fresh samples of `r` points.
pub fn empirical_edge_density<T: Scalar>(
    polygon: &SimplePolygon<T>,
    tri: &Triangulation<T>,
    r: usize,
    trials: usize,
    rng: &RandomSource,
) -> f64 {
    let total: usize = (0..trials.max(1))
        .map(|t| {
            let mut rng = rng.derive(&[crate::sampling::purpose::TRIAL, t as u64]);
            let pts = tri.sample(r, &mut rng);
            build_unchecked(polygon, &pts, None).edges_seen
        })
        .sum();
    total as f64 / trials.max(1) as f64
}
