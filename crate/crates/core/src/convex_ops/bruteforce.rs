use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geom::{convex_hull, in_convex_position, Point2};
use crate::scalar::Scalar;
use crate::visibility::VisibilityGraph;

use super::phi::ConvexClique;

/// Largest graph accepted by [`enumerate_max_clique_bruteforce`].
pub const BRUTEFORCE_MAX_VERTICES: usize = 18;

/// Exhaustive maximum-area convex clique with `s` as strictly highest
/// member: every vertex subset is tried.
pub fn enumerate_max_clique_bruteforce<T: Scalar>(
    graph: &VisibilityGraph<T>,
    s: usize,
) -> Result<ConvexClique<T>> {
    let n = graph.len();
    if n > BRUTEFORCE_MAX_VERTICES {
        return Err(Error::TooLarge {
            size: n,
            max: BRUTEFORCE_MAX_VERTICES,
        });
    }
    if s >= n {
        return Err(Error::domain("s", format!("vertex {s} out of range")));
    }
    let pts = graph.points();
    let others: Vec<usize> = (0..n).filter(|&i| i != s).collect();
    let mut best_area = T::zero();
    let mut best: Vec<usize> = vec![s];
    for mask in 1u32..(1u32 << others.len()) {
        let mut members = vec![s];
        members.extend(
            others
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &i)| i),
        );
        if members[1..]
            .iter()
            .any(|&i| pts[i].lex_cmp(&pts[s]) != Ordering::Less)
        {
            continue;
        }
        let pairwise = members
            .iter()
            .enumerate()
            .all(|(a, &i)| members[a + 1..].iter().all(|&j| graph.has_edge(i, j)));
        if !pairwise {
            continue;
        }
        let mp: Vec<Point2<T>> = members.iter().map(|&i| pts[i]).collect();
        if !in_convex_position(&mp) {
            continue;
        }
        let area = convex_hull(&mp).area();
        if area > best_area {
            best_area = area;
            best = members;
        }
    }
    Ok(if best.len() == 1 {
        ConvexClique::singleton(graph, s)
    } else {
        ConvexClique::from_members(graph, &best)
    })
}
