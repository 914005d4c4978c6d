use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{triangle_area, Point2, SimplePolygon};
use crate::sampling::{purpose, RandomSource, Triangulation};
use crate::scalar::Scalar;

/// How an area lower bound was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMethod {
    UserSupplied,
    HeuristicFan,
    Oracle,
}

/// A lower bound `A(P)` on the optimum, in the units of the polygon it was
/// computed for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct AreaEstimate<T> {
    pub value: T,
    pub method: EstimateMethod,
    /// The configured guarantee factor; not certified by the heuristic.
    pub claimed_c2: f64,
}

const RESTARTS: usize = 200;
const EXTRA_CANDIDATES: usize = 64;

/// Largest inscribed triangle found by seeded local search.
///
/// Candidates are the polygon vertices plus sampled interior points. A
/// triangle lies in a simple polygon iff its three sides do, so every
/// accepted triangle is a certified witness and the value never exceeds the
/// optimum. The result is at least the largest triangulation triangle.
pub fn estimate_area_lower_bound<T: Scalar>(
    polygon: &SimplePolygon<T>,
    tri: &Triangulation<T>,
    rng: &RandomSource,
    claimed_c2: f64,
) -> Result<AreaEstimate<T>> {
    let mut rng = rng.derive(&[purpose::ESTIMATE]);
    let mut best = tri
        .largest_triangle()
        .map(|t| triangle_area(t[0], t[1], t[2]))
        .unwrap_or_else(T::zero);

    let mut cand: Vec<Point2<T>> = polygon.vertices().to_vec();
    cand.extend(tri.sample(EXTRA_CANDIDATES, &mut rng));
    let m = cand.len();
    let mut sees = vec![false; m * m];
    for i in 0..m {
        sees[i * m + i] = true;
        for j in i + 1..m {
            let v = polygon.segment_inside_unchecked(cand[i], cand[j]);
            sees[i * m + j] = v;
            sees[j * m + i] = v;
        }
    }
    let ok = |t: [usize; 3]| sees[t[0] * m + t[1]] && sees[t[1] * m + t[2]] && sees[t[0] * m + t[2]];
    let area = |t: [usize; 3]| triangle_area(cand[t[0]], cand[t[1]], cand[t[2]]).abs();

    for _ in 0..RESTARTS {
        let mut t = [0usize; 3];
        let mut found = false;
        for _ in 0..32 {
            for v in &mut t {
                *v = (rng.unit() * m as f64) as usize % m;
            }
            if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] && ok(t) {
                found = true;
                break;
            }
        }
        if !found {
            continue;
        }
        let mut cur = area(t);
        loop {
            let mut improved = false;
            for slot in 0..3 {
                for c in 0..m {
                    if t.contains(&c) {
                        continue;
                    }
                    let mut u = t;
                    u[slot] = c;
                    if ok(u) {
                        let a = area(u);
                        if a > cur {
                            cur = a;
                            t = u;
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                break;
            }
        }
        if cur > best {
            best = cur;
        }
    }
    if !(best > T::zero()) {
        return Err(Error::Estimator(format!("non-positive estimate {best}")));
    }
    Ok(AreaEstimate {
        value: best.min(polygon.area()),
        method: EstimateMethod::HeuristicFan,
        claimed_c2,
    })
}
