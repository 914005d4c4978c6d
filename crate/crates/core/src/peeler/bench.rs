use serde::Serialize;

use crate::error::Result;
use crate::geom::SimplePolygon;
use crate::scalar::Scalar;

use super::config::PeelConfig;
use super::engine::large_potato;

/// Medians over three seeds for one polygon size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub wall_time_ms: f64,
    pub edges: usize,
}

const SEEDS_PER_SIZE: u64 = 3;

/// Runs `large_potato` on `family(n)` for each size with seeds
/// `cfg.seed`, `cfg.seed + 1`, `cfg.seed + 2`.
pub fn scaling_benchmark<T: Scalar>(
    family: impl Fn(usize) -> Result<SimplePolygon<T>>,
    sizes: &[usize],
    cfg: &PeelConfig,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let poly = family(n)?;
        let mut times = Vec::new();
        let mut edges = Vec::new();
        for k in 0..SEEDS_PER_SIZE {
            let mut c = cfg.clone();
            c.seed = cfg.seed.wrapping_add(k);
            let res = large_potato(&poly, &c)?;
            times.push(res.wall_time.as_secs_f64() * 1e3);
            edges.push(res.edges_processed + res.edges_degenerate);
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        edges.sort_unstable();
        rows.push(BenchRow {
            n: poly.len(),
            wall_time_ms: times[times.len() / 2],
            edges: edges[edges.len() / 2],
        });
    }
    Ok(rows)
}
