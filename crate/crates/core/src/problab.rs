//! Monte-Carlo estimates of the probabilistic bounds behind the peeler.

use serde::Serialize;

use crate::convex_ops::gamma_parallelogram;
use crate::error::{Error, Result};
use crate::geom::{convex_hull, ConvexPolygon, SimplePolygon};
use crate::peeler::certify;
use crate::sampling::{purpose, triangulate, ConvexSampler, RandomSource};
use crate::scalar::Scalar;

/// Estimate of the probability that two uniform points see each other.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VisibilityEstimate {
    pub p_hat: f64,
    pub trials: usize,
    pub ci95_halfwidth: f64,
}

impl VisibilityEstimate {
    pub fn from_counts(hits: usize, trials: usize) -> Self {
        let p_hat = hits as f64 / trials as f64;
        VisibilityEstimate {
            p_hat,
            trials,
            ci95_halfwidth: 1.96 * (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
        }
    }
}

/// Mean fraction of a convex body not covered by the hull of `m` uniform
/// points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MissedAreaEstimate {
    pub m: usize,
    pub mean_missed: f64,
    pub trials: usize,
}

pub const MIN_VISIBILITY_TRIALS: usize = 100;

/// Draws `trials` independent pairs uniformly in `polygon` and counts the
/// pairs whose segment lies in it.
///
/// The probability is invariant under similarities, so no rescaling to
/// unit area is needed before sampling.
pub fn estimate_visibility_probability<T: Scalar>(
    polygon: &SimplePolygon<T>,
    trials: usize,
    rng: &RandomSource,
) -> Result<VisibilityEstimate> {
    if trials < MIN_VISIBILITY_TRIALS {
        return Err(Error::domain(
            "trials",
            format!("{trials} is below the minimum of {MIN_VISIBILITY_TRIALS}"),
        ));
    }
    let tri = triangulate(polygon)?;
    let hits = (0..trials)
        .filter(|&t| {
            let mut r = rng.derive(&[purpose::TRIAL, t as u64]);
            let a = tri.sample_point(&mut r);
            let b = tri.sample_point(&mut r);
            polygon.segment_inside_unchecked(a, b)
        })
        .count();
    Ok(VisibilityEstimate::from_counts(hits, trials))
}

/// Upper bound `18 * A*` on the visibility probability of a unit-area
/// polygon.
pub fn visibility_bound(astar: f64) -> f64 {
    18.0 * astar
}

/// The sharper bound `12 * A* * (1 + log2(1 / A*))` for a unit-area polygon.
pub fn visibility_bound_log(astar: f64) -> f64 {
    12.0 * astar * (1.0 + (1.0 / astar).log2())
}

/// Mean of `1 - area(CH(R)) / area(K)` over `trials` samples of `m` points.
pub fn estimate_missed_area<T: Scalar>(
    k: &ConvexPolygon<T>,
    m: usize,
    trials: usize,
    rng: &RandomSource,
) -> Result<MissedAreaEstimate> {
    if m < 3 {
        return Err(Error::domain("m", format!("{m} is below 3")));
    }
    if trials == 0 {
        return Err(Error::domain("trials", "must be at least 1"));
    }
    if k.area() <= T::zero() {
        return Err(Error::ZeroArea);
    }
    let sampler = ConvexSampler::new(k);
    let area = k.area().as_f64();
    let total: f64 = (0..trials)
        .map(|t| {
            let mut r = rng.derive(&[purpose::TRIAL, t as u64]);
            let pts = sampler.sample(m, &mut r);
            1.0 - convex_hull(&pts).area().as_f64() / area
        })
        .sum();
    Ok(MissedAreaEstimate {
        m,
        mean_missed: total / trials as f64,
        trials,
    })
}

/// Sample size `ceil(4 * c * area(P) / area(K))` for which at least `c`
/// points land in `K` with probability 5/6.
pub fn sample_inside_size(c: f64, area_p: f64, area_k: f64) -> usize {
    (4.0 * c * area_p / area_k).ceil() as usize
}

/// Fraction of trials in which a uniform sample of
/// [`sample_inside_size`] points in `polygon` puts at least `c` points in
/// `k`.
pub fn lemma_sampleinside_trial<T: Scalar>(
    polygon: &SimplePolygon<T>,
    k: &ConvexPolygon<T>,
    c: f64,
    trials: usize,
    rng: &RandomSource,
) -> Result<f64> {
    check_inside(polygon, k)?;
    if !(c > 0.0) {
        return Err(Error::domain("c", format!("{c} must be positive")));
    }
    if trials == 0 {
        return Err(Error::domain("trials", "must be at least 1"));
    }
    let size = sample_inside_size(c, polygon.area().as_f64(), k.area().as_f64());
    lemma_sampleinside_with_size(polygon, k, c, size, trials, rng)
}

/// As [`lemma_sampleinside_trial`] with an explicit sample size.
pub fn lemma_sampleinside_with_size<T: Scalar>(
    polygon: &SimplePolygon<T>,
    k: &ConvexPolygon<T>,
    c: f64,
    size: usize,
    trials: usize,
    rng: &RandomSource,
) -> Result<f64> {
    let tri = triangulate(polygon)?;
    let hits = (0..trials)
        .filter(|&t| {
            let mut r = rng.derive(&[purpose::TRIAL, t as u64]);
            let inside = tri
                .sample(size, &mut r)
                .into_iter()
                .filter(|&p| k.contains(p))
                .count();
            inside as f64 >= c
        })
        .count();
    Ok(hits as f64 / trials as f64)
}

/// Sample size `ceil(c1 / epsilon^(3/2))` of the hull lemma.
pub fn hull_lemma_size(c1: f64, epsilon: f64) -> usize {
    (c1 / epsilon.powf(1.5)).ceil() as usize
}

/// Fraction of trials in which the hull of `size` uniform points in `k`
/// covers at least `(1 - epsilon) * area(k)`.
pub fn hull_lemma_trial<T: Scalar>(
    k: &ConvexPolygon<T>,
    epsilon: f64,
    size: usize,
    trials: usize,
    rng: &RandomSource,
) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain("epsilon", format!("{epsilon} is not in (0, 1)")));
    }
    if trials == 0 {
        return Err(Error::domain("trials", "must be at least 1"));
    }
    let sampler = ConvexSampler::new(k);
    let target = (1.0 - epsilon) * k.area().as_f64();
    let hits = (0..trials)
        .filter(|&t| {
            let mut r = rng.derive(&[purpose::TRIAL, t as u64]);
            convex_hull(&sampler.sample(size, &mut r)).area().as_f64() >= target
        })
        .count();
    Ok(hits as f64 / trials as f64)
}

/// Sample size `ceil(60 * area(P) / area(K))` of the parallelogram lemma.
pub fn gamma_lemma_size(area_p: f64, area_k: f64) -> usize {
    (60.0 * area_p / area_k).ceil() as usize
}

/// Fraction of trials in which some pair of points of a uniform sample of
/// [`gamma_lemma_size`] points in `polygon` spans a parallelogram
/// `Gamma(a, b, area(K))` containing `k`.
pub fn gamma_lemma_trial<T: Scalar>(
    polygon: &SimplePolygon<T>,
    k: &ConvexPolygon<T>,
    trials: usize,
    rng: &RandomSource,
) -> Result<f64> {
    check_inside(polygon, k)?;
    if trials == 0 {
        return Err(Error::domain("trials", "must be at least 1"));
    }
    let tri = triangulate(polygon)?;
    let size = gamma_lemma_size(polygon.area().as_f64(), k.area().as_f64());
    let area_k = k.area();
    let hits = (0..trials)
        .filter(|&t| {
            let mut r = rng.derive(&[purpose::TRIAL, t as u64]);
            let pts: Vec<_> = tri
                .sample(size, &mut r)
                .into_iter()
                .filter(|&p| k.contains(p))
                .collect();
            pts.iter().enumerate().any(|(i, &a)| {
                pts[i + 1..].iter().any(|&b| match gamma_parallelogram(a, b, area_k) {
                    Ok(g) => k.vertices().iter().all(|&v| g.contains(v)),
                    Err(_) => false,
                })
            })
        })
        .count();
    Ok(hits as f64 / trials as f64)
}

fn check_inside<T: Scalar>(polygon: &SimplePolygon<T>, k: &ConvexPolygon<T>) -> Result<()> {
    if k.area() <= T::zero() {
        return Err(Error::ZeroArea);
    }
    if !certify(polygon, k) {
        return Err(Error::Precondition("K is not contained in P".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point2;

    fn poly(v: &[(f64, f64)]) -> SimplePolygon<f64> {
        SimplePolygon::new(v.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
    }

    fn unit_square() -> SimplePolygon<f64> {
        poly(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])
    }

    #[test]
    fn convex_visibility_is_certain() {
        let e = estimate_visibility_probability(&unit_square(), 500, &RandomSource::new(1, 0)).unwrap();
        assert_eq!(e.p_hat, 1.0);
        assert_eq!(e.ci95_halfwidth, 0.0);
        assert!(estimate_visibility_probability(&unit_square(), 99, &RandomSource::new(1, 0)).is_err());
    }

    #[test]
    fn ci_formula() {
        let e = VisibilityEstimate::from_counts(25, 100);
        assert!((e.ci95_halfwidth - 1.96 * (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bounds_arithmetic() {
        assert_eq!(visibility_bound(0.5), 9.0);
        assert!((visibility_bound_log(0.25) - 12.0 * 0.25 * 3.0).abs() < 1e-12);
        assert_eq!(sample_inside_size(3.0, 5.0, 1.0), 60);
        assert_eq!(gamma_lemma_size(1.0, 1.0), 60);
        assert_eq!(hull_lemma_size(8.0, 0.25), 64);
    }

    #[test]
    fn sample_inside_trivial_cases() {
        let sq = unit_square();
        let k = sq.convex_hull().clone();
        let rng = RandomSource::new(3, 0);
        assert_eq!(lemma_sampleinside_trial(&sq, &k, 3.0, 50, &rng).unwrap(), 1.0);
        let small = convex_hull(&[
            Point2::new(0.0, 0.0),
            Point2::new(0.1, 0.0),
            Point2::new(0.0, 0.1),
        ]);
        let f = lemma_sampleinside_with_size(&sq, &small, 1000.0, 100, 50, &rng).unwrap();
        assert_eq!(f, 0.0);
        let outside = convex_hull(&[
            Point2::new(0.5, 0.5),
            Point2::new(2.0, 0.5),
            Point2::new(0.5, 2.0),
        ]);
        assert!(lemma_sampleinside_trial(&sq, &outside, 3.0, 10, &rng).is_err());
    }

    #[test]
    fn missed_area_validation() {
        let k = unit_square().convex_hull().clone();
        let rng = RandomSource::new(4, 0);
        assert!(estimate_missed_area(&k, 2, 10, &rng).is_err());
        let e = estimate_missed_area(&k, 50, 20, &rng).unwrap();
        assert!(e.mean_missed > 0.0 && e.mean_missed < 1.0);
    }
}
