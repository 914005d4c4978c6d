use serde::{Deserialize, Serialize};

use super::point::Point2;
use crate::scalar::Scalar;

/// Uniform scaling about the origin followed by a translation:
/// `p -> scale * p + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Similarity<T> {
    pub scale: T,
    pub offset: Point2<T>,
}

impl<T: Scalar> Similarity<T> {
    pub fn identity() -> Self {
        Similarity {
            scale: T::one(),
            offset: Point2::default(),
        }
    }

    /// Maps `center` to the origin and scales areas by `area_factor`.
    pub fn normalizing(center: Point2<T>, area_factor: T) -> Self {
        let scale = area_factor.sqrt();
        Similarity {
            scale,
            offset: -center * scale,
        }
    }

    #[inline]
    pub fn apply(&self, p: Point2<T>) -> Point2<T> {
        p * self.scale + self.offset
    }

    pub fn inverse(&self) -> Self {
        let scale = T::one() / self.scale;
        Similarity {
            scale,
            offset: -self.offset * scale,
        }
    }

    pub fn area_factor(&self) -> T {
        self.scale * self.scale
    }
}
