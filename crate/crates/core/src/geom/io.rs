use std::path::Path;

use serde::{Deserialize, Serialize};

use super::point::Point2;
use super::polygon::SimplePolygon;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// On-disk polygon format: `{"vertices": [[x, y], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct PolygonFile<T> {
    pub vertices: Vec<Point2<T>>,
}

impl<T: Scalar> PolygonFile<T> {
    pub fn into_polygon(self) -> Result<SimplePolygon<T>> {
        SimplePolygon::new(self.vertices)
    }
}

impl<T: Scalar> From<&SimplePolygon<T>> for PolygonFile<T> {
    fn from(p: &SimplePolygon<T>) -> Self {
        PolygonFile {
            vertices: p.vertices().to_vec(),
        }
    }
}

pub fn polygon_from_json<T: Scalar>(text: &str) -> Result<SimplePolygon<T>> {
    let file: PolygonFile<T> =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    file.into_polygon()
}

pub fn polygon_to_json<T: Scalar>(p: &SimplePolygon<T>) -> String {
    serde_json::to_string(&PolygonFile::from(p)).expect("finite coordinates serialize")
}

pub fn read_polygon<T: Scalar>(path: impl AsRef<Path>) -> Result<SimplePolygon<T>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::domain("input", format!("{}: {e}", path.display())))?;
    polygon_from_json(&text)
}
