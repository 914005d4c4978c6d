use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Constant set selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Constants from the correctness proof; sample sizes are enormous.
    Paper,
    /// Small empirically calibrated constants.
    #[default]
    Practical,
}

impl Mode {
    pub fn c1(self) -> f64 {
        match self {
            Mode::Paper => PAPER_C1,
            Mode::Practical => 4.0,
        }
    }

    pub fn c2(self) -> f64 {
        match self {
            Mode::Paper | Mode::Practical => 4.0,
        }
    }

    pub fn c3(self) -> f64 {
        match self {
            Mode::Paper | Mode::Practical => 129_600.0,
        }
    }

    /// Whether edges whose sampling region lies inside an already sampled
    /// region are skipped.
    pub fn skip_dominated(self) -> bool {
        self == Mode::Practical
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(Mode::Paper),
            "practical" => Ok(Mode::Practical),
            other => Err(Error::domain(
                "mode",
                format!("unknown mode {other:?} (expected paper or practical)"),
            )),
        }
    }
}

/// `(6 * 5)^(3/2)`.
pub const PAPER_C1: f64 = 164.316_767_251_549_84;

/// Parameters of a peeling run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeelConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub mode: Mode,
    pub seed: u64,
    pub max_repeat_override: Option<usize>,
    /// Skip an edge when its parallelogram, clipped to the hull, lies in
    /// the parallelogram of an edge already sampled in the same iteration.
    /// The skipped edge's sample is distributed like the restriction of the
    /// covering edge's sample, so its best clique is stochastically
    /// dominated and the per-iteration success bound is unchanged.
    #[serde(default)]
    pub skip_dominated: bool,
    /// Lower bound on the optimum in input units; estimated when absent.
    pub area_estimate: Option<f64>,
}

impl PeelConfig {
    /// Defaults of `mode` for the given accuracy, confidence and seed.
    pub fn new(mode: Mode, epsilon: f64, delta: f64, seed: u64) -> Self {
        PeelConfig {
            epsilon,
            delta,
            c1: mode.c1(),
            c2: mode.c2(),
            c3: mode.c3(),
            mode,
            seed,
            max_repeat_override: None,
            skip_dominated: mode.skip_dominated(),
            area_estimate: None,
        }
    }

    pub fn practical(epsilon: f64, delta: f64, seed: u64) -> Self {
        Self::new(Mode::Practical, epsilon, delta, seed)
    }

    pub fn paper(epsilon: f64, delta: f64, seed: u64) -> Self {
        Self::new(Mode::Paper, epsilon, delta, seed)
    }

    pub fn with_max_repeat(mut self, n: usize) -> Self {
        self.max_repeat_override = Some(n);
        self
    }

    pub fn with_area_estimate(mut self, a: f64) -> Self {
        self.area_estimate = Some(a);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let open_unit = |v: f64| v > 0.0 && v < 1.0;
        if !open_unit(self.epsilon) {
            return Err(Error::domain("epsilon", format!("{} is not in (0, 1)", self.epsilon)));
        }
        if !open_unit(self.delta) {
            return Err(Error::domain("delta", format!("{} is not in (0, 1)", self.delta)));
        }
        for (field, v) in [("c1", self.c1), ("c2", self.c2), ("c3", self.c3)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(field, format!("{v} must be positive and finite")));
            }
        }
        if let Some(a) = self.area_estimate {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::domain("area_estimate", format!("{a} must be positive")));
            }
        }
        if self.max_repeat_override == Some(0) {
            return Err(Error::domain("max_repeat", "must be at least 1"));
        }
        Ok(())
    }

    /// `ceil(3 * log2(1 / delta))`, unless overridden.
    pub fn iterations(&self) -> usize {
        self.max_repeat_override
            .unwrap_or_else(|| (3.0 * (1.0 / self.delta).log2()).ceil().max(1.0) as usize)
    }

    /// `ceil(96 * c1 * c2 / (epsilon / 2)^(3/2))`.
    pub fn r_ab_size(&self) -> u64 {
        (96.0 * self.c1 * self.c2 / (self.epsilon / 2.0).powf(1.5)).ceil() as u64
    }

    /// `ceil(288 * c2 / epsilon)`.
    pub fn s_ab_size(&self) -> u64 {
        (288.0 * self.c2 / self.epsilon).ceil() as u64
    }

    /// `ceil(60 / A(P))` for an estimate on the unit-area polygon.
    pub fn sample_radius(area_estimate_normalized: f64) -> usize {
        (60.0 / area_estimate_normalized).ceil() as usize
    }
}
