//! Single-feature assessment: turning measurements into simple-support masses.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AssessError {
    #[error("invalid step parameters: {0}")]
    InvalidParams(String),
    #[error("{what} = {value} is out of range")]
    OutOfRange { what: &'static str, value: f64 },
}

/// Three-level step membership around a typical value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepFunctionParams {
    /// Typical feature value of the hypothesised object.
    pub typical: f64,
    /// Half-width of the full-membership plateau.
    pub inner: f64,
    /// Half-width of the partial-membership shoulders.
    pub outer: f64,
    /// Membership on the shoulders, strictly between 0 and 1.
    pub plateau: f64,
}

impl StepFunctionParams {
    pub fn validate(&self) -> Result<(), AssessError> {
        if !(self.inner > 0.0 && self.inner <= self.outer) {
            return Err(AssessError::InvalidParams(format!(
                "need 0 < inner <= outer, got inner {} outer {}",
                self.inner, self.outer
            )));
        }
        if !(self.plateau > 0.0 && self.plateau < 1.0) {
            return Err(AssessError::InvalidParams(format!(
                "shoulder value {} must lie in (0, 1)",
                self.plateau
            )));
        }
        Ok(())
    }
}

/// Returns 1 within `inner` of the typical value, `plateau` within `outer`, else 0.
pub fn step_mu(v: f64, p: &StepFunctionParams) -> Result<f64, AssessError> {
    p.validate()?;
    let d = (v - p.typical).abs();
    Ok(if d <= p.inner {
        1.0
    } else if d <= p.outer {
        p.plateau
    } else {
        0.0
    })
}

/// Folds goodness of the feature value and quality of the data into one mass.
pub fn assess_feature(goodness: f64, quality_weight: f64) -> Result<f64, AssessError> {
    for (what, value) in [("goodness", goodness), ("quality_weight", quality_weight)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(AssessError::OutOfRange { what, value });
        }
    }
    Ok(goodness * quality_weight)
}

/// Measured features of one candidate area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureMeasurements {
    /// `max(side) / min(side)`, at least 1.
    pub elongation: f64,
    /// Interior micro-edges per pixel of area.
    pub edgedness: f64,
    /// Axis-aligned over diagonal interior micro-edges; infinite without diagonals.
    pub hv_d: f64,
    /// Fraction of the left side covered by vertical micro-edges.
    pub left_boundary: f64,
    pub right_boundary: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ElongationTable {
    pub compact_max: f64,
    pub compact_bel: f64,
    pub moderate_max: f64,
    pub moderate_bel: f64,
}

impl Default for ElongationTable {
    fn default() -> Self {
        Self {
            compact_max: 3.0,
            compact_bel: 0.5,
            moderate_max: 5.0,
            moderate_bel: 0.3,
        }
    }
}

impl ElongationTable {
    pub fn belief(&self, elongation: f64) -> Result<f64, AssessError> {
        if elongation.is_nan() || elongation < 1.0 {
            return Err(AssessError::OutOfRange {
                what: "elongation",
                value: elongation,
            });
        }
        Ok(if elongation <= self.compact_max {
            self.compact_bel
        } else if elongation <= self.moderate_max {
            self.moderate_bel
        } else {
            0.0
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TextureTable {
    /// Edgedness strictly below this counts as a clear interior.
    pub sparse_below: f64,
    pub sparse_bel: f64,
    pub regular_hv_d: f64,
    pub regular_bel: f64,
    pub mixed_hv_d: f64,
    pub mixed_bel: f64,
}

impl Default for TextureTable {
    fn default() -> Self {
        Self {
            sparse_below: 0.1,
            sparse_bel: 0.4,
            regular_hv_d: 4.0,
            regular_bel: 0.4,
            mixed_hv_d: 2.0,
            mixed_bel: 0.2,
        }
    }
}

impl TextureTable {
    /// Branches are tried in order: sparse interior, dominant axis-aligned
    /// edges, mixed, otherwise nothing.
    pub fn belief(&self, edgedness: f64, hv_d: f64) -> f64 {
        if edgedness < self.sparse_below {
            self.sparse_bel
        } else if hv_d >= self.regular_hv_d {
            self.regular_bel
        } else if hv_d >= self.mixed_hv_d {
            self.mixed_bel
        } else {
            0.0
        }
    }
}

/// Quantises side coverage onto the boundary belief levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundaryTable {
    pub strong_cover: f64,
    pub strong_bel: f64,
    pub partial_cover: f64,
    pub partial_bel: f64,
    pub weak_cover: f64,
    pub weak_bel: f64,
}

impl Default for BoundaryTable {
    fn default() -> Self {
        Self {
            strong_cover: 0.75,
            strong_bel: 0.6,
            partial_cover: 0.4,
            partial_bel: 0.3,
            weak_cover: 0.15,
            weak_bel: 0.1,
        }
    }
}

impl BoundaryTable {
    pub fn belief(&self, support: f64) -> Result<f64, AssessError> {
        if !(0.0..=1.0).contains(&support) {
            return Err(AssessError::OutOfRange {
                what: "boundary support",
                value: support,
            });
        }
        Ok(if support >= self.strong_cover {
            self.strong_bel
        } else if support >= self.partial_cover {
            self.partial_bel
        } else if support >= self.weak_cover {
            self.weak_bel
        } else {
            0.0
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BeliefTables {
    pub elongation: ElongationTable,
    pub texture: TextureTable,
    pub boundary: BoundaryTable,
}

pub fn elongation_belief(elongation: f64) -> Result<f64, AssessError> {
    ElongationTable::default().belief(elongation)
}

pub fn texture_belief(edgedness: f64, hv_d: f64) -> f64 {
    TextureTable::default().belief(edgedness, hv_d)
}

pub fn boundary_belief(support: f64) -> Result<f64, AssessError> {
    BoundaryTable::default().belief(support)
}
