use serde::{Deserialize, Serialize};

use super::PyramidError;
use crate::assess::{BeliefTables, BoundaryTable, ElongationTable, TextureTable};

/// Tunables of the window pipeline, read from `key = value` text (TOML).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Minimum `|gx| + |gy|` of a micro-edge, in gray levels.
    pub edge_threshold: u32,
    /// Children (of 4) that must agree for a short edge.
    pub short_support: u32,
    /// Children (of 4) that must agree for a long edge.
    pub long_support: u32,
    /// Allowed separation of paired horizontal lines, base pixels.
    pub pair_min_sep: f64,
    pub pair_max_sep: f64,
    pub survivor_threshold: f64,
    /// Alignment tolerance of the sibling search, in long-edge cells.
    pub sibling_tolerance: u32,
    pub sibling_support: f64,
    pub non_window_support: f64,
    /// Long edges within this many cells belong to one cluster.
    pub cluster_radius: usize,
    pub interior_margin: usize,
    pub side_reach: usize,
    pub quality_weight: f64,
    pub elongation: ElongationTable,
    pub texture: TextureTable,
    pub boundary: BoundaryTable,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            edge_threshold: 32,
            short_support: 2,
            long_support: 2,
            pair_min_sep: 4.0,
            pair_max_sep: 48.0,
            survivor_threshold: 0.3,
            sibling_tolerance: 2,
            sibling_support: 0.6,
            non_window_support: 0.5,
            cluster_radius: 2,
            interior_margin: 2,
            side_reach: 1,
            quality_weight: 1.0,
            elongation: ElongationTable::default(),
            texture: TextureTable::default(),
            boundary: BoundaryTable::default(),
        }
    }
}

impl PipelineConfig {
    pub fn parse(text: &str) -> Result<Self, PyramidError> {
        let config: Self =
            toml::from_str(text).map_err(|e| PyramidError::Config(e.message().to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), PyramidError> {
        let bad = |msg: &str| Err(PyramidError::Config(msg.to_string()));
        if !(1..=4).contains(&self.short_support) || !(2..=4).contains(&self.long_support) {
            return bad("short_support must be 1..=4 and long_support 2..=4");
        }
        if !(self.pair_min_sep > 0.0 && self.pair_min_sep <= self.pair_max_sep) {
            return bad("need 0 < pair_min_sep <= pair_max_sep");
        }
        for (name, v) in [
            ("survivor_threshold", self.survivor_threshold),
            ("sibling_support", self.sibling_support),
            ("non_window_support", self.non_window_support),
            ("quality_weight", self.quality_weight),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(PyramidError::Config(format!(
                    "{name} = {v} is outside [0, 1]"
                )));
            }
        }
        Ok(())
    }

    pub fn tables(&self) -> BeliefTables {
        BeliefTables {
            elongation: self.elongation,
            texture: self.texture,
            boundary: self.boundary,
        }
    }
}
