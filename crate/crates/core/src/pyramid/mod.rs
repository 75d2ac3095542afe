//! Level-structured image pyramid and the window-recognition pipeline.
//!
//! Level `L` is a `2^L × 2^L` grid; each level-`L-1` cell summarises the 2×2
//! block beneath it. The base image sits at level 7 (128×128). Micro-edges are
//! found at the base, short edges at base−1, long edges at base−2, and window
//! candidates come from pairs of opposite-polarity horizontal long edges.
//!
//! Every stage is a data-parallel map over cells or candidates followed by an
//! implicit barrier (the next stage only starts once the previous one has
//! produced its full, immutable output). Results never depend on the number of
//! worker threads.

mod candidates;
mod config;
mod edges;
mod measure;
mod pipeline;
mod stages;

pub use candidates::{
    find_horizontal_lines, find_window_candidates, CandidateArea, HorizontalLine, Rect,
};
pub use config::PipelineConfig;
pub use edges::{
    aggregate_long_edges, aggregate_short_edges, extract_micro_edges, Direction, EdgeLayer,
    EdgeSegment, MicroEdge, MicroEdgeGrid,
};
pub use measure::measure_features;
pub use pipeline::{run_pipeline, run_pipeline_with_workers, PipelineOutput};
pub use stages::{
    building_region, non_window_supports, sibling_search, stage_a_belief, stage_b_belief,
    stage_c_belief, FeatureBeliefs, SiblingFlags, StageKnowledge,
};

use rayon::prelude::*;
use thiserror::Error;

use crate::assess::AssessError;
use crate::evidence::EvidenceError;

/// Side of the base level the pipeline works at.
pub const BASE_SIDE: usize = 128;

#[derive(Debug, Error)]
pub enum PyramidError {
    #[error("image must be square with a power-of-two side of at least 8, got {width}x{height}")]
    BadDimensions { width: usize, height: usize },
    #[error("rectangle {0:?} lies outside the base level")]
    RectOutOfBounds(Rect),
    #[error("no long edges were found")]
    NoEdges,
    #[error("invalid pipeline configuration: {0}")]
    Config(String),
    #[error("could not start worker pool: {0}")]
    Workers(String),
    #[error(transparent)]
    Evidence(#[from] EvidenceError),
    #[error(transparent)]
    Assess(#[from] AssessError),
}

/// 8-bit grayscale raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Self {
        assert_eq!(pixels.len(), width * height, "pixel buffer size");
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        self.pixels[row * self.width + col] = value;
    }

    /// Paints `[top, top+height) × [left, left+width)`, clipped to the image.
    pub fn fill_rect(&mut self, top: usize, left: usize, height: usize, width: usize, value: u8) {
        for r in top..(top + height).min(self.height) {
            for c in left..(left + width).min(self.width) {
                self.set(r, c, value);
            }
        }
    }
}

/// Square grid of cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid<T> {
    side: usize,
    cells: Vec<T>,
}

impl<T> Grid<T> {
    pub fn from_cells(side: usize, cells: Vec<T>) -> Self {
        assert_eq!(cells.len(), side * side, "grid cell count");
        Self { side, cells }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.cells[row * self.side + col]
    }

    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        let side = self.side;
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, v)| ((i / side, i % side), v))
    }
}

impl<T: Send> Grid<T> {
    /// Builds a grid by evaluating `f` on every cell in parallel.
    pub fn par_from_fn(side: usize, f: impl Fn(usize, usize) -> T + Sync) -> Self {
        let cells = (0..side * side)
            .into_par_iter()
            .map(|i| f(i / side, i % side))
            .collect();
        Self { side, cells }
    }
}

/// Gray levels for every level from the apex (level 0) to the base.
#[derive(Debug, Clone)]
pub struct Pyramid {
    levels: Vec<Grid<u8>>,
}

impl Pyramid {
    pub fn base_level(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    pub fn base(&self) -> &Grid<u8> {
        self.levels.last().expect("pyramid has a base")
    }

    pub fn level(&self, level: u32) -> &Grid<u8> {
        &self.levels[level as usize]
    }

    /// Base-level pixels spanned by one cell of `level`.
    pub fn cell_size(&self, level: u32) -> usize {
        1 << (self.base_level() - level)
    }
}

/// Stores the image at the base level and fills the levels above it with 2×2
/// means. Images larger than 128×128 are first reduced to 128×128 by block
/// averaging.
pub fn build_pyramid(image: &GrayImage) -> Result<Pyramid, PyramidError> {
    let side = image.width;
    if image.width != image.height || side < 8 || !side.is_power_of_two() {
        return Err(PyramidError::BadDimensions {
            width: image.width,
            height: image.height,
        });
    }
    let base = if side > BASE_SIDE {
        block_average(image, side / BASE_SIDE)
    } else {
        Grid::from_cells(side, image.pixels.clone())
    };
    let mut levels = vec![base];
    while levels[0].side() > 1 {
        let child = &levels[0];
        let side = child.side() / 2;
        let parent = Grid::par_from_fn(side, |r, c| {
            let sum: u32 = [(0, 0), (0, 1), (1, 0), (1, 1)]
                .iter()
                .map(|(dr, dc)| *child.get(2 * r + dr, 2 * c + dc) as u32)
                .sum();
            ((sum + 2) / 4) as u8
        });
        levels.insert(0, parent);
    }
    Ok(Pyramid { levels })
}

fn block_average(image: &GrayImage, factor: usize) -> Grid<u8> {
    let n = (factor * factor) as u32;
    Grid::par_from_fn(image.width / factor, |r, c| {
        let mut sum = 0u32;
        for dr in 0..factor {
            for dc in 0..factor {
                sum += image.get(r * factor + dr, c * factor + dc) as u32;
            }
        }
        ((sum + n / 2) / n) as u8
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_at_level_seven() {
        let mut img = GrayImage::filled(128, 128, 10);
        img.set(5, 9, 200);
        let p = build_pyramid(&img).unwrap();
        assert_eq!(p.base_level(), 7);
        assert_eq!(p.base().cells(), img.pixels.as_slice());
        assert_eq!(p.level(0).side(), 1);
        assert_eq!(p.level(5).side(), 32);
        assert_eq!(p.cell_size(5), 4);
    }

    #[test]
    fn large_input_is_reduced() {
        let img = GrayImage::filled(512, 512, 77);
        let p = build_pyramid(&img).unwrap();
        assert_eq!(p.base_level(), 7);
        assert!(p.base().cells().iter().all(|&v| v == 77));
    }

    #[test]
    fn block_average_rounds_means() {
        let mut img = GrayImage::filled(256, 256, 0);
        img.fill_rect(0, 0, 1, 1, 3);
        let p = build_pyramid(&img).unwrap();
        // (3 + 0 + 0 + 0 + 2) / 4 = 1
        assert_eq!(*p.base().get(0, 0), 1);
    }

    #[test]
    fn parent_is_mean_of_children() {
        let mut img = GrayImage::filled(8, 8, 0);
        img.fill_rect(0, 0, 2, 1, 100);
        let p = build_pyramid(&img).unwrap();
        assert_eq!(p.base_level(), 3);
        assert_eq!(*p.level(2).get(0, 0), 50);
        assert_eq!(*p.level(2).get(0, 1), 0);
    }

    #[test]
    fn rejects_bad_dimensions() {
        for (w, h) in [(100, 100), (128, 64), (4, 4)] {
            assert!(matches!(
                build_pyramid(&GrayImage::filled(w, h, 0)),
                Err(PyramidError::BadDimensions { .. })
            ));
        }
    }
}
