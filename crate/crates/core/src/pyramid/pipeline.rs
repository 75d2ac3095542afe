use rayon::prelude::*;

use super::candidates::{find_window_candidates, CandidateArea, Rect};
use super::config::PipelineConfig;
use super::edges::{aggregate_long_edges, aggregate_short_edges, extract_micro_edges};
use super::measure::measure_features;
use super::stages::{
    building_region, non_window_supports, sibling_search, stage_a_belief, stage_b_belief,
    stage_c_belief, FeatureBeliefs, StageKnowledge,
};
use super::{build_pyramid, GrayImage, PyramidError};

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub base_level: u32,
    pub micro_edges: usize,
    pub short_edges: usize,
    pub long_edges: usize,
    /// Bounding box of the building's edge cluster, if any long edge exists.
    pub building: Option<Rect>,
    pub candidates: Vec<CandidateArea>,
}

/// Runs every stage on the current rayon pool.
pub fn run_pipeline(
    image: &GrayImage,
    config: &PipelineConfig,
    knowledge: &StageKnowledge,
) -> Result<PipelineOutput, PyramidError> {
    config.validate()?;
    let pyramid = build_pyramid(image)?;
    let base_level = pyramid.base_level();
    if base_level < 3 {
        return Err(PyramidError::BadDimensions {
            width: image.width,
            height: image.height,
        });
    }

    let micro = extract_micro_edges(&pyramid, config.edge_threshold);
    let short = aggregate_short_edges(&micro, base_level, config.short_support);
    let long = aggregate_long_edges(&short, config.long_support);
    let cell = pyramid.cell_size(long.level());

    let mut candidates =
        find_window_candidates(&long, cell, config.pair_min_sep, config.pair_max_sep);

    let tables = config.tables();
    let assessed: Vec<_> = candidates
        .par_iter()
        .map(|c| -> Result<_, PyramidError> {
            let m = measure_features(&micro, &c.rect, config.interior_margin, config.side_reach)?;
            let beliefs = FeatureBeliefs::from_measurements(&m, &tables, config.quality_weight)?;
            let bel_a = stage_a_belief(&beliefs, knowledge)?;
            Ok((m, beliefs, bel_a))
        })
        .collect::<Result<_, _>>()?;
    for (c, (m, beliefs, bel_a)) in candidates.iter_mut().zip(assessed) {
        c.measurements = Some(m);
        c.beliefs = beliefs;
        c.bel_a = bel_a;
    }

    let tolerance = (config.sibling_tolerance as usize * cell) as f64;
    let flags = sibling_search(
        &candidates,
        config.survivor_threshold,
        tolerance,
        config.sibling_support,
    );
    for (c, f) in candidates.iter_mut().zip(flags) {
        c.siblings = f;
    }

    let building = match building_region(&long, cell, config.cluster_radius) {
        Ok(rect) => Some(rect),
        Err(PyramidError::NoEdges) => None,
        Err(e) => return Err(e),
    };
    let non_window = non_window_supports(building.as_ref(), &candidates, config.non_window_support);
    for (c, n) in candidates.iter_mut().zip(non_window) {
        c.non_window = n;
    }

    let staged: Vec<(f64, f64)> = candidates
        .par_iter()
        .map(|c| {
            let b = stage_b_belief(c.bel_a, c.siblings, knowledge)?;
            let s = stage_c_belief(c.bel_a, c.non_window, c.siblings, knowledge)?;
            Ok((b, s))
        })
        .collect::<Result<_, PyramidError>>()?;
    for (c, (b, s)) in candidates.iter_mut().zip(staged) {
        c.bel_b = b;
        c.bel_c = s;
    }

    Ok(PipelineOutput {
        base_level,
        micro_edges: micro.cells().iter().flatten().count(),
        short_edges: short.len(),
        long_edges: long.len(),
        building,
        candidates,
    })
}

/// [`run_pipeline`] on a dedicated pool of `workers` threads.
pub fn run_pipeline_with_workers(
    image: &GrayImage,
    config: &PipelineConfig,
    knowledge: &StageKnowledge,
    workers: usize,
) -> Result<PipelineOutput, PyramidError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| PyramidError::Workers(e.to_string()))?;
    pool.install(|| run_pipeline(image, config, knowledge))
}
