use rayon::prelude::*;

use super::candidates::{CandidateArea, Rect};
use super::edges::EdgeLayer;
use super::PyramidError;
use crate::assess::{assess_feature, AssessError, BeliefTables, FeatureMeasurements};
use crate::evidence::{combine_all, simple_support, Clause, EvidenceError, Frame, MassFunction};
use crate::knowledge::{verify, KnowledgeSource};

pub const ELONG: &str = "elong";
pub const TEXT: &str = "text";
pub const LEFT_BOUND: &str = "lt-bound";
pub const RIGHT_BOUND: &str = "rt-bound";
pub const WINDOW: &str = "window";
pub const V_SIBL: &str = "v-sibl";
pub const H_SIBL: &str = "h-sibl";

const WINDOW_KS: &str = include_str!("../../assets/window.ks");
const SIBLING_KS: &str = include_str!("../../assets/sibling.ks");

/// The two knowledge sources the staged verification consults.
#[derive(Debug, Clone, PartialEq)]
pub struct StageKnowledge {
    /// Over `elong`, `text`, `lt-bound`, `rt-bound`.
    pub window: KnowledgeSource,
    /// Over `window`, `v-sibl`, `h-sibl`.
    pub sibling: KnowledgeSource,
}

impl StageKnowledge {
    pub fn new(window: KnowledgeSource, sibling: KnowledgeSource) -> Result<Self, EvidenceError> {
        for atom in [ELONG, TEXT, LEFT_BOUND, RIGHT_BOUND] {
            window.frame().index_of(atom)?;
        }
        for atom in [WINDOW, V_SIBL, H_SIBL] {
            sibling.frame().index_of(atom)?;
        }
        Ok(Self { window, sibling })
    }
}

impl Default for StageKnowledge {
    fn default() -> Self {
        let window = KnowledgeSource::parse(WINDOW_KS).expect("bundled window knowledge");
        let sibling = KnowledgeSource::parse(SIBLING_KS).expect("bundled sibling knowledge");
        Self::new(window, sibling).expect("bundled knowledge frames")
    }
}

/// Simple-support masses of the four single features.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FeatureBeliefs {
    pub elong: f64,
    pub text: f64,
    pub left: f64,
    pub right: f64,
}

impl FeatureBeliefs {
    pub fn new(elong: f64, text: f64, left: f64, right: f64) -> Self {
        Self {
            elong,
            text,
            left,
            right,
        }
    }

    pub fn from_measurements(
        m: &FeatureMeasurements,
        tables: &BeliefTables,
        quality_weight: f64,
    ) -> Result<Self, AssessError> {
        let weigh = |bel: f64| assess_feature(bel, quality_weight);
        Ok(Self {
            elong: weigh(tables.elongation.belief(m.elongation)?)?,
            text: weigh(tables.texture.belief(m.edgedness, m.hv_d))?,
            left: weigh(tables.boundary.belief(m.left_boundary)?)?,
            right: weigh(tables.boundary.belief(m.right_boundary)?)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SiblingFlags {
    pub v: f64,
    pub h: f64,
}

fn support(frame: &Frame, clause: Clause, s: f64) -> Result<MassFunction, EvidenceError> {
    simple_support(frame, &clause, s)
}

fn combined_verify(
    ks: &KnowledgeSource,
    supports: Vec<MassFunction>,
) -> Result<f64, EvidenceError> {
    let evidence = combine_all(&supports)?.result;
    Ok(verify(&evidence, ks)?.bel)
}

/// `Bel(elong) ⊕ Bel(text) ⊕ Bel(lt-bound) ⊕ Bel(rt-bound)` verified against
/// the window knowledge.
pub fn stage_a_belief(b: &FeatureBeliefs, ks: &StageKnowledge) -> Result<f64, EvidenceError> {
    let f = ks.window.frame();
    let supports = vec![
        support(f, Clause::atom(f, ELONG)?, b.elong)?,
        support(f, Clause::atom(f, TEXT)?, b.text)?,
        support(f, Clause::atom(f, LEFT_BOUND)?, b.left)?,
        support(f, Clause::atom(f, RIGHT_BOUND)?, b.right)?,
    ];
    combined_verify(&ks.window, supports)
}

/// `Bel(window) ⊕ Bel(v-sibl) ⊕ Bel(h-sibl)` verified against the sibling knowledge.
pub fn stage_b_belief(
    bel_a: f64,
    s: SiblingFlags,
    ks: &StageKnowledge,
) -> Result<f64, EvidenceError> {
    let f = ks.sibling.frame();
    let supports = vec![
        support(f, Clause::atom(f, WINDOW)?, bel_a)?,
        support(f, Clause::atom(f, V_SIBL)?, s.v)?,
        support(f, Clause::atom(f, H_SIBL)?, s.h)?,
    ];
    combined_verify(&ks.sibling, supports)
}

/// Stage B with conflicting `¬window` evidence folded in first.
pub fn stage_c_belief(
    bel_a: f64,
    non_window: f64,
    s: SiblingFlags,
    ks: &StageKnowledge,
) -> Result<f64, EvidenceError> {
    let f = ks.sibling.frame();
    let supports = vec![
        support(f, Clause::negated(f, WINDOW)?, non_window)?,
        support(f, Clause::atom(f, WINDOW)?, bel_a)?,
        support(f, Clause::atom(f, V_SIBL)?, s.v)?,
        support(f, Clause::atom(f, H_SIBL)?, s.h)?,
    ];
    combined_verify(&ks.sibling, supports)
}

/// Lateral search among survivors (stage-A belief at least `survivor_threshold`).
///
/// A horizontal sibling has its vertical centre within `tolerance` pixels and
/// a disjoint horizontal extent; vertical siblings swap the axes.
pub fn sibling_search(
    cands: &[CandidateArea],
    survivor_threshold: f64,
    tolerance: f64,
    sibling_support: f64,
) -> Vec<SiblingFlags> {
    let survivors: Vec<&Rect> = cands
        .iter()
        .filter(|c| c.bel_a >= survivor_threshold)
        .map(|c| &c.rect)
        .collect();
    cands
        .par_iter()
        .map(|c| {
            if c.bel_a < survivor_threshold {
                return SiblingFlags::default();
            }
            let me = &c.rect;
            let (my_row, my_col) = me.center();
            let others = || survivors.iter().filter(|o| **o != me);
            let h = others().any(|o| {
                (o.center().0 - my_row).abs() <= tolerance
                    && (o.right() <= me.left || me.right() <= o.left)
            });
            let v = others().any(|o| {
                (o.center().1 - my_col).abs() <= tolerance
                    && (o.bottom() <= me.top || me.bottom() <= o.top)
            });
            SiblingFlags {
                v: if v { sibling_support } else { 0.0 },
                h: if h { sibling_support } else { 0.0 },
            }
        })
        .collect()
}

/// Bounding box, in base pixels, of the largest cluster of long edges.
///
/// Cells holding long edges join a cluster when they lie within `radius`
/// cells of a member (Chebyshev distance). Cluster size counts edges, so a
/// cell with two directions weighs twice. Ties go to the cluster reached
/// first in raster order.
pub fn building_region(
    long: &EdgeLayer,
    cell_size: usize,
    radius: usize,
) -> Result<Rect, PyramidError> {
    let side = long.side();
    let cells: Vec<(usize, usize)> = (0..side * side)
        .map(|i| (i / side, i % side))
        .filter(|&(r, c)| long.has_any(r, c))
        .collect();
    if cells.is_empty() {
        return Err(PyramidError::NoEdges);
    }
    let mut index = vec![usize::MAX; side * side];
    for (k, &(r, c)) in cells.iter().enumerate() {
        index[r * side + c] = k;
    }
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (k, &(r, c)) in cells.iter().enumerate() {
        for nr in r..=(r + radius).min(side - 1) {
            for nc in c.saturating_sub(radius)..=(c + radius).min(side - 1) {
                let j = index[nr * side + nc];
                if j != usize::MAX && j != k {
                    let (a, b) = (find(&mut parent, k), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    // roots are the smallest raster index of each cluster
    let mut weight = vec![0usize; cells.len()];
    for (k, &(r, c)) in cells.iter().enumerate() {
        let root = find(&mut parent, k);
        weight[root] += long.segments_at(r, c);
    }
    let best = (0..cells.len())
        .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
        .expect("non-empty");
    let members: Vec<(usize, usize)> = (0..cells.len())
        .filter(|&k| find(&mut parent, k) == best)
        .map(|k| cells[k])
        .collect();
    let top = members.iter().map(|m| m.0).min().unwrap_or(0);
    let bottom = members.iter().map(|m| m.0).max().unwrap_or(0) + 1;
    let left = members.iter().map(|m| m.1).min().unwrap_or(0);
    let right = members.iter().map(|m| m.1).max().unwrap_or(0) + 1;
    Ok(Rect::new(
        top * cell_size,
        left * cell_size,
        (bottom - top) * cell_size,
        (right - left) * cell_size,
    ))
}

/// `non_window_support` for candidates whose centre lies outside `region`.
pub fn non_window_supports(
    region: Option<&Rect>,
    cands: &[CandidateArea],
    non_window_support: f64,
) -> Vec<f64> {
    cands
        .iter()
        .map(|c| match region {
            None => 0.0,
            Some(region) => {
                let (row, col) = c.rect.center();
                let inside = row >= region.top as f64
                    && row <= region.bottom() as f64
                    && col >= region.left as f64
                    && col <= region.right() as f64;
                if inside {
                    0.0
                } else {
                    non_window_support
                }
            }
        })
        .collect()
}
