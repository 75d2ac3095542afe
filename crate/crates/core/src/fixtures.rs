use crate::evidence::{combine_all, simple_support, Clause, EvidenceError, Frame, MassFunction};
use crate::io::ReportRow;
use crate::knowledge::{verify, KnowledgeSource, VerificationResult};
use crate::pyramid::{
    stage_a_belief, stage_b_belief, stage_c_belief, FeatureBeliefs, GrayImage, Rect, SiblingFlags,
    StageKnowledge,
};

pub const SHUTTER_KS: &str = include_str!("../assets/shutter.ks");
pub const CHIMNEY_KS: &str = include_str!("../assets/chimney.ks");
pub const WINDOW_KS: &str = include_str!("../assets/window.ks");
pub const SIBLING_KS: &str = include_str!("../assets/sibling.ks");
pub const SHUTTER_EVIDENCE: &str = include_str!("../assets/shutter_evidence.mass");
pub const PIPELINE_TOML: &str = include_str!("../assets/pipeline.toml");

/// One column of the published belief table for the house image: observed
/// feature beliefs and the three staged window beliefs as printed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Column {
    pub label: &'static str,
    pub is_window: bool,
    pub elong: f64,
    pub text: f64,
    pub lt_bound: f64,
    pub rt_bound: f64,
    pub v_sibl: f64,
    pub h_sibl: f64,
    pub non_window: f64,
    pub bel_a: f64,
    pub bel_b: f64,
    pub bel_c: f64,
}

const fn col(label: &'static str, is_window: bool, f: [f64; 7], staged: [f64; 3]) -> Table1Column {
    Table1Column {
        label,
        is_window,
        elong: f[0],
        text: f[1],
        lt_bound: f[2],
        rt_bound: f[3],
        v_sibl: f[4],
        h_sibl: f[5],
        non_window: f[6],
        bel_a: staged[0],
        bel_b: staged[1],
        bel_c: staged[2],
    }
}

/// elong, text, lt-bound, rt-bound, v-sibl, h-sibl, non-window; then printed Bel, Bel', Bel''.
pub const TABLE1: [Table1Column; 13] = [
    col(
        "W1-6",
        true,
        [0.5, 0.4, 0.6, 0.6, 0.6, 0.6, 0.0],
        [0.449, 0.492, 0.492],
    ),
    col(
        "W7",
        true,
        [0.5, 0.2, 0.6, 0.6, 0.6, 0.6, 0.0],
        [0.409, 0.475, 0.475],
    ),
    col(
        "W8",
        true,
        [0.5, 0.4, 0.6, 0.6, 0.6, 0.6, 0.0],
        [0.449, 0.492, 0.492],
    ),
    col(
        "W9",
        true,
        [0.5, 0.4, 0.6, 0.3, 0.6, 0.6, 0.0],
        [0.407, 0.475, 0.475],
    ),
    col(
        "W10",
        true,
        [0.5, 0.4, 0.6, 0.1, 0.6, 0.6, 0.0],
        [0.379, 0.462, 0.462],
    ),
    col(
        "W11",
        true,
        [0.5, 0.4, 0.6, 0.6, 0.6, 0.6, 0.0],
        [0.449, 0.492, 0.492],
    ),
    col(
        "W12",
        true,
        [0.5, 0.4, 0.6, 0.6, 0.6, 0.6, 0.0],
        [0.449, 0.492, 0.492],
    ),
    col(
        "4",
        false,
        [0.3, 0.4, 0.0, 0.6, 0.0, 0.0, 0.5],
        [0.335, 0.134, 0.080],
    ),
    col(
        "5",
        false,
        [0.5, 0.0, 0.1, 0.3, 0.0, 0.6, 0.5],
        [0.205, 0.203, 0.166],
    ),
    col(
        "9",
        false,
        [0.5, 0.4, 0.0, 0.3, 0.6, 0.0, 0.0],
        [0.262, 0.225, 0.225],
    ),
    col(
        "15",
        false,
        [0.3, 0.4, 0.0, 0.6, 0.0, 0.0, 0.0],
        [0.335, 0.134, 0.134],
    ),
    col(
        "17",
        false,
        [0.5, 0.0, 0.6, 0.0, 0.6, 0.0, 0.0],
        [0.285, 0.234, 0.234],
    ),
    col(
        "18",
        false,
        [0.5, 0.0, 0.3, 0.1, 0.6, 0.0, 0.5],
        [0.205, 0.203, 0.166],
    ),
];

/// Runs the three verification stages on every table column.
pub fn table1_rows(ks: &StageKnowledge) -> Result<Vec<ReportRow>, EvidenceError> {
    TABLE1
        .iter()
        .map(|c| {
            let beliefs = FeatureBeliefs::new(c.elong, c.text, c.lt_bound, c.rt_bound);
            let sib = SiblingFlags {
                v: c.v_sibl,
                h: c.h_sibl,
            };
            let bel_a = stage_a_belief(&beliefs, ks)?;
            Ok(ReportRow {
                id: c.label.to_string(),
                elong: c.elong,
                text: c.text,
                lt_bound: c.lt_bound,
                rt_bound: c.rt_bound,
                bel_a,
                v_sibl: c.v_sibl,
                h_sibl: c.h_sibl,
                bel_b: stage_b_belief(bel_a, sib, ks)?,
                non_window: c.non_window,
                bel_c: stage_c_belief(bel_a, c.non_window, sib, ks)?,
            })
        })
        .collect()
}

/// Shutter evidence: simple supports `long` 0.6, `low` 0.7, `next-to` 0.5 combined.
pub fn shutter_evidence() -> Result<MassFunction, EvidenceError> {
    let frame = Frame::new(["long", "low", "next-to"])?;
    let supports = [("long", 0.6), ("low", 0.7), ("next-to", 0.5)]
        .into_iter()
        .map(|(atom, s)| simple_support(&frame, &Clause::atom(&frame, atom)?, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(combine_all(&supports)?.result)
}

pub fn shutter_knowledge() -> KnowledgeSource {
    KnowledgeSource::parse(SHUTTER_KS).expect("bundled shutter knowledge")
}

/// Verifies the shutter hypothesis on the combined shutter evidence.
pub fn shutter_verification() -> Result<VerificationResult, EvidenceError> {
    verify(&shutter_evidence()?, &shutter_knowledge())
}

/// Synthetic 128x128 facade: a bright building on a mid-gray sky with a
/// 3x4 grid of dark windows, plus one dark decoy rectangle in the sky.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticFacade {
    pub image: GrayImage,
    pub building: Rect,
    pub windows: Vec<Rect>,
    pub decoy: Rect,
}

pub fn synthetic_facade() -> SyntheticFacade {
    let (sky, wall, dark) = (120, 200, 40);
    let building = Rect::new(12, 4, 116, 88);
    let decoy = Rect::new(40, 108, 16, 12);
    let mut image = GrayImage::filled(128, 128, sky);
    image.fill_rect(
        building.top,
        building.left,
        building.height,
        building.width,
        wall,
    );
    let mut windows = Vec::new();
    for top in [24, 56, 88] {
        for left in [12, 32, 52, 72] {
            let w = Rect::new(top, left, 16, 12);
            image.fill_rect(w.top, w.left, w.height, w.width, dark);
            windows.push(w);
        }
    }
    image.fill_rect(decoy.top, decoy.left, decoy.height, decoy.width, dark);
    SyntheticFacade {
        image,
        building,
        windows,
        decoy,
    }
}
