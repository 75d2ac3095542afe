use super::candidates::Rect;
use super::edges::MicroEdgeGrid;
use super::PyramidError;
use crate::assess::FeatureMeasurements;

/// Shape, texture and side-coverage measurements of one rectangle.
///
/// Texture counts micro-edges strictly inside the rectangle after dropping a
/// band of `interior_margin` pixels on every side, where the rectangle's own
/// outline responds. A side counts as covered on a row when a vertical
/// micro-edge sits within `side_reach` pixels of the side column.
pub fn measure_features(
    micro: &MicroEdgeGrid,
    rect: &Rect,
    interior_margin: usize,
    side_reach: usize,
) -> Result<FeatureMeasurements, PyramidError> {
    let side = micro.side();
    if rect.height == 0 || rect.width == 0 || rect.bottom() > side || rect.right() > side {
        return Err(PyramidError::RectOutOfBounds(*rect));
    }
    let (h, w) = (rect.height as f64, rect.width as f64);
    let elongation = h.max(w) / h.min(w);

    let (mut axis, mut diagonal) = (0usize, 0usize);
    let rows = (rect.top + interior_margin)..rect.bottom().saturating_sub(interior_margin);
    let cols = (rect.left + interior_margin)..rect.right().saturating_sub(interior_margin);
    for r in rows {
        for c in cols.clone() {
            if let Some(e) = micro.get(r, c) {
                if e.direction.is_axis_aligned() {
                    axis += 1;
                } else {
                    diagonal += 1;
                }
            }
        }
    }
    let edgedness = (axis + diagonal) as f64 / rect.area() as f64;
    let hv_d = if diagonal == 0 {
        f64::INFINITY
    } else {
        axis as f64 / diagonal as f64
    };

    let coverage = |side_col: usize| {
        let lo = side_col.saturating_sub(side_reach);
        let hi = (side_col + side_reach).min(side - 1);
        let covered = (rect.top..rect.bottom())
            .filter(|&r| {
                (lo..=hi).any(|c| {
                    micro
                        .get(r, c)
                        .is_some_and(|e| e.direction.is_vertical_edge())
                })
            })
            .count();
        covered as f64 / h
    };

    Ok(FeatureMeasurements {
        elongation,
        edgedness,
        hv_d,
        left_boundary: coverage(rect.left),
        right_boundary: coverage(rect.right() - 1),
    })
}
