use std::collections::BTreeSet;

use super::edges::{Direction, EdgeLayer};
use super::stages::{FeatureBeliefs, SiblingFlags};
use crate::assess::FeatureMeasurements;

/// Axis-aligned rectangle in base-level pixels, `[top, top+height) × [left, left+width)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rect {
    pub top: usize,
    pub left: usize,
    pub height: usize,
    pub width: usize,
}

impl Rect {
    pub fn new(top: usize, left: usize, height: usize, width: usize) -> Self {
        Self {
            top,
            left,
            height,
            width,
        }
    }

    pub fn bottom(&self) -> usize {
        self.top + self.height
    }

    pub fn right(&self) -> usize {
        self.left + self.width
    }

    pub fn area(&self) -> usize {
        self.height * self.width
    }

    /// `(row, col)` of the centre in continuous pixel coordinates.
    pub fn center(&self) -> (f64, f64) {
        (
            self.top as f64 + self.height as f64 / 2.0,
            self.left as f64 + self.width as f64 / 2.0,
        )
    }

    pub fn contains(&self, other: &Rect) -> bool {
        self.top <= other.top
            && self.left <= other.left
            && other.bottom() <= self.bottom()
            && other.right() <= self.right()
    }

    pub fn intersection_area(&self, other: &Rect) -> usize {
        let h = self
            .bottom()
            .min(other.bottom())
            .saturating_sub(self.top.max(other.top));
        let w = self
            .right()
            .min(other.right())
            .saturating_sub(self.left.max(other.left));
        h * w
    }

    pub fn iou(&self, other: &Rect) -> f64 {
        let inter = self.intersection_area(other);
        let union = self.area() + other.area() - inter;
        if union == 0 {
            0.0
        } else {
            inter as f64 / union as f64
        }
    }
}

/// A window hypothesis and everything the stages attach to it.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateArea {
    pub id: usize,
    pub rect: Rect,
    pub measurements: Option<FeatureMeasurements>,
    pub beliefs: FeatureBeliefs,
    /// Window belief from shape, texture and boundaries.
    pub bel_a: f64,
    pub siblings: SiblingFlags,
    /// After the sibling knowledge.
    pub bel_b: f64,
    pub non_window: f64,
    /// After adding the building-boundary conflict.
    pub bel_c: f64,
}

impl CandidateArea {
    pub fn new(id: usize, rect: Rect) -> Self {
        Self {
            id,
            rect,
            measurements: None,
            beliefs: FeatureBeliefs::default(),
            bel_a: 0.0,
            siblings: SiblingFlags::default(),
            bel_b: 0.0,
            non_window: 0.0,
            bel_c: 0.0,
        }
    }
}

/// Connected run of same-direction horizontal long edges.
#[derive(Debug, Clone, PartialEq)]
pub struct HorizontalLine {
    pub direction: Direction,
    /// First and last long-edge column, inclusive.
    pub col_start: usize,
    pub col_end: usize,
    /// Boundary row in base pixels: the micro-edge centroid shifted to the
    /// pixel seam.
    pub y: f64,
    pub members: usize,
}

/// Groups horizontal long edges into lines (8-connected, same direction).
pub fn find_horizontal_lines(long: &EdgeLayer) -> Vec<HorizontalLine> {
    let side = long.side();
    let mut lines = Vec::new();
    for direction in [Direction::new(2), Direction::new(6)] {
        let mut seen = vec![false; side * side];
        for start in 0..side * side {
            if seen[start] || long.get(start / side, start % side, direction).is_none() {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let (mut col_start, mut col_end) = (usize::MAX, 0);
            let (mut micro, mut row_sum, mut members) = (0u64, 0u64, 0usize);
            while let Some(i) = stack.pop() {
                let (r, c) = (i / side, i % side);
                let seg = long
                    .get(r, c, direction)
                    .expect("visited cells hold an edge");
                col_start = col_start.min(c);
                col_end = col_end.max(c);
                micro += seg.micro_count as u64;
                row_sum += seg.row_sum;
                members += 1;
                for nr in r.saturating_sub(1)..=(r + 1).min(side - 1) {
                    for nc in c.saturating_sub(1)..=(c + 1).min(side - 1) {
                        let j = nr * side + nc;
                        if !seen[j] && long.get(nr, nc, direction).is_some() {
                            seen[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
            lines.push(HorizontalLine {
                direction,
                col_start,
                col_end,
                y: row_sum as f64 / micro as f64 + 0.5,
                members,
            });
        }
    }
    lines.sort_by(|a, b| {
        a.y.total_cmp(&b.y)
            .then(a.col_start.cmp(&b.col_start))
            .then(a.direction.cmp(&b.direction))
    });
    lines
}

/// Pairs opposite-polarity horizontal lines into candidate rectangles.
///
/// A pair qualifies when the lines share at least one long-edge column and
/// their separation in base pixels lies in `[min_sep, max_sep]`. Rectangles
/// that contain another candidate are dropped in favour of the tighter one.
/// Ids follow raster order of the top edge, starting at 1.
pub fn find_window_candidates(
    long: &EdgeLayer,
    cell_size: usize,
    min_sep: f64,
    max_sep: f64,
) -> Vec<CandidateArea> {
    let lines = find_horizontal_lines(long);
    let mut rects = BTreeSet::new();
    for upper in &lines {
        for lower in &lines {
            if lower.direction != upper.direction.opposite() || lower.y <= upper.y {
                continue;
            }
            let sep = lower.y - upper.y;
            if sep < min_sep || sep > max_sep {
                continue;
            }
            let lo = upper.col_start.max(lower.col_start);
            let hi = upper.col_end.min(lower.col_end);
            if lo > hi {
                continue;
            }
            let top = upper.y.round() as usize;
            let bottom = lower.y.round() as usize;
            let rect = Rect::new(top, lo * cell_size, bottom - top, (hi - lo + 1) * cell_size);
            if rect.height >= 2 && rect.width >= 2 {
                rects.insert(rect);
            }
        }
    }
    let tight: Vec<Rect> = rects
        .iter()
        .filter(|r| !rects.iter().any(|o| o != *r && r.contains(o)))
        .copied()
        .collect();
    tight
        .into_iter()
        .enumerate()
        .map(|(i, rect)| CandidateArea::new(i + 1, rect))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pyramid::edges::{aggregate_long_edges, aggregate_short_edges, extract_micro_edges};
    use crate::pyramid::{build_pyramid, GrayImage};

    fn long_layer(img: &GrayImage) -> EdgeLayer {
        let p = build_pyramid(img).unwrap();
        let micro = extract_micro_edges(&p, 32);
        aggregate_long_edges(&aggregate_short_edges(&micro, p.base_level(), 2), 2)
    }

    #[test]
    fn rect_geometry() {
        let a = Rect::new(10, 10, 20, 20);
        let b = Rect::new(12, 12, 5, 5);
        assert!(a.contains(&b));
        assert!(!b.contains(&a));
        assert_eq!(a.center(), (20.0, 20.0));
        assert_eq!(a.iou(&a), 1.0);
        assert_eq!(a.iou(&Rect::new(40, 40, 2, 2)), 0.0);
        assert_eq!(a.intersection_area(&Rect::new(20, 20, 20, 20)), 100);
    }

    #[test]
    fn dark_band_gives_one_candidate() {
        let mut img = GrayImage::filled(128, 128, 200);
        img.fill_rect(20, 16, 8, 64, 40);
        let cands = find_window_candidates(&long_layer(&img), 4, 4.0, 48.0);
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].rect, Rect::new(20, 16, 8, 64));
        assert_eq!(cands[0].id, 1);
    }

    #[test]
    fn line_position_sits_on_the_seam() {
        let mut img = GrayImage::filled(128, 128, 200);
        img.fill_rect(24, 12, 16, 12, 40);
        let lines = find_horizontal_lines(&long_layer(&img));
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].direction, Direction::new(6));
        assert!((lines[0].y - 24.0).abs() < 0.5);
        assert_eq!((lines[0].col_start, lines[0].col_end), (3, 5));
        assert_eq!(lines[1].direction, Direction::new(2));
        assert!((lines[1].y - 40.0).abs() < 0.5);
    }

    #[test]
    fn no_edges_no_candidates() {
        let img = GrayImage::filled(128, 128, 90);
        assert!(find_window_candidates(&long_layer(&img), 4, 4.0, 48.0).is_empty());
    }

    #[test]
    fn separation_range_is_enforced() {
        let mut img = GrayImage::filled(128, 128, 200);
        img.fill_rect(20, 16, 60, 32, 40);
        assert!(find_window_candidates(&long_layer(&img), 4, 4.0, 48.0).is_empty());
        assert_eq!(
            find_window_candidates(&long_layer(&img), 4, 4.0, 64.0).len(),
            1
        );
    }

    #[test]
    fn nested_pairs_keep_the_tightest() {
        // two stacked windows: the pair spanning both is dropped
        let mut img = GrayImage::filled(128, 128, 200);
        img.fill_rect(24, 12, 16, 12, 40);
        img.fill_rect(56, 12, 16, 12, 40);
        let rects: Vec<Rect> = find_window_candidates(&long_layer(&img), 4, 4.0, 48.0)
            .into_iter()
            .map(|c| c.rect)
            .collect();
        assert!(rects.contains(&Rect::new(24, 12, 16, 12)));
        assert!(rects.contains(&Rect::new(56, 12, 16, 12)));
        // the wall strip between them pairs the reversed polarities
        assert!(rects.contains(&Rect::new(40, 12, 16, 12)));
        assert_eq!(rects.len(), 3);
        assert!(rects.windows(2).all(|w| w[0] < w[1]));
    }
}
