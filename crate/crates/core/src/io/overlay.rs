use std::fs;
use std::path::Path;

use super::IoError;
use crate::pyramid::{CandidateArea, GrayImage};

pub const HIGH: [u8; 3] = [0, 255, 0];
pub const MEDIUM: [u8; 3] = [255, 255, 0];
pub const LOW: [u8; 3] = [255, 0, 0];

/// Outline color for a final window belief: `>= 0.4`, `[0.2, 0.4)`, `< 0.2`.
pub fn belief_color(bel: f64) -> [u8; 3] {
    if bel >= 0.4 {
        HIGH
    } else if bel >= 0.2 {
        MEDIUM
    } else {
        LOW
    }
}

/// `P6` image of the grayscale input with every candidate outlined (1 px).
///
/// Higher beliefs are drawn last so they stay visible where outlines cross.
pub fn render_overlay(image: &GrayImage, cands: &[CandidateArea]) -> Result<Vec<u8>, IoError> {
    for c in cands {
        let r = c.rect;
        if r.width == 0 || r.height == 0 || r.right() > image.width || r.bottom() > image.height {
            return Err(IoError::RectOutOfBounds(r));
        }
    }
    let mut rgb: Vec<[u8; 3]> = image.pixels.iter().map(|&v| [v, v, v]).collect();

    let mut order: Vec<&CandidateArea> = cands.iter().collect();
    order.sort_by(|a, b| a.bel_c.total_cmp(&b.bel_c).then(a.id.cmp(&b.id)));
    for c in order {
        let color = belief_color(c.bel_c);
        let r = c.rect;
        let mut paint = |row: usize, col: usize| rgb[row * image.width + col] = color;
        for col in r.left..r.right() {
            paint(r.top, col);
            paint(r.bottom() - 1, col);
        }
        for row in r.top..r.bottom() {
            paint(row, r.left);
            paint(row, r.right() - 1);
        }
    }

    let mut out = format!("P6\n{} {}\n255\n", image.width, image.height).into_bytes();
    out.extend(rgb.into_iter().flatten());
    Ok(out)
}

pub fn write_overlay(
    image: &GrayImage,
    cands: &[CandidateArea],
    path: impl AsRef<Path>,
) -> Result<(), IoError> {
    fs::write(path, render_overlay(image, cands)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pyramid::Rect;

    fn header_len(img: &GrayImage) -> usize {
        format!("P6\n{} {}\n255\n", img.width, img.height).len()
    }

    #[test]
    fn no_candidates_is_plain_gray() {
        let img = GrayImage::filled(8, 8, 77);
        let out = render_overlay(&img, &[]).unwrap();
        assert!(out[header_len(&img)..].iter().all(|&b| b == 77));
        assert_eq!(out.len(), header_len(&img) + 8 * 8 * 3);
    }

    #[test]
    fn one_pixel_outline() {
        let img = GrayImage::filled(16, 16, 10);
        let mut c = CandidateArea::new(1, Rect::new(2, 3, 5, 6));
        c.bel_c = 0.45;
        let out = render_overlay(&img, &[c]).unwrap();
        let px = &out[header_len(&img)..];
        let at = |r: usize, col: usize| {
            [
                px[(r * 16 + col) * 3],
                px[(r * 16 + col) * 3 + 1],
                px[(r * 16 + col) * 3 + 2],
            ]
        };
        let mut painted = 0;
        for r in 0..16 {
            for col in 0..16 {
                let on_outline = (2..7).contains(&r)
                    && (3..9).contains(&col)
                    && (r == 2 || r == 6 || col == 3 || col == 8);
                if on_outline {
                    assert_eq!(at(r, col), HIGH);
                    painted += 1;
                } else {
                    assert_eq!(at(r, col), [10, 10, 10]);
                }
            }
        }
        assert_eq!(painted, 2 * 6 + 2 * 3);
    }

    #[test]
    fn color_bins() {
        assert_eq!(belief_color(0.492), HIGH);
        assert_eq!(belief_color(0.4), HIGH);
        assert_eq!(belief_color(0.234), MEDIUM);
        assert_eq!(belief_color(0.2), MEDIUM);
        assert_eq!(belief_color(0.166), LOW);
    }

    #[test]
    fn out_of_bounds_rect() {
        let img = GrayImage::filled(8, 8, 0);
        let c = CandidateArea::new(1, Rect::new(4, 4, 5, 2));
        assert!(matches!(
            render_overlay(&img, &[c]),
            Err(IoError::RectOutOfBounds(_))
        ));
    }
}
