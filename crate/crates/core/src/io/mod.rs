//! File formats: PGM images in, TSV belief reports and PPM overlays out.

mod overlay;
mod pgm;
mod report;

pub use overlay::{belief_color, render_overlay, write_overlay, HIGH, LOW, MEDIUM};
pub use pgm::{encode_pgm, parse_pgm, read_pgm, write_pgm, PgmEncoding};
pub use report::{compare_ids, render_report, write_report, ReportRow, REPORT_HEADER};

use thiserror::Error;

use crate::pyramid::Rect;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("corrupt PGM header: {0}")]
    CorruptHeader(String),
    #[error("truncated pixel data: expected {expected} samples, found {found}")]
    TruncatedData { expected: usize, found: usize },
    #[error("pixel value {value} exceeds maxval {maxval}")]
    PixelOutOfRange { value: u32, maxval: u32 },
    #[error("rectangle {0:?} lies outside the image")]
    RectOutOfBounds(Rect),
    #[error("report value {value} of `{id}` is outside [0, 1]")]
    ValueOutOfRange { id: String, value: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
