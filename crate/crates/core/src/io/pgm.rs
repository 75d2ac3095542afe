use std::fs;
use std::path::Path;

use super::IoError;
use crate::pyramid::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmEncoding {
    /// `P5`
    Binary,
    /// `P2`
    Ascii,
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<GrayImage, IoError> {
    parse_pgm(&fs::read(path)?)
}

/// Decodes `P5` or `P2` data with maxval at most 255.
///
/// Samples are rescaled to 0..=255 when maxval is smaller.
pub fn parse_pgm(data: &[u8]) -> Result<GrayImage, IoError> {
    let mut cur = Cursor { data, pos: 0 };
    let magic = cur
        .token()
        .ok_or_else(|| IoError::CorruptHeader("empty file".into()))?;
    let encoding = match magic {
        b"P5" => PgmEncoding::Binary,
        b"P2" => PgmEncoding::Ascii,
        other => {
            return Err(IoError::UnsupportedFormat(format!(
                "magic `{}`",
                String::from_utf8_lossy(other)
            )))
        }
    };
    let width = cur.header_number("width")?;
    let height = cur.header_number("height")?;
    let maxval = cur.header_number("maxval")?;
    if width == 0 || height == 0 {
        return Err(IoError::CorruptHeader(format!(
            "dimensions {width}x{height}"
        )));
    }
    if maxval == 0 {
        return Err(IoError::CorruptHeader("maxval 0".into()));
    }
    if maxval > 255 {
        return Err(IoError::UnsupportedFormat(format!(
            "maxval {maxval} (16-bit samples)"
        )));
    }
    let expected = width * height;
    let mut samples = Vec::with_capacity(expected);
    match encoding {
        PgmEncoding::Binary => {
            // exactly one whitespace byte separates the header from the raster
            match cur.data.get(cur.pos) {
                Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
                _ => {
                    return Err(IoError::CorruptHeader(
                        "missing separator after maxval".into(),
                    ))
                }
            }
            let raster = &cur.data[cur.pos..];
            if raster.len() < expected {
                return Err(IoError::TruncatedData {
                    expected,
                    found: raster.len(),
                });
            }
            samples.extend(raster[..expected].iter().map(|&b| b as u32));
        }
        PgmEncoding::Ascii => {
            while samples.len() < expected {
                let Some(tok) = cur.token() else {
                    return Err(IoError::TruncatedData {
                        expected,
                        found: samples.len(),
                    });
                };
                let value = parse_number(tok).ok_or_else(|| {
                    IoError::CorruptHeader(format!("bad sample `{}`", String::from_utf8_lossy(tok)))
                })?;
                samples.push(value as u32);
            }
        }
    }
    let maxval = maxval as u32;
    let pixels = samples
        .into_iter()
        .map(|v| {
            if v > maxval {
                Err(IoError::PixelOutOfRange { value: v, maxval })
            } else if maxval == 255 {
                Ok(v as u8)
            } else {
                Ok(((v * 255 + maxval / 2) / maxval) as u8)
            }
        })
        .collect::<Result<Vec<u8>, _>>()?;
    Ok(GrayImage::new(width, height, pixels))
}

pub fn encode_pgm(image: &GrayImage, encoding: PgmEncoding) -> Vec<u8> {
    match encoding {
        PgmEncoding::Binary => {
            let mut out = format!("P5\n{} {}\n255\n", image.width, image.height).into_bytes();
            out.extend_from_slice(&image.pixels);
            out
        }
        PgmEncoding::Ascii => {
            let mut out = format!("P2\n{} {}\n255\n", image.width, image.height);
            for row in image.pixels.chunks(image.width.max(1)) {
                let line: Vec<String> = row.iter().map(u8::to_string).collect();
                out.push_str(&line.join(" "));
                out.push('\n');
            }
            out.into_bytes()
        }
    }
}

pub fn write_pgm(
    image: &GrayImage,
    encoding: PgmEncoding,
    path: impl AsRef<Path>,
) -> Result<(), IoError> {
    fs::write(path, encode_pgm(image, encoding))?;
    Ok(())
}

fn parse_number(tok: &[u8]) -> Option<usize> {
    if tok.is_empty() || tok.len() > 9 || !tok.iter().all(u8::is_ascii_digit) {
        return None;
    }
    std::str::from_utf8(tok).ok()?.parse().ok()
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Next whitespace-delimited token, skipping `#` comments.
    fn token(&mut self) -> Option<&'a [u8]> {
        loop {
            match self.data.get(self.pos)? {
                b'#' => {
                    while self.data.get(self.pos).is_some_and(|&b| b != b'\n') {
                        self.pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
        let start = self.pos;
        while self
            .data
            .get(self.pos)
            .is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#')
        {
            self.pos += 1;
        }
        Some(&self.data[start..self.pos])
    }

    fn header_number(&mut self, what: &str) -> Result<usize, IoError> {
        let tok = self
            .token()
            .ok_or_else(|| IoError::CorruptHeader(format!("missing {what}")))?;
        parse_number(tok).ok_or_else(|| {
            IoError::CorruptHeader(format!(
                "{what} `{}` is not a number",
                String::from_utf8_lossy(tok)
            ))
        })
    }
}
