//! PGM reading and writing, ASCII (`P2`) and binary (`P5`).
//!
//! Reading accepts any header layout the netpbm conventions allow: arbitrary
//! whitespace and `#` comments between tokens. Writing always produces one
//! canonical layout:
//!
//! ```text
//! P5\n<width> <height>\n<maxval>\n<raster>
//! ```
//!
//! Binary samples are one byte for `maxval <= 255` and two big-endian bytes
//! otherwise. ASCII rasters put each image row on its own line, wrapping so
//! no line exceeds 70 characters.

use std::io::{self, Write};

use crate::error::PnmError;
use crate::image::RawImage;

const MAX_LINE: usize = 70;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PnmFormat {
    /// ASCII graymap.
    P2,
    /// Binary graymap.
    P5,
}

impl PnmFormat {
    fn magic(self) -> &'static [u8; 2] {
        match self {
            PnmFormat::P2 => b"P2",
            PnmFormat::P5 => b"P5",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PnmHeader {
    pub format: PnmFormat,
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
}

fn is_pnm_space(b: u8) -> bool {
    matches!(b, b' ' | b'\t' | b'\n' | b'\r' | 0x0b | 0x0c)
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if is_pnm_space(b) {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.data.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    /// Next whitespace/comment-delimited token and its starting offset.
    fn token(&mut self) -> Option<(usize, &'a [u8])> {
        self.skip_space_and_comments();
        let start = self.pos;
        while let Some(&b) = self.data.get(self.pos) {
            if is_pnm_space(b) || b == b'#' {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, &self.data[start..self.pos]))
    }

    fn header_number(&mut self) -> Result<(usize, u64), PnmError> {
        let (offset, tok) = self
            .token()
            .ok_or(PnmError::TruncatedHeader { offset: self.pos })?;
        parse_decimal(tok)
            .map(|v| (offset, v))
            .ok_or(PnmError::BadHeaderToken { offset })
    }
}

fn parse_decimal(tok: &[u8]) -> Option<u64> {
    if tok.is_empty() || !tok.iter().all(u8::is_ascii_digit) {
        return None;
    }
    std::str::from_utf8(tok).ok()?.parse().ok()
}

fn parse_header(cur: &mut Cursor<'_>) -> Result<PnmHeader, PnmError> {
    let format = match cur.data.get(..2) {
        Some(b"P2") => PnmFormat::P2,
        Some(b"P5") => PnmFormat::P5,
        _ => return Err(PnmError::BadMagic { offset: 0 }),
    };
    cur.pos = 2;
    match cur.data.get(2) {
        Some(&b) if is_pnm_space(b) || b == b'#' => {}
        Some(_) => return Err(PnmError::BadMagic { offset: 0 }),
        None => return Err(PnmError::TruncatedHeader { offset: 2 }),
    }

    let mut dims = [0usize; 2];
    for d in &mut dims {
        let (offset, value) = cur.header_number()?;
        *d = match usize::try_from(value) {
            Ok(v) if v > 0 => v,
            _ => return Err(PnmError::BadDimension { offset, value }),
        };
    }
    let (offset, value) = cur.header_number()?;
    let maxval = match u16::try_from(value) {
        Ok(v) if v > 0 => v,
        _ => return Err(PnmError::BadMaxval { offset, value }),
    };
    Ok(PnmHeader {
        format,
        width: dims[0],
        height: dims[1],
        maxval,
    })
}

/// Parses only the header of a PGM stream.
pub fn read_pgm_header(bytes: &[u8]) -> Result<PnmHeader, PnmError> {
    parse_header(&mut Cursor {
        data: bytes,
        pos: 0,
    })
}

/// Parses a complete PGM stream.
pub fn read_pgm(bytes: &[u8]) -> Result<RawImage, PnmError> {
    read_pgm_with_header(bytes).map(|(_, img)| img)
}

/// Like [`read_pgm`], also returning the parsed header (and so the format).
pub fn read_pgm_with_header(bytes: &[u8]) -> Result<(PnmHeader, RawImage), PnmError> {
    let mut cur = Cursor {
        data: bytes,
        pos: 0,
    };
    let header = parse_header(&mut cur)?;
    let count = header
        .width
        .checked_mul(header.height)
        .ok_or(PnmError::BadDimension {
            offset: 0,
            value: header.height as u64,
        })?;
    let pixels = match header.format {
        PnmFormat::P2 => read_ascii_raster(&mut cur, count, header.maxval)?,
        PnmFormat::P5 => read_binary_raster(&mut cur, count, header.maxval)?,
    };
    let img = RawImage::new(header.width, header.height, header.maxval, pixels)
        .expect("parsed raster matches header");
    Ok((header, img))
}

fn read_ascii_raster(
    cur: &mut Cursor<'_>,
    count: usize,
    maxval: u16,
) -> Result<Vec<u16>, PnmError> {
    let mut pixels = Vec::with_capacity(count.min(1 << 24));
    while pixels.len() < count {
        let Some((offset, tok)) = cur.token() else {
            return Err(PnmError::PixelCountMismatch {
                offset: cur.pos,
                expected: count,
                found: pixels.len(),
            });
        };
        let value = parse_decimal(tok).ok_or(PnmError::BadSample { offset })?;
        if value > u64::from(maxval) {
            return Err(PnmError::SampleOutOfRange {
                offset,
                value,
                maxval: maxval.into(),
            });
        }
        pixels.push(value as u16);
    }
    if let Some((offset, _)) = cur.token() {
        let mut found = count + 1;
        while cur.token().is_some() {
            found += 1;
        }
        return Err(PnmError::PixelCountMismatch {
            offset,
            expected: count,
            found,
        });
    }
    Ok(pixels)
}

fn read_binary_raster(
    cur: &mut Cursor<'_>,
    count: usize,
    maxval: u16,
) -> Result<Vec<u16>, PnmError> {
    // exactly one whitespace byte separates maxval from the raster
    match cur.data.get(cur.pos) {
        Some(&b) if is_pnm_space(b) => cur.pos += 1,
        Some(_) => return Err(PnmError::MissingRasterSeparator { offset: cur.pos }),
        None => {
            return Err(PnmError::PixelCountMismatch {
                offset: cur.pos,
                expected: count,
                found: 0,
            })
        }
    }
    let start = cur.pos;
    let raster = &cur.data[start..];
    let width = if maxval > 255 { 2 } else { 1 };
    if count.checked_mul(width) != Some(raster.len()) {
        return Err(PnmError::PixelCountMismatch {
            offset: start,
            expected: count,
            found: raster.len() / width,
        });
    }
    raster
        .chunks_exact(width)
        .enumerate()
        .map(|(i, c)| {
            let value = if width == 2 {
                u16::from_be_bytes([c[0], c[1]])
            } else {
                u16::from(c[0])
            };
            if value > maxval {
                Err(PnmError::SampleOutOfRange {
                    offset: start + i * width,
                    value: value.into(),
                    maxval: maxval.into(),
                })
            } else {
                Ok(value)
            }
        })
        .collect()
}

/// Writes `img` in the canonical layout.
pub fn write_pgm<W: Write>(img: &RawImage, format: PnmFormat, mut w: W) -> io::Result<()> {
    w.write_all(format.magic())?;
    write!(w, "\n{} {}\n{}\n", img.width(), img.height(), img.maxval())?;
    match format {
        PnmFormat::P5 => {
            if img.maxval() > 255 {
                let bytes: Vec<u8> = img.pixels().iter().flat_map(|p| p.to_be_bytes()).collect();
                w.write_all(&bytes)
            } else {
                let bytes: Vec<u8> = img.pixels().iter().map(|&p| p as u8).collect();
                w.write_all(&bytes)
            }
        }
        PnmFormat::P2 => {
            let mut line = String::with_capacity(MAX_LINE + 1);
            for row in img.pixels().chunks(img.width()) {
                line.clear();
                for p in row {
                    let tok = p.to_string();
                    if !line.is_empty() && line.len() + 1 + tok.len() > MAX_LINE {
                        line.push('\n');
                        w.write_all(line.as_bytes())?;
                        line.clear();
                    }
                    if !line.is_empty() {
                        line.push(' ');
                    }
                    line.push_str(&tok);
                }
                line.push('\n');
                w.write_all(line.as_bytes())?;
            }
            Ok(())
        }
    }
}

pub fn to_pgm_bytes(img: &RawImage, format: PnmFormat) -> Vec<u8> {
    let mut out = Vec::new();
    write_pgm(img, format, &mut out).expect("writing to a Vec cannot fail");
    out
}
