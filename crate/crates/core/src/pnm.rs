//! PGM (P5) images and PBM (P1/P4) sampling masks.
//!
//! In mask files a `1` bit marks an **available** sample. This is the
//! opposite of PBM's usual "1 = black ink" reading.

use std::fs;
use std::path::Path;

use crate::error::{FsrError, Result};
use crate::image::{Image, SampleMask};
use crate::scalar::Scalar;

fn format_err(msg: impl Into<String>) -> FsrError {
    FsrError::Format(msg.into())
}

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    fn magic(&mut self) -> Result<[u8; 2]> {
        if self.data.len() < 2 {
            return Err(format_err("file too short for a PNM magic number"));
        }
        self.pos = 2;
        Ok([self.data[0], self.data[1]])
    }

    fn skip_space(&mut self) {
        while self.pos < self.data.len() {
            match self.data[self.pos] {
                b'#' => {
                    while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format_err(format!("malformed header: expected {what}")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format_err(format!("malformed header: {what} out of range")))
    }

    /// Consumes the single whitespace byte that ends a binary header.
    fn end_of_header(&mut self) -> Result<&'a [u8]> {
        match self.data.get(self.pos) {
            Some(c) if c.is_ascii_whitespace() => Ok(&self.data[self.pos + 1..]),
            _ => Err(format_err("malformed header: missing whitespace before raster")),
        }
    }
}

fn dims(header: &mut Header<'_>) -> Result<(usize, usize)> {
    let width = header.number("width")?;
    let height = header.number("height")?;
    if width == 0 || height == 0 {
        return Err(format_err(format!("invalid dimensions {width}x{height}")));
    }
    Ok((width, height))
}

/// Decodes a binary 8-bit PGM.
pub fn decode_pgm<T: Scalar>(data: &[u8]) -> Result<Image<T>> {
    let mut h = Header::new(data);
    if &h.magic()? != b"P5" {
        return Err(format_err("not a binary PGM (expected magic P5)"));
    }
    let (width, height) = dims(&mut h)?;
    let maxval = h.number("maxval")?;
    if maxval != 255 {
        return Err(format_err(format!("unsupported maxval {maxval} (only 255 is accepted)")));
    }
    let raster = h.end_of_header()?;
    let n = width * height;
    if raster.len() < n {
        return Err(format_err(format!("truncated payload: {} of {n} bytes", raster.len())));
    }
    Image::from_u8(width, height, &raster[..n])
}

/// Encodes as binary 8-bit PGM, quantizing amplitudes.
pub fn encode_pgm<T: Scalar>(image: &Image<T>) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend(image.to_u8());
    out
}

pub fn read_pgm<T: Scalar>(path: impl AsRef<Path>) -> Result<Image<T>> {
    decode_pgm(&fs::read(path)?)
}

pub fn write_pgm<T: Scalar>(path: impl AsRef<Path>, image: &Image<T>) -> Result<()> {
    Ok(fs::write(path, encode_pgm(image))?)
}

/// Decodes a P1 (ASCII) or P4 (packed) bitmap into a mask.
pub fn decode_pbm(data: &[u8]) -> Result<SampleMask> {
    let mut h = Header::new(data);
    let magic = h.magic()?;
    let (width, height) = match &magic {
        b"P1" | b"P4" => dims(&mut h)?,
        _ => return Err(format_err("not a PBM (expected magic P1 or P4)")),
    };
    let mut bits = Vec::with_capacity(width * height);
    if &magic == b"P1" {
        while bits.len() < width * height {
            h.skip_space();
            match h.data.get(h.pos) {
                Some(b'0') => bits.push(false),
                Some(b'1') => bits.push(true),
                Some(&c) => return Err(format_err(format!("unexpected byte {c:#04x} in P1 raster"))),
                None => return Err(format_err(format!("truncated payload: {} of {} bits", bits.len(), width * height))),
            }
            h.pos += 1;
        }
    } else {
        let raster = h.end_of_header()?;
        let stride = width.div_ceil(8);
        if raster.len() < stride * height {
            return Err(format_err(format!("truncated payload: {} of {} bytes", raster.len(), stride * height)));
        }
        for y in 0..height {
            let row = &raster[y * stride..(y + 1) * stride];
            for x in 0..width {
                bits.push(row[x / 8] & (0x80 >> (x % 8)) != 0);
            }
        }
    }
    SampleMask::new(width, height, bits)
}

/// Packed P4 encoding.
pub fn encode_pbm(mask: &SampleMask) -> Vec<u8> {
    let mut out = format!("P4\n{} {}\n", mask.width(), mask.height()).into_bytes();
    let stride = mask.width().div_ceil(8);
    for y in 0..mask.height() {
        let mut row = vec![0u8; stride];
        for x in 0..mask.width() {
            if mask.get(x, y) {
                row[x / 8] |= 0x80 >> (x % 8);
            }
        }
        out.extend(row);
    }
    out
}

/// ASCII P1 encoding, one raster row per line.
pub fn encode_pbm_ascii(mask: &SampleMask) -> Vec<u8> {
    let mut out = format!("P1\n{} {}\n", mask.width(), mask.height());
    for y in 0..mask.height() {
        let row: Vec<&str> = (0..mask.width()).map(|x| if mask.get(x, y) { "1" } else { "0" }).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.into_bytes()
}

pub fn read_pbm(path: impl AsRef<Path>) -> Result<SampleMask> {
    decode_pbm(&fs::read(path)?)
}

pub fn write_pbm(path: impl AsRef<Path>, mask: &SampleMask) -> Result<()> {
    Ok(fs::write(path, encode_pbm(mask))?)
}
