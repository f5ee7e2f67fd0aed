//! Minimal Netpbm graymap decoder (P2 ASCII and P5 binary).

use crate::error::{Error, Result};

/// An 8-bit grayscale image, rows stored top to bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

const MAX_PIXELS: usize = 1 << 26;

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.data.len() {
            let c = self.data[self.pos];
            if c == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Map(format!("pgm: expected {what}")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Map(format!("pgm: {what} out of range")))
    }
}

/// Decodes a P2 or P5 graymap, rescaling samples to 0..=255.
pub fn decode_pgm(data: &[u8]) -> Result<GrayImage> {
    if data.len() < 2 || data[0] != b'P' || !matches!(data[1], b'2' | b'5') {
        return Err(Error::Map("pgm: bad magic number".into()));
    }
    let binary = data[1] == b'5';
    let mut h = Header { data, pos: 2 };
    let width = h.number("width")?;
    let height = h.number("height")?;
    let maxval = h.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::Map("pgm: zero-sized image".into()));
    }
    if !(1..=65535).contains(&maxval) {
        return Err(Error::Map(format!("pgm: maxval {maxval} out of range")));
    }
    let n = width
        .checked_mul(height)
        .filter(|&n| n <= MAX_PIXELS)
        .ok_or_else(|| Error::Map("pgm: image too large".into()))?;
    let rescale = |v: usize| -> Result<u8> {
        if v > maxval {
            return Err(Error::Map(format!("pgm: sample {v} exceeds maxval")));
        }
        Ok(((v * 255 + maxval / 2) / maxval) as u8)
    };
    let mut pixels = Vec::with_capacity(n);
    if binary {
        // Exactly one whitespace byte separates the header from the raster.
        if h.pos >= data.len() || !data[h.pos].is_ascii_whitespace() {
            return Err(Error::Map("pgm: missing raster separator".into()));
        }
        let body = &data[h.pos + 1..];
        let bytes_per = if maxval < 256 { 1 } else { 2 };
        if body.len() < n * bytes_per {
            return Err(Error::Map("pgm: truncated raster".into()));
        }
        for i in 0..n {
            let v = if bytes_per == 1 {
                body[i] as usize
            } else {
                ((body[2 * i] as usize) << 8) | body[2 * i + 1] as usize
            };
            pixels.push(rescale(v)?);
        }
    } else {
        for _ in 0..n {
            let v = h.number("sample")?;
            pixels.push(rescale(v)?);
        }
    }
    Ok(GrayImage { width, height, pixels })
}

/// Encodes a binary (P5) graymap.
pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}
