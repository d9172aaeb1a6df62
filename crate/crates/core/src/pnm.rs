//! Binary PGM (`P5`) and PPM (`P6`) with 8-bit samples.

use crate::error::{Error, Result};
use crate::image::{ImageBuffer, PixelData};

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(if self.pos >= self.bytes.len() {
                Error::Truncated
            } else {
                Error::MalformedHeader(format!("expected {what}"))
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::MalformedHeader(format!("{what} out of range")))
    }
}

/// Decodes a `P5` or `P6` file with maxval 255.
pub fn read_pnm(bytes: &[u8]) -> Result<ImageBuffer> {
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        _ => return Err(Error::UnsupportedFormat),
    };
    let mut hdr = Header { bytes, pos: 2 };
    if !hdr.bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(Error::UnsupportedFormat);
    }
    let width = hdr.number("width")?;
    let height = hdr.number("height")?;
    let maxval = hdr.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!("empty image {width}x{height}")));
    }
    if maxval != 255 {
        return Err(Error::UnsupportedDepth);
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(hdr.pos) {
        Some(b) if b.is_ascii_whitespace() => hdr.pos += 1,
        Some(_) => return Err(Error::MalformedHeader("missing separator after maxval".into())),
        None => return Err(Error::Truncated),
    }
    let len = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| Error::MalformedHeader("dimensions overflow".into()))?;
    let raster = bytes.get(hdr.pos..hdr.pos + len).ok_or(Error::Truncated)?;
    ImageBuffer::from_u8(height, width, channels, raster.to_vec())
}

/// Encodes a 1- or 3-channel `u8` image in canonical form.
pub fn write_pnm(img: &ImageBuffer) -> Result<Vec<u8>> {
    let magic = match img.channels() {
        1 => "P5",
        3 => "P6",
        _ => {
            return Err(Error::Channels {
                op: "write_pnm",
                expected: "1 or 3 channels",
            })
        }
    };
    let PixelData::U8(data) = img.data() else {
        return Err(Error::ElemKind {
            op: "write_pnm",
            expected: "u8",
        });
    };
    let mut out = format!("{magic}\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(data);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn one_black_pixel() {
        let bytes = [0x50, 0x35, 0x0A, 0x31, 0x20, 0x31, 0x0A, 0x32, 0x35, 0x35, 0x0A, 0x00];
        let img = read_pnm(&bytes).unwrap();
        assert_eq!((img.height(), img.width(), img.channels()), (1, 1, 1));
        assert_eq!(img.as_u8().unwrap(), &[0]);
        assert_eq!(write_pnm(&img).unwrap(), bytes);
    }

    #[test]
    fn round_trip_random() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(16);
        for channels in [1, 3] {
            let data: Vec<u8> = (0..16 * 16 * channels).map(|_| rng.gen()).collect();
            let img = ImageBuffer::from_u8(16, 16, channels, data).unwrap();
            let bytes = write_pnm(&img).unwrap();
            let back = read_pnm(&bytes).unwrap();
            assert_eq!(back, img);
            assert_eq!(write_pnm(&back).unwrap(), bytes);
        }
    }

    #[test]
    fn comments_are_ignored() {
        let plain = b"P6\n2 1\n255\n\x01\x02\x03\x04\x05\x06".to_vec();
        let commented = b"P6 # colour\n# size follows\n2\t1 # w h\n255\n\x01\x02\x03\x04\x05\x06".to_vec();
        assert_eq!(read_pnm(&plain).unwrap(), read_pnm(&commented).unwrap());
    }

    #[test]
    fn error_classes() {
        assert_eq!(read_pnm(b"P2\n1 1\n255\n0"), Err(Error::UnsupportedFormat));
        assert_eq!(read_pnm(b"P5\n1 1\n65535\n\0\0"), Err(Error::UnsupportedDepth));
        assert_eq!(read_pnm(b"P5\n2 2\n255\n\0\0\0"), Err(Error::Truncated));
        assert_eq!(read_pnm(b"P5\n2 2"), Err(Error::Truncated));
        assert!(matches!(read_pnm(b"P5\nx 2\n255\n"), Err(Error::MalformedHeader(_))));
        assert_eq!(read_pnm(b""), Err(Error::UnsupportedFormat));
    }

    #[test]
    fn every_magic_mutation_rejected() {
        let good = b"P5\n1 1\n255\n\x07".to_vec();
        for pos in 0..2 {
            for b in 0..=255u8 {
                if b == good[pos] {
                    continue;
                }
                let mut bad = good.clone();
                bad[pos] = b;
                if bad.starts_with(b"P6") {
                    // a valid alternative magic; payload is then short
                    assert_eq!(read_pnm(&bad), Err(Error::Truncated));
                } else {
                    assert_eq!(read_pnm(&bad), Err(Error::UnsupportedFormat));
                }
            }
        }
    }

    #[test]
    fn write_rejects_float_and_rgba() {
        let f = ImageBuffer::from_fn_f32(2, 2, |_, _| 0.0).unwrap();
        assert!(write_pnm(&f).is_err());
        let rgba = ImageBuffer::from_u8(1, 1, 4, vec![0; 4]).unwrap();
        assert!(write_pnm(&rgba).is_err());
    }
}
