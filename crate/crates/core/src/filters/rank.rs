use super::reflect;
use crate::error::{invalid, Error, Result};
use crate::image::ImageBuffer;

/// Median over a `(2r+1)^2` square footprint. Even-sized windows would take the lower median.
pub fn median(img: &ImageBuffer, radius: usize) -> Result<ImageBuffer> {
    img.require_channels("median", 1)?;
    if radius < 1 {
        return Err(invalid("median radius must be at least 1"));
    }
    let data = img.as_u8().ok_or(Error::ElemKind {
        op: "median",
        expected: "u8",
    })?;
    let (h, w) = img.shape();
    let r = radius as isize;
    let side = 2 * radius + 1;
    let mut window = Vec::with_capacity(side * side);
    let mut out = Vec::with_capacity(data.len());
    for row in 0..h as isize {
        for col in 0..w as isize {
            window.clear();
            for dr in -r..=r {
                let base = reflect(row + dr, h) * w;
                for dc in -r..=r {
                    window.push(data[base + reflect(col + dc, w)]);
                }
            }
            let mid = (window.len() - 1) / 2;
            let (_, m, _) = window.select_nth_unstable(mid);
            out.push(*m);
        }
    }
    ImageBuffer::from_u8(h, w, 1, out)
}
