//! Channel-space conversions.

use crate::error::Result;
use crate::image::{ImageBuffer, PixelData};

/// Luma weights for red, green and blue (ITU-R 709 style).
pub const LUMA_WEIGHTS: [f32; 3] = [0.2125, 0.7154, 0.0721];

/// Weighted sum of the three colour channels; 8-bit input is converted to float first.
pub fn rgb2gray(img: &ImageBuffer) -> Result<ImageBuffer> {
    img.require_channels("rgb2gray", 3)?;
    let [wr, wg, wb] = LUMA_WEIGHTS;
    let n = img.height() * img.width();
    let mut out = Vec::with_capacity(n);
    for p in 0..n {
        let (r, c) = (p / img.width(), p % img.width());
        out.push(wr * img.get(r, c, 0) + wg * img.get(r, c, 1) + wb * img.get(r, c, 2));
    }
    ImageBuffer::from_f32(img.height(), img.width(), 1, out)
}

/// Replicates a single channel into three. Element kind is preserved.
pub fn gray2rgb(img: &ImageBuffer) -> Result<ImageBuffer> {
    img.require_channels("gray2rgb", 1)?;
    let data = match img.data() {
        PixelData::U8(v) => PixelData::U8(v.iter().flat_map(|&x| [x, x, x]).collect()),
        PixelData::F32(v) => PixelData::F32(v.iter().flat_map(|&x| [x, x, x]).collect()),
    };
    ImageBuffer::new(img.height(), img.width(), 3, data)
}

/// Expands a grey image to RGBA, with alpha 1 wherever the pixel differs from `background`.
///
/// The comparison is exact: `background` is a sentinel written by a warp, never computed.
pub fn add_alpha(img: &ImageBuffer, background: f32) -> Result<ImageBuffer> {
    img.require_channels("add_alpha", 1)?;
    let plane = img.channel_f32(0);
    let mut out = Vec::with_capacity(plane.len() * 4);
    for v in plane {
        let alpha = if v != background { 1.0 } else { 0.0 };
        out.extend_from_slice(&[v, v, v, alpha]);
    }
    ImageBuffer::from_f32(img.height(), img.width(), 4, out)
}
