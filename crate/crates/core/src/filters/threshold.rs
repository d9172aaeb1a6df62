use super::correlate_separable;
use crate::error::{invalid, Result};
use crate::image::ImageBuffer;

/// Gaussian weights over a `block_size` window with sigma `(block_size - 1) / 6`.
pub(crate) fn block_weights(block_size: usize) -> Vec<f64> {
    let radius = (block_size / 2) as isize;
    let sigma = (block_size as f64 - 1.0) / 6.0;
    let raw: Vec<f64> = (-radius..=radius)
        .map(|i| (-((i * i) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / sum).collect()
}

/// Local thresholding against the Gaussian-weighted block mean minus `offset`.
///
/// Returns a `{0, 1}` u8 mask with 1 where `img > mean - offset`. The
/// comparison is carried out in the image's native units, so for u8 input
/// `offset` is on the 0..=255 scale.
pub fn threshold_adaptive(img: &ImageBuffer, block_size: usize, offset: f64) -> Result<ImageBuffer> {
    img.require_channels("threshold_adaptive", 1)?;
    if block_size < 3 || block_size % 2 == 0 {
        return Err(invalid(format!("block_size must be odd and >= 3, got {block_size}")));
    }
    let (h, w) = img.shape();
    let plane = img.native_plane();
    let mean = correlate_separable(&plane, h, w, &block_weights(block_size));
    let mask = plane
        .iter()
        .zip(&mean)
        .map(|(&v, &m)| u8::from(v > m - offset))
        .collect();
    ImageBuffer::from_u8(h, w, 1, mask)
}
