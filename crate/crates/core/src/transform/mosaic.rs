//! Panorama extent and alpha-average merging.

use super::homography::{similarity_from_translation, Homography2D};
use crate::error::{Error, Result};
use crate::image::ImageBuffer;

/// Canvas covering a reference frame and a target frame warped into it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MosaicExtent {
    /// `(rows, cols)`
    pub output_shape: (usize, usize),
    /// Translation moving the combined bounding box to the origin.
    pub offset: Homography2D,
}

fn corners((rows, cols): (usize, usize)) -> [(f64, f64); 4] {
    let (r, c) = (rows as f64, cols as f64);
    [(0.0, 0.0), (0.0, r), (c, 0.0), (c, r)]
}

/// Warps the target's corners by `model`, stacks them with the reference
/// corners and returns the enclosing canvas. Shapes are `(rows, cols)`.
pub fn mosaic_extent(model: &Homography2D, ref_shape: (usize, usize), tgt_shape: (usize, usize)) -> Result<MosaicExtent> {
    let mut all = model.apply(&corners(tgt_shape))?;
    all.extend_from_slice(&corners(ref_shape));
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (x, y) in all {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    // Sizes are computed in (x, y) and reported as (rows, cols).
    let extent = |span: f64| ((span - 1e-9).ceil().max(1.0)) as usize;
    Ok(MosaicExtent {
        output_shape: (extent(max_y - min_y), extent(max_x - min_x)),
        offset: similarity_from_translation(-min_x, -min_y),
    })
}

/// Averages RGBA frames: alpha-weighted RGB sums divided by `max(sum of alphas, 1)`.
pub fn blend_average(frames: &[ImageBuffer]) -> Result<ImageBuffer> {
    let first = frames
        .first()
        .ok_or_else(|| Error::InvalidParameter("blend_average needs at least one frame".into()))?;
    let (h, w) = first.shape();
    for f in frames {
        f.require_channels("blend_average", 4)?;
        if f.shape() != (h, w) {
            return Err(Error::ShapeMismatch(format!(
                "frame {:?} differs from {:?}",
                f.shape(),
                (h, w)
            )));
        }
    }
    let mut out = Vec::with_capacity(h * w * 3);
    for r in 0..h {
        for c in 0..w {
            let mut rgb = [0f64; 3];
            let mut weight = 0f64;
            for f in frames {
                let alpha = f.get(r, c, 3) as f64;
                weight += alpha;
                for (k, acc) in rgb.iter_mut().enumerate() {
                    *acc += alpha * f.get(r, c, k) as f64;
                }
            }
            let denom = weight.max(1.0);
            out.extend(rgb.iter().map(|v| (v / denom) as f32));
        }
    }
    ImageBuffer::from_f32(h, w, 3, out)
}
