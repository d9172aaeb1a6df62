//! Inverse-mapped resampling.

use super::homography::Homography2D;
use crate::error::{invalid, Result};
use crate::filters::gaussian_plane;
use crate::image::ImageBuffer;

/// What a sample needing pixels outside the image returns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Boundary {
    /// The whole sample is replaced by this value.
    Constant(f32),
    /// Coordinates are clamped into the image first.
    Edge,
}

/// Coordinates this close to an integer are treated as that integer.
const SNAP: f64 = 1e-9;

/// Bilinear sample of one channel plane at `(x, y) = (col, row)`.
///
/// Integer coordinates read exactly one pixel, so the support never reaches
/// past the last row or column for them.
pub(crate) fn bilinear(plane: &[f32], height: usize, width: usize, x: f64, y: f64, boundary: Boundary) -> f32 {
    // Round-off from composed transforms must not push a pixel off the grid.
    let snap = |v: f64| if (v - v.round()).abs() <= SNAP { v.round() } else { v };
    let (x, y) = (snap(x), snap(y));
    let (x, y) = match boundary {
        Boundary::Edge => (x.clamp(0.0, (width - 1) as f64), y.clamp(0.0, (height - 1) as f64)),
        Boundary::Constant(_) => (x, y),
    };
    if !(x.is_finite() && y.is_finite()) {
        return match boundary {
            Boundary::Constant(cval) => cval,
            Boundary::Edge => plane[0],
        };
    }
    let (x0, y0) = (x.floor(), y.floor());
    let (fx, fy) = (x - x0, y - y0);
    let last_x = if fx > 0.0 { x0 + 1.0 } else { x0 };
    let last_y = if fy > 0.0 { y0 + 1.0 } else { y0 };
    if x0 < 0.0 || y0 < 0.0 || last_x > (width - 1) as f64 || last_y > (height - 1) as f64 {
        if let Boundary::Constant(cval) = boundary {
            return cval;
        }
    }
    let (c0, r0) = (x0 as usize, y0 as usize);
    let (c1, r1) = (last_x as usize, last_y as usize);
    let at = |r: usize, c: usize| plane[r * width + c] as f64;
    let top = (1.0 - fx) * at(r0, c0) + fx * at(r0, c1);
    let bottom = (1.0 - fx) * at(r1, c0) + fx * at(r1, c1);
    ((1.0 - fy) * top + fy * bottom) as f32
}

pub(crate) fn warp_with(
    img: &ImageBuffer,
    inverse_map: &Homography2D,
    output_shape: (usize, usize),
    boundary: Boundary,
) -> Result<ImageBuffer> {
    let (rows, cols) = output_shape;
    if rows == 0 || cols == 0 {
        return Err(invalid(format!("output shape must be positive, got {rows}x{cols}")));
    }
    let (h, w, ch) = (img.height(), img.width(), img.channels());
    let planes: Vec<Vec<f32>> = (0..ch).map(|k| img.channel_f32(k)).collect();
    let m = inverse_map.raw();
    let mut out = vec![0f32; rows * cols * ch];
    for r in 0..rows {
        for c in 0..cols {
            let (xf, yf) = (c as f64, r as f64);
            let wz = m[(2, 0)] * xf + m[(2, 1)] * yf + m[(2, 2)];
            let base = (r * cols + c) * ch;
            if wz.abs() <= 1e-12 {
                let fill = match boundary {
                    Boundary::Constant(cval) => cval,
                    Boundary::Edge => 0.0,
                };
                out[base..base + ch].fill(fill);
                continue;
            }
            let x = (m[(0, 0)] * xf + m[(0, 1)] * yf + m[(0, 2)]) / wz;
            let y = (m[(1, 0)] * xf + m[(1, 1)] * yf + m[(1, 2)]) / wz;
            for (k, plane) in planes.iter().enumerate() {
                out[base + k] = bilinear(plane, h, w, x, y, boundary);
            }
        }
    }
    ImageBuffer::from_f32(rows, cols, ch, out)
}

/// Resamples `img` into `output_shape` (rows, cols).
///
/// Output pixel `(r, c)` reads the input at `inverse_map((c, r))` with
/// bilinear interpolation; samples whose support leaves the image are `cval`.
pub fn warp(img: &ImageBuffer, inverse_map: &Homography2D, output_shape: (usize, usize), cval: f32) -> Result<ImageBuffer> {
    warp_with(img, inverse_map, output_shape, Boundary::Constant(cval))
}

/// Options for [`rescale_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RescaleOptions {
    /// Gaussian pre-filter with sigma `(1/scale - 1) / 2` when downscaling.
    pub anti_alias: bool,
}

/// [`rescale_with`] without anti-aliasing.
pub fn rescale(img: &ImageBuffer, scale: f64) -> Result<ImageBuffer> {
    rescale_with(img, scale, RescaleOptions::default())
}

/// Uniform rescale to `ceil(scale * dims)`, mapping pixel centres onto pixel
/// centres and clamping samples at the border.
pub fn rescale_with(img: &ImageBuffer, scale: f64, options: RescaleOptions) -> Result<ImageBuffer> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(invalid(format!("scale must be positive, got {scale}")));
    }
    let dim = |n: usize| ((n as f64 * scale - 1e-9).ceil() as usize).max(1);
    let shape = (dim(img.height()), dim(img.width()));
    let source = if options.anti_alias && scale < 1.0 {
        let sigma = (1.0 / scale - 1.0) / 2.0;
        smooth_channels(img, sigma)?
    } else {
        img.clone()
    };
    // src = (dst + 0.5) / scale - 0.5
    let inv = 1.0 / scale;
    let shift = 0.5 * inv - 0.5;
    let map = Homography2D::from_matrix(
        [[inv, 0.0, shift], [0.0, inv, shift], [0.0, 0.0, 1.0]],
        super::TransformKind::Similarity,
    )?;
    warp_with(&source, &map, shape, Boundary::Edge)
}

fn smooth_channels(img: &ImageBuffer, sigma: f64) -> Result<ImageBuffer> {
    let (h, w, ch) = (img.height(), img.width(), img.channels());
    let mut out = vec![0f32; h * w * ch];
    for k in 0..ch {
        let plane: Vec<f64> = img.channel_f32(k).into_iter().map(f64::from).collect();
        for (p, v) in gaussian_plane(&plane, h, w, sigma).into_iter().enumerate() {
            out[p * ch + k] = v as f32;
        }
    }
    ImageBuffer::from_f32(h, w, ch, out)
}
