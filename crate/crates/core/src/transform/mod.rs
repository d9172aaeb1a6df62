//! Planar transforms, their estimation, warping and Hough transforms.
//!
//! Transforms act on `(x, y) = (col, row)` points while images are indexed
//! `(row, col)`; the swap happens only inside [`Homography2D::apply`] callers'
//! point lists and inside [`warp`].

mod estimate;
mod homography;
mod hough;
mod mosaic;
mod warp;

pub use estimate::{estimate, estimate_affine, estimate_projective, estimate_similarity};
pub use homography::{similarity_from_translation, Homography2D, TransformKind};
pub use hough::{
    default_thetas, hough_circle, hough_line, hough_line_peaks, CirclePeak, HoughCircleAccumulator,
    HoughLineAccumulator, LinePeak,
};
pub use mosaic::{blend_average, mosaic_extent, MosaicExtent};
pub use warp::{rescale, rescale_with, warp, RescaleOptions};

pub(crate) use warp::{bilinear, Boundary};
