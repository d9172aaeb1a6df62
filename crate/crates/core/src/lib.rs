//! 2-D image processing: filtering, feature detection, geometric transforms,
//! region measurement and a PNM codec.
//!
//! Images are [`ImageBuffer`]s in row-major `(row, col, channel)` order with
//! either `u8` or `f32` samples. Float images use the `[0, 1]` scale; 8-bit
//! images map `0..=255` onto it. Operations accept either kind and say which
//! one they return.
//!
//! Geometric code uses `(x, y) = (col, row)` points.

pub mod color;
pub mod draw;
pub mod error;
pub mod exposure;
pub mod features;
pub mod filters;
pub mod image;
pub mod measure;
pub mod pnm;
pub mod rng;
pub mod transform;

pub use error::{Error, Result};
pub use image::{crop, histogram, img_as_float, img_as_ubyte, ElemKind, Histogram, ImageBuffer, PixelData};
