use std::collections::VecDeque;

use super::{gaussian_plane, reflect};
use crate::error::{invalid, Result};
use crate::image::{ElemKind, ImageBuffer};

/// Horizontal (`d/dcol`) and vertical (`d/drow`) Sobel responses, kernel weights multiplied by `scale`.
pub(crate) fn sobel_gradients(plane: &[f64], height: usize, width: usize, scale: f64) -> (Vec<f64>, Vec<f64>) {
    let at = |r: isize, c: isize| plane[reflect(r, height) * width + reflect(c, width)];
    let mut gx = vec![0.0; plane.len()];
    let mut gy = vec![0.0; plane.len()];
    for r in 0..height as isize {
        for c in 0..width as isize {
            let i = r as usize * width + c as usize;
            let right = at(r - 1, c + 1) + 2.0 * at(r, c + 1) + at(r + 1, c + 1);
            let left = at(r - 1, c - 1) + 2.0 * at(r, c - 1) + at(r + 1, c - 1);
            let down = at(r + 1, c - 1) + 2.0 * at(r + 1, c) + at(r + 1, c + 1);
            let up = at(r - 1, c - 1) + 2.0 * at(r - 1, c) + at(r - 1, c + 1);
            gx[i] = (right - left) * scale;
            gy[i] = (down - up) * scale;
        }
    }
    (gx, gy)
}

/// Sobel edge magnitude, `hypot(gx, gy) / sqrt(2)` with quarter-weighted kernels.
///
/// Output stays within `[0, 1]` for input in `[0, 1]`.
pub fn sobel(img: &ImageBuffer) -> Result<ImageBuffer> {
    img.require_channels("sobel", 1)?;
    let plane: Vec<f64> = img.channel_f32(0).into_iter().map(f64::from).collect();
    let (gx, gy) = sobel_gradients(&plane, img.height(), img.width(), 0.25);
    let out = gx
        .iter()
        .zip(&gy)
        .map(|(x, y)| (x.hypot(*y) / std::f64::consts::SQRT_2) as f32)
        .collect();
    ImageBuffer::from_f32(img.height(), img.width(), 1, out)
}

/// Parameters of [`canny`]. Thresholds are in the input image's own units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CannyParams {
    pub sigma: f64,
    pub low_threshold: f64,
    pub high_threshold: f64,
}

impl CannyParams {
    pub fn new(sigma: f64, low_threshold: f64, high_threshold: f64) -> Result<Self> {
        let p = Self {
            sigma,
            low_threshold,
            high_threshold,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0) {
            return Err(invalid(format!("canny sigma must be positive, got {}", self.sigma)));
        }
        if !(0.0 <= self.low_threshold && self.low_threshold <= self.high_threshold) {
            return Err(invalid(format!(
                "canny thresholds must satisfy 0 <= low <= high, got {} and {}",
                self.low_threshold, self.high_threshold
            )));
        }
        Ok(())
    }
}

impl Default for CannyParams {
    fn default() -> Self {
        Self {
            sigma: 3.0,
            low_threshold: 10.0,
            high_threshold: 80.0,
        }
    }
}

/// Canny edge detector. Returns a `{0, 1}` u8 mask.
///
/// Gaussian smoothing, full-weight Sobel gradients, non-maximum suppression
/// with interpolated neighbours, then hysteresis over 8-connected pixels.
/// For u8 input the image and both thresholds are divided by 255.
pub fn canny(img: &ImageBuffer, params: CannyParams) -> Result<ImageBuffer> {
    img.require_channels("canny", 1)?;
    params.validate()?;
    let (h, w) = img.shape();
    let unit = match img.elem_kind() {
        ElemKind::U8 => 255.0,
        ElemKind::F32 => 1.0,
    };
    let plane: Vec<f64> = img.channel_f32(0).into_iter().map(f64::from).collect();
    let smoothed = gaussian_plane(&plane, h, w, params.sigma);
    let (gx, gy) = sobel_gradients(&smoothed, h, w, 1.0);
    let magnitude: Vec<f64> = gx.iter().zip(&gy).map(|(x, y)| x.hypot(*y)).collect();
    let thin = non_maximum_suppression(&magnitude, &gx, &gy, h, w);
    let mask = hysteresis(&thin, h, w, params.low_threshold / unit, params.high_threshold / unit);
    ImageBuffer::from_u8(h, w, 1, mask)
}

fn non_maximum_suppression(mag: &[f64], gx: &[f64], gy: &[f64], h: usize, w: usize) -> Vec<f64> {
    let mut out = vec![0.0; mag.len()];
    if h < 3 || w < 3 {
        return out;
    }
    let at = |r: usize, c: usize, dr: isize, dc: isize| {
        mag[(r as isize + dr) as usize * w + (c as isize + dc) as usize]
    };
    for r in 1..h - 1 {
        for c in 1..w - 1 {
            let i = r * w + c;
            let m = mag[i];
            if m <= 0.0 {
                continue;
            }
            let (ax, ay) = (gx[i].abs(), gy[i].abs());
            let sx: isize = if gx[i] < 0.0 { -1 } else { 1 };
            let sy: isize = if gy[i] < 0.0 { -1 } else { 1 };
            let (ahead, behind) = if ax >= ay {
                let t = ay / ax;
                (
                    (1.0 - t) * at(r, c, 0, sx) + t * at(r, c, sy, sx),
                    (1.0 - t) * at(r, c, 0, -sx) + t * at(r, c, -sy, -sx),
                )
            } else {
                let t = ax / ay;
                (
                    (1.0 - t) * at(r, c, sy, 0) + t * at(r, c, sy, sx),
                    (1.0 - t) * at(r, c, -sy, 0) + t * at(r, c, -sy, -sx),
                )
            };
            if m >= ahead && m >= behind {
                out[i] = m;
            }
        }
    }
    out
}

fn hysteresis(thin: &[f64], h: usize, w: usize, low: f64, high: f64) -> Vec<u8> {
    let mut mask = vec![0u8; thin.len()];
    let mut queue = VecDeque::new();
    for (i, &m) in thin.iter().enumerate() {
        if m > 0.0 && m >= high {
            mask[i] = 1;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        let (r, c) = ((i / w) as isize, (i % w) as isize);
        for dr in -1..=1 {
            for dc in -1..=1 {
                let (nr, nc) = (r + dr, c + dc);
                if nr < 0 || nc < 0 || nr >= h as isize || nc >= w as isize {
                    continue;
                }
                let j = nr as usize * w + nc as usize;
                if mask[j] == 0 && thin[j] > 0.0 && thin[j] >= low {
                    mask[j] = 1;
                    queue.push_back(j);
                }
            }
        }
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(h: usize, w: usize, at: usize) -> ImageBuffer {
        ImageBuffer::from_fn_f32(h, w, |_, c| if c >= at { 1.0 } else { 0.0 }).unwrap()
    }

    #[test]
    fn sobel_constant_is_zero() {
        let img = ImageBuffer::from_f32(6, 6, 1, vec![0.8; 36]).unwrap();
        assert!(sobel(&img).unwrap().as_f32().unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn sobel_unit_step() {
        let out = sobel(&step(8, 10, 5)).unwrap();
        let expect = std::f32::consts::FRAC_1_SQRT_2;
        for r in 0..8 {
            assert!((out.get(r, 4, 0) - expect).abs() < 1e-6);
            assert!((out.get(r, 5, 0) - expect).abs() < 1e-6);
            assert_eq!(out.get(r, 2, 0), 0.0);
            assert_eq!(out.get(r, 8, 0), 0.0);
        }
    }

    #[test]
    fn sobel_is_isotropic_under_transpose() {
        let img = ImageBuffer::from_fn_f32(9, 7, |r, c| ((r * 7 + c * 3) % 5) as f32 / 5.0).unwrap();
        let transposed = ImageBuffer::from_fn_f32(7, 9, |r, c| img.get(c, r, 0)).unwrap();
        let a = sobel(&img).unwrap();
        let b = sobel(&transposed).unwrap();
        for r in 0..9 {
            for c in 0..7 {
                assert!((a.get(r, c, 0) - b.get(c, r, 0)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn canny_blank_is_empty() {
        let img = ImageBuffer::from_u8(32, 32, 1, vec![0; 1024]).unwrap();
        let e = canny(&img, CannyParams::default()).unwrap();
        assert!(e.as_u8().unwrap().iter().all(|&v| v == 0));
    }

    #[test]
    fn canny_accepts_defaults_and_rejects_bad_params() {
        assert!(CannyParams::new(3.0, 10.0, 80.0).is_ok());
        assert!(CannyParams::new(0.0, 10.0, 80.0).is_err());
        assert!(CannyParams::new(1.0, 90.0, 80.0).is_err());
        assert!(CannyParams::new(1.0, -1.0, 80.0).is_err());
        let img = ImageBuffer::from_u8(8, 8, 1, vec![0; 64]).unwrap();
        let bad = CannyParams {
            sigma: -2.0,
            low_threshold: 0.0,
            high_threshold: 1.0,
        };
        assert!(canny(&img, bad).is_err());
    }

    #[test]
    fn canny_straight_edge_is_thin() {
        let img = ImageBuffer::from_fn_u8(40, 40, |_, c| if c >= 20 { 200 } else { 20 }).unwrap();
        let e = canny(&img, CannyParams::new(2.0, 10.0, 40.0).unwrap()).unwrap();
        for r in 3..37 {
            let row: Vec<usize> = (0..40).filter(|&c| e.get_native(r, c, 0) > 0.0).collect();
            assert!(!row.is_empty() && row.len() <= 2, "row {r}: {row:?}");
            assert!(row.iter().all(|&c| c == 19 || c == 20));
        }
    }

    #[test]
    fn canny_output_is_binary() {
        let img = ImageBuffer::from_fn_u8(30, 30, |r, c| {
            let (dr, dc) = (r as i64 - 15, c as i64 - 15);
            if dr * dr + dc * dc <= 64 {
                255
            } else {
                0
            }
        })
        .unwrap();
        let e = canny(&img, CannyParams::new(1.5, 10.0, 80.0).unwrap()).unwrap();
        assert!(e.as_u8().unwrap().iter().all(|&v| v <= 1));
        assert!(e.as_u8().unwrap().iter().any(|&v| v == 1));
    }
}
