use crate::error::{invalid, Result};
use crate::image::ImageBuffer;
use crate::transform::{bilinear, Boundary};

/// Intensity along the segment `src -> dst` (both `(row, col)`), endpoints
/// included, `ceil(length) + 1` evenly spaced samples. With `linewidth > 1`
/// each sample averages bilinear reads at integer offsets along the normal.
/// Reads outside the image count as 0.
pub fn profile_line(img: &ImageBuffer, src: (f64, f64), dst: (f64, f64), linewidth: usize) -> Result<Vec<f64>> {
    img.require_channels("profile_line", 1)?;
    if linewidth % 2 == 0 {
        return Err(invalid(format!("linewidth must be odd, got {linewidth}")));
    }
    let (dr, dc) = (dst.0 - src.0, dst.1 - src.1);
    let length = dr.hypot(dc);
    if !(length > 0.0) {
        return Err(invalid("profile_line needs distinct endpoints"));
    }
    let (h, w) = img.shape();
    let plane = img.channel_f32(0);
    let samples = length.ceil() as usize + 1;
    let (nr, nc) = (-dc / length, dr / length);
    let half = (linewidth / 2) as isize;
    let mut out = Vec::with_capacity(samples);
    for k in 0..samples {
        let t = k as f64 / (samples - 1) as f64;
        let (r, c) = (src.0 + t * dr, src.1 + t * dc);
        let mut acc = 0.0;
        for o in -half..=half {
            let (rr, cc) = (r + o as f64 * nr, c + o as f64 * nc);
            acc += bilinear(&plane, h, w, cc, rr, Boundary::Constant(0.0)) as f64;
        }
        out.push(acc / linewidth as f64);
    }
    Ok(out)
}
