use crate::error::{invalid, Result};
use crate::image::ImageBuffer;

/// Max over the clipped `(2r+1)`-wide window along rows then columns.
fn window_max(plane: &[f64], h: usize, w: usize, r: usize) -> Vec<f64> {
    let mut tmp = vec![f64::NEG_INFINITY; plane.len()];
    for row in 0..h {
        for c in 0..w {
            let (lo, hi) = (c.saturating_sub(r), (c + r).min(w - 1));
            tmp[row * w + c] = plane[row * w + lo..=row * w + hi].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        }
    }
    let mut out = vec![f64::NEG_INFINITY; plane.len()];
    for row in 0..h {
        let (lo, hi) = (row.saturating_sub(r), (row + r).min(h - 1));
        for c in 0..w {
            out[row * w + c] = (lo..=hi).map(|k| tmp[k * w + c]).fold(f64::NEG_INFINITY, f64::max);
        }
    }
    out
}

/// Positive pixels equal to the maximum of their `(2*min_distance+1)^2`
/// window, thinned greedily so that kept peaks are more than `min_distance`
/// apart (Chebyshev). Sorted by descending value, then `(row, col)`.
pub fn peak_local_max(img: &ImageBuffer, min_distance: usize) -> Result<Vec<(usize, usize)>> {
    img.require_channels("peak_local_max", 1)?;
    if min_distance < 1 {
        return Err(invalid("min_distance must be at least 1"));
    }
    let (h, w) = img.shape();
    let plane = img.native_plane();
    let maxed = window_max(&plane, h, w, min_distance);
    let mut candidates: Vec<(f64, usize, usize)> = (0..h * w)
        .filter(|&i| plane[i] > 0.0 && plane[i] == maxed[i])
        .map(|i| (plane[i], i / w, i % w))
        .collect();
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));

    let mut blocked = vec![false; h * w];
    let mut peaks = Vec::new();
    for (_, r, c) in candidates {
        if blocked[r * w + c] {
            continue;
        }
        peaks.push((r, c));
        for rr in r.saturating_sub(min_distance)..=(r + min_distance).min(h - 1) {
            for cc in c.saturating_sub(min_distance)..=(c + min_distance).min(w - 1) {
                blocked[rr * w + cc] = true;
            }
        }
    }
    Ok(peaks)
}
