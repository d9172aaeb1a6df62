//! Convolution and rank filters, edge detectors and local thresholding.
//!
//! Every filter uses the same boundary rule: the image is mirrored about its
//! edge pixels without repeating them (`... 2 1 | 0 1 2 ... n-1 | n-2 ...`).

mod edges;
mod gaussian;
mod rank;
mod threshold;

pub use edges::{canny, sobel, CannyParams};
pub use gaussian::{difference_of_gaussians, gaussian, gaussian_kernel};
pub use rank::median;
pub use threshold::threshold_adaptive;

pub(crate) use edges::sobel_gradients;
pub(crate) use gaussian::gaussian_plane;

/// Mirror `i` into `0..n` without repeating the border sample.
#[inline]
pub(crate) fn reflect(i: isize, n: usize) -> usize {
    if n == 1 {
        return 0;
    }
    let period = 2 * (n as isize - 1);
    let m = i.rem_euclid(period);
    if m >= n as isize {
        (period - m) as usize
    } else {
        m as usize
    }
}

/// Correlates a row-major plane with a symmetric 1-D kernel along both axes.
pub(crate) fn correlate_separable(plane: &[f64], height: usize, width: usize, kernel: &[f64]) -> Vec<f64> {
    let radius = (kernel.len() / 2) as isize;
    let mut tmp = vec![0.0; plane.len()];
    for r in 0..height {
        let row = &plane[r * width..(r + 1) * width];
        for c in 0..width {
            let mut acc = 0.0;
            for (k, &wt) in kernel.iter().enumerate() {
                acc += wt * row[reflect(c as isize + k as isize - radius, width)];
            }
            tmp[r * width + c] = acc;
        }
    }
    let mut out = vec![0.0; plane.len()];
    for r in 0..height {
        for (k, &wt) in kernel.iter().enumerate() {
            let src = reflect(r as isize + k as isize - radius, height) * width;
            let dst = r * width;
            for c in 0..width {
                out[dst + c] += wt * tmp[src + c];
            }
        }
    }
    out
}
