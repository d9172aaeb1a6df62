use super::correlate_separable;
use crate::error::{invalid, Result};
use crate::image::ImageBuffer;

/// Normalized 1-D Gaussian truncated at radius `ceil(4 * sigma)`.
pub fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (4.0 * sigma).ceil() as isize;
    let denom = 2.0 * sigma * sigma;
    let raw: Vec<f64> = (-radius..=radius).map(|i| (-((i * i) as f64) / denom).exp()).collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / sum).collect()
}

pub(crate) fn gaussian_plane(plane: &[f64], height: usize, width: usize, sigma: f64) -> Vec<f64> {
    correlate_separable(plane, height, width, &gaussian_kernel(sigma))
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("sigma must be positive, got {sigma}")))
    }
}

/// Gaussian blur of a single channel image on the float scale.
pub fn gaussian(img: &ImageBuffer, sigma: f64) -> Result<ImageBuffer> {
    img.require_channels("gaussian", 1)?;
    check_sigma(sigma)?;
    let plane: Vec<f64> = img.channel_f32(0).into_iter().map(f64::from).collect();
    let out = gaussian_plane(&plane, img.height(), img.width(), sigma);
    ImageBuffer::from_f32(img.height(), img.width(), 1, out.into_iter().map(|v| v as f32).collect())
}

/// Band-pass filter: `gaussian(low_sigma) - gaussian(high_sigma)`.
pub fn difference_of_gaussians(img: &ImageBuffer, low_sigma: f64, high_sigma: f64) -> Result<ImageBuffer> {
    check_sigma(low_sigma)?;
    if !(low_sigma < high_sigma) {
        return Err(invalid(format!(
            "difference_of_gaussians requires low_sigma < high_sigma, got {low_sigma} >= {high_sigma}"
        )));
    }
    let low = gaussian(img, low_sigma)?;
    let high = gaussian(img, high_sigma)?;
    let data = low
        .as_f32()
        .unwrap()
        .iter()
        .zip(high.as_f32().unwrap())
        .map(|(a, b)| a - b)
        .collect();
    ImageBuffer::from_f32(img.height(), img.width(), 1, data)
}
