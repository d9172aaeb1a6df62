//! Intensity redistribution.

use crate::error::{invalid, Result};
use crate::image::{ImageBuffer, PixelData};

/// 256-bin index of a sample: u8 values map to themselves, floats to `floor(v * 256)` clamped.
fn bin_of_float(v: f32) -> usize {
    let b = (v as f64 * 256.0).floor();
    if b <= 0.0 {
        0
    } else {
        (b as usize).min(255)
    }
}

/// Maps each pixel to the normalized inclusive cumulative histogram at its bin.
pub fn equalize_hist(img: &ImageBuffer) -> Result<ImageBuffer> {
    img.require_channels("equalize_hist", 1)?;
    let bins: Vec<usize> = match img.data() {
        PixelData::U8(v) => v.iter().map(|&x| x as usize).collect(),
        PixelData::F32(v) => v.iter().map(|&x| bin_of_float(x)).collect(),
    };
    let mut counts = [0u64; 256];
    for &b in &bins {
        counts[b] += 1;
    }
    let total = bins.len() as f64;
    let mut cdf = [0f32; 256];
    let mut running = 0u64;
    for (slot, &n) in cdf.iter_mut().zip(counts.iter()) {
        running += n;
        *slot = (running as f64 / total) as f32;
    }
    let out = bins.into_iter().map(|b| cdf[b]).collect();
    ImageBuffer::from_f32(img.height(), img.width(), 1, out)
}

/// Linear stretch of `[in_lo, in_hi]` onto `[out_lo, out_hi]`, clamping outside the input range.
///
/// Input values are taken in native units (0..=255 for u8 images).
pub fn rescale_intensity(img: &ImageBuffer, in_lo: f64, in_hi: f64, out_lo: f64, out_hi: f64) -> Result<ImageBuffer> {
    if !(in_lo < in_hi) {
        return Err(invalid(format!(
            "rescale_intensity requires in_lo < in_hi, got {in_lo} >= {in_hi}"
        )));
    }
    let span = in_hi - in_lo;
    let map = |x: f64| (((x - in_lo) / span).clamp(0.0, 1.0) * (out_hi - out_lo) + out_lo) as f32;
    let data = match img.data() {
        PixelData::U8(v) => v.iter().map(|&x| map(x as f64)).collect(),
        PixelData::F32(v) => v.iter().map(|&x| map(x as f64)).collect(),
    };
    ImageBuffer::from_f32(img.height(), img.width(), img.channels(), data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn constant_image_maps_to_one() {
        let img = ImageBuffer::from_u8(4, 4, 1, vec![77; 16]).unwrap();
        let eq = equalize_hist(&img).unwrap();
        assert!(eq.as_f32().unwrap().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn ramp_is_strictly_increasing() {
        let img = ImageBuffer::from_u8(16, 16, 1, (0..=255).collect()).unwrap();
        let eq = equalize_hist(&img).unwrap();
        let v = eq.as_f32().unwrap();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v[255], 1.0);
        assert!(v[0] > 0.0);
    }

    #[test]
    fn matches_direct_cdf_lookup() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let data: Vec<u8> = (0..40 * 30).map(|_| rng.gen_range(20..200)).collect();
        let img = ImageBuffer::from_u8(40, 30, 1, data.clone()).unwrap();
        let eq = equalize_hist(&img).unwrap();
        for (&x, &out) in data.iter().zip(eq.as_f32().unwrap()) {
            let below = data.iter().filter(|&&y| y <= x).count();
            assert_eq!(out, (below as f64 / data.len() as f64) as f32);
        }
    }

    #[test]
    fn float_input_uses_same_bins_as_u8() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(2);
        let data: Vec<u8> = (0..256).map(|_| rng.gen()).collect();
        let img = ImageBuffer::from_u8(16, 16, 1, data).unwrap();
        let a = equalize_hist(&img).unwrap();
        let b = equalize_hist(&crate::image::img_as_float(&img)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_input_gives_uniform_output() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        let data: Vec<u8> = (0..256 * 256).map(|_| rng.gen()).collect();
        let img = ImageBuffer::from_u8(256, 256, 1, data.clone()).unwrap();
        let eq = equalize_hist(&img).unwrap();
        let mut out: Vec<f32> = eq.as_f32().unwrap().to_vec();
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = out.len() as f64;
        let mut sup = 0f64;
        for (i, &v) in out.iter().enumerate() {
            // empirical CDF jumps from i/n to (i+1)/n at v
            sup = sup.max((v as f64 - i as f64 / n).abs()).max((v as f64 - (i + 1) as f64 / n).abs());
        }
        assert!(sup <= 0.02, "sup deviation {sup}");

        // monotone in input value
        let outs = eq.as_f32().unwrap();
        for i in 0..500 {
            for j in 0..500 {
                if data[i] <= data[j] {
                    assert!(outs[i] <= outs[j]);
                }
            }
        }
    }

    #[test]
    fn rescale_basics() {
        let img = ImageBuffer::from_f32(1, 3, 1, vec![5.0, -2.0, 12.0]).unwrap();
        let out = rescale_intensity(&img, 0.0, 10.0, 0.0, 1.0).unwrap();
        assert_eq!(out.as_f32().unwrap(), &[0.5, 0.0, 1.0]);
        let same = ImageBuffer::from_f32(1, 3, 1, vec![0.1, 0.4, 0.9]).unwrap();
        assert_eq!(rescale_intensity(&same, 0.0, 1.0, 0.0, 1.0).unwrap(), same);
        assert!(rescale_intensity(&img, 1.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn rescale_is_affine_inside_range() {
        let img = ImageBuffer::from_f32(1, 3, 1, vec![2.0, 4.0, 6.0]).unwrap();
        let out = rescale_intensity(&img, 1.0, 9.0, -1.0, 3.0).unwrap();
        let v = out.as_f32().unwrap();
        assert!(((v[1] - v[0]) - (v[2] - v[1])).abs() < 1e-6);
        assert!((v[0] + 0.5).abs() < 1e-6);
    }
}
