use imgkit::features::{match_descriptors, orb_detect_and_extract};
use imgkit::filters::gaussian;
use imgkit::ImageBuffer;
use rand::{Rng, SeedableRng};
use std::f64::consts::{FRAC_PI_2, PI};

/// Random overlapping rectangles and disks, lightly blurred.
fn texture(n: usize, seed: u64) -> ImageBuffer {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut data = vec![0.5f32; n * n];
    for _ in 0..60 {
        let (r0, c0) = (rng.gen_range(0..n) as f64, rng.gen_range(0..n) as f64);
        let size = rng.gen_range(4.0..18.0);
        let value: f32 = rng.gen();
        let disk = rng.gen_bool(0.5);
        for r in 0..n {
            for c in 0..n {
                let (dr, dc) = (r as f64 - r0, c as f64 - c0);
                let inside = if disk { dr * dr + dc * dc <= size * size } else { dr.abs() <= size && dc.abs() <= size * 0.6 };
                if inside {
                    data[r * n + c] = value;
                }
            }
        }
    }
    let img = ImageBuffer::from_f32(n, n, 1, data).unwrap();
    gaussian(&img, 1.0).unwrap()
}

fn rotate90(img: &ImageBuffer) -> ImageBuffer {
    let n = img.height();
    ImageBuffer::from_fn_f32(n, n, |r, c| img.get(c, n - 1 - r, 0)).unwrap()
}

fn wrap(a: f64) -> f64 {
    (a + PI).rem_euclid(2.0 * PI) - PI
}

#[test]
fn orientation_follows_rotation() {
    let img = texture(160, 11);
    let rot = rotate90(&img);
    let a = orb_detect_and_extract(&img, 300, 0.05).unwrap();
    let b = orb_detect_and_extract(&rot, 300, 0.05).unwrap();
    let m = match_descriptors(&a.descriptors, &b.descriptors, true);
    assert!(m.len() >= 20, "only {} matches", m.len());
    let good = m
        .pairs
        .iter()
        .filter(|&&(i, j)| wrap(b.orientations[j] - a.orientations[i] + FRAC_PI_2).abs() <= 0.2)
        .count();
    let ratio = good as f64 / m.len() as f64;
    assert!(ratio >= 0.8, "{good}/{} consistent", m.len());
}

#[test]
fn orb_is_deterministic() {
    let img = texture(96, 3);
    let a = orb_detect_and_extract(&img, 200, 0.05).unwrap();
    let b = orb_detect_and_extract(&img, 200, 0.05).unwrap();
    assert_eq!(a, b);
    assert!(!a.is_empty());
    assert!(a.scores.windows(2).all(|w| w[0] >= w[1]));
    assert!(a.coords.iter().all(|&(r, c)| r < 96 && c < 96));
    assert!(a.orientations.iter().all(|&t| t > -PI && t <= PI));
}
