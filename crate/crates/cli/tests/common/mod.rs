//! Synthetic scenes shared by the integration and acceptance tests.
#![allow(dead_code)]

use imgkit::filters::gaussian;
use imgkit::transform::{warp, Homography2D, TransformKind};
use imgkit::{crop, ImageBuffer};
use rand::{Rng, SeedableRng};

/// Grey canvas covered by random rectangles and disks, then blurred.
pub fn texture(h: usize, w: usize, seed: u64, shapes: usize, size: (f64, f64), blur: f64) -> ImageBuffer {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut data = vec![0.5f32; h * w];
    for _ in 0..shapes {
        let (cr, cc) = (rng.gen_range(0.0..h as f64), rng.gen_range(0.0..w as f64));
        let half = rng.gen_range(size.0..size.1) / 2.0;
        let aspect = rng.gen_range(0.5..1.5);
        let value: f32 = rng.gen_range(0.05..0.95);
        let disk = rng.gen_bool(0.5);
        let (hr, hc) = (half, half * aspect);
        let r0 = (cr - hr).floor().max(0.0) as usize;
        let r1 = ((cr + hr).ceil() as usize).min(h - 1);
        let c0 = (cc - hc).floor().max(0.0) as usize;
        let c1 = ((cc + hc).ceil() as usize).min(w - 1);
        for r in r0..=r1 {
            for c in c0..=c1 {
                let (dr, dc) = ((r as f64 - cr) / hr, (c as f64 - cc) / hc);
                let inside = if disk { dr * dr + dc * dc <= 1.0 } else { dr.abs() <= 1.0 && dc.abs() <= 1.0 };
                if inside {
                    data[r * w + c] = value;
                }
            }
        }
    }
    let img = ImageBuffer::from_f32(h, w, 1, data).unwrap();
    if blur > 0.0 {
        gaussian(&img, blur).unwrap()
    } else {
        img
    }
}

/// Two overlapping full-resolution views of one texture with a known relation.
pub struct StitchScene {
    pub texture: ImageBuffer,
    pub frame0: ImageBuffer,
    pub frame1: ImageBuffer,
    /// Texture position of frame-0 pixel (0, 0), as `(x, y)`.
    pub origin0: (f64, f64),
    /// Frame-1 `(x, y)` to texture `(x, y)`.
    pub view1: Homography2D,
}

pub const FRAME: usize = 1024;

impl StitchScene {
    pub fn new(seed: u64) -> Self {
        Self::with_shift(seed, 120.0)
    }

    /// Frame 1 sits `shift` texture pixels right of frame 0, slightly rotated,
    /// scaled and tilted.
    pub fn with_shift(seed: u64, shift: f64) -> Self {
        Self::build(texture(1160, 1560, seed, 3000, (24.0, 100.0), 3.0), shift)
    }

    pub fn build(texture: ImageBuffer, shift: f64) -> Self {
        let origin0 = (40.0, 60.0);
        let frame0 = crop(&texture, 60, 60 + FRAME, 40, 40 + FRAME).unwrap();
        let (a, s) = (0.03f64, 1.02);
        let view1 = Homography2D::from_matrix(
            [
                [s * a.cos(), -s * a.sin(), 40.0 + shift],
                [s * a.sin(), s * a.cos(), 45.0],
                [1.5e-5, -1.0e-5, 1.0],
            ],
            TransformKind::Projective,
        )
        .unwrap();
        let frame1 = warp(&texture, &view1, (FRAME, FRAME), 0.0).unwrap();
        StitchScene {
            texture,
            frame0,
            frame1,
            origin0,
            view1,
        }
    }

    /// Frame-1 to frame-0 model at full resolution.
    pub fn full_model(&self) -> Homography2D {
        let back = imgkit::transform::similarity_from_translation(-self.origin0.0, -self.origin0.1);
        self.view1.compose(&back).unwrap()
    }

    /// The same model after both frames are rescaled by `scale`.
    pub fn working_model(&self, scale: f64) -> Homography2D {
        let shift = 0.5 * scale - 0.5;
        let down = Homography2D::from_matrix([[scale, 0.0, shift], [0.0, scale, shift], [0.0, 0.0, 1.0]], TransformKind::Similarity).unwrap();
        down.inverse().unwrap().compose(&self.full_model()).unwrap().compose(&down).unwrap()
    }

    /// Ground-truth intensity at a working-resolution frame-0 position.
    pub fn truth_at(&self, x: f64, y: f64, scale: f64) -> Option<f32> {
        let (fx, fy) = ((x + 0.5) / scale - 0.5 + self.origin0.0, (y + 0.5) / scale - 0.5 + self.origin0.1);
        let (h, w) = self.texture.shape();
        if fx < 0.0 || fy < 0.0 || fx > (w - 1) as f64 || fy > (h - 1) as f64 {
            return None;
        }
        let (x0, y0) = (fx.floor() as usize, fy.floor() as usize);
        let (x1, y1) = ((x0 + 1).min(w - 1), (y0 + 1).min(h - 1));
        let (tx, ty) = (fx - x0 as f64, fy - y0 as f64);
        let p = |r: usize, c: usize| self.texture.get(r, c, 0) as f64;
        let top = (1.0 - tx) * p(y0, x0) + tx * p(y0, x1);
        let bottom = (1.0 - tx) * p(y1, x0) + tx * p(y1, x1);
        Some(((1.0 - ty) * top + ty * bottom) as f32)
    }
}

/// Mean absolute difference between `mosaic` and the texture over pixels
/// covered by both warped frames, plus the number of such pixels.
pub fn overlap_mad(scene: &StitchScene, res: &imgkit_cli::StitchResult, scale: f64) -> (f64, usize) {
    let m = res.extent.offset.matrix();
    let off = (m[0][2], m[1][2]);
    let (h, w) = res.mosaic.shape();
    let (mut sum, mut n) = (0.0, 0usize);
    for r in 0..h {
        for c in 0..w {
            let covered = res.warped.iter().all(|f| f.get(r, c, 0) != imgkit_cli::BACKGROUND);
            if !covered {
                continue;
            }
            let (x, y) = (c as f64 - off.0, r as f64 - off.1);
            if let Some(t) = scene.truth_at(x, y, scale) {
                sum += (res.mosaic.get(r, c, 0) - t).abs() as f64;
                n += 1;
            }
        }
    }
    (sum / n.max(1) as f64, n)
}

/// Largest distance between the images of the four corners of a `size` square.
pub fn corner_error(a: &Homography2D, b: &Homography2D, size: f64) -> f64 {
    let corners = [(0.0, 0.0), (size - 1.0, 0.0), (0.0, size - 1.0), (size - 1.0, size - 1.0)];
    corners
        .iter()
        .map(|&p| {
            let (u, v) = (a.apply_point(p).unwrap(), b.apply_point(p).unwrap());
            (u.0 - v.0).hypot(u.1 - v.1)
        })
        .fold(0.0, f64::max)
}

/// Six separated disks of radius 18..30 on a gently sloped background, as `u8`.
pub fn coins_scene() -> (ImageBuffer, Vec<(f64, f64, f64)>) {
    let disks = vec![
        (50.0, 50.0, 22.0),
        (48.0, 140.0, 26.0),
        (60.0, 230.0, 18.0),
        (150.0, 60.0, 30.0),
        (160.0, 160.0, 24.0),
        (150.0, 250.0, 20.0),
    ];
    let img = ImageBuffer::from_fn_u8(220, 300, |r, c| {
        let background = 40.0 + 30.0 * c as f64 / 300.0 + 20.0 * r as f64 / 220.0;
        let inside = disks
            .iter()
            .any(|&(dr, dc, rad): &(f64, f64, f64)| (r as f64 - dr).hypot(c as f64 - dc) <= rad);
        if inside { 200 } else { background.round() as u8 }
    })
    .unwrap();
    (img, disks)
}
