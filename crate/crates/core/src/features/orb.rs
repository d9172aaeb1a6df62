use crate::error::{Error, Result};
use crate::filters::{gaussian, gaussian_plane, sobel_gradients};
use crate::image::{img_as_float, ImageBuffer};
use crate::rng::Lcg;
use crate::transform::rescale;

/// 256-bit binary descriptor, bit `i` in word `i / 64`.
pub type Descriptor = [u64; 4];

const DOWNSCALE: f64 = 1.2;
const MAX_LEVELS: usize = 8;
const MIN_LEVEL_DIM: usize = 32;
const FAST_ARC: usize = 9;
const HARRIS_K: f64 = 0.04;
const HARRIS_SIGMA: f64 = 1.0;
const PYRAMID_SIGMA: f64 = 0.4;
const DESCRIPTOR_SIGMA: f64 = 2.0;
const MOMENT_RADIUS: i64 = 15;
/// Rotated pattern offsets reach `round(12 * sqrt(2)) = 17`.
const BORDER: usize = 17;

const fn brief_pattern() -> [[i8; 4]; 256] {
    let mut lcg = Lcg::new(42);
    let mut table = [[0i8; 4]; 256];
    let mut i = 0;
    while i < 256 {
        let mut j = 0;
        while j < 4 {
            table[i][j] = (lcg.next_u31() % 25) as i8 - 12;
            j += 1;
        }
        i += 1;
    }
    table
}

/// `(dr1, dc1, dr2, dc2)` per descriptor bit.
pub(crate) const BRIEF_PATTERN: [[i8; 4]; 256] = brief_pattern();

/// Radius-3 Bresenham circle as `(dr, dc)`, in angular order.
const FAST_CIRCLE: [(i64, i64); 16] = [
    (-3, 0),
    (-3, 1),
    (-2, 2),
    (-1, 3),
    (0, 3),
    (1, 3),
    (2, 2),
    (3, 1),
    (3, 0),
    (3, -1),
    (2, -2),
    (1, -3),
    (0, -3),
    (-1, -3),
    (-2, -2),
    (-3, -1),
];

/// Detected keypoints in level-0 coordinates, sorted by descending score.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeypointSet {
    pub coords: Vec<(usize, usize)>,
    pub scores: Vec<f64>,
    pub orientations: Vec<f64>,
    pub scales: Vec<usize>,
    pub descriptors: Vec<Descriptor>,
}

impl KeypointSet {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

struct Level {
    plane: Vec<f64>,
    height: usize,
    width: usize,
}

fn build_pyramid(img: &ImageBuffer) -> Result<Vec<Level>> {
    let to_level = |im: &ImageBuffer| Level {
        plane: im.channel_f32(0).into_iter().map(f64::from).collect(),
        height: im.height(),
        width: im.width(),
    };
    let mut levels = vec![to_level(img)];
    let mut current = img.clone();
    while levels.len() < MAX_LEVELS {
        let next = rescale(&gaussian(&current, PYRAMID_SIGMA)?, 1.0 / DOWNSCALE)?;
        if next.height().min(next.width()) < MIN_LEVEL_DIM {
            break;
        }
        levels.push(to_level(&next));
        current = next;
    }
    Ok(levels)
}

fn is_fast_corner(level: &Level, r: usize, c: usize, t: f64) -> bool {
    let w = level.width;
    let center = level.plane[r * w + c];
    let mut states = [0i8; 16];
    for (k, &(dr, dc)) in FAST_CIRCLE.iter().enumerate() {
        let v = level.plane[(r as i64 + dr) as usize * w + (c as i64 + dc) as usize];
        states[k] = if v > center + t {
            1
        } else if v < center - t {
            -1
        } else {
            0
        };
    }
    for sign in [1i8, -1] {
        let mut run = 0;
        // Two laps catch arcs that wrap past index 15.
        for k in 0..32 {
            if states[k % 16] == sign {
                run += 1;
                if run >= FAST_ARC {
                    return true;
                }
            } else {
                run = 0;
            }
        }
    }
    false
}

fn harris_response(level: &Level) -> Vec<f64> {
    let (h, w) = (level.height, level.width);
    let (gx, gy) = sobel_gradients(&level.plane, h, w, 0.25);
    let xx: Vec<f64> = gx.iter().map(|v| v * v).collect();
    let yy: Vec<f64> = gy.iter().map(|v| v * v).collect();
    let xy: Vec<f64> = gx.iter().zip(&gy).map(|(a, b)| a * b).collect();
    let (sxx, syy, sxy) = (
        gaussian_plane(&xx, h, w, HARRIS_SIGMA),
        gaussian_plane(&yy, h, w, HARRIS_SIGMA),
        gaussian_plane(&xy, h, w, HARRIS_SIGMA),
    );
    (0..h * w)
        .map(|i| {
            let det = sxx[i] * syy[i] - sxy[i] * sxy[i];
            let tr = sxx[i] + syy[i];
            det - HARRIS_K * tr * tr
        })
        .collect()
}

fn orientation(level: &Level, r: usize, c: usize) -> f64 {
    let w = level.width;
    let (mut m01, mut m10) = (0.0, 0.0);
    for dr in -MOMENT_RADIUS..=MOMENT_RADIUS {
        for dc in -MOMENT_RADIUS..=MOMENT_RADIUS {
            if dr * dr + dc * dc > MOMENT_RADIUS * MOMENT_RADIUS {
                continue;
            }
            let v = level.plane[(r as i64 + dr) as usize * w + (c as i64 + dc) as usize];
            m01 += dr as f64 * v;
            m10 += dc as f64 * v;
        }
    }
    let theta = m01.atan2(m10);
    if theta <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        theta
    }
}

fn describe(smoothed: &[f64], width: usize, r: usize, c: usize, theta: f64) -> Descriptor {
    let (cs, sn) = (theta.cos(), theta.sin());
    let at = |dr: i8, dc: i8| {
        let (dr, dc) = (dr as f64, dc as f64);
        let x = (cs * dc - sn * dr).round() as i64;
        let y = (sn * dc + cs * dr).round() as i64;
        smoothed[(r as i64 + y) as usize * width + (c as i64 + x) as usize]
    };
    let mut desc = [0u64; 4];
    for (bit, &[dr1, dc1, dr2, dc2]) in BRIEF_PATTERN.iter().enumerate() {
        if at(dr1, dc1) < at(dr2, dc2) {
            desc[bit / 64] |= 1 << (bit % 64);
        }
    }
    desc
}

struct Candidate {
    score: f64,
    coord: (usize, usize),
    orientation: f64,
    level: usize,
    descriptor: Descriptor,
}

fn detect_level(level: &Level, index: usize, fast_threshold: f64, full_shape: (usize, usize)) -> Vec<Candidate> {
    let (h, w) = (level.height, level.width);
    if h <= 2 * BORDER || w <= 2 * BORDER {
        return Vec::new();
    }
    let mut fast = vec![false; h * w];
    for r in BORDER..h - BORDER {
        for c in BORDER..w - BORDER {
            fast[r * w + c] = is_fast_corner(level, r, c, fast_threshold);
        }
    }
    if !fast.iter().any(|&f| f) {
        return Vec::new();
    }
    let harris = harris_response(level);
    let smoothed = gaussian_plane(&level.plane, h, w, DESCRIPTOR_SIGMA);
    let factor = DOWNSCALE.powi(index as i32);
    let mut out = Vec::new();
    for r in BORDER..h - BORDER {
        for c in BORDER..w - BORDER {
            let i = r * w + c;
            if !fast[i] {
                continue;
            }
            // 3x3 suppression among neighbouring FAST responses.
            let dominated = (r - 1..=r + 1)
                .flat_map(|rr| (c - 1..=c + 1).map(move |cc| rr * w + cc))
                .any(|j| j != i && fast[j] && harris[j] > harris[i]);
            if dominated {
                continue;
            }
            let theta = orientation(level, r, c);
            let map = |p: usize, n: usize| (((p as f64 + 0.5) * factor - 0.5).round().max(0.0) as usize).min(n - 1);
            out.push(Candidate {
                score: harris[i],
                coord: (map(r, full_shape.0), map(c, full_shape.1)),
                orientation: theta,
                level: index,
                descriptor: describe(&smoothed, w, r, c, theta),
            });
        }
    }
    out
}

/// ORB: FAST-9 corners on a 1.2-downscaled pyramid, ranked by Harris
/// response, with intensity-centroid orientation and steered BRIEF.
///
/// `fast_threshold` is on the `[0, 1]` intensity scale; `u8` input is
/// converted first.
pub fn orb_detect_and_extract(img: &ImageBuffer, n_keypoints: usize, fast_threshold: f64) -> Result<KeypointSet> {
    img.require_channels("orb", 1)?;
    let (h, w) = img.shape();
    if h.min(w) < MIN_LEVEL_DIM {
        return Err(Error::ImageTooSmall(format!("ORB needs at least {MIN_LEVEL_DIM}x{MIN_LEVEL_DIM}, got {h}x{w}")));
    }
    let levels = build_pyramid(&img_as_float(img))?;
    let mut all: Vec<Candidate> = levels
        .iter()
        .enumerate()
        .flat_map(|(k, level)| detect_level(level, k, fast_threshold, (h, w)))
        .collect();
    all.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then(a.coord.cmp(&b.coord))
            .then(a.level.cmp(&b.level))
    });
    all.truncate(n_keypoints);
    let mut set = KeypointSet::default();
    for cand in all {
        set.coords.push(cand.coord);
        set.scores.push(cand.score);
        set.orientations.push(cand.orientation);
        set.scales.push(cand.level);
        set.descriptors.push(cand.descriptor);
    }
    Ok(set)
}
