//! Straight-line and circle Hough transforms over binary masks.

use std::f64::consts::PI;

use crate::draw::circle_offsets;
use crate::error::{invalid, Result};
use crate::image::ImageBuffer;

fn foreground(mask: &ImageBuffer) -> Result<Vec<(usize, usize)>> {
    mask.require_channels("hough", 1)?;
    let (h, w) = mask.shape();
    let mut pts = Vec::new();
    for r in 0..h {
        for c in 0..w {
            if mask.get_native(r, c, 0) != 0.0 {
                pts.push((r, c));
            }
        }
    }
    Ok(pts)
}

/// 180 angles evenly spaced over `[-pi/2, pi/2)`.
pub fn default_thetas() -> Vec<f64> {
    (0..180).map(|i| -PI / 2.0 + i as f64 * PI / 180.0).collect()
}

/// Vote counts indexed by `(rho_bin, theta_bin)`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HoughLineAccumulator {
    pub accumulator: Vec<u64>,
    pub thetas: Vec<f64>,
    pub rhos: Vec<f64>,
}

impl HoughLineAccumulator {
    pub fn votes(&self, rho_bin: usize, theta_bin: usize) -> u64 {
        self.accumulator[rho_bin * self.thetas.len() + theta_bin]
    }

    pub fn total_votes(&self) -> u64 {
        self.accumulator.iter().sum()
    }
}

/// Votes `rho = col * cos(theta) + row * sin(theta)` into 1-pixel bins spanning `+-diagonal`.
pub fn hough_line(mask: &ImageBuffer, thetas: &[f64]) -> Result<HoughLineAccumulator> {
    if thetas.is_empty() {
        return Err(invalid("hough_line needs at least one theta"));
    }
    let pts = foreground(mask)?;
    let (h, w) = mask.shape();
    let diag = (h as f64).hypot(w as f64).ceil() as i64;
    let rhos: Vec<f64> = (-diag..=diag).map(|r| r as f64).collect();
    let nt = thetas.len();
    let trig: Vec<(f64, f64)> = thetas.iter().map(|t| (t.cos(), t.sin())).collect();
    let mut accumulator = vec![0u64; rhos.len() * nt];
    for (r, c) in pts {
        for (t, &(cs, sn)) in trig.iter().enumerate() {
            let rho = c as f64 * cs + r as f64 * sn;
            let bin = (rho.round() as i64 + diag) as usize;
            accumulator[bin * nt + t] += 1;
        }
    }
    Ok(HoughLineAccumulator {
        accumulator,
        thetas: thetas.to_vec(),
        rhos,
    })
}

/// A detected line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinePeak {
    pub votes: u64,
    pub theta: f64,
    pub rho: f64,
}

/// Greedy peak picking in descending vote order. An accepted peak suppresses
/// every cell within `min_distance` rho bins and `min_angle` theta bins.
pub fn hough_line_peaks(acc: &HoughLineAccumulator, num_peaks: usize, min_distance: usize, min_angle: usize) -> Vec<LinePeak> {
    let nt = acc.thetas.len();
    let mut cells: Vec<(u64, usize, usize)> = acc
        .accumulator
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(i, &v)| (v, i / nt, i % nt))
        .collect();
    cells.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut kept: Vec<(u64, usize, usize)> = Vec::new();
    for cell in cells {
        if kept.len() >= num_peaks {
            break;
        }
        let clear = kept
            .iter()
            .all(|k| k.1.abs_diff(cell.1) > min_distance || k.2.abs_diff(cell.2) > min_angle);
        if clear {
            kept.push(cell);
        }
    }
    kept.into_iter()
        .map(|(votes, rb, tb)| LinePeak {
            votes,
            theta: acc.thetas[tb],
            rho: acc.rhos[rb],
        })
        .collect()
}

/// One `height x width` vote plane per candidate radius.
#[derive(Debug, Clone, PartialEq)]
pub struct HoughCircleAccumulator {
    pub stack: Vec<Vec<u64>>,
    pub radii: Vec<i64>,
    pub height: usize,
    pub width: usize,
}

/// A detected circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CirclePeak {
    pub votes: u64,
    pub row: usize,
    pub col: usize,
    pub radius: i64,
}

impl HoughCircleAccumulator {
    /// Strongest cell over the whole stack; ties go to the earlier radius, then raster order.
    pub fn argmax(&self) -> Option<CirclePeak> {
        self.peaks(1, 0).into_iter().next()
    }

    /// Greedy peaks across all radii; an accepted centre suppresses centres
    /// within `min_distance` (Chebyshev) at every radius.
    pub fn peaks(&self, num_peaks: usize, min_distance: usize) -> Vec<CirclePeak> {
        let mut cells: Vec<CirclePeak> = Vec::new();
        for (k, plane) in self.stack.iter().enumerate() {
            for (i, &votes) in plane.iter().enumerate() {
                if votes > 0 {
                    cells.push(CirclePeak {
                        votes,
                        row: i / self.width,
                        col: i % self.width,
                        radius: self.radii[k],
                    });
                }
            }
        }
        let order = |p: &CirclePeak| self.radii.iter().position(|&r| r == p.radius).unwrap_or(0);
        cells.sort_by(|a, b| {
            b.votes
                .cmp(&a.votes)
                .then(order(a).cmp(&order(b)))
                .then((a.row, a.col).cmp(&(b.row, b.col)))
        });
        let mut kept: Vec<CirclePeak> = Vec::new();
        for cell in cells {
            if kept.len() >= num_peaks {
                break;
            }
            if kept
                .iter()
                .all(|k| k.row.abs_diff(cell.row).max(k.col.abs_diff(cell.col)) > min_distance)
            {
                kept.push(cell);
            }
        }
        kept
    }
}

/// Each foreground pixel votes along the rasterized circle of every radius centred on it.
pub fn hough_circle(mask: &ImageBuffer, radii: &[i64]) -> Result<HoughCircleAccumulator> {
    if let Some(&bad) = radii.iter().find(|&&r| r <= 0) {
        return Err(invalid(format!("hough_circle radii must be positive, got {bad}")));
    }
    let pts = foreground(mask)?;
    let (h, w) = mask.shape();
    let mut stack = Vec::with_capacity(radii.len());
    for &radius in radii {
        let offsets = circle_offsets(radius);
        let mut plane = vec![0u64; h * w];
        for &(r, c) in &pts {
            for &(dr, dc) in &offsets {
                let (rr, cc) = (r as i64 + dr, c as i64 + dc);
                if rr >= 0 && cc >= 0 && (rr as usize) < h && (cc as usize) < w {
                    plane[rr as usize * w + cc as usize] += 1;
                }
            }
        }
        stack.push(plane);
    }
    Ok(HoughCircleAccumulator {
        stack,
        radii: radii.to_vec(),
        height: h,
        width: w,
    })
}
