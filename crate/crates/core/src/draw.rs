//! Rasterization primitives. They return pixel coordinates rather than
//! painting into an image, so they are total; coordinates may be negative
//! or beyond any image and callers clip.

use std::collections::BTreeSet;

use crate::error::{invalid, Result};

/// Bresenham line from `(r0, c0)` to `(r1, c1)`, both endpoints included, 8-connected.
///
/// The pixel set does not depend on the direction the line is drawn in.
pub fn line(r0: i64, c0: i64, r1: i64, c1: i64) -> Vec<(i64, i64)> {
    if (r1, c1) < (r0, c0) {
        let mut pts = line(r1, c1, r0, c0);
        pts.reverse();
        return pts;
    }
    let (dr, dc) = ((r1 - r0).abs(), (c1 - c0).abs());
    let (sr, sc) = ((r1 - r0).signum(), (c1 - c0).signum());
    let mut err = dc - dr;
    let (mut r, mut c) = (r0, c0);
    let mut pts = Vec::with_capacity((dr.max(dc) + 1) as usize);
    loop {
        pts.push((r, c));
        if r == r1 && c == c1 {
            break;
        }
        let e2 = 2 * err;
        if e2 > -dr {
            err -= dr;
            c += sc;
        }
        if e2 < dc {
            err += dc;
            r += sr;
        }
    }
    pts
}

/// Midpoint circle of `radius` about `(r, c)`, deduplicated and sorted.
pub fn circle_perimeter(r: i64, c: i64, radius: i64) -> Result<Vec<(i64, i64)>> {
    if radius < 0 {
        return Err(invalid(format!("radius must be non-negative, got {radius}")));
    }
    Ok(circle_offsets(radius).into_iter().map(|(dr, dc)| (r + dr, c + dc)).collect())
}

/// Offsets of the rasterized circle relative to its centre, sorted.
pub(crate) fn circle_offsets(radius: i64) -> Vec<(i64, i64)> {
    let mut pts = BTreeSet::new();
    let (mut x, mut y) = (0i64, radius);
    let mut d = 3 - 2 * radius;
    while y >= x {
        for (a, b) in [(x, y), (y, x)] {
            pts.insert((a, b));
            pts.insert((-a, b));
            pts.insert((a, -b));
            pts.insert((-a, -b));
        }
        if d < 0 {
            d += 4 * x + 6;
        } else {
            d += 4 * (x - y) + 10;
            y -= 1;
        }
        x += 1;
    }
    pts.into_iter().collect()
}

/// Border pixels of the half-open box `[min_row, max_row) x [min_col, max_col)`, sorted.
pub fn rectangle_perimeter(min_row: i64, min_col: i64, max_row: i64, max_col: i64) -> Result<Vec<(i64, i64)>> {
    if max_row <= min_row || max_col <= min_col {
        return Err(invalid(format!(
            "empty box ({min_row}, {min_col}, {max_row}, {max_col})"
        )));
    }
    let (last_r, last_c) = (max_row - 1, max_col - 1);
    let mut pts = BTreeSet::new();
    for c in min_col..=last_c {
        pts.insert((min_row, c));
        pts.insert((last_r, c));
    }
    for r in min_row..=last_r {
        pts.insert((r, min_col));
        pts.insert((r, last_c));
    }
    Ok(pts.into_iter().collect())
}
