//! Least-squares fits of planar transforms to point correspondences.

use nalgebra::{DMatrix, Matrix2, Matrix3, Vector2};

use super::homography::{Homography2D, TransformKind};
use crate::error::{Error, Result};

type Point = (f64, f64);

fn check_pairs(src: &[Point], dst: &[Point], needed: usize) -> Result<()> {
    if src.len() != dst.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} source points vs {} destination points",
            src.len(),
            dst.len()
        )));
    }
    if src.len() < needed {
        return Err(Error::TooFewPoints {
            needed,
            got: src.len(),
        });
    }
    Ok(())
}

fn centroid(pts: &[Point]) -> Point {
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    (sx / n, sy / n)
}

/// Similarity taking the centroid to the origin and the mean distance to `sqrt(2)`.
fn hartley_normalization(pts: &[Point]) -> Result<Matrix3<f64>> {
    let (cx, cy) = centroid(pts);
    let mean_dist = pts.iter().map(|&(x, y)| (x - cx).hypot(y - cy)).sum::<f64>() / pts.len() as f64;
    if !(mean_dist > 1e-12) {
        return Err(Error::Degenerate);
    }
    let s = std::f64::consts::SQRT_2 / mean_dist;
    Ok(Matrix3::new(s, 0.0, -s * cx, 0.0, s, -s * cy, 0.0, 0.0, 1.0))
}

fn transform_all(t: &Matrix3<f64>, pts: &[Point]) -> Vec<Point> {
    pts.iter()
        .map(|&(x, y)| (t[(0, 0)] * x + t[(0, 1)] * y + t[(0, 2)], t[(1, 0)] * x + t[(1, 1)] * y + t[(1, 2)]))
        .collect()
}

/// Normalized direct linear transform.
pub fn estimate_projective(src: &[Point], dst: &[Point]) -> Result<Homography2D> {
    check_pairs(src, dst, 4)?;
    let t_src = hartley_normalization(src)?;
    let t_dst = hartley_normalization(dst)?;
    let ns = transform_all(&t_src, src);
    let nd = transform_all(&t_dst, dst);

    // Pad to at least 9 rows so the SVD yields the full right singular basis.
    let rows = (2 * src.len()).max(9);
    let mut a = DMatrix::<f64>::zeros(rows, 9);
    for (i, (&(x, y), &(u, v))) in ns.iter().zip(&nd).enumerate() {
        let r = 2 * i;
        a.row_mut(r).copy_from_slice(&[-x, -y, -1.0, 0.0, 0.0, 0.0, u * x, u * y, u]);
        a.row_mut(r + 1).copy_from_slice(&[0.0, 0.0, 0.0, -x, -y, -1.0, v * x, v * y, v]);
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.as_ref().ok_or(Error::Degenerate)?;
    let sv = &svd.singular_values;
    let max_sv = sv.max();
    let rank = sv.iter().filter(|&&s| s > 1e-10 * max_sv).count();
    if rank < 8 {
        return Err(Error::Degenerate);
    }
    let (min_idx, _) = sv
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nine singular values");
    let h = v_t.row(min_idx);
    let hn = Matrix3::new(h[0], h[1], h[2], h[3], h[4], h[5], h[6], h[7], h[8]);
    let t_dst_inv = t_dst.try_inverse().ok_or(Error::Degenerate)?;
    let m = t_dst_inv * hn * t_src;
    if m[(2, 2)].abs() <= 1e-12 * m.abs().max() {
        return Err(Error::Degenerate);
    }
    Homography2D::from_nalgebra(m, TransformKind::Projective).map_err(|_| Error::Degenerate)
}

/// Linear least-squares affine fit.
pub fn estimate_affine(src: &[Point], dst: &[Point]) -> Result<Homography2D> {
    check_pairs(src, dst, 3)?;
    let (sx, sy) = centroid(src);
    let (dx, dy) = centroid(dst);
    let mut xtx = Matrix2::zeros();
    let mut xtu = Matrix2::zeros();
    for (&(x, y), &(u, v)) in src.iter().zip(dst) {
        let p = Vector2::new(x - sx, y - sy);
        let q = Vector2::new(u - dx, v - dy);
        xtx += p * p.transpose();
        xtu += p * q.transpose();
    }
    let trace = xtx.trace();
    if !(trace > 0.0) || xtx.determinant().abs() <= 1e-12 * trace * trace {
        return Err(Error::Degenerate);
    }
    // Rows of the linear block: A^T = (X^T X)^-1 X^T U
    let a_t = xtx.try_inverse().ok_or(Error::Degenerate)? * xtu;
    let a = a_t.transpose();
    let t = Vector2::new(dx, dy) - a * Vector2::new(sx, sy);
    let m = Matrix3::new(a[(0, 0)], a[(0, 1)], t[0], a[(1, 0)], a[(1, 1)], t[1], 0.0, 0.0, 1.0);
    Homography2D::from_nalgebra(m, TransformKind::Affine).map_err(|_| Error::Degenerate)
}

/// Closed-form rotation, uniform scale and translation minimizing squared error.
pub fn estimate_similarity(src: &[Point], dst: &[Point]) -> Result<Homography2D> {
    check_pairs(src, dst, 2)?;
    let (sx, sy) = centroid(src);
    let (dx, dy) = centroid(dst);
    let (mut var, mut dot, mut cross) = (0.0, 0.0, 0.0);
    for (&(x, y), &(u, v)) in src.iter().zip(dst) {
        let (px, py) = (x - sx, y - sy);
        let (qx, qy) = (u - dx, v - dy);
        var += px * px + py * py;
        dot += px * qx + py * qy;
        cross += px * qy - py * qx;
    }
    if !(var > 1e-12) {
        return Err(Error::Degenerate);
    }
    let (a, b) = (dot / var, cross / var);
    if a.hypot(b) <= 1e-12 {
        return Err(Error::Degenerate);
    }
    let tx = dx - (a * sx - b * sy);
    let ty = dy - (b * sx + a * sy);
    let m = Matrix3::new(a, -b, tx, b, a, ty, 0.0, 0.0, 1.0);
    Homography2D::from_nalgebra(m, TransformKind::Similarity).map_err(|_| Error::Degenerate)
}

/// Fits a transform of the given kind.
pub fn estimate(kind: TransformKind, src: &[Point], dst: &[Point]) -> Result<Homography2D> {
    match kind {
        TransformKind::Similarity => estimate_similarity(src, dst),
        TransformKind::Affine => estimate_affine(src, dst),
        TransformKind::Projective => estimate_projective(src, dst),
    }
}
