use nalgebra::Matrix3;

use crate::error::{Error, Result};

/// Family of a planar transform, ordered from most to least constrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransformKind {
    Similarity,
    Affine,
    Projective,
}

impl TransformKind {
    /// Point pairs needed to fit the model.
    pub fn min_samples(self) -> usize {
        match self {
            TransformKind::Similarity => 2,
            TransformKind::Affine => 3,
            TransformKind::Projective => 4,
        }
    }
}

const SINGULAR_EPS: f64 = 1e-12;

/// Invertible 3x3 homogeneous transform acting on `(x, y) = (col, row)` points.
///
/// The matrix is kept normalized so that `m[2][2] == 1` whenever that entry is non-zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Homography2D {
    matrix: Matrix3<f64>,
    kind: TransformKind,
}

impl Homography2D {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix3::identity(),
            kind: TransformKind::Similarity,
        }
    }

    /// Builds a transform from a row-major matrix, checking invertibility and the kind's structure.
    pub fn from_matrix(m: [[f64; 3]; 3], kind: TransformKind) -> Result<Self> {
        Self::from_nalgebra(Matrix3::from_fn(|r, c| m[r][c]), kind)
    }

    pub(crate) fn from_nalgebra(matrix: Matrix3<f64>, kind: TransformKind) -> Result<Self> {
        let matrix = normalize(matrix);
        if !matrix.iter().all(|v| v.is_finite()) || matrix.determinant().abs() <= SINGULAR_EPS {
            return Err(Error::Singular);
        }
        let scale = matrix.fixed_view::<2, 2>(0, 0).abs().max().max(1.0);
        let tol = 1e-9 * scale;
        if kind <= TransformKind::Affine
            && (matrix[(2, 0)].abs() > tol || matrix[(2, 1)].abs() > tol || (matrix[(2, 2)] - 1.0).abs() > tol)
        {
            return Err(Error::InvalidParameter(
                "affine and similarity transforms need last row (0, 0, 1)".into(),
            ));
        }
        if kind == TransformKind::Similarity {
            let (a, b) = (matrix[(0, 0)], matrix[(1, 0)]);
            if (matrix[(1, 1)] - a).abs() > tol || (matrix[(0, 1)] + b).abs() > tol {
                return Err(Error::InvalidParameter(
                    "similarity transform needs a scaled rotation block".into(),
                ));
            }
        }
        Ok(Self { matrix, kind })
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        let m = &self.matrix;
        [
            [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
            [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
            [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
        ]
    }

    pub(crate) fn raw(&self) -> &Matrix3<f64> {
        &self.matrix
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    /// Maps one `(x, y)` point.
    pub fn apply_point(&self, (x, y): (f64, f64)) -> Result<(f64, f64)> {
        let m = &self.matrix;
        let w = m[(2, 0)] * x + m[(2, 1)] * y + m[(2, 2)];
        if w.abs() <= SINGULAR_EPS {
            return Err(Error::PointAtInfinity);
        }
        let xp = m[(0, 0)] * x + m[(0, 1)] * y + m[(0, 2)];
        let yp = m[(1, 0)] * x + m[(1, 1)] * y + m[(1, 2)];
        Ok((xp / w, yp / w))
    }

    pub fn apply(&self, pts: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
        pts.iter().map(|&p| self.apply_point(p)).collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self.matrix.try_inverse().ok_or(Error::Singular)?;
        Self::from_nalgebra(inv, self.kind)
    }

    /// `self` applied first, then `then`: the matrix is `then * self`.
    pub fn compose(&self, then: &Homography2D) -> Result<Self> {
        Self::from_nalgebra(then.matrix * self.matrix, self.kind.max(then.kind))
    }
}

fn normalize(m: Matrix3<f64>) -> Matrix3<f64> {
    let s = m[(2, 2)];
    if s.abs() > SINGULAR_EPS {
        m / s
    } else {
        m
    }
}

/// Pure translation by `(tx, ty)`.
pub fn similarity_from_translation(tx: f64, ty: f64) -> Homography2D {
    let mut matrix = Matrix3::identity();
    matrix[(0, 2)] = tx;
    matrix[(1, 2)] = ty;
    Homography2D {
        matrix,
        kind: TransformKind::Similarity,
    }
}
