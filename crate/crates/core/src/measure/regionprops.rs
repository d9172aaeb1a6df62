use super::label::LabelImage;
use crate::error::{Error, Result};
use crate::image::ImageBuffer;

/// Measurements of one labeled component.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionProps {
    pub label: u32,
    pub area: usize,
    /// `(min_row, min_col, max_row, max_col)`, half-open.
    pub bbox: (usize, usize, usize, usize),
    /// `(row, col)`
    pub centroid: (f64, f64),
    pub eccentricity: f64,
    /// Number of pixel edges shared with non-member pixels or the image border.
    pub perimeter: usize,
    /// `central_moments[p][q]` = sum of `(row - r̄)^p (col - c̄)^q`, zero for `p + q > 3`.
    pub central_moments: [[f64; 4]; 4],
    /// Angle of the major axis measured from the row axis towards the column axis.
    pub orientation: f64,
    /// Mean of the intensity image over the region, when one is given.
    pub mean_intensity: Option<f64>,
}

impl RegionProps {
    /// Inertia eigenvalues `(λ1, λ2)` with `λ1 >= λ2`.
    pub fn inertia_eigenvalues(&self) -> (f64, f64) {
        let m = &self.central_moments;
        let n = self.area as f64;
        let (a, b, c) = (m[2][0] / n, m[1][1] / n, m[0][2] / n);
        let mid = (a + c) / 2.0;
        let rad = ((a - c) / 2.0).hypot(b);
        (mid + rad, (mid - rad).max(0.0))
    }
}

/// One record per label `1..=n`, in label order.
pub fn regionprops(lbl: &LabelImage, intensity: Option<&ImageBuffer>) -> Result<Vec<RegionProps>> {
    let (h, w) = (lbl.height, lbl.width);
    if let Some(img) = intensity {
        if img.shape() != (h, w) || img.channels() != 1 {
            return Err(Error::ShapeMismatch(format!(
                "intensity image {:?}x{} vs labels {:?}",
                img.shape(),
                img.channels(),
                (h, w)
            )));
        }
    }
    let n = lbl.n as usize;
    let mut members: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for r in 0..h {
        for c in 0..w {
            let l = lbl.get(r, c);
            if l != 0 {
                members[l as usize - 1].push((r, c));
            }
        }
    }
    let differs = |r: isize, c: isize, l: u32| -> bool {
        r < 0 || c < 0 || r >= h as isize || c >= w as isize || lbl.get(r as usize, c as usize) != l
    };

    let mut out = Vec::with_capacity(n);
    for (k, pts) in members.iter().enumerate() {
        let l = k as u32 + 1;
        let area = pts.len();
        let n_f = area as f64;
        let mean_r = pts.iter().map(|p| p.0 as f64).sum::<f64>() / n_f;
        let mean_c = pts.iter().map(|p| p.1 as f64).sum::<f64>() / n_f;
        let mut bbox = (usize::MAX, usize::MAX, 0, 0);
        let mut mu = [[0f64; 4]; 4];
        let mut perimeter = 0;
        for &(r, c) in pts {
            bbox.0 = bbox.0.min(r);
            bbox.1 = bbox.1.min(c);
            bbox.2 = bbox.2.max(r + 1);
            bbox.3 = bbox.3.max(c + 1);
            let (dr, dc) = (r as f64 - mean_r, c as f64 - mean_c);
            for (p, row) in mu.iter_mut().enumerate() {
                for (q, m) in row.iter_mut().enumerate().take(4 - p) {
                    *m += dr.powi(p as i32) * dc.powi(q as i32);
                }
            }
            let (ri, ci) = (r as isize, c as isize);
            perimeter += [(ri - 1, ci), (ri + 1, ci), (ri, ci - 1), (ri, ci + 1)]
                .iter()
                .filter(|&&(rr, cc)| differs(rr, cc, l))
                .count();
        }
        let mean_intensity =
            intensity.map(|img| pts.iter().map(|&(r, c)| img.get_native(r, c, 0)).sum::<f64>() / n_f);
        let mut props = RegionProps {
            label: l,
            area,
            bbox,
            centroid: (mean_r, mean_c),
            eccentricity: 0.0,
            perimeter,
            central_moments: mu,
            orientation: 0.5 * (2.0 * mu[1][1]).atan2(mu[2][0] - mu[0][2]),
            mean_intensity,
        };
        let (l1, l2) = props.inertia_eigenvalues();
        props.eccentricity = if l1 > 0.0 { (1.0 - l2 / l1).clamp(0.0, 1.0).sqrt() } else { 0.0 };
        out.push(props);
    }
    Ok(out)
}
