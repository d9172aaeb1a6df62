use crate::error::{Error, Result};
use crate::rng::Lcg;
use crate::transform::{estimate, Homography2D, TransformKind};

type Point = (f64, f64);

/// Sampling and acceptance settings for [`ransac`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RansacParams {
    pub min_samples: usize,
    pub residual_threshold: f64,
    pub max_trials: usize,
    pub seed: u64,
}

impl Default for RansacParams {
    fn default() -> Self {
        Self {
            min_samples: 4,
            residual_threshold: 2.0,
            max_trials: 100,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RansacResult {
    pub model: Homography2D,
    pub inliers: Vec<bool>,
    pub trials_run: usize,
    pub best_inlier_count: usize,
}

fn residuals(model: &Homography2D, src: &[Point], dst: &[Point]) -> Vec<f64> {
    src.iter()
        .zip(dst)
        .map(|(&s, &(u, v))| match model.apply_point(s) {
            Ok((x, y)) => (x - u).hypot(y - v),
            Err(_) => f64::INFINITY,
        })
        .collect()
}

fn consensus(model: &Homography2D, src: &[Point], dst: &[Point], threshold: f64) -> (Vec<bool>, usize, f64) {
    let res = residuals(model, src, dst);
    let mask: Vec<bool> = res.iter().map(|&r| r <= threshold).collect();
    let count = mask.iter().filter(|&&m| m).count();
    let total = res.iter().zip(&mask).filter(|(_, &m)| m).map(|(r, _)| r).sum();
    (mask, count, total)
}

fn select(pts: &[Point], mask: &[bool]) -> Vec<Point> {
    pts.iter().zip(mask).filter(|(_, &m)| m).map(|(p, _)| *p).collect()
}

/// Robust fit over exactly `max_trials` random minimal samples.
///
/// The winning trial has the most inliers, then the smallest summed inlier
/// residual, then the earliest index. The model is refit on its inliers and
/// the mask recomputed against the refit; if the refit fails or keeps fewer
/// than `min_samples` pairs, the trial model and its mask are returned.
pub fn ransac(src: &[Point], dst: &[Point], kind: TransformKind, params: &RansacParams) -> Result<RansacResult> {
    let n = src.len();
    if dst.len() != n {
        return Err(Error::ShapeMismatch(format!("{n} source points vs {} destination points", dst.len())));
    }
    let k = params.min_samples;
    if k < kind.min_samples() {
        return Err(Error::InvalidParameter(format!(
            "min_samples {k} is below the {} needed for this model",
            kind.min_samples()
        )));
    }
    if n < k {
        return Err(Error::TooFewPoints { needed: k, got: n });
    }
    let thr = params.residual_threshold;
    let mut rng = Lcg::new(params.seed);
    let mut best: Option<(Homography2D, Vec<bool>, usize, f64)> = None;
    let mut sample_src = Vec::with_capacity(k);
    let mut sample_dst = Vec::with_capacity(k);
    for _ in 0..params.max_trials {
        let mut idx: Vec<usize> = Vec::with_capacity(k);
        while idx.len() < k {
            let i = rng.below(n);
            if !idx.contains(&i) {
                idx.push(i);
            }
        }
        sample_src.clear();
        sample_dst.clear();
        sample_src.extend(idx.iter().map(|&i| src[i]));
        sample_dst.extend(idx.iter().map(|&i| dst[i]));
        let Ok(model) = estimate(kind, &sample_src, &sample_dst) else {
            continue;
        };
        let (mask, count, total) = consensus(&model, src, dst, thr);
        if count < k {
            continue;
        }
        let better = match &best {
            None => true,
            Some((_, _, bc, bt)) => count > *bc || (count == *bc && total < *bt),
        };
        if better {
            best = Some((model, mask, count, total));
        }
    }
    let (trial_model, trial_mask, trial_count, _) = best.ok_or(Error::NoConsensus)?;
    let refit = estimate(kind, &select(src, &trial_mask), &select(dst, &trial_mask))
        .ok()
        .map(|m| {
            let (mask, count, _) = consensus(&m, src, dst, thr);
            (m, mask, count)
        })
        .filter(|(_, _, count)| *count >= k);
    let (model, inliers, best_inlier_count) = refit.unwrap_or((trial_model, trial_mask, trial_count));
    Ok(RansacResult {
        model,
        inliers,
        trials_run: params.max_trials,
        best_inlier_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::estimate_projective;
    use rand::{Rng, SeedableRng};
    use rand_distr::{Distribution, Normal};

    fn truth() -> Homography2D {
        Homography2D::from_matrix(
            [[1.05, 0.08, 12.0], [-0.06, 0.97, -7.0], [2e-4, -1e-4, 1.0]],
            TransformKind::Projective,
        )
        .unwrap()
    }

    #[test]
    fn exact_data_all_inliers() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let src: Vec<Point> = (0..30).map(|_| (rng.gen_range(0.0..200.0), rng.gen_range(0.0..200.0))).collect();
        let dst = truth().apply(&src).unwrap();
        let res = ransac(&src, &dst, TransformKind::Projective, &RansacParams::default()).unwrap();
        assert!(res.inliers.iter().all(|&m| m));
        assert_eq!(res.best_inlier_count, 30);
        let direct = estimate_projective(&src, &dst).unwrap();
        for (a, b) in res.model.matrix().iter().flatten().zip(direct.matrix().iter().flatten()) {
            assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn outliers_rejected_and_deterministic() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(70);
        let h = truth();
        let mut src = Vec::new();
        let mut dst = Vec::new();
        let noise = Normal::new(0.0, 0.5).unwrap();
        for _ in 0..70 {
            let p = (rng.gen_range(0.0..256.0), rng.gen_range(0.0..256.0));
            let (x, y) = h.apply_point(p).unwrap();
            src.push(p);
            dst.push((x + noise.sample(&mut rng), y + noise.sample(&mut rng)));
        }
        for _ in 0..30 {
            src.push((rng.gen_range(0.0..256.0), rng.gen_range(0.0..256.0)));
            dst.push((rng.gen_range(0.0..256.0), rng.gen_range(0.0..256.0)));
        }
        let params = RansacParams {
            seed: 7,
            ..RansacParams::default()
        };
        let res = ransac(&src, &dst, TransformKind::Projective, &params).unwrap();
        let found = res.inliers[..70].iter().filter(|&&m| m).count();
        assert!(found >= 66, "found {found}");
        assert_eq!(res.best_inlier_count, res.inliers.iter().filter(|&&m| m).count());
        for c in [(0.0, 0.0), (256.0, 0.0), (0.0, 256.0), (256.0, 256.0)] {
            let (a, b) = (res.model.apply_point(c).unwrap(), h.apply_point(c).unwrap());
            assert!((a.0 - b.0).hypot(a.1 - b.1) <= 1.0);
        }
        assert_eq!(ransac(&src, &dst, TransformKind::Projective, &params).unwrap(), res);
    }

    #[test]
    fn argument_errors() {
        let p = vec![(0.0, 0.0); 3];
        let kind = TransformKind::Projective;
        assert!(matches!(ransac(&p, &p, kind, &RansacParams::default()), Err(Error::TooFewPoints { .. })));
        let low = RansacParams {
            min_samples: 3,
            ..RansacParams::default()
        };
        assert!(ransac(&p, &p, kind, &low).is_err());
        assert!(ransac(&p, &p[..2], TransformKind::Similarity, &low).is_err());
    }

    #[test]
    fn pure_noise_has_no_consensus() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        // collinear sources make every projective fit degenerate
        let src: Vec<Point> = (0..20).map(|i| (i as f64, 2.0 * i as f64)).collect();
        let dst: Vec<Point> = (0..20).map(|_| (rng.gen(), rng.gen())).collect();
        let r = ransac(&src, &dst, TransformKind::Projective, &RansacParams::default());
        assert_eq!(r, Err(Error::NoConsensus));
    }
}
