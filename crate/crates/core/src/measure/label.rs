use crate::error::{Error, Result};
use crate::image::ImageBuffer;

/// Pixel adjacency used by [`label`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Connectivity {
    Four,
    #[default]
    Eight,
}

/// Component ids per pixel, 0 for background and `1..=n` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelImage {
    pub labels: Vec<u32>,
    pub height: usize,
    pub width: usize,
    pub n: u32,
}

impl LabelImage {
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.labels[row * self.width + col]
    }

    /// Foreground mask as a `u8` image of 0/1.
    pub fn to_mask(&self) -> ImageBuffer {
        let data = self.labels.iter().map(|&l| (l != 0) as u8).collect();
        ImageBuffer::from_u8(self.height, self.width, 1, data).expect("shape matches labels")
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[hi] = lo;
    }
}

/// Labels the nonzero pixels of a single-channel image. Components are
/// numbered in the raster order of their first pixel.
pub fn label(mask: &ImageBuffer, connectivity: Connectivity) -> Result<LabelImage> {
    if mask.channels() != 1 {
        return Err(Error::Channels {
            op: "label",
            expected: "single channel",
        });
    }
    let (h, w) = mask.shape();
    let fg: Vec<bool> = mask.native_plane().into_iter().map(|v| v != 0.0).collect();
    let mut parent: Vec<usize> = (0..h * w).collect();
    let back: &[(isize, isize)] = match connectivity {
        Connectivity::Four => &[(-1, 0), (0, -1)],
        Connectivity::Eight => &[(-1, -1), (-1, 0), (-1, 1), (0, -1)],
    };
    for r in 0..h {
        for c in 0..w {
            let i = r * w + c;
            if !fg[i] {
                continue;
            }
            for &(dr, dc) in back {
                let (rr, cc) = (r as isize + dr, c as isize + dc);
                if rr >= 0 && cc >= 0 && (cc as usize) < w {
                    let j = rr as usize * w + cc as usize;
                    if fg[j] {
                        union(&mut parent, i, j);
                    }
                }
            }
        }
    }
    let mut ids = vec![0u32; h * w];
    let mut labels = vec![0u32; h * w];
    let mut count = 0;
    for i in 0..h * w {
        if !fg[i] {
            continue;
        }
        let root = find(&mut parent, i);
        if ids[root] == 0 {
            count += 1;
            ids[root] = count;
        }
        labels[i] = ids[root];
    }
    Ok(LabelImage {
        labels,
        height: h,
        width: w,
        n: count,
    })
}
