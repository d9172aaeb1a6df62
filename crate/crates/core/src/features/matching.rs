use super::orb::Descriptor;

/// Number of differing bits.
pub fn hamming(a: &Descriptor, b: &Descriptor) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
}

/// Index pairs into the two descriptor sets, sorted by the first index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchSet {
    pub pairs: Vec<(usize, usize)>,
    pub distances: Vec<u32>,
}

impl MatchSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Nearest neighbour of each query; first index wins ties.
fn nearest(queries: &[Descriptor], pool: &[Descriptor]) -> Vec<(usize, u32)> {
    queries
        .iter()
        .map(|q| {
            pool.iter()
                .enumerate()
                .map(|(j, p)| (j, hamming(q, p)))
                .min_by_key(|&(j, d)| (d, j))
                .expect("pool is non-empty")
        })
        .collect()
}

/// Brute-force Hamming matching. With `cross_check`, `(i, j)` is kept only
/// when each is the other's nearest neighbour.
pub fn match_descriptors(d1: &[Descriptor], d2: &[Descriptor], cross_check: bool) -> MatchSet {
    let mut out = MatchSet::default();
    if d1.is_empty() || d2.is_empty() {
        return out;
    }
    let forward = nearest(d1, d2);
    let backward = if cross_check { nearest(d2, d1) } else { Vec::new() };
    for (i, &(j, dist)) in forward.iter().enumerate() {
        if cross_check && backward[j].0 != i {
            continue;
        }
        out.pairs.push((i, j));
        out.distances.push(dist);
    }
    out
}
