//! Local maxima, ORB keypoints with steered BRIEF descriptors, and descriptor matching.

mod matching;
mod orb;
mod peaks;

pub use matching::{hamming, match_descriptors, MatchSet};
pub use orb::{orb_detect_and_extract, Descriptor, KeypointSet};
pub use peaks::peak_local_max;
