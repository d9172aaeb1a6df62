//! Connected components, region measurements, line profiles and RANSAC.

mod label;
mod profile;
mod ransac;
mod regionprops;

pub use label::{label, Connectivity, LabelImage};
pub use profile::profile_line;
pub use ransac::{ransac, RansacParams, RansacResult};
pub use regionprops::{regionprops, RegionProps};
