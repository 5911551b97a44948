pub mod cluster;
pub mod error;
pub mod fixtures;
pub mod freespace;
pub mod geom;
pub mod oracle;
pub mod reachability;
pub mod simplify;
pub mod structures;

pub use error::{Error, Result};
pub use geom::{Ball, Point, Segment, Trajectory};
