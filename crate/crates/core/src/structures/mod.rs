//! Search structures used by the reachability graph and the sweep.

mod block_tree;
mod interval_tree;
mod link_cut;
mod range_tree;

pub use block_tree::{BlockKind, BlockTree};
pub use interval_tree::RowIntervalTree;
pub use link_cut::{LinkCutForest, NaiveForest};
pub use range_tree::{NodeId, RangeTree};
