//! Subtrajectory cluster decision.
mod decide;
mod internal;
mod query;
mod sweep;
mod windows;

pub use decide::{decide, CriticalCounts, DecideStats, Decision, PhaseTimings};
pub use internal::{
    degenerate_pair, internal_critical_points, internal_critical_points_from, l_apart_roots, perturb_if_degenerate,
    InternalCriticalPoint, InternalKind, Perturbation,
};
pub use query::{ClusterQuery, ClusterWitness, Mode, Window};
pub use sweep::{count_disjoint_paths, SweepStats, Sweeper};
pub use windows::{windows_arbitrary, windows_vertex};
