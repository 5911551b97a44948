use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::internal::{internal_critical_points_from, perturb_if_degenerate, InternalKind};
use super::sweep::{SweepStats, Sweeper};
use super::windows::{windows_arbitrary, windows_vertex};
use super::{ClusterQuery, ClusterWitness, Mode, Window};
use crate::error::Result;
use crate::freespace::{build_diagram, FreeSpaceConfig, FreeSpaceDiagram};
use crate::geom::Trajectory;
use crate::reachability::{build_graph, extract_boundary_critical_points};

/// Wall time per phase, in seconds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub simplify: f64,
    pub near_pairs: f64,
    pub cells: f64,
    pub graph: f64,
    pub sweep: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalCounts {
    pub boundary: usize,
    pub end_of_cell: usize,
    pub propagated: usize,
    pub l_apart: usize,
    pub diagonal: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct DecideStats {
    pub timings: PhaseTimings,
    pub cells: usize,
    pub critical_points: CriticalCounts,
    pub edges: usize,
    pub sweep: SweepStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decision {
    pub answer: bool,
    pub witness: Option<ClusterWitness>,
    /// Reference length actually used; differs from the query after a
    /// degeneracy perturbation.
    pub l_used: f64,
    pub perturbed: bool,
    pub stats: DecideStats,
}

/// Decides whether `T` has `q.m` pairwise disjoint subtrajectories, one of
/// length at least `q.l`, all within Fréchet distance `(1 + eps) d` of it.
/// A NO answer means there is no such cluster at distance `d`.
pub fn decide(t: &Trajectory, q: &ClusterQuery) -> Result<Decision> {
    q.validate()?;
    let total = t.total_length();
    let mut out = Decision { answer: false, witness: None, l_used: q.l, perturbed: false, stats: DecideStats::default() };
    if q.l > total {
        return Ok(out);
    }
    if q.m == 1 {
        let reference = match q.mode {
            Mode::Vertex => windows_vertex(t, q.l)?.first().map(|w| (w.s, w.t)).unwrap_or((0.0, total)),
            Mode::Arbitrary => (0.0, q.l),
        };
        out.answer = true;
        out.witness = Some(ClusterWitness { reference, members: Vec::new() });
        return Ok(out);
    }

    let fsd = build_diagram(t, t, FreeSpaceConfig::new(q.d, q.eps)?)?;
    let bt = &fsd.timings;
    out.stats.timings.simplify = bt.simplify.as_secs_f64();
    out.stats.timings.near_pairs = bt.near_pairs.as_secs_f64();
    out.stats.timings.cells = bt.cells.as_secs_f64();
    out.stats.cells = fsd.cells.len();

    let t0 = Instant::now();
    let mut g = build_graph(&fsd);
    out.stats.edges = g.num_edges();
    out.stats.critical_points.boundary = g.num_critical();

    let windows = match q.mode {
        Mode::Vertex => windows_vertex(t, q.l)?,
        Mode::Arbitrary => {
            let p = perturb_if_degenerate(&fsd, q.l);
            out.l_used = p.l;
            out.perturbed = p.perturbed;
            arbitrary_windows(&fsd, p.l, &mut out.stats.critical_points)
        }
    };
    out.stats.timings.graph = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let mut sweeper = Sweeper::new(&fsd, &mut g);
    for w in windows {
        if w.t > fsd.width() {
            continue;
        }
        let members = sweeper.paths(w, q.m - 1)?;
        if members.len() + 1 >= q.m {
            out.answer = true;
            out.witness = Some(ClusterWitness { reference: (w.s, w.t), members });
            break;
        }
    }
    out.stats.sweep = sweeper.stats;
    out.stats.timings.sweep = t1.elapsed().as_secs_f64();
    Ok(out)
}

// starts at every critical x, and l before it
fn arbitrary_windows(fsd: &FreeSpaceDiagram, l: f64, counts: &mut CriticalCounts) -> Vec<Window> {
    let pts = internal_critical_points_from(fsd, &extract_boundary_critical_points(fsd), l);
    let mut starts = Vec::with_capacity(2 * pts.len());
    for p in &pts {
        match p.kind {
            InternalKind::EndOfCell => counts.end_of_cell += 1,
            InternalKind::Propagated => counts.propagated += 1,
            InternalKind::LApart => counts.l_apart += 1,
            InternalKind::Diagonal => counts.diagonal += 1,
            InternalKind::Boundary => {}
        }
        // the point may sit on either sweep line
        starts.extend([p.position.0, p.position.0 - l]);
    }
    windows_arbitrary(starts, l, fsd.width())
}
