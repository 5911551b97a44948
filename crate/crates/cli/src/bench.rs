//! Per-phase timing table over growing fixture sizes.

use anyhow::Result;
use packsc::cluster::{decide, ClusterQuery, PhaseTimings};
use packsc::Trajectory;

pub const HEADER: &str = "n,cells,critical_points,simplify_ms,near_pairs_ms,cells_ms,graph_ms,sweep_ms";

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let k = v.len() / 2;
    if v.len() % 2 == 1 {
        v[k]
    } else {
        0.5 * (v[k - 1] + v[k])
    }
}

/// One CSV row: cell and critical-point counts, then the median time of
/// each phase over `reps` runs.
pub fn row(t: &Trajectory, q: &ClusterQuery, reps: usize) -> Result<String> {
    let mut runs: Vec<PhaseTimings> = Vec::with_capacity(reps);
    let mut counts = (0, 0);
    for _ in 0..reps.max(1) {
        let dec = decide(t, q)?;
        let c = dec.stats.critical_points;
        counts = (dec.stats.cells, c.boundary + c.end_of_cell + c.propagated + c.l_apart + c.diagonal);
        runs.push(dec.stats.timings);
    }
    let ms = |f: fn(&PhaseTimings) -> f64| median(runs.iter().map(f).collect()) * 1e3;
    Ok(format!(
        "{},{},{},{:.3},{:.3},{:.3},{:.3},{:.3}",
        t.len(),
        counts.0,
        counts.1,
        ms(|p| p.simplify),
        ms(|p| p.near_pairs),
        ms(|p| p.cells),
        ms(|p| p.graph),
        ms(|p| p.sweep)
    ))
}
