//! JSON run report for `decide`.

use packsc::cluster::{ClusterQuery, ClusterWitness, CriticalCounts, Decision, PhaseTimings, SweepStats};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub cells: usize,
    pub edges: usize,
    pub critical_points: CriticalCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub answer: Answer,
    pub query: ClusterQuery,
    pub vertices: usize,
    pub total_length: f64,
    pub witness: Option<ClusterWitness>,
    /// Reference length after the degeneracy perturbation.
    pub l_used: f64,
    pub perturbed: bool,
    pub timings: PhaseTimings,
    pub counts: Counts,
    pub sweep: SweepStats,
    /// Lower-bound estimate; absent when skipped.
    pub packedness: Option<f64>,
}

impl RunReport {
    pub fn new(query: ClusterQuery, vertices: usize, total_length: f64, dec: &Decision, packedness: Option<f64>) -> Self {
        RunReport {
            answer: if dec.answer { Answer::Yes } else { Answer::No },
            query,
            vertices,
            total_length,
            witness: dec.witness.clone(),
            l_used: dec.l_used,
            perturbed: dec.perturbed,
            timings: dec.stats.timings,
            counts: Counts {
                cells: dec.stats.cells,
                edges: dec.stats.edges,
                critical_points: dec.stats.critical_points,
            },
            sweep: dec.stats.sweep,
            packedness,
        }
    }
}
