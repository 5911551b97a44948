//! One row or column of the diagram, in a frame where `u` runs along the
//! strip and `v` across it.
//!
//! Boundaries are the cell edges crossing the strip (vertical lines for a
//! row). The far side is the edge the strip exits through when moving
//! across it (the top edge for a row, the right edge for a column).

use crate::freespace::{FreeInterval, FreeSpaceDiagram};
use crate::structures::{BlockKind, BlockTree, RangeTree};

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Col,
}

impl Axis {
    /// `(x, y)` to `(u, v)`.
    pub fn uv(self, p: (f64, f64)) -> (f64, f64) {
        match self {
            Axis::Row => p,
            Axis::Col => (p.1, p.0),
        }
    }

    /// `(u, v)` to `(x, y)`.
    pub fn xy(self, u: f64, v: f64) -> (f64, f64) {
        match self {
            Axis::Row => (u, v),
            Axis::Col => (v, u),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Bound {
    /// Break index of the line along `u`.
    pub line: usize,
    pub u: f64,
    /// White interval in `v`.
    pub iv: FreeInterval,
    pub lo_node: u32,
    pub hi_node: u32,
}

/// Result of moving along a strip from a source point.
#[derive(Debug, Clone)]
pub(crate) struct Run {
    pub axis: Axis,
    pub strip: u32,
    /// Cells `k0..=k1` of the strip are entered.
    pub k0: u32,
    pub k1: u32,
    pub start_u: f64,
    pub level: f64,
    /// Lowest reachable point of the blocking boundary, when the run
    /// continues through it.
    pub pass: u32,
    /// Reachable far-side points, as an inclusive index range.
    pub far: Option<(usize, usize)>,
    /// Reachable high endpoints of later boundaries, as a leaf range of the
    /// high-endpoint tree.
    pub hi: (usize, usize),
    /// High endpoint of the boundary the source lies on, reached by moving
    /// along that boundary.
    pub same: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct Strip {
    pub axis: Axis,
    pub index: usize,
    /// Diagram cell ids in order along the strip.
    pub cells: Vec<usize>,
    /// Boundary index of the near edge of every cell; the far edge is `+1`.
    pub lb: Vec<usize>,
    pub bounds: Vec<Bound>,
    /// Cell whose near edge is the boundary, if any.
    pub right_cell: Vec<Option<usize>>,
    pub block: BlockTree,
    pub far_u: Vec<f64>,
    pub far_node: Vec<u32>,
    pub far_tree: RangeTree,
    pub far_base: u32,
    /// Boundaries with a non-empty interval, the leaves of `hi_tree`.
    pub hi_bound: Vec<usize>,
    pub hi_tree: RangeTree,
    pub hi_base: u32,
    /// Rightmost reachable far index from the low/high endpoint of every
    /// boundary.
    pub reach_lo: Vec<Option<usize>>,
    pub reach_hi: Vec<Option<usize>>,
}

impl Strip {
    pub fn new(
        axis: Axis,
        index: usize,
        cells: Vec<usize>,
        lb: Vec<usize>,
        bounds: Vec<Bound>,
        far: Vec<(f64, u32)>,
    ) -> Self {
        let mut right_cell = vec![None; bounds.len()];
        for (k, &b) in lb.iter().enumerate() {
            right_cell[b] = Some(k);
        }
        let block = BlockTree::new(
            bounds.iter().map(|b| b.iv.lo).collect(),
            bounds.iter().map(|b| b.iv.hi).collect(),
        );
        let far_u: Vec<f64> = far.iter().map(|f| f.0).collect();
        let far_node: Vec<u32> = far.iter().map(|f| f.1).collect();
        let far_tree = RangeTree::new(far_u.clone()).expect("far points are sorted");
        let hi_bound: Vec<usize> = (0..bounds.len())
            .filter(|&b| !bounds[b].iv.is_empty())
            .collect();
        let hi_tree = RangeTree::new(hi_bound.iter().map(|&b| bounds[b].u).collect())
            .expect("bounds are sorted");
        let nb = bounds.len();
        Strip {
            axis,
            index,
            cells,
            lb,
            bounds,
            right_cell,
            block,
            far_u,
            far_node,
            far_tree,
            far_base: NONE,
            hi_bound,
            hi_tree,
            hi_base: NONE,
            reach_lo: vec![None; nb],
            reach_hi: vec![None; nb],
        }
    }

    /// Graph id of a node of the far-point tree.
    pub fn far_graph_id(&self, id: usize) -> u32 {
        match self.far_tree.children(id) {
            None => self.far_node[self.far_tree.leaf_range(id).0],
            Some(_) => self.far_base + id as u32,
        }
    }

    /// Graph id of a node of the high-endpoint tree.
    pub fn hi_graph_id(&self, id: usize) -> u32 {
        match self.hi_tree.children(id) {
            None => self.bounds[self.hi_bound[self.hi_tree.leaf_range(id).0]].hi_node,
            Some(_) => self.hi_base + id as u32,
        }
    }

    /// Index of the cell containing `u`, preferring the later cell at shared
    /// edges.
    pub fn cell_containing(&self, u: f64) -> Option<usize> {
        let k = self.lb.partition_point(|&b| self.bounds[b].u <= u);
        if k == 0 {
            return None;
        }
        let k = k - 1;
        (u <= self.bounds[self.lb[k] + 1].u).then_some(k)
    }

    /// Moves from a source in cell `k0` at level `level` and position
    /// `start_u`; `me` is the source node, excluded from its own targets.
    pub fn run(&self, strip: u32, k0: usize, start_u: f64, level: f64, me: u32) -> Run {
        let b = self.lb[k0];
        let (m, pass) = match self.block.first_blocker(b, level) {
            None => (None, NONE),
            Some((m, kind)) => {
                let bd = &self.bounds[m];
                let pass = if bd.iv.is_empty() {
                    NONE
                } else if kind == BlockKind::Bottom {
                    bd.lo_node
                } else if level <= bd.iv.hi {
                    bd.hi_node
                } else {
                    NONE
                };
                (Some(m), pass)
            }
        };
        let last = m.unwrap_or(self.bounds.len() - 1);
        let k1 = k0 + (last - b) - 1;
        let u_end = self.bounds[last].u;

        let mut first = self.far_u.partition_point(|&u| u < start_u);
        if first < self.far_node.len() && self.far_node[first] == me {
            first += 1;
        }
        let own_end = self.far_u.partition_point(|&u| u <= u_end);
        let mut top = (own_end > first).then(|| own_end - 1);
        if pass != NONE {
            let m = m.unwrap();
            let via = if pass == self.bounds[m].lo_node {
                self.reach_lo[m]
            } else {
                self.reach_hi[m]
            };
            top = top.max(via);
        }
        let far = top.filter(|&t| t >= first).map(|t| (first, t));

        let hi_last = match m {
            None => last,
            Some(m) if pass != NONE => m,
            Some(m) => m - 1,
        };
        let a = self.hi_bound.partition_point(|&x| x <= b);
        let c = self.hi_bound.partition_point(|&x| x <= hi_last);
        let own = &self.bounds[b];
        let same =
            if start_u == own.u && !own.iv.is_empty() && level <= own.iv.hi && own.hi_node != me {
                own.hi_node
            } else {
                NONE
            };
        Run {
            axis: self.axis,
            strip,
            k0: k0 as u32,
            k1: k1 as u32,
            start_u,
            level,
            pass,
            far,
            hi: (a, c.max(a)),
            same,
        }
    }

    /// Lowest `y` on the vertical line `x = t` reachable by a row run.
    pub fn final_row(&self, fsd: &FreeSpaceDiagram, run: &Run, t: f64) -> Option<f64> {
        let u_end = self.bounds[self.lb[run.k1 as usize] + 1].u;
        if t < run.start_u || t > u_end {
            return None;
        }
        // first entered cell whose far edge is not left of t
        let (mut k, mut hi) = (run.k0 as usize, run.k1 as usize);
        while k < hi {
            let mid = (k + hi) / 2;
            if self.bounds[self.lb[mid] + 1].u < t {
                k = mid + 1;
            } else {
                hi = mid;
            }
        }
        let iv = fsd.cells[self.cells[k]].vertical_interval(t);
        let y = run.level.max(iv.lo);
        (y <= iv.hi).then_some(y)
    }

    /// Lowest `y` on the vertical line `x = t` reachable by a column run,
    /// not looking at cells starting above `bound`.
    pub fn final_col(&self, fsd: &FreeSpaceDiagram, run: &Run, t: f64, bound: f64) -> Option<f64> {
        if t < run.level {
            return None;
        }
        for k in run.k0..=run.k1 {
            let cell = &fsd.cells[self.cells[k as usize]];
            if t > cell.end.0 {
                return None;
            }
            if cell.origin.1 > bound {
                return None;
            }
            let iv = cell.vertical_interval(t);
            let lo = if k == run.k0 {
                iv.lo.max(run.start_u)
            } else {
                iv.lo
            };
            if lo <= iv.hi {
                return Some(lo);
            }
        }
        None
    }
}
