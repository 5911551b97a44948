//! Critical points on cell boundaries and the graph of basic monotone paths
//! between them.
//!
//! Every row contributes edges from the endpoints of the white intervals on
//! its vertical boundaries to (a) range-tree nodes over the reachable
//! top-edge critical points, (b) range-tree nodes over the high endpoints of
//! later reachable boundaries, and (c) the low endpoint of the boundary that
//! lifts the path, when there is one. Columns are handled the same way with
//! the axes swapped.

mod strip;

use std::collections::HashMap;

pub use strip::Axis;
pub(crate) use strip::{Run, Strip, NONE};

use crate::error::{Error, Result};
use crate::freespace::{FreeInterval, FreeSpaceDiagram};
use strip::Bound;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalKind {
    BoundaryEndpoint,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub position: (f64, f64),
    pub row: usize,
    pub col: usize,
    pub side: Side,
    pub kind: CriticalKind,
}

pub type NodeId = u32;

/// White interval of the vertical line `x = xb[c]` within row `row`.
///
/// The line is white only where both adjacent cells exist (or it is the
/// diagram border). The interval comes from the cell on the left when there
/// is one, so every shared boundary has exactly one numeric value.
pub fn vertical_boundary(fsd: &FreeSpaceDiagram, row: usize, c: usize) -> FreeInterval {
    let ncols = fsd.num_cols();
    let left = if c > 0 { fsd.cell_at(row, c - 1) } else { None };
    let right = if c < ncols { fsd.cell_at(row, c) } else { None };
    if (c > 0 && left.is_none()) || (c < ncols && right.is_none()) {
        return FreeInterval::EMPTY;
    }
    let id = left.or(right).expect("one side exists");
    fsd.cells[id].vertical_interval(fsd.x_breaks()[c])
}

/// White interval of the horizontal line `y = yb[r]` within column `col`.
pub fn horizontal_boundary(fsd: &FreeSpaceDiagram, r: usize, col: usize) -> FreeInterval {
    let nrows = fsd.num_rows();
    let below = if r > 0 { fsd.cell_at(r - 1, col) } else { None };
    let above = if r < nrows { fsd.cell_at(r, col) } else { None };
    if (r > 0 && below.is_none()) || (r < nrows && above.is_none()) {
        return FreeInterval::EMPTY;
    }
    let id = below.or(above).expect("one side exists");
    fsd.cells[id].horizontal_interval(fsd.y_breaks()[r])
}

#[derive(Debug, Clone, Default)]
pub(crate) struct GNode {
    pub pos: Option<(f64, f64)>,
    pub adj: Vec<NodeId>,
    pub runs: Vec<Run>,
}

#[derive(Debug, Clone)]
pub struct ReachabilityGraph {
    points: Vec<CriticalPoint>,
    pub(crate) nodes: Vec<GNode>,
    pub(crate) rows: Vec<Strip>,
    pub(crate) cols: Vec<Strip>,
    num_edges: usize,
    greedy: Vec<NodeId>,
}

fn key(p: (f64, f64)) -> (u64, u64) {
    ((p.0 + 0.0).to_bits(), (p.1 + 0.0).to_bits())
}

struct PointSet {
    points: Vec<CriticalPoint>,
    index: HashMap<(u64, u64), u32>,
}

impl PointSet {
    fn add(&mut self, position: (f64, f64), row: usize, col: usize, side: Side) -> u32 {
        let n = self.points.len() as u32;
        *self.index.entry(key(position)).or_insert_with(|| {
            self.points.push(CriticalPoint {
                position,
                row,
                col,
                side,
                kind: CriticalKind::BoundaryEndpoint,
            });
            n
        })
    }
}

/// Builds one strip from the diagram cell ids along it.
fn make_strip(
    fsd: &FreeSpaceDiagram,
    axis: Axis,
    index: usize,
    cells: Vec<usize>,
    ps: &mut PointSet,
) -> Strip {
    let (along, far_line) = match axis {
        Axis::Row => (fsd.x_breaks(), fsd.y_breaks()[index + 1]),
        Axis::Col => (fsd.y_breaks(), fsd.x_breaks()[index + 1]),
    };
    let pos_of = |id: usize| match axis {
        Axis::Row => fsd.cells[id].col,
        Axis::Col => fsd.cells[id].row,
    };
    let mut lines: Vec<usize> = Vec::new();
    let mut lb = Vec::with_capacity(cells.len());
    for &id in &cells {
        let c = pos_of(id);
        if lines.last() != Some(&c) {
            lines.push(c);
        }
        lb.push(lines.len() - 1);
        lines.push(c + 1);
    }
    let nlast = match axis {
        Axis::Row => fsd.num_cols(),
        Axis::Col => fsd.num_rows(),
    };
    let mut bounds = Vec::with_capacity(lines.len());
    for &c in &lines {
        let iv = match axis {
            Axis::Row => vertical_boundary(fsd, index, c),
            Axis::Col => horizontal_boundary(fsd, c, index),
        };
        let (lo_node, hi_node) = if iv.is_empty() {
            (NONE, NONE)
        } else {
            let (cell_pos, side) = if c < nlast {
                (
                    c,
                    if axis == Axis::Row {
                        Side::Left
                    } else {
                        Side::Bottom
                    },
                )
            } else {
                (
                    c - 1,
                    if axis == Axis::Row {
                        Side::Right
                    } else {
                        Side::Top
                    },
                )
            };
            let (row, col) = match axis {
                Axis::Row => (index, cell_pos),
                Axis::Col => (cell_pos, index),
            };
            let lo = ps.add(axis.xy(along[c], iv.lo), row, col, side);
            let hi = ps.add(axis.xy(along[c], iv.hi), row, col, side);
            (lo, hi)
        };
        bounds.push(Bound {
            line: c,
            u: along[c],
            iv,
            lo_node,
            hi_node,
        });
    }
    let mut far: Vec<(f64, u32)> = Vec::new();
    for &id in &cells {
        let c = pos_of(id);
        let iv = match axis {
            Axis::Row => horizontal_boundary(fsd, index + 1, c),
            Axis::Col => vertical_boundary(fsd, c, index + 1),
        };
        if iv.is_empty() {
            continue;
        }
        let (row, col, side) = match axis {
            Axis::Row => (index, c, Side::Top),
            Axis::Col => (c, index, Side::Right),
        };
        for u in [iv.lo, iv.hi] {
            let n = ps.add(axis.xy(u, far_line), row, col, side);
            if far.last().map(|f| f.1) != Some(n) {
                far.push((u, n));
            }
        }
    }
    Strip::new(axis, index, cells, lb, bounds, far)
}

impl ReachabilityGraph {
    pub fn points(&self) -> &[CriticalPoint] {
        &self.points
    }

    pub fn num_critical(&self) -> usize {
        self.points.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn out_edges(&self, v: NodeId) -> &[NodeId] {
        &self.nodes[v as usize].adj
    }

    /// Whether `v` stands for a point (critical or greedy) rather than a
    /// range-tree node.
    pub fn is_point(&self, v: NodeId) -> bool {
        self.nodes[v as usize].pos.is_some()
    }

    pub fn position(&self, v: NodeId) -> Option<(f64, f64)> {
        self.nodes[v as usize].pos
    }

    /// Point nodes reachable from `v` in one basic path: out-edges with
    /// range-tree nodes expanded to their leaves.
    pub fn expand(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack: Vec<NodeId> = self.out_edges(v).to_vec();
        while let Some(w) = stack.pop() {
            if self.is_point(w) {
                out.push(w);
            } else {
                stack.extend_from_slice(self.out_edges(w));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All point nodes reachable from `v` (including `v`).
    pub fn closure(&self, v: NodeId) -> Vec<NodeId> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![v];
        seen[v as usize] = true;
        let mut out = Vec::new();
        while let Some(w) = stack.pop() {
            if self.is_point(w) {
                out.push(w);
            }
            for &x in self.out_edges(w) {
                if !seen[x as usize] {
                    seen[x as usize] = true;
                    stack.push(x);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn strip(&self, axis: Axis, i: u32) -> &Strip {
        match axis {
            Axis::Row => &self.rows[i as usize],
            Axis::Col => &self.cols[i as usize],
        }
    }

    /// Cell index within the strip `axis`/`i` holding the point, preferring
    /// the later cell on shared edges.
    fn strip_cell(&self, axis: Axis, i: usize, p: (f64, f64)) -> Option<usize> {
        let s = match axis {
            Axis::Row => self.rows.get(i)?,
            Axis::Col => self.cols.get(i)?,
        };
        s.cell_containing(axis.uv(p).0)
    }

    /// Run from an arbitrary white point of row `row`.
    pub(crate) fn interior_run(
        &self,
        axis: Axis,
        i: usize,
        p: (f64, f64),
        me: NodeId,
    ) -> Option<Run> {
        let k = self.strip_cell(axis, i, p)?;
        let (u, v) = axis.uv(p);
        Some(self.strip(axis, i as u32).run(i as u32, k, u, v, me))
    }

    /// Rightmost top-edge critical point of row `row` reachable from `p`
    /// without leaving the row.
    pub fn rightmost_reachable(
        &self,
        fsd: &FreeSpaceDiagram,
        row: usize,
        p: (f64, f64),
    ) -> Result<Option<CriticalPoint>> {
        if row >= fsd.num_rows() {
            return Err(Error::InvalidParameter(format!("row {row} out of range")));
        }
        let inside = self.strip_cell(Axis::Row, row, p).is_some_and(|k| {
            let cell = &fsd.cells[self.rows[row].cells[k]];
            let (y0, y1) = cell.y_range();
            p.1 >= y0 && p.1 <= y1 && white_with_slack(fsd, cell.vertical_interval(p.0), p.1)
        });
        if !inside {
            return Err(Error::InvalidParameter(format!(
                "({}, {}) is not a white point of row {row}",
                p.0, p.1
            )));
        }
        let run = self
            .interior_run(Axis::Row, row, p, NONE)
            .expect("cell found above");
        Ok(run
            .far
            .map(|(_, q)| self.points[self.rows[row].far_node[q] as usize]))
    }

    /// Adds a white point as a node with its row and column runs.
    pub fn insert_greedy_point(&mut self, fsd: &FreeSpaceDiagram, p: (f64, f64)) -> Result<NodeId> {
        let (row, col) = locate(fsd, p)
            .ok_or_else(|| Error::InvalidParameter(format!("({}, {}) is not white", p.0, p.1)))?;
        let me = self.nodes.len() as NodeId;
        let mut node = GNode {
            pos: Some(p),
            ..GNode::default()
        };
        for (axis, i) in [(Axis::Row, row), (Axis::Col, col)] {
            if let Some(run) = self.interior_run(axis, i, p, me) {
                edges_of(self.strip(axis, i as u32), &run, &mut node.adj);
                node.runs.push(run);
            }
        }
        node.adj.sort_unstable();
        node.adj.dedup();
        self.num_edges += node.adj.len();
        self.nodes.push(node);
        self.greedy.push(me);
        Ok(me)
    }

    /// Removes the most recently inserted greedy point.
    pub fn remove_greedy_point(&mut self, v: NodeId) -> Result<()> {
        if self.greedy.last() != Some(&v) {
            return Err(Error::Structural(format!(
                "node {v} is not the last greedy point"
            )));
        }
        self.greedy.pop();
        let n = self.nodes.pop().expect("greedy node exists");
        self.num_edges -= n.adj.len();
        Ok(())
    }
}

fn edges_of(s: &Strip, run: &Run, out: &mut Vec<NodeId>) {
    if let Some((a, b)) = run.far {
        out.extend(
            s.far_tree
                .cover_leaves(a, b + 1)
                .into_iter()
                .map(|id| s.far_graph_id(id)),
        );
    }
    out.extend(
        s.hi_tree
            .cover_leaves(run.hi.0, run.hi.1)
            .into_iter()
            .map(|id| s.hi_graph_id(id)),
    );
    for w in [run.pass, run.same] {
        if w != NONE {
            out.push(w);
        }
    }
}

fn white_with_slack(fsd: &FreeSpaceDiagram, iv: FreeInterval, y: f64) -> bool {
    let slack = 1e-9 * fsd.height().max(fsd.width()).max(1.0);
    !iv.is_empty() && y >= iv.lo - slack && y <= iv.hi + slack
}

/// Row and column of a cell holding the white point `p`, preferring later
/// cells on shared edges.
pub(crate) fn locate(fsd: &FreeSpaceDiagram, p: (f64, f64)) -> Option<(usize, usize)> {
    let (xb, yb) = (fsd.x_breaks(), fsd.y_breaks());
    let c = fsd.p_map.segment_at(p.0);
    let r = fsd.q_map.segment_at(p.1);
    let cols = if c > 0 && p.0 == xb[c] {
        vec![c, c - 1]
    } else {
        vec![c]
    };
    let rows = if r > 0 && p.1 == yb[r] {
        vec![r, r - 1]
    } else {
        vec![r]
    };
    for &row in &rows {
        for &col in &cols {
            if let Some(id) = fsd.cell_at(row, col) {
                let cell = &fsd.cells[id];
                if white_with_slack(fsd, cell.vertical_interval(p.0), p.1)
                    || white_with_slack(fsd, cell.horizontal_interval(p.1), p.0)
                {
                    return Some((row, col));
                }
            }
        }
    }
    None
}

/// Boundary critical points of the diagram, in node order.
pub fn extract_boundary_critical_points(fsd: &FreeSpaceDiagram) -> Vec<CriticalPoint> {
    build_graph(fsd).points
}

pub fn build_graph(fsd: &FreeSpaceDiagram) -> ReachabilityGraph {
    let mut ps = PointSet {
        points: Vec::new(),
        index: HashMap::new(),
    };
    let mut rows: Vec<Strip> = (0..fsd.num_rows())
        .map(|i| make_strip(fsd, Axis::Row, i, fsd.row_cells(i).collect(), &mut ps))
        .collect();
    let mut cols: Vec<Strip> = (0..fsd.num_cols())
        .map(|j| make_strip(fsd, Axis::Col, j, fsd.col_cells(j).to_vec(), &mut ps))
        .collect();

    let ncrit = ps.points.len();
    let mut next = ncrit as u32;
    for s in rows.iter_mut().chain(cols.iter_mut()) {
        s.far_base = next;
        next += s.far_tree.num_nodes() as u32;
        s.hi_base = next;
        next += s.hi_tree.num_nodes() as u32;
    }
    let mut nodes = vec![GNode::default(); next as usize];
    for (i, p) in ps.points.iter().enumerate() {
        nodes[i].pos = Some(p.position);
    }
    for s in rows.iter().chain(cols.iter()) {
        for id in 0..s.far_tree.num_nodes() {
            if let Some((l, r)) = s.far_tree.children(id) {
                nodes[(s.far_base as usize) + id].adj = vec![s.far_graph_id(l), s.far_graph_id(r)];
            }
        }
        for id in 0..s.hi_tree.num_nodes() {
            if let Some((l, r)) = s.hi_tree.children(id) {
                nodes[(s.hi_base as usize) + id].adj = vec![s.hi_graph_id(l), s.hi_graph_id(r)];
            }
        }
    }

    let mut g = ReachabilityGraph {
        points: ps.points,
        nodes,
        rows: Vec::new(),
        cols: Vec::new(),
        num_edges: 0,
        greedy: Vec::new(),
    };
    // right-to-left over boundaries so that blocking boundaries are done first
    for strips in [&mut rows, &mut cols] {
        for (i, s) in strips.iter_mut().enumerate() {
            for b in (0..s.bounds.len()).rev() {
                let Some(k0) = s.right_cell[b] else { continue };
                let bd = s.bounds[b].clone();
                if bd.iv.is_empty() {
                    continue;
                }
                for (level, node, is_lo) in
                    [(bd.iv.lo, bd.lo_node, true), (bd.iv.hi, bd.hi_node, false)]
                {
                    if !is_lo && node == bd.lo_node {
                        s.reach_hi[b] = s.reach_lo[b];
                        continue;
                    }
                    let run = s.run(i as u32, k0, bd.u, level, node);
                    let reach = run.far.map(|r| r.1);
                    if is_lo {
                        s.reach_lo[b] = reach;
                    } else {
                        s.reach_hi[b] = reach;
                    }
                    let n = &mut g.nodes[node as usize];
                    edges_of(s, &run, &mut n.adj);
                    n.runs.push(run);
                }
            }
        }
    }
    // points on the top and right border can only move along that border
    let border: Vec<(Axis, u32, f64)> = cols
        .iter()
        .chain(rows.iter())
        .filter_map(|s| {
            s.bounds
                .last()
                .filter(|b| {
                    b.line
                        == match s.axis {
                            Axis::Col => fsd.num_rows(),
                            Axis::Row => fsd.num_cols(),
                        }
                        && !b.iv.is_empty()
                })
                .map(|b| (s.axis, b))
        })
        .flat_map(|(axis, b)| {
            let other = if axis == Axis::Col {
                Axis::Row
            } else {
                Axis::Col
            };
            [b.lo_node, b.hi_node].map(|n| (other, n, b.u))
        })
        .collect();
    for (axis, node, level) in border {
        let s = match axis {
            Axis::Row => &rows[fsd.num_rows() - 1],
            Axis::Col => &cols[fsd.num_cols() - 1],
        };
        let (u, _) = axis.uv(g.points[node as usize].position);
        let Some(k) = s.cell_containing(u) else {
            continue;
        };
        let run = s.run(s.index as u32, k, u, level, node);
        let n = &mut g.nodes[node as usize];
        edges_of(s, &run, &mut n.adj);
        n.runs.push(run);
    }
    for v in 0..ncrit {
        let adj = &mut g.nodes[v].adj;
        adj.sort_unstable();
        adj.dedup();
        adj.retain(|&w| w as usize != v);
    }
    g.num_edges = g.nodes.iter().map(|n| n.adj.len()).sum();
    g.rows = rows;
    g.cols = cols;
    g
}

#[cfg(test)]
mod tests;
