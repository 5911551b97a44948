//! Length-preserving simplified free space diagram.
//!
//! Axes measure arc length of the original curves. Column `j` covers the
//! source range of simplified segment `j` of `P`, row `i` that of segment `i`
//! of `Q`. Only cells with at least one white point are stored.

mod cell;
mod near_pairs;

use std::collections::HashMap;
use std::time::{Duration, Instant};

pub use cell::{build_cell, CellGeometry, Extremes, QuadrantMap};
pub use near_pairs::near_segment_pairs;

use crate::error::{Error, Result};
use crate::geom::{Trajectory, TAU};
use crate::simplify::{build_map, simplify_curve, SimplificationMap};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeSpaceConfig {
    pub d: f64,
    pub eps: f64,
    pub eps_int: f64,
    pub threshold: f64,
}

impl FreeSpaceConfig {
    pub fn new(d: f64, eps: f64) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "d must be positive, got {d}"
            )));
        }
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "eps must be positive, got {eps}"
            )));
        }
        let eps_int = eps / 8.0;
        Ok(Self {
            d,
            eps,
            eps_int,
            threshold: (1.0 + 4.0 * eps_int) * d,
        })
    }

    /// Simplification radius.
    pub fn mu(&self) -> f64 {
        self.eps_int * self.d
    }
}

/// White sub-interval of a line; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeInterval {
    pub lo: f64,
    pub hi: f64,
}

impl FreeInterval {
    pub const EMPTY: FreeInterval = FreeInterval {
        lo: f64::INFINITY,
        hi: f64::NEG_INFINITY,
    };

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }

    pub fn as_option(&self) -> Option<(f64, f64)> {
        (!self.is_empty()).then_some((self.lo, self.hi))
    }
}

impl From<Option<(f64, f64)>> for FreeInterval {
    fn from(v: Option<(f64, f64)>) -> Self {
        v.map_or(Self::EMPTY, |(lo, hi)| Self { lo, hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Line {
    Vertical(f64),
    Horizontal(f64),
}

/// Non-empty cell with its global placement and cached extreme points.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatedCell {
    pub row: usize,
    pub col: usize,
    pub geometry: CellGeometry,
    pub origin: (f64, f64),
    /// Global coordinates of the far corner; equal to the next breakpoints.
    pub end: (f64, f64),
    /// Extreme white points in global coordinates.
    pub extremes: Extremes,
}

impl AggregatedCell {
    pub fn x_range(&self) -> (f64, f64) {
        (self.origin.0, self.end.0)
    }

    pub fn y_range(&self) -> (f64, f64) {
        (self.origin.1, self.end.1)
    }

    // local to global, snapping the far edge to the exact breakpoint
    fn gx(&self, local: f64) -> f64 {
        if local >= self.geometry.width {
            self.end.0
        } else {
            self.origin.0 + local
        }
    }

    fn gy(&self, local: f64) -> f64 {
        if local >= self.geometry.height {
            self.end.1
        } else {
            self.origin.1 + local
        }
    }

    fn global(&self, p: (f64, f64)) -> (f64, f64) {
        (self.gx(p.0), self.gy(p.1))
    }

    pub fn is_white(&self, x: f64, y: f64) -> bool {
        self.geometry.is_white(x - self.origin.0, y - self.origin.1)
    }

    /// Global white `y` range on the vertical line at global `x`.
    pub fn vertical_interval(&self, x: f64) -> FreeInterval {
        let local = (x - self.origin.0).clamp(0.0, self.geometry.width);
        self.geometry
            .vertical_interval(local)
            .map(|(a, b)| (self.gy(a), self.gy(b)))
            .into()
    }

    /// Global white `x` range on the horizontal line at global `y`.
    pub fn horizontal_interval(&self, y: f64) -> FreeInterval {
        let local = (y - self.origin.1).clamp(0.0, self.geometry.height);
        self.geometry
            .horizontal_interval(local)
            .map(|(a, b)| (self.gx(a), self.gx(b)))
            .into()
    }
}

/// Exact white interval of `line` within `cell`.
pub fn boundary_free_interval(cell: &AggregatedCell, line: Line) -> Result<FreeInterval> {
    let check = |v: f64, (lo, hi): (f64, f64)| {
        let slack = TAU * (hi - lo).max(1.0);
        if v.is_finite() && v >= lo - slack && v <= hi + slack {
            Ok(())
        } else {
            Err(Error::ParameterDomain { value: v, lo, hi })
        }
    };
    match line {
        Line::Vertical(x) => {
            check(x, cell.x_range())?;
            Ok(cell.vertical_interval(x))
        }
        Line::Horizontal(y) => {
            check(y, cell.y_range())?;
            Ok(cell.horizontal_interval(y))
        }
    }
}

/// Leftmost, rightmost, lowest and highest white points of a cell.
pub fn cell_extremes(cell: &AggregatedCell) -> Extremes {
    cell.extremes
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BuildTimings {
    pub simplify: Duration,
    pub near_pairs: Duration,
    pub cells: Duration,
}

/// Neighbour slots: left, right, down, up.
pub const LEFT: usize = 0;
pub const RIGHT: usize = 1;
pub const DOWN: usize = 2;
pub const UP: usize = 3;

#[derive(Debug, Clone)]
pub struct FreeSpaceDiagram {
    pub config: FreeSpaceConfig,
    pub p_map: SimplificationMap,
    pub q_map: SimplificationMap,
    /// Sorted by `(row, col)`.
    pub cells: Vec<AggregatedCell>,
    /// Cell indices sorted by `(col, row)`.
    pub by_col: Vec<usize>,
    /// For every cell, the nearest non-empty cell in each direction.
    pub neighbors: Vec<[Option<usize>; 4]>,
    row_start: Vec<usize>,
    col_start: Vec<usize>,
    index: HashMap<(usize, usize), usize>,
    pub timings: BuildTimings,
}

impl FreeSpaceDiagram {
    pub fn num_rows(&self) -> usize {
        self.q_map.num_segments()
    }

    pub fn num_cols(&self) -> usize {
        self.p_map.num_segments()
    }

    pub fn width(&self) -> f64 {
        self.p_map.source_length()
    }

    pub fn height(&self) -> f64 {
        self.q_map.source_length()
    }

    /// Global x of every column boundary.
    pub fn x_breaks(&self) -> &[f64] {
        self.p_map.source_breakpoints()
    }

    /// Global y of every row boundary.
    pub fn y_breaks(&self) -> &[f64] {
        self.q_map.source_breakpoints()
    }

    pub fn cell_at(&self, row: usize, col: usize) -> Option<usize> {
        self.index.get(&(row, col)).copied()
    }

    /// Indices of the cells of row `row`, left to right.
    pub fn row_cells(&self, row: usize) -> std::ops::Range<usize> {
        self.row_start[row]..self.row_start[row + 1]
    }

    /// Indices (into `cells`) of column `col`, bottom to top.
    pub fn col_cells(&self, col: usize) -> &[usize] {
        &self.by_col[self.col_start[col]..self.col_start[col + 1]]
    }

    /// White predicate at a global point.
    pub fn is_white(&self, x: f64, y: f64) -> bool {
        let col = self.p_map.segment_at(x);
        let row = self.q_map.segment_at(y);
        self.cell_at(row, col)
            .is_some_and(|c| self.cells[c].is_white(x, y))
    }

    /// Same predicate evaluated directly through the simplification maps.
    pub fn is_white_by_maps(&self, x: f64, y: f64) -> Result<bool> {
        let a = self.p_map.map_point(x)?;
        let b = self.q_map.map_point(y)?;
        Ok(a.dist(b) <= self.config.threshold)
    }
}

/// Simplify, find near segment pairs, build and link the non-empty cells.
pub fn build_diagram(
    p: &Trajectory,
    q: &Trajectory,
    cfg: FreeSpaceConfig,
) -> Result<FreeSpaceDiagram> {
    let t0 = Instant::now();
    let p_map = build_map(&simplify_curve(p, cfg.mu())?);
    let q_map = build_map(&simplify_curve(q, cfg.mu())?);
    let t1 = Instant::now();
    let psegs: Vec<_> = p_map.curve().trajectory().edges().collect();
    let qsegs: Vec<_> = q_map.curve().trajectory().edges().collect();
    let mut pairs = near_segment_pairs(&psegs, &qsegs, cfg.threshold)?;
    let t2 = Instant::now();
    pairs.sort_unstable_by_key(|&(c, r)| (r, c));
    let xb = p_map.source_breakpoints();
    let yb = q_map.source_breakpoints();
    let mut cells = Vec::with_capacity(pairs.len());
    for (col, row) in pairs {
        let Some(geometry) = build_cell(&p_map, &q_map, col, row, cfg.threshold) else {
            continue;
        };
        let Some(ext) = geometry.extremes() else {
            continue;
        };
        let mut cell = AggregatedCell {
            row,
            col,
            geometry,
            origin: (xb[col], yb[row]),
            end: (xb[col + 1], yb[row + 1]),
            extremes: ext,
        };
        cell.extremes = Extremes {
            leftmost: cell.global(ext.leftmost),
            rightmost: cell.global(ext.rightmost),
            bottom: cell.global(ext.bottom),
            top: cell.global(ext.top),
        };
        cells.push(cell);
    }
    let t3 = Instant::now();
    let nrows = q_map.num_segments();
    let ncols = p_map.num_segments();
    let mut row_start = vec![0; nrows + 1];
    let mut col_start = vec![0; ncols + 1];
    for c in &cells {
        row_start[c.row + 1] += 1;
        col_start[c.col + 1] += 1;
    }
    for i in 0..nrows {
        row_start[i + 1] += row_start[i];
    }
    for j in 0..ncols {
        col_start[j + 1] += col_start[j];
    }
    let mut by_col: Vec<usize> = (0..cells.len()).collect();
    by_col.sort_by_key(|&i| (cells[i].col, cells[i].row));
    let index: HashMap<(usize, usize), usize> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| ((c.row, c.col), i))
        .collect();
    let mut neighbors = vec![[None; 4]; cells.len()];
    for w in 1..cells.len() {
        if cells[w - 1].row == cells[w].row {
            neighbors[w - 1][RIGHT] = Some(w);
            neighbors[w][LEFT] = Some(w - 1);
        }
    }
    for w in by_col.windows(2) {
        let (a, b) = (w[0], w[1]);
        if cells[a].col == cells[b].col {
            neighbors[a][UP] = Some(b);
            neighbors[b][DOWN] = Some(a);
        }
    }
    Ok(FreeSpaceDiagram {
        config: cfg,
        p_map,
        q_map,
        cells,
        by_col,
        neighbors,
        row_start,
        col_start,
        index,
        timings: BuildTimings {
            simplify: t1 - t0,
            near_pairs: t2 - t1,
            cells: t3 - t2,
        },
    })
}
