//! Greedy search for disjoint monotone paths between two sweep lines.

use serde::{Deserialize, Serialize};

use super::Window;
use crate::error::{Error, Result};
use crate::freespace::FreeSpaceDiagram;
use crate::reachability::{Axis, NodeId, ReachabilityGraph};

const UNSEEN: u8 = 0;
const OPEN: u8 = 1;
const DONE: u8 = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepStats {
    pub windows: usize,
    pub greedy_points: usize,
    pub visited: usize,
    pub dead_marks: usize,
}

struct Frame {
    v: NodeId,
    next: usize,
    best: f64,
    taint: bool,
}

/// Search state shared by consecutive windows. Dead marks stay valid while
/// the right sweep line never moves left.
pub struct Sweeper<'a> {
    fsd: &'a FreeSpaceDiagram,
    g: &'a mut ReachabilityGraph,
    val: Vec<f64>,
    taint: Vec<bool>,
    state: Vec<u8>,
    stamp: Vec<u32>,
    dead: Vec<bool>,
    epoch: u32,
    last_t: f64,
    gap: f64,
    pub stats: SweepStats,
}

impl<'a> Sweeper<'a> {
    pub fn new(fsd: &'a FreeSpaceDiagram, g: &'a mut ReachabilityGraph) -> Self {
        // one spare slot for the greedy start point
        let n = g.num_nodes() + 1;
        Sweeper {
            fsd,
            g,
            val: vec![f64::INFINITY; n],
            taint: vec![false; n],
            state: vec![UNSEEN; n],
            stamp: vec![0; n],
            dead: vec![false; n],
            epoch: 0,
            last_t: f64::NEG_INFINITY,
            gap: 1e-9 * fsd.height().max(1.0),
            stats: SweepStats::default(),
        }
    }

    fn begin(&mut self, t: f64) {
        self.epoch += 1;
        if t < self.last_t {
            self.dead.iter_mut().for_each(|d| *d = false);
        }
        self.last_t = t;
    }

    fn fresh(&mut self, v: NodeId) {
        let i = v as usize;
        if self.stamp[i] != self.epoch {
            self.stamp[i] = self.epoch;
            self.state[i] = UNSEEN;
        }
    }

    // lowest y on x = t reachable through v's own runs; flags finals cut off
    // by the cap
    fn own_final(&self, v: NodeId, t: f64, cap: f64) -> (f64, bool) {
        let mut best = f64::INFINITY;
        let mut cut = false;
        for run in &self.g.nodes[v as usize].runs {
            let s = self.g.strip(run.axis, run.strip);
            let y = match run.axis {
                Axis::Row => s.final_row(self.fsd, run, t),
                Axis::Col => s.final_col(self.fsd, run, t, cap),
            };
            match y {
                Some(y) if y <= cap => best = best.min(y),
                Some(_) => cut = true,
                None => {}
            }
        }
        (best, cut || cap < self.fsd.height())
    }

    // opens a frame, or returns the value right away
    fn enter(&mut self, v: NodeId, t: f64, cap: f64) -> std::result::Result<Frame, (f64, bool)> {
        let i = v as usize;
        if self.dead[i] {
            return Err((f64::INFINITY, false));
        }
        self.fresh(v);
        match self.state[i] {
            DONE => return Err((self.val[i], self.taint[i])),
            OPEN => return Err((f64::INFINITY, true)),
            _ => {}
        }
        self.stats.visited += 1;
        let mut best = f64::INFINITY;
        let mut taint = false;
        if let Some((x, y)) = self.g.position(v) {
            if x > t || y > cap {
                self.close(v, f64::INFINITY, true);
                return Err((f64::INFINITY, true));
            }
            if x == t {
                self.close(v, y, false);
                return Err((y, false));
            }
            (best, taint) = self.own_final(v, t, cap);
        }
        self.state[i] = OPEN;
        Ok(Frame { v, next: 0, best, taint })
    }

    fn close(&mut self, v: NodeId, best: f64, taint: bool) {
        let i = v as usize;
        self.val[i] = best;
        self.taint[i] = taint;
        self.state[i] = DONE;
        if best == f64::INFINITY && !taint {
            self.dead[i] = true;
            self.stats.dead_marks += 1;
        }
    }

    /// Lowest `y` on `x = t` reachable from `root` without exceeding `cap`.
    fn value(&mut self, root: NodeId, t: f64, cap: f64) -> f64 {
        let mut stack = match self.enter(root, t, cap) {
            Ok(f) => vec![f],
            Err((v, _)) => return v,
        };
        let mut result = f64::INFINITY;
        while let Some(top) = stack.last_mut() {
            let v = top.v;
            let adj = &self.g.nodes[v as usize].adj;
            if top.next < adj.len() {
                let c = adj[top.next];
                top.next += 1;
                match self.enter(c, t, cap) {
                    Ok(f) => stack.push(f),
                    Err((cv, ct)) => {
                        let top = stack.last_mut().unwrap();
                        top.taint |= ct;
                        top.best = top.best.min(cv);
                    }
                }
                continue;
            }
            let f = stack.pop().unwrap();
            self.close(f.v, f.best, f.taint);
            match stack.last_mut() {
                Some(p) => {
                    p.taint |= f.taint;
                    p.best = p.best.min(f.best);
                }
                None => result = f.best,
            }
        }
        result
    }

    /// White pieces of the line `x = s`, one per cell, by lower end.
    fn start_pieces(&self, s: f64) -> Vec<(f64, f64)> {
        let xb = self.fsd.x_breaks();
        let c = self.fsd.p_map.segment_at(s);
        let mut cols = vec![c];
        if c > 0 && xb[c] == s {
            cols.push(c - 1);
        }
        let mut out: Vec<(f64, f64)> = cols
            .iter()
            .flat_map(|&c| self.fsd.col_cells(c).iter())
            .filter_map(|&id| self.fsd.cells[id].vertical_interval(s).as_option())
            .collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        out
    }

    /// Lowest path from `x = s` to `x = t` starting at or above `floor` and
    /// staying at or below `top`: its start and end `y`.
    pub fn lowest_path(&mut self, s: f64, t: f64, floor: f64, top: f64) -> Result<Option<(f64, f64)>> {
        self.begin(t);
        let pieces = self.start_pieces(s);
        self.search(&pieces, s, t, floor, top)
    }

    // same as lowest_path, reusing the memo of the current (t, top)
    fn search(&mut self, pieces: &[(f64, f64)], s: f64, t: f64, floor: f64, top: f64) -> Result<Option<(f64, f64)>> {
        for &(lo, hi) in pieces {
            let y0 = lo.max(floor);
            if y0 > hi || y0 > top {
                continue;
            }
            let me = self.g.insert_greedy_point(self.fsd, (s, y0))?;
            self.stats.greedy_points += 1;
            let e = self.value(me, t, top);
            let i = me as usize;
            self.stamp[i] = 0;
            self.dead[i] = false;
            self.g.remove_greedy_point(me)?;
            if e.is_finite() {
                return Ok(Some((y0, e)));
            }
        }
        Ok(None)
    }

    /// Greedy disjoint paths for one window, at most `cap` of them, as
    /// `(start y, end y)` pairs.
    pub fn paths(&mut self, w: Window, cap: usize) -> Result<Vec<(f64, f64)>> {
        if !(w.s < w.t) || w.s < 0.0 || w.t > self.fsd.width() * (1.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!("window [{}, {}]", w.s, w.t)));
        }
        self.stats.windows += 1;
        let height = self.fsd.height();
        let mut out = Vec::new();
        let mut floor = 0.0;
        let pieces = self.start_pieces(w.s);
        for (phase, top) in [w.s, height].into_iter().enumerate() {
            if phase == 1 {
                floor = f64::max(floor, w.t);
            }
            // values depend on the cap, so each phase gets its own memo
            self.begin(w.t);
            while out.len() < cap && floor <= top {
                let Some((y0, e)) = self.search(&pieces, w.s, w.t, floor, top)? else { break };
                out.push((y0, e));
                floor = if y0 == e { e + self.gap } else { e };
            }
        }
        Ok(out)
    }
}

/// Number of disjoint monotone paths from `x = w.s` to `x = w.t`, at most `cap`.
pub fn count_disjoint_paths(
    fsd: &FreeSpaceDiagram,
    g: &mut ReachabilityGraph,
    w: Window,
    cap: usize,
) -> Result<usize> {
    Ok(Sweeper::new(fsd, g).paths(w, cap)?.len())
}
