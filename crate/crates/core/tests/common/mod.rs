#![allow(dead_code)]

use packsc::freespace::{FreeInterval, FreeSpaceDiagram};
use packsc::{Point, Trajectory};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const SLACK: f64 = 1e-9;

pub fn walk(rng: &mut ChaCha8Rng, n: usize, step: (f64, f64)) -> Trajectory {
    let mut p = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let mut pts = vec![p];
    let mut h: f64 = rng.gen_range(0.0..6.3);
    for _ in 1..n {
        h += rng.gen_range(-1.5..1.5);
        p = p + Point::new(h.cos(), h.sin()) * rng.gen_range(step.0..step.1);
        pts.push(p);
    }
    Trajectory::new(pts).unwrap()
}

fn hull(a: FreeInterval, b: FreeInterval) -> FreeInterval {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    FreeInterval { lo: a.lo.min(b.lo), hi: a.hi.max(b.hi) }
}

fn clip(iv: FreeInterval, a: f64, b: f64) -> FreeInterval {
    FreeInterval { lo: iv.lo.max(a), hi: iv.hi.min(b) }
}

// cell interval widened by the slack, then clipped
fn widen(iv: FreeInterval, a: f64, b: f64) -> FreeInterval {
    if iv.is_empty() {
        return iv;
    }
    clip(FreeInterval { lo: iv.lo - SLACK, hi: iv.hi + SLACK }, a, b)
}

// rows (or columns) whose closed range holds the whole of [a, b]
fn spans(breaks: &[f64], a: f64, b: f64) -> Vec<usize> {
    (0..breaks.len() - 1).filter(|&i| breaks[i] <= a && b <= breaks[i + 1]).collect()
}

/// White `y` range of the vertical line `x` within `[ya, yb]`, the union over
/// all cells touching that piece of line.
pub fn vline(fsd: &FreeSpaceDiagram, x: f64, ya: f64, yb: f64) -> FreeInterval {
    let mut out = FreeInterval::EMPTY;
    for r in spans(fsd.y_breaks(), ya, yb) {
        for c in spans(fsd.x_breaks(), x, x) {
            if let Some(id) = fsd.cell_at(r, c) {
                let cell = &fsd.cells[id];
                out = hull(out, widen(cell.vertical_interval(x), ya, yb));
                // ends of the piece seen from the crossing lines
                for y in [ya, yb] {
                    if has(cell.horizontal_interval(y), x) {
                        out = hull(out, FreeInterval { lo: y, hi: y });
                    }
                }
            }
        }
    }
    out
}

/// White `x` range of the horizontal line `y` within `[xa, xb]`.
pub fn hline(fsd: &FreeSpaceDiagram, y: f64, xa: f64, xb: f64) -> FreeInterval {
    let mut out = FreeInterval::EMPTY;
    for r in spans(fsd.y_breaks(), y, y) {
        for c in spans(fsd.x_breaks(), xa, xb) {
            if let Some(id) = fsd.cell_at(r, c) {
                let cell = &fsd.cells[id];
                out = hull(out, widen(cell.horizontal_interval(y), xa, xb));
                for x in [xa, xb] {
                    if has(cell.vertical_interval(x), y) {
                        out = hull(out, FreeInterval { lo: x, hi: x });
                    }
                }
            }
        }
    }
    out
}

fn cuts(breaks: &[f64], a: f64, b: f64) -> Vec<f64> {
    let mut v = vec![a];
    v.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    v.push(b);
    v
}

fn has(iv: FreeInterval, v: f64) -> bool {
    !iv.is_empty() && v >= iv.lo - SLACK && v <= iv.hi + SLACK
}

// reachable pieces of the line `x = x1` from `a`, per row of the cuts of
// `[a.1, y1]`
fn propagate(fsd: &FreeSpaceDiagram, a: (f64, f64), x1: f64, y1: f64) -> Vec<FreeInterval> {
    let xs = cuts(fsd.x_breaks(), a.0, x1);
    let ys = cuts(fsd.y_breaks(), a.1, y1);
    let rows = ys.len() - 1;
    // upward closure of `a` along its own vertical line
    let mut left = vec![FreeInterval::EMPTY; rows];
    let mut cur = Some(a.1);
    for j in 0..rows {
        let Some(c) = cur else { break };
        let iv = vline(fsd, a.0, ys[j], ys[j + 1]);
        if has(iv, c) {
            left[j] = FreeInterval { lo: c, hi: iv.hi };
            cur = (iv.hi >= ys[j + 1] - SLACK).then_some(ys[j + 1]);
        } else {
            cur = None;
        }
    }
    if xs[0] == xs[1] {
        return left;
    }
    for i in 0..xs.len() - 1 {
        let (xa, xb) = (xs[i], xs[i + 1]);
        let mut bottom = FreeInterval::EMPTY;
        let mut right = Vec::with_capacity(rows);
        for j in 0..rows {
            let (ya, yb) = (ys[j], ys[j + 1]);
            let l = left[j];
            let rw = vline(fsd, xb, ya, yb);
            let tw = hline(fsd, yb, xa, xb);
            let r = if !bottom.is_empty() {
                rw
            } else if !l.is_empty() {
                clip(rw, l.lo, f64::INFINITY)
            } else {
                FreeInterval::EMPTY
            };
            let t = if !l.is_empty() {
                tw
            } else if !bottom.is_empty() {
                clip(tw, bottom.lo, f64::INFINITY)
            } else {
                FreeInterval::EMPTY
            };
            right.push(r);
            bottom = t;
        }
        left = right;
    }
    left
}

/// Whether a monotone white path leads from `a` to `b`, by exact interval
/// propagation over the cells of the simplified diagram.
pub fn monotone_reachable(fsd: &FreeSpaceDiagram, a: (f64, f64), b: (f64, f64)) -> bool {
    if b.0 < a.0 || b.1 < a.1 {
        return false;
    }
    propagate(fsd, a, b.0, b.1).iter().any(|&iv| has(iv, b.1))
}

/// Lowest `y <= cap` on `x = t` reachable from `a`.
pub fn lowest_end(fsd: &FreeSpaceDiagram, a: (f64, f64), t: f64, cap: f64) -> Option<f64> {
    if a.1 > cap || a.0 > t {
        return None;
    }
    propagate(fsd, a, t, cap).iter().find(|iv| !iv.is_empty()).map(|iv| iv.lo)
}

/// Lowest start on `x = s` in `[floor, cap]` with a path to `x = t`, and its
/// lowest end; starts are the lower ends of the white piece in every cell.
pub fn lowest_path(fsd: &FreeSpaceDiagram, s: f64, t: f64, floor: f64, cap: f64) -> Option<(f64, f64)> {
    let mut pieces: Vec<(f64, f64)> = fsd
        .cells
        .iter()
        .filter(|c| c.origin.0 <= s && s <= c.end.0)
        .filter_map(|c| c.vertical_interval(s).as_option())
        .collect();
    pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (lo, hi) in pieces {
        let y0 = lo.max(floor);
        if y0 > hi || y0 > cap {
            continue;
        }
        if let Some(e) = lowest_end(fsd, (s, y0), t, cap) {
            return Some((y0, e));
        }
    }
    None
}

/// Greedy disjoint paths between `x = s` and `x = t` on the simplified
/// diagram, with the same rules as the sweep.
pub fn greedy_paths(fsd: &FreeSpaceDiagram, s: f64, t: f64, cap: usize) -> Vec<(f64, f64)> {
    let total = fsd.height();
    let gap = 1e-9 * total.max(1.0);
    let mut out = Vec::new();
    let mut floor = 0.0;
    for (phase, top) in [s, total].into_iter().enumerate() {
        if phase == 1 {
            floor = f64::max(floor, t);
        }
        while out.len() < cap && floor <= top {
            let Some((y0, e)) = lowest_path(fsd, s, t, floor, top) else { break };
            out.push((y0, e));
            floor = if y0 == e { e + gap } else { e };
        }
    }
    out
}

/// Rightmost `x` among `targets` on the top edge of `row` reachable from `p`
/// by monotone moves on a grid with `res` steps per cell side.
pub fn bfs_rightmost(fsd: &FreeSpaceDiagram, row: usize, p: (f64, f64), targets: &[f64], res: usize) -> Option<f64> {
    let (y0, y1) = (fsd.y_breaks()[row], fsd.y_breaks()[row + 1]);
    let mut xs: Vec<f64> = vec![p.0];
    let xb = fsd.x_breaks();
    for id in fsd.row_cells(row) {
        let c = fsd.cells[id].col;
        for k in 0..=res {
            xs.push(xb[c] + (xb[c + 1] - xb[c]) * k as f64 / res as f64);
        }
    }
    xs.extend_from_slice(targets);
    xs.retain(|&x| x >= p.0);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut ys: Vec<f64> = (0..=res).map(|k| y0 + (y1 - y0) * k as f64 / res as f64).collect();
    ys.push(p.1);
    // low ends of vertical boundaries are where narrow passages sit
    for c in 0..xb.len() {
        let iv = vline(fsd, xb[c], y0, y1);
        if !iv.is_empty() {
            ys.extend([iv.lo, iv.hi]);
        }
    }
    ys.retain(|&y| y >= p.1 && y <= y1);
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    let (nx, ny) = (xs.len(), ys.len());
    let cols: Vec<FreeInterval> = xs.iter().map(|&x| vline(fsd, x, y0, y1)).collect();
    let white = |i: usize, j: usize| has(cols[i], ys[j]);
    let mut seen = vec![false; nx * ny];
    let mut stack = Vec::new();
    if white(0, 0) {
        seen[0] = true;
        stack.push((0usize, 0usize));
    }
    let mut best: Option<f64> = None;
    while let Some((i, j)) = stack.pop() {
        if j == ny - 1 && targets.iter().any(|&t| t == xs[i]) {
            best = Some(best.map_or(xs[i], |b: f64| b.max(xs[i])));
        }
        for (a, b) in [(i + 1, j), (i, j + 1)] {
            if a < nx && b < ny && !seen[a * ny + b] && white(a, b) {
                seen[a * ny + b] = true;
                stack.push((a, b));
            }
        }
    }
    best
}
