//! Slow exact reference implementations for differential testing.
//!
//! Everything here works on the original curves, without simplification.

use crate::cluster::{ClusterQuery, ClusterWitness, Mode};
use crate::error::{Error, Result};
use crate::freespace::FreeInterval;
use crate::geom::{segment_disk_interval, Point, Trajectory};

/// Largest vertex count accepted by [`sc_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 14;

/// Exact free space of two curves at distance `d`.
#[derive(Debug, Clone)]
pub struct ExactFreeSpace {
    p: Trajectory,
    q: Trajectory,
    d: f64,
}

impl ExactFreeSpace {
    pub fn new(p: &Trajectory, q: &Trajectory, d: f64) -> Self {
        ExactFreeSpace { p: p.clone(), q: q.clone(), d }
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn width(&self) -> f64 {
        self.p.total_length()
    }

    pub fn height(&self) -> f64 {
        self.q.total_length()
    }

    pub fn x_breaks(&self) -> &[f64] {
        self.p.prefix_lengths()
    }

    pub fn y_breaks(&self) -> &[f64] {
        self.q.prefix_lengths()
    }

    pub fn is_white(&self, x: f64, y: f64) -> Result<bool> {
        Ok(self.p.point_at(x)?.dist(self.q.point_at(y)?) <= self.d)
    }

    /// White `y` range on the vertical line at `x`, restricted to `[y0, y1]`,
    /// which must lie within one edge of `Q`.
    pub fn vertical_interval(&self, x: f64, y0: f64, y1: f64) -> FreeInterval {
        let Ok(c) = self.p.point_at(x) else { return FreeInterval::EMPTY };
        clip(&self.q, c, self.d, y0, y1)
    }

    /// White `x` range on the horizontal line at `y`, restricted to `[x0, x1]`,
    /// which must lie within one edge of `P`.
    pub fn horizontal_interval(&self, y: f64, x0: f64, x1: f64) -> FreeInterval {
        let Ok(c) = self.q.point_at(y) else { return FreeInterval::EMPTY };
        clip(&self.p, c, self.d, x0, x1)
    }

    /// Lowest `y` on the line `x = xs.last()` reachable by a monotone path
    /// that starts on `x = xs[0]` with `y` in `src` and stays in `[floor, cap]`.
    pub fn lowest_end(&self, x0: f64, x1: f64, src: (f64, f64), floor: f64, cap: f64) -> Option<f64> {
        let xs = cuts(self.x_breaks(), x0, x1);
        let ys = cuts(self.y_breaks(), floor, cap);
        let right = self.propagate(&xs, &ys, src);
        right.iter().find(|iv| !iv.is_empty()).map(|iv| iv.lo)
    }

    /// Reachable intervals on the last vertical line, one per row of `ys`.
    fn propagate(&self, xs: &[f64], ys: &[f64], src: (f64, f64)) -> Vec<FreeInterval> {
        let rows = ys.len() - 1;
        // reachable part of the left edge of the current column, per row
        let mut left: Vec<FreeInterval> = (0..rows)
            .map(|j| {
                let iv = self.vertical_interval(xs[0], ys[j], ys[j + 1]);
                FreeInterval { lo: iv.lo.max(src.0), hi: iv.hi.min(src.1) }
            })
            .collect();
        for i in 0..xs.len() - 1 {
            let (xa, xb) = (xs[i], xs[i + 1]);
            let mut bottom = FreeInterval::EMPTY;
            let mut right = Vec::with_capacity(rows);
            for j in 0..rows {
                let (ya, yb) = (ys[j], ys[j + 1]);
                let l = left[j];
                let rw = self.vertical_interval(xb, ya, yb);
                let tw = self.horizontal_interval(yb, xa, xb);
                let r = if !bottom.is_empty() {
                    rw
                } else if !l.is_empty() {
                    FreeInterval { lo: rw.lo.max(l.lo), hi: rw.hi }
                } else {
                    FreeInterval::EMPTY
                };
                let t = if !l.is_empty() {
                    tw
                } else if !bottom.is_empty() {
                    FreeInterval { lo: tw.lo.max(bottom.lo), hi: tw.hi }
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
}

// sorted cut coordinates: the endpoints plus every breakpoint between them
fn cuts(breaks: &[f64], a: f64, b: f64) -> Vec<f64> {
    let mut v = vec![a];
    v.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    v.push(b);
    v
}

fn clip(curve: &Trajectory, c: Point, d: f64, a: f64, b: f64) -> FreeInterval {
    if a > b {
        return FreeInterval::EMPTY;
    }
    let mid = 0.5 * (a + b);
    let e = curve.edge_index_at(mid.min(curve.total_length()));
    let pre = curve.prefix_lengths();
    let (l0, l1) = (pre[e], pre[e + 1]);
    let v = curve.vertices();
    match segment_disk_interval(v[e], v[e + 1], c, d) {
        None => FreeInterval::EMPTY,
        Some((t0, t1)) => {
            let lo = (l0 + t0 * (l1 - l0)).max(a);
            let hi = (l0 + t1 * (l1 - l0)).min(b);
            FreeInterval { lo, hi }
        }
    }
}

/// Whether the Fréchet distance of two curves is at most `d`.
pub fn frechet_decide(p: &Trajectory, q: &Trajectory, d: f64) -> bool {
    let fs = ExactFreeSpace::new(p, q, d);
    let (w, h) = (fs.width(), fs.height());
    if !fs.is_white(0.0, 0.0).unwrap_or(false) || !fs.is_white(w, h).unwrap_or(false) {
        return false;
    }
    let xs = fs.x_breaks().to_vec();
    let ys = fs.y_breaks().to_vec();
    let right = fs.propagate(&xs, &ys, (0.0, 0.0));
    right.last().is_some_and(|iv| iv.contains(h))
}

/// [`frechet_decide`] for vertex lists that may collapse to a single point.
pub fn frechet_decide_points(p: &[Point], q: &[Point], d: f64) -> bool {
    match (Trajectory::new(p.to_vec()), Trajectory::new(q.to_vec())) {
        (Ok(a), Ok(b)) => frechet_decide(&a, &b, d),
        (Err(_), _) => p.first().is_some_and(|&c| q.iter().all(|v| v.dist(c) <= d)),
        (_, Err(_)) => q.first().is_some_and(|&c| p.iter().all(|v| v.dist(c) <= d)),
    }
}

/// Greedy count of disjoint monotone paths between the lines `x = s` and
/// `x = t` of the exact free space of `T` with itself, capped at `cap`.
/// Paths end as low as possible; each next path starts at or above the
/// previous end, strictly above if the previous path is a single point.
pub fn greedy_paths(fs: &ExactFreeSpace, s: f64, t: f64, cap: usize) -> Vec<(f64, f64)> {
    let total = fs.height();
    let gap = 1e-9 * total.max(1.0);
    let mut out = Vec::new();
    let mut floor = 0.0;
    for top in [s, total] {
        if top == total {
            floor = f64::max(floor, t);
        }
        while out.len() < cap && floor <= top {
            let Some((y0, e)) = lowest_path(fs, s, t, floor, top) else { break };
            out.push((y0, e));
            floor = if y0 == e { e + gap } else { e };
        }
    }
    out
}

// lowest start and its lowest end, scanning the white pieces of x = s upward
fn lowest_path(fs: &ExactFreeSpace, s: f64, t: f64, floor: f64, top: f64) -> Option<(f64, f64)> {
    let ys = cuts(fs.y_breaks(), floor, top);
    for j in 0..ys.len() - 1 {
        let iv = fs.vertical_interval(s, ys[j], ys[j + 1]);
        if iv.is_empty() {
            continue;
        }
        if let Some(e) = fs.lowest_end(s, t, (iv.lo, iv.hi), iv.lo, top) {
            return Some((iv.lo, e));
        }
    }
    None
}

/// Exact decision of the clustering problem at distance `q.d`, for small
/// inputs. Arbitrary mode anchors windows on a grid of `‖T‖ / 2048`.
pub fn sc_bruteforce(t: &Trajectory, q: &ClusterQuery) -> Result<bool> {
    Ok(sc_bruteforce_witness(t, q, 2048)?.is_some())
}

/// [`sc_bruteforce`] with a chosen grid resolution, returning a witness.
pub fn sc_bruteforce_witness(t: &Trajectory, q: &ClusterQuery, steps: usize) -> Result<Option<ClusterWitness>> {
    q.validate()?;
    if t.len() > BRUTEFORCE_LIMIT {
        return Err(Error::GuardExceeded { n: t.len(), limit: BRUTEFORCE_LIMIT });
    }
    let total = t.total_length();
    let fs = ExactFreeSpace::new(t, t, q.d);
    let pre = t.prefix_lengths();
    let windows: Vec<(f64, f64)> = match q.mode {
        Mode::Vertex => {
            let mut w = Vec::new();
            for i in 0..pre.len() {
                for j in i + 1..pre.len() {
                    if pre[j] - pre[i] >= q.l {
                        w.push((pre[i], pre[j]));
                    }
                }
            }
            w
        }
        Mode::Arbitrary => {
            if q.l > total {
                return Ok(None);
            }
            let mut starts: Vec<f64> = (0..=steps).map(|k| total * k as f64 / steps as f64).collect();
            for &x in pre {
                starts.extend([x, x - q.l]);
            }
            starts.retain(|&s| s >= 0.0 && s + q.l <= total);
            starts.sort_by(f64::total_cmp);
            starts.dedup();
            starts.into_iter().map(|s| (s, s + q.l)).collect()
        }
    };
    for (s, e) in windows {
        let members = greedy_paths(&fs, s, e, q.m - 1);
        if members.len() + 1 >= q.m {
            return Ok(Some(ClusterWitness { reference: (s, e), members }));
        }
    }
    Ok(None)
}
