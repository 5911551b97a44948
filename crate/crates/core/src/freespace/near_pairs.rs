//! All pairs of segments within a given distance, via a uniform grid.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::{segment_segment_distance, Segment};

type Key = (i64, i64);

/// Grid cells of side `r` that a segment passes through.
fn covered_cells(s: &Segment, r: f64, out: &mut Vec<Key>) {
    out.clear();
    let (a, b) = if s.start.x <= s.end.x {
        (s.start, s.end)
    } else {
        (s.end, s.start)
    };
    let ix0 = (a.x / r).floor() as i64;
    let ix1 = (b.x / r).floor() as i64;
    let dx = b.x - a.x;
    for ix in ix0..=ix1 {
        let (ya, yb) = if ix0 == ix1 || dx == 0.0 {
            (a.y, b.y)
        } else {
            let xl = (ix as f64 * r).max(a.x);
            let xr = ((ix + 1) as f64 * r).min(b.x);
            let ya = a.y + (b.y - a.y) * (xl - a.x) / dx;
            let yb = a.y + (b.y - a.y) * (xr - a.x) / dx;
            (ya, yb)
        };
        // slack so that rounding at slab borders cannot drop a touched cell
        let slack = r * 1e-9;
        let iy0 = ((ya.min(yb) - slack) / r).floor() as i64;
        let iy1 = ((ya.max(yb) + slack) / r).floor() as i64;
        for iy in iy0..=iy1 {
            out.push((ix, iy));
        }
    }
}

/// Every pair `(i, j)` with `dist(p[i], q[j]) <= r`, sorted.
///
/// Candidates come from the 3x3 neighbourhood of every grid cell a segment of
/// `p` touches; each candidate is confirmed with an exact distance test.
pub fn near_segment_pairs(p: &[Segment], q: &[Segment], r: f64) -> Result<Vec<(usize, usize)>> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "grid radius must be positive, got {r}"
        )));
    }
    // never finer than an eighth of the mean segment, so a tiny radius cannot
    // blow up the number of grid cells per segment
    let n = (p.len() + q.len()).max(1) as f64;
    let total: f64 = p.iter().chain(q).map(|s| s.length()).sum();
    let side = r.max(total / (8.0 * n));
    let mut grid: HashMap<Key, Vec<u32>> = HashMap::new();
    let mut cells = Vec::new();
    for (j, s) in q.iter().enumerate() {
        covered_cells(s, side, &mut cells);
        for &c in &cells {
            grid.entry(c).or_default().push(j as u32);
        }
    }
    let mut stamp = vec![usize::MAX; q.len()];
    let mut out = Vec::new();
    let mut local = Vec::new();
    for (i, s) in p.iter().enumerate() {
        covered_cells(s, side, &mut cells);
        local.clear();
        for &(cx, cy) in &cells {
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(list) = grid.get(&(cx + dx, cy + dy)) {
                        for &j in list {
                            let j = j as usize;
                            if stamp[j] != i {
                                stamp[j] = i;
                                if segment_segment_distance(s, &q[j]) <= r {
                                    local.push(j);
                                }
                            }
                        }
                    }
                }
            }
        }
        local.sort_unstable();
        out.extend(local.iter().map(|&j| (i, j)));
    }
    Ok(out)
}
