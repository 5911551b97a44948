//! Candidate start positions for references with arbitrary endpoints.

use serde::{Deserialize, Serialize};

use crate::freespace::{AggregatedCell, FreeSpaceDiagram, QuadrantMap};
use crate::geom::Point;
use crate::reachability::{extract_boundary_critical_points, CriticalPoint};
use crate::structures::RowIntervalTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InternalKind {
    EndOfCell,
    Propagated,
    LApart,
    Boundary,
    /// Where the free-space boundary crosses `y = x - l` or `y = x + l`: a
    /// member ending at the reference start or starting at its end.
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InternalCriticalPoint {
    pub position: (f64, f64),
    pub kind: InternalKind,
}

// samples per cell pair when isolating roots
const SAMPLES: usize = 24;

/// Internal critical points of the diagram for reference length `l`,
/// sorted by position.
pub fn internal_critical_points(fsd: &FreeSpaceDiagram, l: f64) -> Vec<InternalCriticalPoint> {
    internal_critical_points_from(fsd, &extract_boundary_critical_points(fsd), l)
}

/// [`internal_critical_points`] with the boundary critical points given.
pub fn internal_critical_points_from(
    fsd: &FreeSpaceDiagram,
    boundary: &[CriticalPoint],
    l: f64,
) -> Vec<InternalCriticalPoint> {
    let mut out = Vec::new();
    let mut push = |p: (f64, f64), kind| out.push(InternalCriticalPoint { position: p, kind });
    for c in &fsd.cells {
        push(c.extremes.leftmost, InternalKind::EndOfCell);
        push(c.extremes.rightmost, InternalKind::EndOfCell);
    }
    for b in boundary {
        push(b.position, InternalKind::Boundary);
    }

    let trees: Vec<RowIntervalTree> = (0..fsd.num_rows())
        .map(|r| {
            RowIntervalTree::new(
                fsd.row_cells(r)
                    .map(|id| (fsd.cells[id].extremes.bottom.1, fsd.cells[id].extremes.top.1, id))
                    .collect(),
            )
        })
        .collect();
    let yb = fsd.y_breaks();
    let seeds: Vec<(f64, f64)> = out.iter().map(|p| p.position).collect();
    for (_, y) in seeds {
        let r = fsd.q_map.segment_at(y);
        let rows = if r > 0 && yb[r] == y { [r - 1, r] } else { [r, r] };
        for r in rows.into_iter().take(if rows[0] == rows[1] { 1 } else { 2 }) {
            for id in trees[r].stab(y) {
                if let Some((lo, hi)) = fsd.cells[id].horizontal_interval(y).as_option() {
                    out.push(InternalCriticalPoint { position: (lo, y), kind: InternalKind::Propagated });
                    out.push(InternalCriticalPoint { position: (hi, y), kind: InternalKind::Propagated });
                }
            }
        }
    }

    for r in 0..fsd.num_rows() {
        let ids: Vec<usize> = fsd.row_cells(r).collect();
        for &a in &ids {
            let ca = &fsd.cells[a];
            for &b in &ids {
                let cb = &fsd.cells[b];
                if cb.end.0 < ca.origin.0 + l || cb.origin.0 > ca.end.0 + l {
                    continue;
                }
                for y in l_apart_roots(ca, cb, l).unwrap_or_default() {
                    for (xa, xb) in ends(ca, cb, y) {
                        if (xb - xa - l).abs() <= 1e-9 * l.max(1.0) {
                            out.push(InternalCriticalPoint { position: (xa, y), kind: InternalKind::LApart });
                            out.push(InternalCriticalPoint { position: (xb, y), kind: InternalKind::LApart });
                        }
                    }
                }
            }
        }
    }

    for c in &fsd.cells {
        for k in [-l, l] {
            // local line y = x + kk for the global line y = x + k
            let kk = c.origin.0 + k - c.origin.1;
            let mut ivs: Vec<(f64, f64)> =
                c.geometry.quadrants.iter().filter_map(|q| q.diagonal_interval(kk, c.geometry.threshold)).collect();
            ivs.sort_by(|a, b| a.0.total_cmp(&b.0));
            // quadrant pieces that touch form one white run
            let mut runs: Vec<(f64, f64)> = Vec::new();
            for (a, b) in ivs {
                match runs.last_mut() {
                    Some(r) if a <= r.1 + 1e-12 * c.geometry.width.max(1.0) => r.1 = r.1.max(b),
                    _ => runs.push((a, b)),
                }
            }
            for x in runs.into_iter().flat_map(|(a, b)| [a, b]) {
                let gx = c.origin.0 + x;
                out.push(InternalCriticalPoint { position: (gx, gx + k), kind: InternalKind::Diagonal });
            }
        }
    }

    out.sort_by(|p, q| {
        p.position.0.total_cmp(&q.position.0).then(p.position.1.total_cmp(&q.position.1)).then(p.kind.cmp(&q.kind))
    });
    out.dedup_by(|q, p| p.position == q.position);
    out
}

// pairs of interval ends (in a, in b) on the horizontal line y
fn ends(a: &AggregatedCell, b: &AggregatedCell, y: f64) -> Vec<(f64, f64)> {
    match (a.horizontal_interval(y).as_option(), b.horizontal_interval(y).as_option()) {
        (Some((a0, a1)), Some((b0, b1))) => vec![(a0, b0), (a0, b1), (a1, b0), (a1, b1)],
        _ => Vec::new(),
    }
}

/// Heights `y` where an end of the white interval of `a` and one of `b` are
/// exactly `l` apart. `None` when the gap equals `l` on a whole range of `y`.
pub fn l_apart_roots(a: &AggregatedCell, b: &AggregatedCell, l: f64) -> Option<Vec<f64>> {
    let lo = a.extremes.bottom.1.max(b.extremes.bottom.1);
    let hi = a.extremes.top.1.min(b.extremes.top.1);
    if lo > hi {
        return Some(Vec::new());
    }
    let tol = 1e-10 * l.max(1.0);
    let mut ys: Vec<f64> = (0..=SAMPLES).map(|k| lo + (hi - lo) * k as f64 / SAMPLES as f64).collect();
    for c in [a, b] {
        let split = c.origin.1 + c.geometry.y_split;
        if split > lo && split < hi {
            ys.push(split);
        }
    }
    ys.sort_by(f64::total_cmp);
    let mut roots = Vec::new();
    for k in 0..4 {
        let g = |y: f64| ends(a, b, y).get(k).map(|&(xa, xb)| xb - xa - l);
        let vals: Vec<Option<f64>> = ys.iter().map(|&y| g(y)).collect();
        let mut zero_run = 0;
        for i in 0..ys.len() {
            match vals[i] {
                Some(v) if v.abs() <= tol => {
                    zero_run += 1;
                    if zero_run >= 3 {
                        return None;
                    }
                    roots.push(ys[i]);
                }
                _ => zero_run = 0,
            }
            if i + 1 == ys.len() {
                break;
            }
            let (Some(v0), Some(v1)) = (vals[i], vals[i + 1]) else { continue };
            if v0.abs() > tol && v1.abs() > tol && (v0 < 0.0) != (v1 < 0.0) {
                let (mut y0, mut y1, mut g0) = (ys[i], ys[i + 1], v0);
                for _ in 0..80 {
                    let m = 0.5 * (y0 + y1);
                    let Some(gm) = g(m) else { break };
                    if (gm < 0.0) == (g0 < 0.0) {
                        (y0, g0) = (m, gm);
                    } else {
                        y1 = m;
                    }
                }
                roots.push(0.5 * (y0 + y1));
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    Some(roots)
}

/// Outcome of the degeneracy check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    pub l: f64,
    pub perturbed: bool,
}

// coefficients of |h|^2 in global coordinates, x shifted by `shift`
fn quadratic(c: &AggregatedCell, q: &QuadrantMap, shift: f64) -> [f64; 6] {
    let base = q.offset - q.bx * c.origin.0 - q.by * c.origin.1 + q.bx * shift;
    [q.bx.norm2(), q.by.norm2(), q.bx.dot(q.by), base.dot(q.bx), base.dot(q.by), base.norm2()]
}

fn same(a: &[f64; 6], b: &[f64; 6]) -> bool {
    let scale = a.iter().chain(b).fold(1.0f64, |m, v| m.max(v.abs()));
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-9 * scale)
}

fn rect(c: &AggregatedCell, q: &QuadrantMap, shift: f64) -> (Point, Point) {
    (
        Point::new(c.origin.0 + q.x0 - shift, c.origin.1 + q.y0),
        Point::new(c.origin.0 + q.x1 - shift, c.origin.1 + q.y1),
    )
}

/// Whether two cells of one row have free-space boundaries given by the same
/// equation exactly `l` apart horizontally, on overlapping pieces.
pub fn degenerate_pair(a: &AggregatedCell, b: &AggregatedCell, l: f64) -> bool {
    for qa in &a.geometry.quadrants {
        let ka = quadratic(a, qa, 0.0);
        let ra = rect(a, qa, 0.0);
        for qb in &b.geometry.quadrants {
            let rb = rect(b, qb, l);
            let w = ra.1.x.min(rb.1.x) - ra.0.x.max(rb.0.x);
            let h = ra.1.y.min(rb.1.y) - ra.0.y.max(rb.0.y);
            if w > 0.0 && h > 0.0 && same(&ka, &quadratic(b, qb, l)) {
                return true;
            }
        }
    }
    false
}

/// Moves `l` up by `eps² d` when some cell pair would produce infinitely
/// many `l`-apart points.
pub fn perturb_if_degenerate(fsd: &FreeSpaceDiagram, l: f64) -> Perturbation {
    for r in 0..fsd.num_rows() {
        for a in fsd.row_cells(r) {
            for b in fsd.row_cells(r) {
                let (ca, cb) = (&fsd.cells[a], &fsd.cells[b]);
                if cb.end.0 < ca.origin.0 + l || cb.origin.0 > ca.end.0 + l {
                    continue;
                }
                if degenerate_pair(ca, cb, l) {
                    let cfg = &fsd.config;
                    return Perturbation { l: l + cfg.eps * cfg.eps * cfg.d, perturbed: true };
                }
            }
        }
    }
    Perturbation { l, perturbed: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freespace::{build_diagram, FreeSpaceConfig};
    use crate::geom::Trajectory;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // a segment with a copy one unit above and its mirror one unit below
    fn mirrored() -> (Trajectory, f64) {
        let t = Trajectory::from_xy(&[(0.0, 0.0), (2.0, 0.0), (0.0, 1.0), (2.0, 1.0), (0.0, -1.0), (2.0, -1.0)])
            .unwrap();
        (t, 2.0 + 8f64.sqrt())
    }

    fn walk(seed: u64, n: usize) -> Trajectory {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = Point::new(0.0, 0.0);
        let mut h: f64 = 0.0;
        let mut pts = vec![p];
        for _ in 1..n {
            h += rng.gen_range(-1.5..1.5);
            p = p + Point::new(h.cos(), h.sin()) * rng.gen_range(0.3..1.0);
            pts.push(p);
        }
        Trajectory::new(pts).unwrap()
    }

    fn diagram(t: &Trajectory, d: f64) -> FreeSpaceDiagram {
        build_diagram(t, t, FreeSpaceConfig::new(d, 0.3).unwrap()).unwrap()
    }

    #[test]
    fn mirrored_copies_are_flagged() {
        let (t, l) = mirrored();
        let fsd = diagram(&t, 1.2);
        let p = perturb_if_degenerate(&fsd, l);
        assert!(p.perturbed);
        assert!((p.l - (l + 0.09 * 1.2)).abs() < 1e-12);
        assert!(!perturb_if_degenerate(&fsd, p.l).perturbed);
        let infinite = (0..fsd.num_rows()).any(|r| {
            fsd.row_cells(r).any(|a| fsd.row_cells(r).any(|b| l_apart_roots(&fsd.cells[a], &fsd.cells[b], l).is_none()))
        });
        assert!(infinite);
        for r in 0..fsd.num_rows() {
            for a in fsd.row_cells(r) {
                for b in fsd.row_cells(r) {
                    assert!(l_apart_roots(&fsd.cells[a], &fsd.cells[b], p.l).is_some());
                }
            }
        }
    }

    #[test]
    fn generic_curves_are_not_flagged() {
        for seed in 0..20 {
            let t = walk(seed, 14);
            let fsd = diagram(&t, 0.8);
            let total = fsd.width();
            for k in 1..8 {
                let l = total * k as f64 / 9.0 + 0.0123;
                assert!(!perturb_if_degenerate(&fsd, l).perturbed, "seed {seed} l {l}");
            }
        }
    }

    #[test]
    fn points_sit_on_the_free_space_boundary() {
        for seed in 0..10 {
            let t = walk(100 + seed, 12);
            let fsd = diagram(&t, 0.7);
            let l = fsd.width() / 3.0;
            let pts = internal_critical_points(&fsd, l);
            assert!(pts.windows(2).all(|w| w[0].position < w[1].position || w[0].position.0 < w[1].position.0));
            let tol = 1e-9 * fsd.config.d;
            let on_boundary = |(x, y): (f64, f64), rows_too: bool| {
                fsd.cells.iter().any(|c| {
                    let (lx, ly) = (x - c.origin.0, y - c.origin.1);
                    if lx < -tol || ly < -tol || x > c.end.0 + tol || y > c.end.1 + tol {
                        return false;
                    }
                    let on_edge = lx.abs() <= tol
                        || (x - c.end.0).abs() <= tol
                        || (rows_too && (ly.abs() <= tol || (y - c.end.1).abs() <= tol));
                    let h = c.geometry.h(lx.clamp(0.0, c.geometry.width), ly.clamp(0.0, c.geometry.height));
                    on_edge || h.is_some_and(|h| (h.norm() - fsd.config.threshold).abs() <= 1e-7 * fsd.config.d)
                })
            };
            let mut seen = [0usize; 5];
            for p in &pts {
                seen[p.kind as usize] += 1;
                match p.kind {
                    InternalKind::Propagated => assert!(on_boundary(p.position, false), "{p:?}"),
                    InternalKind::Diagonal => assert!(on_boundary(p.position, true), "{p:?}"),
                    InternalKind::LApart => {
                        let (x, y) = p.position;
                        let partner = pts.iter().any(|q| {
                            q.position.1 == y && ((q.position.0 - x).abs() - l).abs() <= 1e-7 * l
                        });
                        assert!(partner, "{p:?}");
                    }
                    _ => {}
                }
            }
            assert!(seen[InternalKind::EndOfCell as usize] > 0 && seen[InternalKind::Propagated as usize] > 0);
        }
    }

    #[test]
    fn clipped_band_has_l_apart_points() {
        let t = Trajectory::from_xy(&[(0.0, 0.0), (10.0, 0.0)]).unwrap();
        let fsd = diagram(&t, 0.4);
        let r = fsd.config.threshold;
        let l = 1.5 * r;
        let got: Vec<(f64, f64)> =
            internal_critical_points(&fsd, l).iter().filter(|p| p.kind == InternalKind::LApart).map(|p| p.position).collect();
        let want = [(0.0, l - r), (l, l - r), (10.0 - l, 10.0 - l + r), (10.0, 10.0 - l + r)];
        assert_eq!(got.len(), want.len(), "{got:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g.0 - w.0).abs() < 1e-9 && (g.1 - w.1).abs() < 1e-9, "{got:?}");
        }
    }
}
