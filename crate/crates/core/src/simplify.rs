//! Greedy ball simplification and the length-preserving map from a curve
//! onto its simplification.
//!
//! For a simplified segment `(u, v)` covering the source subcurve `P_uv`,
//! the map sends the part of `P_uv` before its first exit `w` from the ball
//! `B(u, mu)` uniformly onto `[u, u']` (`u'` at distance `mu` from `u` on the
//! chord) and the rest uniformly onto `[u', v]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{ball_exit_point, Ball, Point, Trajectory, TAU};

#[derive(Debug, Clone, PartialEq)]
pub struct SimplifiedCurve {
    source: Trajectory,
    mu: f64,
    indices: Vec<usize>,
    trajectory: Trajectory,
    short_final: bool,
}

impl SimplifiedCurve {
    /// Wraps an explicit vertex subsequence of `source`.
    pub fn from_indices(source: Trajectory, mu: f64, indices: Vec<usize>) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "simplification radius {mu}"
            )));
        }
        let n = source.len();
        if indices.len() < 2
            || indices[0] != 0
            || *indices.last().unwrap() != n - 1
            || indices.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::InvalidParameter("simplified vertex indices".into()));
        }
        let pts = indices
            .iter()
            .map(|&i| source.vertices()[i])
            .collect::<Vec<_>>();
        if pts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::ZeroLengthSegment);
        }
        let trajectory = Trajectory::new(pts)?;
        let last = trajectory.edge(trajectory.num_edges() - 1).length();
        let short_final = last < mu * (1.0 - TAU);
        Ok(SimplifiedCurve {
            source,
            mu,
            indices,
            trajectory,
            short_final,
        })
    }

    pub fn source(&self) -> &Trajectory {
        &self.source
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Source vertex index of every simplified vertex.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn trajectory(&self) -> &Trajectory {
        &self.trajectory
    }

    pub fn short_final(&self) -> bool {
        self.short_final
    }

    pub fn num_segments(&self) -> usize {
        self.indices.len() - 1
    }
}

/// Greedy simplification: from the current kept vertex, skip vertices until
/// one lies on or outside the ball of radius `mu`, or the curve ends.
pub fn simplify_curve(t: &Trajectory, mu: f64) -> Result<SimplifiedCurve> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "simplification radius {mu}"
        )));
    }
    let v = t.vertices();
    let n = v.len();
    let mut indices = vec![0];
    let mut cur = 0;
    while cur < n - 1 {
        let anchor = v[cur];
        let mut next = cur + 1;
        while next < n - 1 && anchor.dist(v[next]) < mu * (1.0 - TAU) {
            next += 1;
        }
        indices.push(next);
        cur = next;
    }
    SimplifiedCurve::from_indices(t.clone(), mu, indices)
}

/// Map data of one simplified segment, in arc lengths local to the segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PieceMap {
    pub seg_index: usize,
    /// Source arc length from `u` to the split point `w`.
    pub w_arc: f64,
    /// Chord length from `u` to `u'`.
    pub uprime_arc: f64,
    /// Source arc length of the whole subcurve.
    pub sub_len: f64,
    /// Chord length `|uv|`.
    pub seg_len: f64,
}

/// One affine piece of the map restricted to a segment: for local source arc
/// `x` in `[lo, hi]` the image point is `offset + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffinePiece {
    pub lo: f64,
    pub hi: f64,
    pub offset: Point,
    pub slope: Point,
}

impl AffinePiece {
    pub fn eval(&self, x: f64) -> Point {
        self.offset + self.slope * x
    }
}

#[derive(Debug, Clone)]
pub struct SimplificationMap {
    curve: SimplifiedCurve,
    pieces: Vec<PieceMap>,
    source_breakpoints: Vec<f64>,
}

impl SimplificationMap {
    pub fn curve(&self) -> &SimplifiedCurve {
        &self.curve
    }

    pub fn pieces(&self) -> &[PieceMap] {
        &self.pieces
    }

    /// Source arc length of every simplified vertex.
    pub fn source_breakpoints(&self) -> &[f64] {
        &self.source_breakpoints
    }

    pub fn num_segments(&self) -> usize {
        self.pieces.len()
    }

    pub fn source_length(&self) -> f64 {
        self.curve.source.total_length()
    }

    pub fn simplified_length(&self) -> f64 {
        self.curve.trajectory.total_length()
    }

    /// Source arc-length range `[start, end]` covered by segment `i`.
    pub fn source_range(&self, i: usize) -> (f64, f64) {
        (self.source_breakpoints[i], self.source_breakpoints[i + 1])
    }

    /// Segment whose source range contains `x` (the later one at shared
    /// breakpoints, except at the very end).
    pub fn segment_at(&self, x: f64) -> usize {
        let i = self.source_breakpoints.partition_point(|&b| b <= x);
        i.saturating_sub(1).min(self.pieces.len() - 1)
    }

    /// The one or two affine pieces of segment `i` in local source arc length.
    pub fn affine_pieces(&self, i: usize) -> Vec<AffinePiece> {
        let pm = &self.pieces[i];
        let simp = &self.curve.trajectory;
        let seg = simp.edge(i);
        let dir = seg.direction() * (1.0 / pm.seg_len);
        let mut out = Vec::with_capacity(2);
        let k1 = pm.uprime_arc / pm.w_arc;
        out.push(AffinePiece {
            lo: 0.0,
            hi: pm.w_arc,
            offset: seg.start,
            slope: dir * k1,
        });
        if pm.sub_len > pm.w_arc {
            let k2 = (pm.seg_len - pm.uprime_arc) / (pm.sub_len - pm.w_arc);
            // u + dir * (uprime + (x - w) * k2)
            let offset = seg.start + dir * (pm.uprime_arc - pm.w_arc * k2);
            out.push(AffinePiece {
                lo: pm.w_arc,
                hi: pm.sub_len,
                offset,
                slope: dir * k2,
            });
        }
        out
    }

    /// Evaluates `f`: source arc length to simplified arc length.
    pub fn map_param(&self, x: f64) -> Result<f64> {
        let total = self.source_length();
        if !x.is_finite() || x < -TAU * total || x > total * (1.0 + TAU) {
            return Err(Error::ParameterDomain {
                value: x,
                lo: 0.0,
                hi: total,
            });
        }
        let x = x.clamp(0.0, total);
        let i = self.segment_at(x);
        let pm = &self.pieces[i];
        let local = (x - self.source_breakpoints[i]).clamp(0.0, pm.sub_len);
        let base = self.curve.trajectory.prefix_lengths()[i];
        let y = if local <= pm.w_arc {
            local * pm.uprime_arc / pm.w_arc
        } else {
            pm.uprime_arc
                + (local - pm.w_arc) * (pm.seg_len - pm.uprime_arc) / (pm.sub_len - pm.w_arc)
        };
        Ok(base + y.min(pm.seg_len))
    }

    /// `f` composed with the simplified curve: the image point of source arc `x`.
    pub fn map_point(&self, x: f64) -> Result<Point> {
        let y = self.map_param(x)?;
        self.curve.trajectory.point_at(y)
    }
}

/// Builds the piecewise-uniform map for every simplified segment.
pub fn build_map(s: &SimplifiedCurve) -> SimplificationMap {
    let src = &s.source;
    let prefix = src.prefix_lengths();
    let source_breakpoints: Vec<f64> = s.indices.iter().map(|&i| prefix[i]).collect();
    let nseg = s.num_segments();
    let mut pieces = Vec::with_capacity(nseg);
    for i in 0..nseg {
        let (x0, x1) = (source_breakpoints[i], source_breakpoints[i + 1]);
        let sub_len = x1 - x0;
        let seg_len = s.trajectory.edge(i).length();
        let short = seg_len < s.mu * (1.0 - TAU);
        let (w_arc, uprime_arc) = if short {
            (sub_len / 2.0, seg_len / 2.0)
        } else {
            let u = src.vertices()[s.indices[i]];
            let ball = Ball {
                center: u,
                radius: s.mu,
            };
            match ball_exit_point(src, x0, &ball) {
                Ok(w) if w - x0 < sub_len => ((w - x0).max(f64::MIN_POSITIVE), s.mu.min(seg_len)),
                _ => (sub_len, seg_len),
            }
        };
        pieces.push(PieceMap {
            seg_index: i,
            w_arc,
            uprime_arc,
            sub_len,
            seg_len,
        });
    }
    SimplificationMap {
        curve: s.clone(),
        pieces,
        source_breakpoints,
    }
}
