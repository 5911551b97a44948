//! Planar primitives and arc-length parameterised polylines.
//!
//! Everything here is plain `f64`. Comparisons that need slack use [`TAU`]
//! scaled by the magnitude of the quantities involved.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used throughout the crate.
pub const TAU: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::NonFinite);
        }
        if start == end {
            return Err(Error::ZeroLengthSegment);
        }
        Ok(Segment { start, end })
    }

    pub fn length(&self) -> f64 {
        self.start.dist(self.end)
    }

    pub fn direction(&self) -> Point {
        self.end - self.start
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!("ball radius {radius}")));
        }
        Ok(Ball { center, radius })
    }

    pub fn contains(&self, p: Point) -> bool {
        p.dist(self.center) <= self.radius
    }
}

/// Distance from `p` to the closed segment `s`.
pub fn point_segment_distance(p: Point, s: &Segment) -> f64 {
    let d = s.direction();
    let t = ((p - s.start).dot(d) / d.norm2()).clamp(0.0, 1.0);
    p.dist(s.start + d * t)
}

fn segments_cross(a: &Segment, b: &Segment) -> bool {
    let orient = |p: Point, q: Point, r: Point| (q - p).cross(r - p);
    let d1 = orient(b.start, b.end, a.start);
    let d2 = orient(b.start, b.end, a.end);
    let d3 = orient(a.start, a.end, b.start);
    let d4 = orient(a.start, a.end, b.end);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Minimum distance between two closed segments; zero iff they intersect.
pub fn segment_segment_distance(a: &Segment, b: &Segment) -> f64 {
    if segments_cross(a, b) {
        return 0.0;
    }
    point_segment_distance(a.start, b)
        .min(point_segment_distance(a.end, b))
        .min(point_segment_distance(b.start, a))
        .min(point_segment_distance(b.end, a))
}

/// Parameter interval `[t0, t1] ⊆ [0, 1]` of `a + t (b - a)` lying in the
/// closed disk, or `None`.
pub fn segment_disk_interval(a: Point, b: Point, center: Point, r: f64) -> Option<(f64, f64)> {
    let d = b - a;
    let f = a - center;
    let qa = d.norm2();
    let qb = 2.0 * f.dot(d);
    let qc = f.norm2() - r * r;
    if qa == 0.0 {
        return (qc <= 0.0).then_some((0.0, 1.0));
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let t0 = ((-qb - sq) / (2.0 * qa)).max(0.0);
    let t1 = ((-qb + sq) / (2.0 * qa)).min(1.0);
    (t0 <= t1).then_some((t0, t1))
}

/// Polyline with its cumulative arc lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    vertices: Vec<Point>,
    prefix_lengths: Vec<f64>,
}

impl Trajectory {
    /// Builds a trajectory, merging consecutive duplicate vertices.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let mut vertices: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if !p.is_finite() {
                return Err(Error::NonFinite);
            }
            if vertices.last() != Some(&p) {
                vertices.push(p);
            }
        }
        if vertices.len() < 2 {
            return Err(Error::DegenerateTrajectory);
        }
        let mut prefix_lengths = Vec::with_capacity(vertices.len());
        let mut acc = 0.0;
        prefix_lengths.push(0.0);
        for w in vertices.windows(2) {
            acc += w[0].dist(w[1]);
            prefix_lengths.push(acc);
        }
        Ok(Trajectory {
            vertices,
            prefix_lengths,
        })
    }

    pub fn from_xy(xy: &[(f64, f64)]) -> Result<Self> {
        Trajectory::new(xy.iter().map(|&p| p.into()).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn prefix_lengths(&self) -> &[f64] {
        &self.prefix_lengths
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn num_edges(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn total_length(&self) -> f64 {
        *self.prefix_lengths.last().unwrap()
    }

    pub fn edge(&self, i: usize) -> Segment {
        Segment {
            start: self.vertices[i],
            end: self.vertices[i + 1],
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices.windows(2).map(|w| Segment {
            start: w[0],
            end: w[1],
        })
    }

    fn clamp_param(&self, x: f64) -> Result<f64> {
        let total = self.total_length();
        let slack = TAU * total.max(1.0);
        if !x.is_finite() || x < -slack || x > total + slack {
            return Err(Error::ParameterDomain {
                value: x,
                lo: 0.0,
                hi: total,
            });
        }
        Ok(x.clamp(0.0, total))
    }

    /// Index of the edge containing arc length `x` (the later edge at a
    /// shared vertex, except at the very end).
    pub fn edge_index_at(&self, x: f64) -> usize {
        let i = self.prefix_lengths.partition_point(|&l| l <= x);
        i.saturating_sub(1).min(self.num_edges() - 1)
    }

    pub fn point_at(&self, x: f64) -> Result<Point> {
        let x = self.clamp_param(x)?;
        Ok(self.point_at_unchecked(x))
    }

    pub(crate) fn point_at_unchecked(&self, x: f64) -> Point {
        let i = self.edge_index_at(x);
        let (l0, l1) = (self.prefix_lengths[i], self.prefix_lengths[i + 1]);
        let t = ((x - l0) / (l1 - l0)).clamp(0.0, 1.0);
        self.vertices[i].lerp(self.vertices[i + 1], t)
    }

    /// Vertices of the subcurve between arc lengths `a <= b`. Returns a
    /// single point when `a == b`.
    pub fn subcurve(&self, a: f64, b: f64) -> Result<Vec<Point>> {
        let a = self.clamp_param(a)?;
        let b = self.clamp_param(b)?;
        if a > b {
            return Err(Error::InvalidParameter(format!(
                "subcurve range [{a}, {b}]"
            )));
        }
        let mut out = vec![self.point_at_unchecked(a)];
        if a == b {
            return Ok(out);
        }
        for (i, &l) in self.prefix_lengths.iter().enumerate() {
            if l > a && l < b {
                out.push(self.vertices[i]);
            }
        }
        let end = self.point_at_unchecked(b);
        if out.last() != Some(&end) {
            out.push(end);
        }
        Ok(out)
    }
}

/// First arc length after `start_x` where the trajectory meets the ball
/// boundary going outward.
pub fn ball_exit_point(t: &Trajectory, start_x: f64, ball: &Ball) -> Result<f64> {
    let start_x = t.clamp_param(start_x)?;
    let first = t.edge_index_at(start_x);
    let r2 = ball.radius * ball.radius;
    for i in first..t.num_edges() {
        let (l0, l1) = (t.prefix_lengths[i], t.prefix_lengths[i + 1]);
        let from = if i == first { start_x } else { l0 };
        let a = t.point_at_unchecked(from);
        let b = t.vertices[i + 1];
        let d = b - a;
        let f = a - ball.center;
        let qa = d.norm2();
        if qa == 0.0 {
            continue;
        }
        let qb = 2.0 * f.dot(d);
        let qc = f.norm2() - r2;
        let disc = (qb * qb - 4.0 * qa * qc).max(0.0);
        // `a` is inside, so the outward crossing is the larger root.
        let tau = (-qb + disc.sqrt()) / (2.0 * qa);
        if tau <= 1.0 {
            let tau = tau.max(0.0);
            return Ok(from + tau * (l1 - from));
        }
    }
    Err(Error::NoExit)
}

/// Length of the part of `t` inside the closed disk.
pub fn length_inside(t: &Trajectory, center: Point, r: f64) -> f64 {
    t.edges()
        .filter_map(|e| {
            segment_disk_interval(e.start, e.end, center, r).map(|(t0, t1)| (t1 - t0) * e.length())
        })
        .sum()
}

/// Lower bound on the packedness of `t`, taken over balls centred at every
/// vertex and edge midpoint with radii reaching `samples` arc-length
/// quantiles of the curve.
pub fn packedness_lower_bound(t: &Trajectory, samples: usize) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    let n = t.len();
    let targets: Vec<Point> = if samples == 1 {
        vec![t.vertices[n - 1]]
    } else {
        (0..samples)
            .map(|k| {
                let idx = ((k as f64 / (samples - 1) as f64) * (n - 1) as f64).round() as usize;
                t.point_at_unchecked(t.prefix_lengths[idx])
            })
            .collect()
    };
    let centers = t
        .vertices
        .iter()
        .copied()
        .chain(t.vertices.windows(2).map(|w| w[0].lerp(w[1], 0.5)));
    let mut best: f64 = 0.0;
    for c in centers {
        for &q in &targets {
            let r = c.dist(q);
            if r <= 0.0 {
                continue;
            }
            best = best.max(length_inside(t, c, r) / r);
        }
    }
    Ok(best)
}
