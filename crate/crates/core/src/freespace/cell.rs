//! Constant-size description of one aggregated cell.
//!
//! Inside each of the (up to) four sub-rectangles cut by the split points of
//! the two segment maps, the difference of the mapped points is affine in
//! the local coordinates, so the white set is an ellipse (or a slab when the
//! segments are parallel) clipped to the sub-rectangle.

use crate::geom::{segment_segment_distance, Point};
use crate::simplify::SimplificationMap;

/// Affine map `h(x, y) = offset + x * bx + y * by` on a local rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadrantMap {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub offset: Point,
    pub bx: Point,
    pub by: Point,
}

/// Sub-interval of `[lo, hi]` where `|c + t * e|^2 <= r^2`.
fn quad_interval(c: Point, e: Point, r: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    let a = e.norm2();
    let b = 2.0 * c.dot(e);
    let cc = c.norm2() - r * r;
    if a == 0.0 {
        return (cc <= 0.0).then_some((lo, hi));
    }
    let disc = b * b - 4.0 * a * cc;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // numerically stable roots
    let q = -0.5 * (b + b.signum() * sq);
    let (mut t0, mut t1) = if q != 0.0 {
        let r1 = q / a;
        let r2 = cc / q;
        (r1.min(r2), r1.max(r2))
    } else {
        (-(disc.sqrt()) / (2.0 * a), disc.sqrt() / (2.0 * a))
    };
    t0 = t0.max(lo);
    t1 = t1.min(hi);
    (t0 <= t1).then_some((t0, t1))
}

impl QuadrantMap {
    pub fn h(&self, x: f64, y: f64) -> Point {
        self.offset + self.bx * x + self.by * y
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x <= self.x1 && y >= self.y0 && y <= self.y1
    }

    pub fn is_white(&self, x: f64, y: f64, r: f64) -> bool {
        self.h(x, y).norm2() <= r * r
    }

    /// White `y` range on the vertical line at `x`, clipped to the quadrant.
    pub fn vertical_interval(&self, x: f64, r: f64) -> Option<(f64, f64)> {
        quad_interval(self.offset + self.bx * x, self.by, r, self.y0, self.y1)
    }

    /// White `x` range on the horizontal line at `y`, clipped to the quadrant.
    pub fn horizontal_interval(&self, y: f64, r: f64) -> Option<(f64, f64)> {
        quad_interval(self.offset + self.by * y, self.bx, r, self.x0, self.x1)
    }

    /// White `x` range on the line `y = x + k`, clipped to the quadrant.
    pub fn diagonal_interval(&self, k: f64, r: f64) -> Option<(f64, f64)> {
        let lo = self.x0.max(self.y0 - k);
        let hi = self.x1.min(self.y1 - k);
        if lo > hi {
            return None;
        }
        quad_interval(self.offset + self.by * k, self.bx + self.by, r, lo, hi)
    }

    /// Candidate extreme points: unclipped ellipse extremes that fall inside
    /// the rectangle plus the white endpoints along all four edges.
    pub fn candidates(&self, r: f64) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(12);
        for x in [self.x0, self.x1] {
            if let Some((a, b)) = self.vertical_interval(x, r) {
                out.push((x, a));
                out.push((x, b));
            }
        }
        for y in [self.y0, self.y1] {
            if let Some((a, b)) = self.horizontal_interval(y, r) {
                out.push((a, y));
                out.push((b, y));
            }
        }
        let k = self.bx.cross(self.by);
        if k != 0.0 {
            // x-extremes: |cross(offset + x bx, by)| = r |by|
            let c = self.offset.cross(self.by);
            let nb = self.by.norm();
            for s in [-1.0, 1.0] {
                let x = (s * r * nb - c) / k;
                let y = -(self.offset + self.bx * x).dot(self.by) / self.by.norm2();
                if self.contains(x, y) {
                    out.push((x, y));
                }
            }
            // y-extremes: |cross(offset + y by, bx)| = r |bx|
            let c = self.offset.cross(self.bx);
            let na = self.bx.norm();
            for s in [-1.0, 1.0] {
                let y = (s * r * na - c) / (-k);
                let x = -(self.offset + self.by * y).dot(self.bx) / self.bx.norm2();
                if self.contains(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// Extreme white points of a cell, in the same coordinates as the cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremes {
    pub leftmost: (f64, f64),
    pub rightmost: (f64, f64),
    pub bottom: (f64, f64),
    pub top: (f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellGeometry {
    /// Local rectangle `[0, width] x [0, height]`.
    pub width: f64,
    pub height: f64,
    pub x_split: f64,
    pub y_split: f64,
    pub threshold: f64,
    pub quadrants: Vec<QuadrantMap>,
}

impl CellGeometry {
    fn quadrant_at(&self, x: f64, y: f64) -> Option<&QuadrantMap> {
        self.quadrants.iter().find(|q| q.contains(x, y))
    }

    pub fn h(&self, x: f64, y: f64) -> Option<Point> {
        self.quadrant_at(x, y).map(|q| q.h(x, y))
    }

    pub fn is_white(&self, x: f64, y: f64) -> bool {
        self.quadrant_at(x, y)
            .is_some_and(|q| q.is_white(x, y, self.threshold))
    }

    fn merge(parts: impl Iterator<Item = Option<(f64, f64)>>) -> Option<(f64, f64)> {
        parts.flatten().fold(None, |acc, (a, b)| match acc {
            None => Some((a, b)),
            Some((lo, hi)) => Some((lo.min(a), hi.max(b))),
        })
    }

    /// White `y` range on the vertical line at local `x`.
    pub fn vertical_interval(&self, x: f64) -> Option<(f64, f64)> {
        Self::merge(
            self.quadrants
                .iter()
                .filter(|q| (q.x0 == 0.0) == (x <= self.x_split))
                .map(|q| q.vertical_interval(x, self.threshold)),
        )
    }

    /// White `x` range on the horizontal line at local `y`.
    pub fn horizontal_interval(&self, y: f64) -> Option<(f64, f64)> {
        Self::merge(
            self.quadrants
                .iter()
                .filter(|q| (q.y0 == 0.0) == (y <= self.y_split))
                .map(|q| q.horizontal_interval(y, self.threshold)),
        )
    }

    /// Leftmost, rightmost, lowest and highest white points. Ties go to the
    /// smaller other coordinate for leftmost/bottom and to the larger one for
    /// rightmost/top.
    pub fn extremes(&self) -> Option<Extremes> {
        let cands: Vec<(f64, f64)> = self
            .quadrants
            .iter()
            .flat_map(|q| q.candidates(self.threshold))
            .collect();
        if cands.is_empty() {
            return None;
        }
        let pick = |key: &dyn Fn(&(f64, f64)) -> (f64, f64)| {
            *cands
                .iter()
                .min_by(|a, b| key(a).partial_cmp(&key(b)).unwrap())
                .unwrap()
        };
        Some(Extremes {
            leftmost: pick(&|p| (p.0, p.1)),
            rightmost: pick(&|p| (-p.0, -p.1)),
            bottom: pick(&|p| (p.1, p.0)),
            top: pick(&|p| (-p.1, -p.0)),
        })
    }
}

/// Geometry of the aggregated cell for column segment `col` of `p_map` and
/// row segment `row` of `q_map`, or `None` when no point of it is white.
///
/// The image of the cell under the two maps is exactly the product of the
/// two simplified segments, so emptiness reduces to a segment distance test.
pub fn build_cell(
    p_map: &SimplificationMap,
    q_map: &SimplificationMap,
    col: usize,
    row: usize,
    threshold: f64,
) -> Option<CellGeometry> {
    let ps = p_map.curve().trajectory().edge(col);
    let qs = q_map.curve().trajectory().edge(row);
    if segment_segment_distance(&ps, &qs) > threshold {
        return None;
    }
    let pp = p_map.affine_pieces(col);
    let qp = q_map.affine_pieces(row);
    let mut quadrants = Vec::with_capacity(4);
    for a in &pp {
        for b in &qp {
            quadrants.push(QuadrantMap {
                x0: a.lo,
                x1: a.hi,
                y0: b.lo,
                y1: b.hi,
                offset: a.offset - b.offset,
                bx: a.slope,
                by: -b.slope,
            });
        }
    }
    let pm = p_map.pieces()[col];
    let qm = q_map.pieces()[row];
    Some(CellGeometry {
        width: pm.sub_len,
        height: qm.sub_len,
        x_split: pp[0].hi,
        y_split: qp[0].hi,
        threshold,
        quadrants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_quadrant(offset: Point, bx: Point, by: Point) -> QuadrantMap {
        QuadrantMap {
            x0: 0.0,
            x1: 1.0,
            y0: 0.0,
            y1: 1.0,
            offset,
            bx,
            by,
        }
    }

    #[test]
    fn diagonal_strip_extremes() {
        // h = (x - y, 0): white where |x - y| <= 0.25
        let q = unit_quadrant(Point::new(0., 0.), Point::new(1., 0.), Point::new(-1., 0.));
        let cell = CellGeometry {
            width: 1.0,
            height: 1.0,
            x_split: 1.0,
            y_split: 1.0,
            threshold: 0.25,
            quadrants: vec![q],
        };
        let e = cell.extremes().unwrap();
        assert_eq!(e.leftmost, (0.0, 0.0));
        assert_eq!(e.rightmost, (1.0, 1.0));
        assert_eq!(e.bottom, (0.0, 0.0));
        assert_eq!(e.top, (1.0, 1.0));
        assert_eq!(cell.vertical_interval(0.5), Some((0.25, 0.75)));
        assert_eq!(cell.horizontal_interval(0.0), Some((0.0, 0.25)));
    }

    #[test]
    fn interior_ellipse_extremes() {
        // disk of radius 0.2 around (0.5, 0.5) stretched by the map
        let q = unit_quadrant(
            Point::new(-1.0, -0.5),
            Point::new(2.0, 0.0),
            Point::new(0.0, 1.0),
        );
        let cell = CellGeometry {
            width: 1.0,
            height: 1.0,
            x_split: 1.0,
            y_split: 1.0,
            threshold: 0.2,
            quadrants: vec![q],
        };
        let e = cell.extremes().unwrap();
        assert!((e.leftmost.0 - 0.4).abs() < 1e-12 && (e.leftmost.1 - 0.5).abs() < 1e-12);
        assert!((e.rightmost.0 - 0.6).abs() < 1e-12);
        assert!((e.bottom.1 - 0.3).abs() < 1e-12 && (e.top.1 - 0.7).abs() < 1e-12);
    }

    #[test]
    fn far_interval_is_none() {
        let q = unit_quadrant(
            Point::new(5.0, 5.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        );
        assert_eq!(q.vertical_interval(0.5, 1.0), None);
        assert!(q.candidates(1.0).is_empty());
    }
}
