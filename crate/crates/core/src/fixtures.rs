//! Deterministic test curves.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{Point, Trajectory};

fn check(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 vertices, got {n}")));
    }
    Ok(())
}

/// Archimedean spiral with unit radial pitch and vertices about `spacing`
/// apart along the curve, rotated by a seeded angle.
pub fn spiral(n: usize, spacing: f64, seed: u64) -> Result<Trajectory> {
    check(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rot = rng.gen_range(0.0..TAU);
    let mut theta = TAU;
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let r = theta / TAU;
        pts.push(Point::new(r * (theta + rot).cos(), r * (theta + rot).sin()));
        theta += spacing / r;
    }
    Trajectory::new(pts)
}

/// Back-and-forth sweep over rows of length `width`, `gap` apart, with
/// vertices about one unit apart and a small seeded jitter.
pub fn lawnmower(n: usize, width: f64, gap: f64, seed: u64) -> Result<Trajectory> {
    check(n)?;
    if !(width > 0.0 && gap > 0.0) {
        return Err(Error::InvalidParameter(format!("width {width} and gap {gap} must be positive")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_row = (width.ceil() as usize).max(1);
    let mut pts = Vec::with_capacity(n);
    let mut row = 0;
    'rows: loop {
        for k in 0..=per_row {
            if pts.len() == n {
                break 'rows;
            }
            let f = k as f64 / per_row as f64;
            let x = if row % 2 == 0 { f * width } else { (1.0 - f) * width };
            let j = 1e-3 * gap;
            pts.push(Point::new(x + rng.gen_range(-j..j), row as f64 * gap + rng.gen_range(-j..j)));
        }
        row += 1;
    }
    Trajectory::new(pts)
}

/// Random walk with unit steps whose heading drifts smoothly.
pub fn walk(n: usize, seed: u64) -> Result<Trajectory> {
    check(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Point::new(0.0, 0.0);
    let mut heading: f64 = rng.gen_range(0.0..TAU);
    let mut turn = 0.0;
    let mut pts = Vec::with_capacity(n);
    pts.push(p);
    for _ in 1..n {
        turn = 0.7 * turn + rng.gen_range(-0.4..0.4);
        heading += turn;
        p = p + Point::new(heading.cos(), heading.sin()) * rng.gen_range(0.5..1.5);
        pts.push(p);
    }
    Trajectory::new(pts)
}
