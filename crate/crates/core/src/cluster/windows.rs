use super::Window;
use crate::error::{Error, Result};
use crate::geom::Trajectory;

/// For every vertex, the window to the first later vertex at least `l`
/// further along the curve.
pub fn windows_vertex(t: &Trajectory, l: f64) -> Result<Vec<Window>> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::InvalidParameter(format!("l must be positive, got {l}")));
    }
    let pre = t.prefix_lengths();
    let mut out = Vec::new();
    let mut j = 0;
    for (i, &s) in pre.iter().enumerate() {
        j = j.max(i + 1);
        while j < pre.len() && pre[j] - s < l {
            j += 1;
        }
        if j == pre.len() {
            break;
        }
        out.push(Window { s, t: pre[j] });
    }
    Ok(out)
}

/// Windows `[s, s + l]` for every candidate start that fits in `[0, total]`,
/// and for the midpoint between consecutive candidates. Path counts are
/// constant between candidates but may drop exactly at one.
pub fn windows_arbitrary(mut starts: Vec<f64>, l: f64, total: f64) -> Vec<Window> {
    starts.push(0.0);
    starts.push(total - l);
    starts.retain(|&s| s >= 0.0 && s + l <= total);
    starts.sort_by(f64::total_cmp);
    starts.dedup();
    let mut out = Vec::with_capacity(2 * starts.len());
    for (i, &s) in starts.iter().enumerate() {
        out.push(Window { s, t: s + l });
        if let Some(&next) = starts.get(i + 1) {
            let m = 0.5 * (s + next);
            if m > s && m < next {
                out.push(Window { s: m, t: m + l });
            }
        }
    }
    out
}
