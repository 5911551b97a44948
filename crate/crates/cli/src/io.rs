//! CSV trajectory files: one `x,y` pair per line, optional `x,y` header.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use packsc::{Point, Trajectory};

pub fn parse_csv(text: &str) -> Result<Trajectory> {
    let mut pts = Vec::new();
    let mut seen_row = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let first = !seen_row;
        seen_row = true;
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if first && fields == ["x", "y"] {
            continue;
        }
        let [x, y] = fields[..] else {
            bail!("line {}: expected two comma-separated values, got {line:?}", i + 1);
        };
        let parse = |s: &str| -> Result<f64> {
            let v: f64 = s.parse().with_context(|| format!("line {}: bad number {s:?}", i + 1))?;
            if !v.is_finite() {
                bail!("line {}: non-finite value {s:?}", i + 1);
            }
            Ok(v)
        };
        pts.push(Point::new(parse(x)?, parse(y)?));
    }
    if pts.len() < 2 {
        bail!("need at least 2 points, found {}", pts.len());
    }
    Ok(Trajectory::new(pts)?)
}

pub fn read_csv(path: &Path) -> Result<Trajectory> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_csv(&text).with_context(|| format!("invalid trajectory file {}", path.display()))
}

pub fn format_csv(t: &Trajectory) -> String {
    let mut out = String::from("x,y\n");
    for p in t.vertices() {
        out.push_str(&format!("{},{}\n", p.x, p.y));
    }
    out
}

/// Writes to `path`, or standard output when `path` is `None`.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_blanks_and_round_trip() {
        let t = parse_csv("x,y\n\n0,0\n 1.5 , -2e-3\n\n3,4\n").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.vertices()[1], Point::new(1.5, -0.002));
        assert_eq!(parse_csv(&format_csv(&t)).unwrap(), t);
        assert!(parse_csv("0,0\n1,1").is_ok());
    }

    #[test]
    fn rejects_bad_rows() {
        for bad in ["0,0", "x,y\n0,0\nx,y\n1,1", "0,0\n1;1", "0,0\n1,nan", "0,0\n1,1,2", "0,0\n1,0,5"] {
            assert!(parse_csv(bad).is_err(), "{bad:?}");
        }
        // comma decimal separator is not a number
        assert!(parse_csv("0,0\n1,5;2").is_err());
    }
}
