use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the reference subtrajectory may start and end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Reference starts and ends at vertices.
    Vertex,
    /// Reference starts and ends anywhere.
    Arbitrary,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" => Ok(Mode::Vertex),
            "arbitrary" => Ok(Mode::Arbitrary),
            _ => Err(Error::InvalidParameter(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterQuery {
    pub m: usize,
    pub l: f64,
    pub d: f64,
    pub eps: f64,
    pub mode: Mode,
}

impl ClusterQuery {
    pub fn new(m: usize, l: f64, d: f64, eps: f64, mode: Mode) -> Result<Self> {
        let q = ClusterQuery { m, l, d, eps, mode };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        for (name, v) in [("l", self.l), ("d", self.d), ("eps", self.eps)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Reference range `[s, t]`, also the x-positions of the two sweep lines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub s: f64,
    pub t: f64,
}

/// Arc-length ranges of a cluster on the input trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterWitness {
    pub reference: (f64, f64),
    pub members: Vec<(f64, f64)>,
}

impl ClusterWitness {
    /// Whether all ranges pairwise share at most one point.
    pub fn is_disjoint(&self) -> bool {
        let mut all: Vec<(f64, f64)> = self.members.clone();
        all.push(self.reference);
        all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        all.windows(2).all(|w| w[1].0 >= w[0].1)
    }
}
