//! Static balanced tree over sorted keys with canonical range covers.

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy)]
struct Node {
    lo: usize,
    hi: usize,
    children: Option<(NodeId, NodeId)>,
}

#[derive(Debug, Clone)]
pub struct RangeTree {
    keys: Vec<f64>,
    nodes: Vec<Node>,
    leaf_node: Vec<NodeId>,
    height: usize,
}

impl RangeTree {
    /// Builds the tree; `keys` must be sorted ascending.
    pub fn new(keys: Vec<f64>) -> Result<Self> {
        if keys.iter().any(|k| k.is_nan()) || keys.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter(
                "range tree keys must be sorted".into(),
            ));
        }
        let mut t = RangeTree {
            nodes: Vec::with_capacity(2 * keys.len()),
            leaf_node: vec![0; keys.len()],
            height: 0,
            keys,
        };
        if !t.keys.is_empty() {
            t.height = t.build(0, t.keys.len(), 1);
        }
        Ok(t)
    }

    fn build(&mut self, lo: usize, hi: usize, depth: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node {
            lo,
            hi,
            children: None,
        });
        if hi - lo == 1 {
            self.leaf_node[lo] = id;
            return depth;
        }
        let mid = lo + (hi - lo).div_ceil(2);
        let l = self.nodes.len();
        let hl = self.build(lo, mid, depth + 1);
        let r = self.nodes.len();
        let hr = self.build(mid, hi, depth + 1);
        self.nodes[id].children = Some((l, r));
        hl.max(hr)
    }

    pub fn keys(&self) -> &[f64] {
        &self.keys
    }

    pub fn num_leaves(&self) -> usize {
        self.keys.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Number of levels (a single leaf has height 1).
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn root(&self) -> Option<NodeId> {
        (!self.nodes.is_empty()).then_some(0)
    }

    pub fn leaf(&self, i: usize) -> NodeId {
        self.leaf_node[i]
    }

    /// Leaf index range `[lo, hi)` of the canonical subset of `id`.
    pub fn leaf_range(&self, id: NodeId) -> (usize, usize) {
        (self.nodes[id].lo, self.nodes[id].hi)
    }

    pub fn children(&self, id: NodeId) -> Option<(NodeId, NodeId)> {
        self.nodes[id].children
    }

    /// Canonical nodes covering the leaves with key in `[lo_x, hi_x]`.
    pub fn range_cover(&self, lo_x: f64, hi_x: f64) -> Vec<NodeId> {
        let a = self.keys.partition_point(|&k| k < lo_x);
        let b = self.keys.partition_point(|&k| k <= hi_x);
        self.cover_leaves(a, b)
    }

    /// Canonical nodes covering leaf indices `[a, b)`.
    pub fn cover_leaves(&self, a: usize, b: usize) -> Vec<NodeId> {
        let mut out = Vec::new();
        if a < b && !self.nodes.is_empty() {
            self.cover(0, a, b, &mut out);
        }
        out
    }

    fn cover(&self, id: NodeId, a: usize, b: usize, out: &mut Vec<NodeId>) {
        let n = self.nodes[id];
        if b <= n.lo || n.hi <= a {
            return;
        }
        if a <= n.lo && n.hi <= b {
            out.push(id);
            return;
        }
        if let Some((l, r)) = n.children {
            self.cover(l, a, b, out);
            self.cover(r, a, b, out);
        }
    }
}
