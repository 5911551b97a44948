//! Rooted dynamic forest: splay-based link-cut trees without re-rooting.

use crate::error::{Error, Result};

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, Default)]
pub struct LinkCutForest {
    left: Vec<usize>,
    right: Vec<usize>,
    /// Splay parent, or path-parent when the node is a splay root.
    up: Vec<usize>,
    /// Parent in the represented forest.
    parent: Vec<usize>,
}

impl LinkCutForest {
    pub fn new(n: usize) -> Self {
        LinkCutForest {
            left: vec![NIL; n],
            right: vec![NIL; n],
            up: vec![NIL; n],
            parent: vec![NIL; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Adds an isolated node and returns its id.
    pub fn add_node(&mut self) -> usize {
        self.left.push(NIL);
        self.right.push(NIL);
        self.up.push(NIL);
        self.parent.push(NIL);
        self.parent.len() - 1
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (self.parent[v] != NIL).then_some(self.parent[v])
    }

    fn is_splay_root(&self, x: usize) -> bool {
        let p = self.up[x];
        p == NIL || (self.left[p] != x && self.right[p] != x)
    }

    fn rotate(&mut self, x: usize) {
        let p = self.up[x];
        let g = self.up[p];
        if !self.is_splay_root(p) {
            if self.left[g] == p {
                self.left[g] = x;
            } else {
                self.right[g] = x;
            }
        }
        self.up[x] = g;
        if self.left[p] == x {
            let b = self.right[x];
            self.left[p] = b;
            if b != NIL {
                self.up[b] = p;
            }
            self.right[x] = p;
        } else {
            let b = self.left[x];
            self.right[p] = b;
            if b != NIL {
                self.up[b] = p;
            }
            self.left[x] = p;
        }
        self.up[p] = x;
    }

    fn splay(&mut self, x: usize) {
        while !self.is_splay_root(x) {
            let p = self.up[x];
            if !self.is_splay_root(p) {
                let g = self.up[p];
                let zigzig = (self.left[g] == p) == (self.left[p] == x);
                self.rotate(if zigzig { p } else { x });
            }
            self.rotate(x);
        }
    }

    fn access(&mut self, x: usize) {
        let mut last = NIL;
        let mut y = x;
        while y != NIL {
            self.splay(y);
            self.right[y] = last;
            last = y;
            y = self.up[y];
        }
        self.splay(x);
    }

    pub fn find_root(&mut self, v: usize) -> usize {
        self.access(v);
        let mut r = v;
        while self.left[r] != NIL {
            r = self.left[r];
        }
        self.splay(r);
        r
    }

    /// Makes `child` (a root) a child of `parent`.
    pub fn link(&mut self, child: usize, parent: usize) -> Result<()> {
        if self.parent[child] != NIL {
            return Err(Error::Structural(format!(
                "node {child} already has a parent"
            )));
        }
        if self.find_root(parent) == child {
            return Err(Error::Structural(format!(
                "linking {child} under {parent} creates a cycle"
            )));
        }
        self.access(child);
        self.up[child] = parent;
        self.parent[child] = parent;
        Ok(())
    }

    /// Detaches `child` from its parent.
    pub fn cut(&mut self, child: usize) -> Result<()> {
        if self.parent[child] == NIL {
            return Err(Error::Structural(format!("node {child} is a root")));
        }
        self.access(child);
        let l = self.left[child];
        self.up[l] = NIL;
        self.left[child] = NIL;
        self.parent[child] = NIL;
        Ok(())
    }
}

/// Parent-pointer forest with linear-time root queries.
#[derive(Debug, Clone, Default)]
pub struct NaiveForest {
    parent: Vec<Option<usize>>,
}

impl NaiveForest {
    pub fn new(n: usize) -> Self {
        NaiveForest {
            parent: vec![None; n],
        }
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn find_root(&self, mut v: usize) -> usize {
        while let Some(p) = self.parent[v] {
            v = p;
        }
        v
    }

    pub fn link(&mut self, child: usize, parent: usize) -> Result<()> {
        if self.parent[child].is_some() {
            return Err(Error::Structural(format!(
                "node {child} already has a parent"
            )));
        }
        if self.find_root(parent) == child {
            return Err(Error::Structural(format!(
                "linking {child} under {parent} creates a cycle"
            )));
        }
        self.parent[child] = Some(parent);
        Ok(())
    }

    pub fn cut(&mut self, child: usize) -> Result<()> {
        if self.parent[child].take().is_none() {
            return Err(Error::Structural(format!("node {child} is a root")));
        }
        Ok(())
    }
}
