//! First-blocker queries over the vertical boundaries of one row.
//!
//! Boundary `j` carries the lowest (`bottom[j]`) and highest (`top[j]`)
//! white y on it; an empty boundary is stored as `(+inf, -inf)` so it
//! blocks every query. Internal nodes keep the max of bottoms and the min of
//! tops, which is what decides whether a subtree contains a blocker.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// `y <= bottom[j]`: the path is below the white part of boundary `j`.
    Bottom,
    /// `y >= top[j]`: the path is above it.
    Top,
}

#[derive(Debug, Clone)]
pub struct BlockTree {
    bottom: Vec<f64>,
    top: Vec<f64>,
    size: usize,
    max_bottom: Vec<f64>,
    min_top: Vec<f64>,
}

impl BlockTree {
    pub fn new(bottom: Vec<f64>, top: Vec<f64>) -> Self {
        assert_eq!(bottom.len(), top.len());
        let size = bottom.len().next_power_of_two().max(1);
        let mut max_bottom = vec![f64::NEG_INFINITY; 2 * size];
        let mut min_top = vec![f64::INFINITY; 2 * size];
        for j in 0..bottom.len() {
            max_bottom[size + j] = bottom[j];
            min_top[size + j] = top[j];
        }
        for k in (1..size).rev() {
            max_bottom[k] = max_bottom[2 * k].max(max_bottom[2 * k + 1]);
            min_top[k] = min_top[2 * k].min(min_top[2 * k + 1]);
        }
        BlockTree {
            bottom,
            top,
            size,
            max_bottom,
            min_top,
        }
    }

    pub fn len(&self) -> usize {
        self.bottom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bottom.is_empty()
    }

    pub fn bottom(&self, j: usize) -> f64 {
        self.bottom[j]
    }

    pub fn top(&self, j: usize) -> f64 {
        self.top[j]
    }

    fn blocks(&self, k: usize, y: f64) -> bool {
        y <= self.max_bottom[k] || y >= self.min_top[k]
    }

    fn kind(&self, j: usize, y: f64) -> BlockKind {
        if y <= self.bottom[j] {
            BlockKind::Bottom
        } else {
            BlockKind::Top
        }
    }

    /// Smallest `j > from` whose boundary blocks height `y`.
    pub fn first_blocker(&self, from: usize, y: f64) -> Option<(usize, BlockKind)> {
        let start = from + 1;
        if start >= self.len() {
            return None;
        }
        // walk up from the leaf, then down into the first blocking subtree
        let mut k = self.size + start;
        if self.blocks(k, y) {
            return Some((start, self.kind(start, y)));
        }
        loop {
            // move to the next subtree to the right
            while k & 1 == 1 {
                k >>= 1;
                if k <= 1 {
                    return None;
                }
            }
            k += 1;
            if self.blocks(k, y) {
                break;
            }
        }
        while k < self.size {
            k = if self.blocks(2 * k, y) {
                2 * k
            } else {
                2 * k + 1
            };
        }
        let j = k - self.size;
        (j < self.len()).then(|| (j, self.kind(j, y)))
    }
}
