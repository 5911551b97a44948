//! Centered interval tree for stabbing queries.

#[derive(Debug, Clone)]
struct Node {
    center: f64,
    /// Intervals containing `center`, sorted by `lo` ascending.
    by_lo: Vec<(f64, f64, usize)>,
    /// Same intervals sorted by `hi` descending.
    by_hi: Vec<(f64, f64, usize)>,
    left: Option<Box<Node>>,
    right: Option<Box<Node>>,
}

#[derive(Debug, Clone, Default)]
pub struct RowIntervalTree {
    root: Option<Box<Node>>,
    len: usize,
}

fn build(mut items: Vec<(f64, f64, usize)>) -> Option<Box<Node>> {
    if items.is_empty() {
        return None;
    }
    let mut ends: Vec<f64> = items.iter().flat_map(|&(a, b, _)| [a, b]).collect();
    ends.sort_by(f64::total_cmp);
    let center = ends[ends.len() / 2];
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut here = Vec::new();
    for it in items.drain(..) {
        if it.1 < center {
            left.push(it);
        } else if it.0 > center {
            right.push(it);
        } else {
            here.push(it);
        }
    }
    let mut by_lo = here.clone();
    by_lo.sort_by(|a, b| a.0.total_cmp(&b.0));
    here.sort_by(|a, b| b.1.total_cmp(&a.1));
    Some(Box::new(Node {
        center,
        by_lo,
        by_hi: here,
        left: build(left),
        right: build(right),
    }))
}

impl RowIntervalTree {
    /// Builds from closed intervals `[lo, hi]` tagged with an id.
    pub fn new(items: Vec<(f64, f64, usize)>) -> Self {
        let len = items.len();
        RowIntervalTree {
            root: build(items),
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Ids of all intervals containing `y`.
    pub fn stab(&self, y: f64) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.root.as_deref();
        while let Some(n) = cur {
            if y < n.center {
                out.extend(n.by_lo.iter().take_while(|it| it.0 <= y).map(|it| it.2));
                cur = n.left.as_deref();
            } else if y > n.center {
                out.extend(n.by_hi.iter().take_while(|it| it.1 >= y).map(|it| it.2));
                cur = n.right.as_deref();
            } else {
                out.extend(n.by_lo.iter().map(|it| it.2));
                break;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_stabs() {
        let t = RowIntervalTree::new(vec![(1.0, 2.0, 0), (5.0, 6.0, 1)]);
        assert!(t.stab(0.5).is_empty());
        assert_eq!(t.stab(1.5), vec![0]);
        assert_eq!(t.stab(6.0), vec![1]);
        assert!(RowIntervalTree::new(vec![]).stab(1.0).is_empty());
    }

    #[test]
    fn matches_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let n = rng.gen_range(1..200);
            let items: Vec<(f64, f64, usize)> = (0..n)
                .map(|i| {
                    let a: f64 = rng.gen_range(0.0..100.0);
                    (a, a + rng.gen_range(0.0..10.0), i)
                })
                .collect();
            let t = RowIntervalTree::new(items.clone());
            for _ in 0..1000 {
                let y = if rng.gen_bool(0.1) {
                    items[rng.gen_range(0..n)].0
                } else {
                    rng.gen_range(-5.0..115.0)
                };
                let mut got = t.stab(y);
                got.sort_unstable();
                let want: Vec<usize> = items
                    .iter()
                    .filter(|it| it.0 <= y && y <= it.1)
                    .map(|it| it.2)
                    .collect();
                assert_eq!(got, want);
            }
        }
    }
}
