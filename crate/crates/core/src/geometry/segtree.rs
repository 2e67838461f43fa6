/// Range-add / range-max segment tree with leftmost argmax.
///
/// `max[node]` already includes `add[node]`, so no push-down is needed.
pub(crate) struct MaxAddTree {
    size: usize,
    max: Vec<i64>,
    add: Vec<i64>,
}

impl MaxAddTree {
    pub fn new(size: usize) -> Self {
        assert!(size > 0);
        MaxAddTree {
            size,
            max: vec![0; 4 * size],
            add: vec![0; 4 * size],
        }
    }

    /// Adds `delta` to positions `[lo, hi)`.
    pub fn add(&mut self, lo: usize, hi: usize, delta: i64) {
        if lo < hi {
            self.add_rec(1, 0, self.size, lo, hi, delta);
        }
    }

    fn add_rec(&mut self, node: usize, l: usize, r: usize, lo: usize, hi: usize, delta: i64) {
        if hi <= l || r <= lo {
            return;
        }
        if lo <= l && r <= hi {
            self.add[node] += delta;
            self.max[node] += delta;
            return;
        }
        let mid = (l + r) / 2;
        self.add_rec(2 * node, l, mid, lo, hi, delta);
        self.add_rec(2 * node + 1, mid, r, lo, hi, delta);
        self.max[node] = self.add[node] + self.max[2 * node].max(self.max[2 * node + 1]);
    }

    /// Maximum over all positions and the leftmost position attaining it.
    pub fn global_max(&self) -> (i64, usize) {
        let mut node = 1;
        let (mut l, mut r) = (0, self.size);
        let value = self.max[1];
        let mut acc = 0;
        while r - l > 1 {
            acc += self.add[node];
            let mid = (l + r) / 2;
            if acc + self.max[2 * node] == value {
                node *= 2;
                r = mid;
            } else {
                node = 2 * node + 1;
                l = mid;
            }
        }
        (value, l)
    }

    pub fn point(&self, pos: usize) -> i64 {
        let mut node = 1;
        let (mut l, mut r) = (0, self.size);
        let mut acc = 0;
        while r - l > 1 {
            acc += self.add[node];
            let mid = (l + r) / 2;
            if pos < mid {
                node *= 2;
                r = mid;
            } else {
                node = 2 * node + 1;
                l = mid;
            }
        }
        acc + self.max[node]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_dense_array(size in 1usize..40, ops in prop::collection::vec((0usize..40, 0usize..40, -3i64..4), 0..30)) {
            let mut t = MaxAddTree::new(size);
            let mut dense = vec![0i64; size];
            for (a, b, d) in ops {
                let (lo, hi) = (a.min(b) % (size + 1), a.max(b) % (size + 1));
                let (lo, hi) = (lo.min(hi), lo.max(hi));
                t.add(lo, hi, d);
                for v in &mut dense[lo..hi] { *v += d; }
            }
            let best = *dense.iter().max().unwrap();
            let arg = dense.iter().position(|&v| v == best).unwrap();
            prop_assert_eq!(t.global_max(), (best, arg));
            for (i, &v) in dense.iter().enumerate() {
                prop_assert_eq!(t.point(i), v);
            }
        }
    }
}
