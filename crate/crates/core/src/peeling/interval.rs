/// Static interval tree over a fixed set of intervals, each of which can be
/// switched on once. Reports every active interval that overlaps a query
/// interval in a set of positive length.
///
/// Intervals are ordered by left endpoint; a max-tree over right endpoints of
/// active intervals prunes the search, so a query costs
/// `O((1 + reported) log n)`.
pub struct IntervalIndex {
    lo: Vec<i64>,
    hi: Vec<i64>,
    item: Vec<usize>,
    slot_of: Vec<usize>,
    size: usize,
    tree: Vec<i64>,
}

impl IntervalIndex {
    pub fn new(intervals: &[(i64, i64)]) -> Self {
        let n = intervals.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (intervals[i].0, i));
        let mut slot_of = vec![0; n];
        for (slot, &i) in order.iter().enumerate() {
            slot_of[i] = slot;
        }
        let size = n.next_power_of_two().max(1);
        IntervalIndex {
            lo: order.iter().map(|&i| intervals[i].0).collect(),
            hi: order.iter().map(|&i| intervals[i].1).collect(),
            item: order,
            slot_of,
            size,
            tree: vec![i64::MIN; 2 * size],
        }
    }

    pub fn activate(&mut self, item: usize) {
        let slot = self.slot_of[item];
        let mut node = self.size + slot;
        self.tree[node] = self.hi[slot];
        while node > 1 {
            node /= 2;
            self.tree[node] = self.tree[2 * node].max(self.tree[2 * node + 1]);
        }
    }

    /// Pushes every active item whose interval meets `(a, b)` in positive
    /// length, i.e. `lo < b && hi > a`.
    pub fn overlapping(&self, a: i64, b: i64, out: &mut Vec<usize>) {
        let prefix = self.lo.partition_point(|&lo| lo < b);
        if prefix > 0 {
            self.collect(1, 0, self.size, prefix, a, out);
        }
    }

    fn collect(&self, node: usize, l: usize, r: usize, prefix: usize, a: i64, out: &mut Vec<usize>) {
        if l >= prefix || self.tree[node] <= a {
            return;
        }
        if r - l == 1 {
            out.push(self.item[l]);
            return;
        }
        let mid = (l + r) / 2;
        self.collect(2 * node, l, mid, prefix, a, out);
        self.collect(2 * node + 1, mid, r, prefix, a, out);
    }
}
