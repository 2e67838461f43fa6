use std::collections::VecDeque;

const NONE: u32 = u32::MAX;
const INF: u32 = u32::MAX;

/// Bipartite graph with adjacency stored on the left side. Edges keep their
/// insertion order, which fixes the matching that gets returned.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<u32>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            right,
            adj: vec![Vec::new(); left],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(v < self.right);
        self.adj[u].push(v as u32);
    }

    pub fn left_len(&self) -> usize {
        self.adj.len()
    }

    pub fn right_len(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.adj[u]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// Partner of each left vertex.
    pub left: Vec<Option<usize>>,
    pub size: usize,
}

impl Matching {
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left.iter().enumerate().filter_map(|(u, v)| v.map(|v| (u, v)))
    }

    pub fn is_left_perfect(&self) -> bool {
        self.size == self.left.len()
    }
}

/// Hopcroft-Karp, `O(sqrt(V) E)`. Augmenting paths are searched
/// iteratively so deep layered graphs cannot overflow the stack.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    let n = g.left_len();
    let mut match_l = vec![NONE; n];
    let mut match_r = vec![NONE; g.right_len()];
    let mut dist = vec![INF; n];
    let mut cursor = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut size = 0;

    loop {
        // layer the graph from the free left vertices
        queue.clear();
        for u in 0..n {
            if match_l[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut free_layer = INF;
        while let Some(u) = queue.pop_front() {
            if dist[u] >= free_layer {
                continue;
            }
            for &v in g.neighbors(u) {
                let w = match_r[v as usize];
                if w == NONE {
                    free_layer = free_layer.min(dist[u] + 1);
                } else if dist[w as usize] == INF {
                    dist[w as usize] = dist[u] + 1;
                    queue.push_back(w as usize);
                }
            }
        }
        if free_layer == INF {
            break;
        }

        cursor.iter_mut().for_each(|c| *c = 0);
        for root in 0..n {
            if match_l[root] != NONE || dist[root] != 0 {
                continue;
            }
            stack.clear();
            stack.push(root);
            while let Some(&u) = stack.last() {
                let Some(&v) = g.neighbors(u).get(cursor[u]) else {
                    dist[u] = INF;
                    stack.pop();
                    if let Some(&p) = stack.last() {
                        cursor[p] += 1;
                    }
                    continue;
                };
                let w = match_r[v as usize];
                if w == NONE && dist[u] + 1 == free_layer {
                    for &x in stack.iter().rev() {
                        let y = g.neighbors(x)[cursor[x]];
                        match_r[y as usize] = x as u32;
                        match_l[x] = y;
                    }
                    size += 1;
                    break;
                }
                if w != NONE && dist[w as usize] == dist[u] + 1 {
                    stack.push(w as usize);
                } else {
                    cursor[u] += 1;
                }
            }
        }
    }

    Matching {
        left: match_l
            .into_iter()
            .map(|v| (v != NONE).then_some(v as usize))
            .collect(),
        size,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(adj: &[Vec<usize>], u: usize, used: &mut Vec<bool>) -> usize {
        if u == adj.len() {
            return 0;
        }
        let mut best = brute(adj, u + 1, used);
        for &v in &adj[u] {
            if !used[v] {
                used[v] = true;
                best = best.max(1 + brute(adj, u + 1, used));
                used[v] = false;
            }
        }
        best
    }

    #[test]
    fn tiny_cases() {
        let mut g = BipartiteGraph::new(1, 1);
        g.add_edge(0, 0);
        assert_eq!(max_matching(&g).size, 1);

        let mut g = BipartiteGraph::new(3, 1);
        for u in 0..3 {
            g.add_edge(u, 0);
        }
        let m = max_matching(&g);
        assert_eq!(m.size, 1);
        assert_eq!(m.left, vec![Some(0), None, None]);

        assert_eq!(max_matching(&BipartiteGraph::new(0, 0)).size, 0);
    }

    #[test]
    fn needs_augmentation() {
        // greedy would take 0-0 and strand vertex 1
        let mut g = BipartiteGraph::new(2, 2);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        let m = max_matching(&g);
        assert_eq!(m.size, 2);
        assert!(m.is_left_perfect());
    }

    #[test]
    fn long_chain_does_not_recurse() {
        let n = 200_000;
        let mut g = BipartiteGraph::new(n, n);
        for u in 0..n {
            g.add_edge(u, u);
            if u + 1 < n {
                g.add_edge(u, u + 1);
            }
        }
        assert_eq!(max_matching(&g).size, n);
    }

    proptest! {
        #[test]
        fn matches_exhaustive_maximum(
            left in 0usize..7,
            right in 0usize..7,
            bits in prop::collection::vec(any::<bool>(), 49),
        ) {
            let mut g = BipartiteGraph::new(left, right);
            let mut adj = vec![Vec::new(); left];
            for u in 0..left {
                for v in 0..right {
                    if bits[u * 7 + v] {
                        g.add_edge(u, v);
                        adj[u].push(v);
                    }
                }
            }
            let m = max_matching(&g);
            prop_assert_eq!(m.size, brute(&adj, 0, &mut vec![false; right]));
            let mut seen = vec![false; right];
            for (u, v) in m.pairs() {
                prop_assert!(adj[u].contains(&v));
                prop_assert!(!seen[v]);
                seen[v] = true;
            }
        }
    }
}
