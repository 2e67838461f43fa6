use std::collections::{BTreeMap, HashMap};

use super::{Rect, SepInstance};

/// Returns a pair of intersecting rectangles (closed sets), or `None` when
/// all are pairwise disjoint. Sweep over x with the active y-intervals kept in
/// an ordered map, `O(n log n)`.
pub fn check_disjoint_rep(rects: &[Rect]) -> Option<(usize, usize)> {
    // (x, 0 = open / 1 = close, index); opens sort first so touching counts
    let mut events: Vec<(i64, u8, usize)> = Vec::with_capacity(2 * rects.len());
    for (i, r) in rects.iter().enumerate() {
        events.push((r.x1, 0, i));
        events.push((r.x2, 1, i));
    }
    events.sort_unstable();

    let mut active: BTreeMap<i64, (i64, usize)> = BTreeMap::new();
    for (_, kind, i) in events {
        let r = &rects[i];
        if kind == 1 {
            active.remove(&r.y1);
            continue;
        }
        if let Some((_, &(y2, j))) = active.range(..=r.y2).next_back() {
            if y2 >= r.y1 {
                return Some((i.min(j), i.max(j)));
            }
        }
        active.insert(r.y1, (r.y2, i));
    }
    None
}

/// Returns two indices holding the same lattice point, if any.
pub fn check_disjoint_sep(inst: &SepInstance) -> Option<(usize, usize)> {
    let mut seen = HashMap::with_capacity(inst.points.len());
    for (i, p) in inst.points.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            return Some((j, i));
        }
        seen.insert(*p, i);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(rects: &[Rect]) -> bool {
        for i in 0..rects.len() {
            for j in i + 1..rects.len() {
                if rects[i].intersects(&rects[j]) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn examples() {
        let overlap = [Rect::new(0, 0, 3, 3), Rect::new(2, 2, 5, 5)];
        assert_eq!(check_disjoint_rep(&overlap), Some((0, 1)));
        let touching = [Rect::new(0, 0, 2, 2), Rect::new(0, 2, 2, 4)];
        assert!(check_disjoint_rep(&touching).is_some());
        let corner = [Rect::new(0, 0, 2, 2), Rect::new(2, 2, 4, 4)];
        assert!(check_disjoint_rep(&corner).is_some());
        let apart = [Rect::new(0, 0, 2, 2), Rect::new(3, 0, 4, 2), Rect::new(0, 3, 4, 4)];
        assert_eq!(check_disjoint_rep(&apart), None);
        let nested = [Rect::new(0, 0, 10, 10), Rect::new(2, 2, 3, 3)];
        assert!(check_disjoint_rep(&nested).is_some());
    }

    fn rects() -> impl Strategy<Value = Vec<Rect>> {
        prop::collection::vec((0i64..12, 1i64..4, 0i64..12, 1i64..4), 0..9).prop_map(|v| {
            v.into_iter()
                .map(|(x, w, y, h)| Rect::new(x, y, x + w, y + h))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn sweep_matches_pairwise(rs in rects()) {
            let sweep = check_disjoint_rep(&rs);
            prop_assert_eq!(sweep.is_none(), brute(&rs));
            if let Some((a, b)) = sweep {
                prop_assert!(rs[a].intersects(&rs[b]));
            }
        }
    }
}
