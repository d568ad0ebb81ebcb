//! Maximum bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

const UNSEEN: usize = usize::MAX;

/// Size of a maximum matching. `adj[l]` lists the right vertices adjacent to
/// left vertex `l`; right vertices are `0..right`.
pub fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    let left = adj.len();
    let mut mate_l = vec![None; left];
    let mut mate_r = vec![None; right];
    let mut layer = vec![UNSEEN; left];
    let mut size = 0;
    loop {
        // Layer free left vertices, then alternate along matched edges.
        let mut queue = VecDeque::new();
        for l in 0..left {
            if mate_l[l].is_none() {
                layer[l] = 0;
                queue.push_back(l);
            } else {
                layer[l] = UNSEEN;
            }
        }
        let mut reachable_free = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match mate_r[r] {
                    None => reachable_free = true,
                    Some(l2) if layer[l2] == UNSEEN => {
                        layer[l2] = layer[l] + 1;
                        queue.push_back(l2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !reachable_free {
            return size;
        }
        for l in 0..left {
            if mate_l[l].is_none() && augment(l, adj, &mut layer, &mut mate_l, &mut mate_r) {
                size += 1;
            }
        }
    }
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    layer: &mut [usize],
    mate_l: &mut [Option<usize>],
    mate_r: &mut [Option<usize>],
) -> bool {
    for &r in &adj[l] {
        let ok = match mate_r[r] {
            None => true,
            Some(l2) => layer[l2] == layer[l] + 1 && augment(l2, adj, layer, mate_l, mate_r),
        };
        if ok {
            mate_l[l] = Some(r);
            mate_r[r] = Some(l);
            return true;
        }
    }
    layer[l] = UNSEEN;
    false
}
