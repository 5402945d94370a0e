//! Exact-length cycle search by pruned simple-path extension.

use super::Graph;

/// True iff `g` has a simple cycle on exactly `ell` vertices.
///
/// Each cycle is searched from its smallest vertex `s`, extending paths
/// through larger vertices only, and abandoning a path whose end is further
/// from `s` than the number of edges left. Exponential in the worst case;
/// meant for orders up to a few dozen on sparse or structured inputs.
pub fn has_cycle_of_length(g: &Graph, ell: usize) -> bool {
    let n = g.order();
    if ell < 3 || ell > n {
        return false;
    }
    let adj = g.adjacency_lists();
    let mut on_path = vec![false; n];
    for s in 0..n {
        if n - s < ell {
            break;
        }
        let dist = restricted_distances(&adj, s);
        on_path[s] = true;
        if extend(&adj, &dist, &mut on_path, s, s, 1, ell) {
            return true;
        }
        on_path[s] = false;
    }
    false
}

/// BFS distances to `s` inside the subgraph induced by vertices `≥ s`.
fn restricted_distances(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if v > s && dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

fn extend(
    adj: &[Vec<usize>],
    dist: &[usize],
    on_path: &mut [bool],
    s: usize,
    cur: usize,
    len: usize,
    ell: usize,
) -> bool {
    if len == ell {
        return adj[cur].binary_search(&s).is_ok();
    }
    for &v in &adj[cur] {
        if v <= s || on_path[v] {
            continue;
        }
        // after stepping to v the path has len + 1 vertices; ell - len edges remain
        if dist[v] > ell - len {
            continue;
        }
        on_path[v] = true;
        let found = extend(adj, dist, on_path, s, v, len + 1, ell);
        on_path[v] = false;
        if found {
            return true;
        }
    }
    false
}

/// `lengths[k]` is true iff `g` has a simple cycle on `k` vertices.
/// Enumerates every simple path, so only for small orders.
pub fn cycle_length_set(g: &Graph) -> Vec<bool> {
    let n = g.order();
    let adj = g.adjacency_lists();
    let mut lengths = vec![false; n + 1];
    let mut on_path = vec![false; n];
    fn walk(
        adj: &[Vec<usize>],
        on_path: &mut [bool],
        s: usize,
        cur: usize,
        len: usize,
        lengths: &mut [bool],
    ) {
        if len >= 3 && adj[cur].binary_search(&s).is_ok() {
            lengths[len] = true;
        }
        for &v in &adj[cur] {
            if v > s && !on_path[v] {
                on_path[v] = true;
                walk(adj, on_path, s, v, len + 1, lengths);
                on_path[v] = false;
            }
        }
    }
    for s in 0..n {
        on_path[s] = true;
        walk(&adj, &mut on_path, s, s, 1, &mut lengths);
        on_path[s] = false;
    }
    lengths
}
