//! Weisfeiler-Leman color refinement (orders 1 and 2) over small graphs.
//!
//! Order 1 refines node colors by hashed neighbor multisets; order 2 refines
//! ordered-pair colors by the multiset of `(c(u,w), c(w,v))` over all `w`.
//! Colors are folded with a fixed 64-bit mixing function, so multisets are
//! stable across platforms; collisions are possible in principle but
//! irrelevant at the node counts the guard admits.

use super::EmpiricalError;

/// Node-count guard; refinement is cubic-per-round at order 2.
pub const WL_NODE_LIMIT: usize = 64;

fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fold(acc: u64, v: u64) -> u64 {
    mix(acc ^ mix(v))
}

fn hash_multiset(mut values: Vec<u64>, tag: u64) -> u64 {
    values.sort_unstable();
    values.into_iter().fold(mix(tag), fold)
}

/// Runs color refinement of order `k` (1 or 2) for at most `rounds`
/// iterations, stopping early once the color partition is stable. Returns
/// the canonical (sorted) multiset of final colors: node colors at order 1,
/// ordered-pair colors at order 2.
pub fn wl_colors(adj: &[Vec<bool>], k: u8, rounds: usize) -> Result<Vec<u64>, EmpiricalError> {
    let n = adj.len();
    if n > WL_NODE_LIMIT {
        return Err(EmpiricalError::GraphTooLarge {
            n,
            limit: WL_NODE_LIMIT,
        });
    }
    for row in adj {
        assert_eq!(row.len(), n, "adjacency matrix must be square");
    }
    match k {
        1 => Ok(refine_nodes(adj, rounds)),
        2 => Ok(refine_pairs(adj, rounds)),
        other => Err(EmpiricalError::BadWlOrder(other)),
    }
}

fn distinct(colors: &[u64]) -> usize {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

fn refine_nodes(adj: &[Vec<bool>], rounds: usize) -> Vec<u64> {
    let n = adj.len();
    let mut colors = vec![mix(1); n];
    for _ in 0..rounds {
        let before = distinct(&colors);
        let next: Vec<u64> = (0..n)
            .map(|u| {
                let neighbors: Vec<u64> = (0..n)
                    .filter(|&v| adj[u][v])
                    .map(|v| colors[v])
                    .collect();
                fold(colors[u], hash_multiset(neighbors, 0xA1))
            })
            .collect();
        colors = next;
        if distinct(&colors) == before {
            break;
        }
    }
    colors.sort_unstable();
    colors
}

fn refine_pairs(adj: &[Vec<bool>], rounds: usize) -> Vec<u64> {
    let n = adj.len();
    let at = |u: usize, v: usize| u * n + v;
    let mut colors: Vec<u64> = (0..n * n)
        .map(|idx| {
            let (u, v) = (idx / n, idx % n);
            let kind = if u == v {
                0u64
            } else if adj[u][v] {
                1
            } else {
                2
            };
            mix(0xB2 ^ kind)
        })
        .collect();
    for _ in 0..rounds {
        let before = distinct(&colors);
        let next: Vec<u64> = (0..n * n)
            .map(|idx| {
                let (u, v) = (idx / n, idx % n);
                let around: Vec<u64> = (0..n)
                    .map(|w| fold(colors[at(u, w)], colors[at(w, v)]))
                    .collect();
                fold(colors[idx], hash_multiset(around, 0xC3))
            })
            .collect();
        colors = next;
        if distinct(&colors) == before {
            break;
        }
    }
    colors.sort_unstable();
    colors
}

/// Parses an edge-list text (one `u v` pair per line, `#` comments allowed)
/// into an adjacency matrix. The node count is one past the largest index.
pub fn parse_edge_list(text: &str) -> Result<Vec<Vec<bool>>, EmpiricalError> {
    let mut edges = Vec::new();
    let mut max_node = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |s: Option<&str>| -> Result<usize, EmpiricalError> {
            s.and_then(|t| t.parse().ok())
                .ok_or_else(|| EmpiricalError::BadEdgeList {
                    line: lineno + 1,
                    reason: format!("expected two node indices, got {line:?}"),
                })
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(EmpiricalError::BadEdgeList {
                line: lineno + 1,
                reason: "trailing tokens".into(),
            });
        }
        max_node = max_node.max(u).max(v);
        edges.push((u, v));
    }
    let n = if edges.is_empty() { 0 } else { max_node + 1 };
    if n > WL_NODE_LIMIT {
        return Err(EmpiricalError::GraphTooLarge {
            n,
            limit: WL_NODE_LIMIT,
        });
    }
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    Ok(adj)
}

/// Adjacency matrix from an undirected edge list over `n` nodes.
pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}
