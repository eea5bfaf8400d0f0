//! Subgraph and induced-subgraph containment by backtracking over injective vertex maps.

use crate::graph::{bits, Graph, VertexSet, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContainmentMode {
    /// Edges must map to edges.
    Subgraph,
    /// Edges map to edges and non-edges to non-edges.
    Induced,
}

pub fn contains(g: &Graph, pattern: &Graph, mode: ContainmentMode) -> bool {
    find_embedding(g, pattern, mode).is_some()
}

/// An injective map `pattern vertex -> g vertex` witnessing containment.
pub fn find_embedding(g: &Graph, pattern: &Graph, mode: ContainmentMode) -> Option<Vec<usize>> {
    let (n, k) = (g.n(), pattern.n());
    if k > n || pattern.edge_count() > g.edge_count() {
        return None;
    }
    let pairs = |m: usize| m * m.saturating_sub(1) / 2;
    if mode == ContainmentMode::Induced && pairs(k) - pattern.edge_count() > pairs(n) - g.edge_count() {
        return None;
    }
    let mut gd = g.degree_sequence();
    let mut pd = pattern.degree_sequence();
    gd.sort_unstable_by(|a, b| b.cmp(a));
    pd.sort_unstable_by(|a, b| b.cmp(a));
    if pd.iter().zip(&gd).any(|(p, q)| p > q) {
        return None;
    }

    // pattern vertices in an order that keeps each one attached to earlier ones where possible
    let mut order = Vec::with_capacity(k);
    let mut placed: VertexSet = 0;
    while order.len() < k {
        let frontier: VertexSet = order.iter().fold(0, |s, &v: &usize| s | pattern.neighbors(v)) & !placed;
        let pool = if frontier != 0 { frontier } else { pattern.vertex_set() & !placed };
        let next = bits(pool).max_by_key(|&v| (pattern.degree(v), std::cmp::Reverse(v))).expect("pool nonempty");
        order.push(next);
        placed |= 1 << next;
    }

    // candidate images by degree (and codegree when induced)
    let mut allowed = [0u64; MAX_VERTICES];
    for &p in &order {
        let (dp, cp) = (pattern.degree(p), pattern.codegree(p));
        allowed[p] = (0..n)
            .filter(|&x| g.degree(x) >= dp && (mode == ContainmentMode::Subgraph || g.codegree(x) >= cp))
            .fold(0, |s, x| s | 1 << x);
        if allowed[p] == 0 {
            return None;
        }
    }

    let mut image = [usize::MAX; MAX_VERTICES];
    if extend(g, pattern, mode, &order, &allowed, 0, 0, &mut image) {
        Some(image[..k].to_vec())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    pattern: &Graph,
    mode: ContainmentMode,
    order: &[usize],
    allowed: &[u64; MAX_VERTICES],
    depth: usize,
    used: VertexSet,
    image: &mut [usize; MAX_VERTICES],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let p = order[depth];
    let mut cand = allowed[p] & !used;
    for &q in &order[..depth] {
        let x = image[q];
        if pattern.has_edge(p, q) {
            cand &= g.neighbors(x);
        } else if mode == ContainmentMode::Induced {
            cand &= !g.neighbors(x);
        }
    }
    for x in bits(cand) {
        image[p] = x;
        if extend(g, pattern, mode, order, allowed, depth + 1, used | 1 << x, image) {
            return true;
        }
    }
    image[p] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use ContainmentMode::*;

    #[test]
    fn basic_cases() {
        assert!(contains(&Graph::cycle(5), &Graph::path(4), Induced));
        assert!(!contains(&Graph::complete(4), &Graph::cycle(4), Induced));
        assert!(contains(&Graph::complete(4), &Graph::cycle(4), Subgraph));
        assert!(!contains(&Graph::cycle(6), &Graph::complete(3), Subgraph));
        assert!(contains(&Graph::new(3), &Graph::new(0), Induced));
    }

    #[test]
    fn embedding_is_valid() {
        let g = Graph::cycle(7).complement();
        let p = Graph::from_edges(4, &[(0, 1), (2, 3)]).complement();
        let map = find_embedding(&g, &p, Induced).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    assert_eq!(p.has_edge(a, b), g.has_edge(map[a], map[b]));
                }
            }
        }
    }
}
