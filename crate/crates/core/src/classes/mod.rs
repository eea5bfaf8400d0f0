//! Classical graph classes, brute-force invariants and the structured claw-free and bipartite
//! mock threshold classifiers.

mod bipartite;
mod clawfree;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::graph::{bits, full_set, Graph, VertexSet};
pub use crate::mt::is_even;
use crate::mt::{is_mt, MTOrder, VertexClass};
use crate::subgraph::{contains, ContainmentMode};

pub use bipartite::{classify_bipartite_mt, BipartiteMTShape};
pub use clawfree::{
    classify_clawfree_mt, classify_clawfree_mt_with, generate_clawfree_type, match_core_type, match_core_type_with,
    matches_type, ClawFreeMTLabel, CoreType, TypeParams,
};

/// Which version of a published structural type list to match against.
///
/// `AsStated` follows the descriptions word for word. `Corrected` adds what the exhaustive
/// comparisons showed missing: for claw-free cores, triangles whose attachments are linked by
/// a star and the tighter `s >= 2 => r = 2` bound for type IX; for line-graph roots, triangles
/// with one pendant on each of two further vertices, bowties with one pendant off the centre,
/// and triangles carrying a pendant vertex with two leaves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypeReading {
    AsStated,
    #[default]
    Corrected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassLabel {
    Threshold,
    Chordal,
    Split,
    WeaklyChordal,
    Bipartite,
    ClawFree,
    Even,
    Eulerian,
}

/// Every label that applies to `g`, each decided independently.
pub fn classify(g: &Graph) -> BTreeSet<ClassLabel> {
    let mut out = BTreeSet::new();
    let checks: [(ClassLabel, bool); 8] = [
        (ClassLabel::Threshold, is_threshold(g)),
        (ClassLabel::Chordal, is_chordal(g)),
        (ClassLabel::Split, is_split(g)),
        (ClassLabel::WeaklyChordal, is_weakly_chordal(g)),
        (ClassLabel::Bipartite, g.is_bipartite()),
        (ClassLabel::ClawFree, is_claw_free(g)),
        (ClassLabel::Even, is_even(g)),
        (ClassLabel::Eulerian, is_eulerian(g)),
    ];
    for (label, holds) in checks {
        if holds {
            out.insert(label);
        }
    }
    out
}

pub fn claw() -> Graph {
    Graph::star(3)
}

pub fn is_claw_free(g: &Graph) -> bool {
    !contains(g, &claw(), ContainmentMode::Induced)
}

/// Even and connected.
pub fn is_eulerian(g: &Graph) -> bool {
    g.n() > 0 && is_even(g) && g.is_connected()
}

/// A threshold ordering `v_1..v_n`: each vertex is isolated or dominating among its predecessors.
/// Built by repeatedly deleting the lowest-index isolated or dominating vertex.
pub fn threshold_ordering(g: &Graph) -> Option<Vec<usize>> {
    let mut alive = g.vertex_set();
    let mut deleted = Vec::with_capacity(g.n());
    while alive != 0 {
        let size = alive.count_ones();
        let v = bits(alive).find(|&v| {
            let d = (g.neighbors(v) & alive).count_ones();
            d == 0 || d + 1 == size
        })?;
        alive &= !(1 << v);
        deleted.push(v);
    }
    deleted.reverse();
    Some(deleted)
}

pub fn is_threshold(g: &Graph) -> bool {
    threshold_ordering(g).is_some()
}

/// Whether `g` contains an induced 2K2, P4 or C4.
pub fn has_threshold_obstruction(g: &Graph) -> bool {
    let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]);
    [two_k2, Graph::path(4), Graph::cycle(4)]
        .iter()
        .any(|p| contains(g, p, ContainmentMode::Induced))
}

/// Integer weights and threshold with `uv ∈ E ⟺ w(u) + w(v) > t`, read off a threshold ordering:
/// the vertex at position `i > 1` gets `i - 1` if dominating and `-(i - 1)` if isolated.
pub fn threshold_weights(g: &Graph) -> Option<(Vec<i64>, i64)> {
    let order = threshold_ordering(g)?;
    let mut w = vec![0i64; g.n()];
    let mut seen: VertexSet = 0;
    for (idx, &v) in order.iter().enumerate() {
        if idx > 0 {
            let dominating = g.neighbors(v) & seen == seen;
            w[v] = if dominating { idx as i64 } else { -(idx as i64) };
        }
        seen |= 1 << v;
    }
    Some((w, 0))
}

/// Searches integer weights in `[-(n-1), n-1]` with threshold 0, pruning each unassigned vertex to
/// the interval its assigned neighbours and non-neighbours allow. Does not use an ordering.
pub fn search_weight_certificate(g: &Graph) -> Option<(Vec<i64>, i64)> {
    let n = g.n();
    let bound = n as i64 - 1;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v).max(g.codegree(v))));
    let mut w = vec![0i64; n];
    weight_search(g, &order, 0, &mut w, &vec![(-bound, bound); n]).then_some((w, 0))
}

fn weight_search(g: &Graph, order: &[usize], depth: usize, w: &mut [i64], range: &[(i64, i64)]) -> bool {
    let Some(&v) = order.get(depth) else { return true };
    let (lo, hi) = range[v];
    for x in lo..=hi {
        let mut next = range.to_vec();
        let mut ok = true;
        for &u in &order[depth + 1..] {
            let r = &mut next[u];
            if g.has_edge(u, v) {
                r.0 = r.0.max(1 - x);
            } else {
                r.1 = r.1.min(-x);
            }
            if r.0 > r.1 {
                ok = false;
                break;
            }
        }
        if ok {
            w[v] = x;
            if weight_search(g, order, depth + 1, w, &next) {
                return true;
            }
        }
    }
    false
}

pub fn verify_weights(g: &Graph, w: &[i64], t: i64) -> bool {
    w.len() == g.n() && g.edges_and_non_edges().all(|(u, v, adj)| (w[u] + w[v] > t) == adj)
}

/// Hammer–Simeone degree-sequence test.
pub fn is_split(g: &Graph) -> bool {
    let mut d = g.degree_sequence();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let m = (0..d.len()).filter(|&i| d[i] >= i).count();
    let head: usize = d[..m].iter().sum();
    let tail: usize = d[m..].iter().sum();
    head == m * m.saturating_sub(1) + tail
}

/// Split test by trying every clique as the clique side.
pub fn is_split_brute(g: &Graph) -> Result<bool> {
    if g.n() > 20 {
        return Err(GraphError::Precondition(format!("brute split test capped at 20 vertices, got {}", g.n())));
    }
    let all = g.vertex_set();
    Ok((0..=all).any(|k: u64| k & !all == 0 && g.is_clique(k) && g.is_independent(all & !k)))
}

/// Whether `g` has an induced cycle whose length satisfies `accept` (only lengths ≥ 4 are tried).
pub fn has_induced_cycle(g: &Graph, accept: impl Fn(usize) -> bool) -> bool {
    let n = g.n();
    for s in 0..n {
        let above = full_set(n) & !full_set(s + 1);
        for p1 in bits(g.neighbors(s) & above) {
            if hole_search(g, s, p1, 0, above & !(1 << p1), 2, &accept) {
                return true;
            }
        }
    }
    false
}

/// Extends the induced path `s, ..., last`; `blocked` holds neighbours of the path interior.
fn hole_search(g: &Graph, s: usize, last: usize, blocked: VertexSet, free: VertexSet, len: usize, accept: &impl Fn(usize) -> bool) -> bool {
    let cand = g.neighbors(last) & free & !blocked;
    for x in bits(cand) {
        if g.has_edge(x, s) {
            if len >= 3 && accept(len + 1) {
                return true;
            }
            continue;
        }
        if hole_search(g, s, x, blocked | g.neighbors(last) | 1 << last, free & !(1 << x), len + 1, accept) {
            return true;
        }
    }
    false
}

pub fn is_chordal(g: &Graph) -> bool {
    !has_induced_cycle(g, |len| len >= 4)
}

pub fn is_weakly_chordal(g: &Graph) -> bool {
    !has_induced_cycle(g, |len| len >= 5) && !has_induced_cycle(&g.complement(), |len| len >= 5)
}

/// Clique number, chromatic number and independence number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub omega: usize,
    pub chi: usize,
    pub alpha: usize,
}

pub fn brute_invariants(g: &Graph) -> Result<Invariants> {
    Ok(Invariants {
        omega: brute_clique_number(g)?,
        chi: brute_chromatic_number(g)?,
        alpha: brute_independence_number(g)?,
    })
}

pub fn brute_clique_number(g: &Graph) -> Result<usize> {
    if g.n() > 32 {
        return Err(GraphError::Precondition(format!("clique search capped at 32 vertices, got {}", g.n())));
    }
    Ok(max_clique(g, 0, g.vertex_set(), 0))
}

pub fn brute_independence_number(g: &Graph) -> Result<usize> {
    brute_clique_number(&g.complement())
}

fn max_clique(g: &Graph, size: usize, cand: VertexSet, best: usize) -> usize {
    if cand == 0 {
        return best.max(size);
    }
    if size + cand.count_ones() as usize <= best {
        return best;
    }
    let mut best = best;
    let mut rest = cand;
    while rest != 0 {
        if size + rest.count_ones() as usize <= best {
            break;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= !(1 << v);
        best = max_clique(g, size + 1, rest & g.neighbors(v), best);
    }
    best.max(size)
}

pub fn brute_chromatic_number(g: &Graph) -> Result<usize> {
    if g.n() > 16 {
        return Err(GraphError::Precondition(format!("colouring search capped at 16 vertices, got {}", g.n())));
    }
    if g.n() == 0 {
        return Ok(0);
    }
    let mut k = max_clique(g, 0, g.vertex_set(), 0).max(1);
    let mut colour = vec![usize::MAX; g.n()];
    while !colourable(g, 0, k, &mut colour) {
        k += 1;
    }
    Ok(k)
}

fn colourable(g: &Graph, v: usize, k: usize, colour: &mut [usize]) -> bool {
    if v == g.n() {
        return true;
    }
    let used_max = colour[..v].iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..k.min(used_max + 1) {
        if bits(g.neighbors(v)).filter(|&u| u < v).all(|u| colour[u] != c) {
            colour[v] = c;
            if colourable(g, v + 1, k, colour) {
                return true;
            }
        }
    }
    colour[v] = usize::MAX;
    false
}

/// Perfection by comparing ω and χ on every induced subgraph.
pub fn is_perfect_small(g: &Graph) -> Result<bool> {
    if g.n() > 10 {
        return Err(GraphError::Precondition(format!("perfection test capped at 10 vertices, got {}", g.n())));
    }
    let all = g.vertex_set();
    for s in 1..=all {
        if s & !all != 0 {
            continue;
        }
        let h = g.induced(s);
        if brute_clique_number(&h)? != brute_chromatic_number(&h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Perfection by the absence of odd holes and odd antiholes.
pub fn is_perfect_by_odd_holes(g: &Graph) -> bool {
    let odd = |len: usize| len >= 5 && len % 2 == 1;
    !has_induced_cycle(g, odd) && !has_induced_cycle(&g.complement(), odd)
}

/// An MT-ordering in which the unique earlier non-neighbour of every vertex with back-degree
/// `i - 2` is simplicial in the prefix. Such an ordering exists exactly for chordal MT graphs.
pub fn chordal_mt_witness(g: &Graph) -> Result<Option<MTOrder>> {
    if !is_mt(g) {
        return Err(GraphError::Precondition("graph is not mock threshold".into()));
    }
    if g.n() > 20 {
        return Err(GraphError::Precondition(format!("witness search capped at 20 vertices, got {}", g.n())));
    }
    let n = g.n();
    let all = g.vertex_set();
    // reached[prefix] = last vertex added (or u8::MAX for unreachable)
    let mut reached = vec![u8::MAX; 1 << n];
    let mut stack = vec![0u64];
    reached[0] = 0;
    while let Some(prefix) = stack.pop() {
        if prefix == all {
            break;
        }
        let i = prefix.count_ones() as usize + 1;
        for v in bits(all & !prefix) {
            let next = prefix | 1 << v;
            if reached[next as usize] != u8::MAX {
                continue;
            }
            let nb = g.neighbors(v) & prefix;
            let d = nb.count_ones() as usize;
            if !(d <= 1 || d + 2 >= i) {
                continue;
            }
            if i >= 2 && d + 2 == i {
                let u = (prefix & !nb).trailing_zeros() as usize;
                if !g.is_clique(g.neighbors(u) & next) {
                    continue;
                }
            }
            reached[next as usize] = v as u8;
            stack.push(next);
        }
    }
    if n > 0 && reached[all as usize] == u8::MAX {
        return Ok(None);
    }
    let mut order = Vec::with_capacity(n);
    let mut s = all;
    while s != 0 {
        let v = reached[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    Ok(Some(MTOrder::from_permutation(g, &order, 1).expect("search keeps the ordering valid")))
}

/// Isolated vertices plus at most one component with a vertex whose deletion leaves a clique.
pub fn clawfree_threshold_check(g: &Graph) -> bool {
    let big: Vec<VertexSet> = g.components().into_iter().filter(|c| c.count_ones() > 1).collect();
    match big.as_slice() {
        [] => true,
        [c] => bits(*c).any(|v| g.is_clique(c & !(1 << v))),
        _ => false,
    }
}

fn threshold_tags(g: &Graph) -> Result<(Vec<usize>, Vec<bool>)> {
    let order = threshold_ordering(g).ok_or_else(|| GraphError::Precondition("graph is not threshold".into()))?;
    let mut seen: VertexSet = 0;
    let mut dominating = Vec::with_capacity(order.len());
    for (idx, &v) in order.iter().enumerate() {
        dominating.push(idx > 0 && g.neighbors(v) & seen == seen);
        seen |= 1 << v;
    }
    Ok((order, dominating))
}

/// Evenness of a threshold graph read from a threshold ordering.
///
/// With `d_i ∈ {0, 1}` marking dominating positions, `deg(v_i) - deg(v_{i+1}) = (i - 1)(d_i - d_{i+1})`
/// and `deg(v_n) = (n - 1) d_n`. So every degree is even iff the type never changes right after an
/// even position `i ≥ 2`, and `n` is odd whenever `v_n` is dominating.
pub fn even_threshold_check(g: &Graph) -> Result<bool> {
    let (order, d) = threshold_tags(g)?;
    let n = order.len();
    let switches_ok = (2..n).all(|i| i % 2 == 1 || d[i - 1] == d[i]);
    let last_ok = n == 0 || !d[n - 1] || n % 2 == 1;
    Ok(switches_ok && last_ok)
}

/// Even and connected, for a threshold graph: the ordering rule plus a dominating last vertex.
pub fn eulerian_threshold_check(g: &Graph) -> Result<bool> {
    let (order, d) = threshold_tags(g)?;
    let n = order.len();
    Ok(even_threshold_check(g)? && (n == 1 || (n > 1 && d[n - 1])))
}

/// The rule "every maximal run of dominating positions has even length", position one counted
/// as isolated. It disagrees with degree parity, for instance on K4 minus an edge.
pub fn dominating_runs_even(g: &Graph) -> Result<bool> {
    let (_, d) = threshold_tags(g)?;
    Ok(d.split(|&x| !x).all(|run| run.len() % 2 == 0))
}

/// Tags a threshold ordering with isolated and dominating classes.
pub fn threshold_certificate(g: &Graph) -> Option<MTOrder> {
    let (order, d) = threshold_tags(g).ok()?;
    let classes = d
        .iter()
        .map(|&x| if x { VertexClass::Dominating } else { VertexClass::Isolated })
        .collect();
    Some(MTOrder { order, classes, k: 0 })
}
