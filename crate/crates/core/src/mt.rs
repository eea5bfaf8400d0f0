//! Mock threshold recognition, certificates, minimality tests and the clique algorithm.
//!
//! A graph is k-mock-threshold when its vertices can be ordered so that each vertex has at most
//! `k` neighbours or at most `k` non-neighbours among its predecessors. Recognition deletes a
//! vertex of degree ≤ k or codegree ≤ k while one exists; the reversed deletion sequence is a
//! certificate and a stuck remainder is a witness of failure.

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::graph::{bits, full_set, Graph, VertexSet, MAX_VERTICES};

/// Role of a vertex at its position in an ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexClass {
    #[serde(rename = "I")]
    Isolated,
    #[serde(rename = "P")]
    Pendant,
    #[serde(rename = "N")]
    NearDominating,
    #[serde(rename = "D")]
    Dominating,
}

impl VertexClass {
    pub fn symbol(self) -> char {
        match self {
            VertexClass::Isolated => 'I',
            VertexClass::Pendant => 'P',
            VertexClass::NearDominating => 'N',
            VertexClass::Dominating => 'D',
        }
    }

    /// Tag for back-degree `d` at 1-based position `i`, preferring D > N > P > I.
    /// `None` when the position violates the k-relaxed condition.
    pub fn for_back_degree(d: usize, i: usize, k: usize) -> Option<VertexClass> {
        debug_assert!(d < i);
        if d == i - 1 {
            Some(VertexClass::Dominating)
        } else if d + 1 + k >= i {
            Some(VertexClass::NearDominating)
        } else if d == 0 {
            Some(VertexClass::Isolated)
        } else if d <= k {
            Some(VertexClass::Pendant)
        } else {
            None
        }
    }

    /// Whether this tag is an accurate description of back-degree `d` at position `i`.
    pub fn matches(self, d: usize, i: usize, k: usize) -> bool {
        match self {
            VertexClass::Dominating => d == i - 1,
            VertexClass::NearDominating if k == 1 => d + 2 == i,
            VertexClass::NearDominating => d + 1 + k >= i,
            VertexClass::Pendant if k == 1 => d == 1,
            VertexClass::Pendant => (1..=k).contains(&d),
            VertexClass::Isolated => d == 0,
        }
    }
}

/// A certificate ordering `v_1..v_n` with a class tag per position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MTOrder {
    pub order: Vec<usize>,
    pub classes: Vec<VertexClass>,
    pub k: usize,
}

impl MTOrder {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialises")
    }

    pub fn from_json(text: &str) -> Result<MTOrder> {
        serde_json::from_str(text).map_err(|e| GraphError::InvalidCertificate(e.to_string()))
    }

    /// Tags an arbitrary permutation; fails when some position breaks the condition.
    pub fn from_permutation(g: &Graph, order: &[usize], k: usize) -> Result<MTOrder> {
        check_permutation(g, order)?;
        let mut seen: VertexSet = 0;
        let mut classes = Vec::with_capacity(order.len());
        for (idx, &v) in order.iter().enumerate() {
            let d = (g.neighbors(v) & seen).count_ones() as usize;
            let c = VertexClass::for_back_degree(d, idx + 1, k).ok_or_else(|| {
                GraphError::InvalidCertificate(format!("vertex {v} at position {} has back-degree {d}", idx + 1))
            })?;
            classes.push(c);
            seen |= 1 << v;
        }
        Ok(MTOrder {
            order: order.to_vec(),
            classes,
            k,
        })
    }
}

fn check_permutation(g: &Graph, order: &[usize]) -> Result<()> {
    if order.len() != g.n() {
        return Err(GraphError::InvalidCertificate(format!(
            "ordering has {} entries for {} vertices",
            order.len(),
            g.n()
        )));
    }
    let mut seen: VertexSet = 0;
    for &v in order {
        if v >= g.n() || seen >> v & 1 == 1 {
            return Err(GraphError::InvalidCertificate(format!("vertex {v} repeated or out of range")));
        }
        seen |= 1 << v;
    }
    Ok(())
}

/// Outcome of recognition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    InClass(MTOrder),
    /// Every vertex of the stuck subgraph has degree and codegree above `k` within it.
    NotInClass { witness: Graph, vertices: VertexSet },
}

impl Recognition {
    pub fn is_member(&self) -> bool {
        matches!(self, Recognition::InClass(_))
    }

    pub fn certificate(&self) -> Option<&MTOrder> {
        match self {
            Recognition::InClass(c) => Some(c),
            Recognition::NotInClass { .. } => None,
        }
    }
}

/// Vertices of `alive` with at most `k` neighbours or non-neighbours inside `alive`.
pub fn removable_set(g: &Graph, alive: VertexSet, k: usize) -> VertexSet {
    let rows = g.rows();
    let size = alive.count_ones() as usize;
    let mut out = 0;
    for u in bits(alive) {
        let d = (rows[u] & alive).count_ones() as usize;
        if d <= k || size - 1 - d <= k {
            out |= 1 << u;
        }
    }
    out
}

/// Greedy elimination on raw rows; returns the surviving (stuck) set, empty on success.
pub(crate) fn stuck_set(rows: &[u64], k: usize) -> VertexSet {
    let mut alive = full_set(rows.len());
    let mut size = rows.len();
    'outer: while size > 0 {
        for u in bits(alive) {
            let d = (rows[u] & alive).count_ones() as usize;
            if d <= k || size - 1 - d <= k {
                alive &= !(1 << u);
                size -= 1;
                continue 'outer;
            }
        }
        break;
    }
    alive
}

pub fn is_mt(g: &Graph) -> bool {
    stuck_set(g.rows(), 1) == 0
}

pub fn is_k_mt(g: &Graph, k: usize) -> bool {
    stuck_set(g.rows(), k) == 0
}

/// Greedy recognition deleting the lowest-index removable vertex first.
pub fn recognize(g: &Graph, k: usize) -> Recognition {
    recognize_with(g, k, |removable| removable.trailing_zeros() as usize)
}

/// Greedy recognition where `pick` chooses which removable vertex to delete next.
pub fn recognize_with(g: &Graph, k: usize, mut pick: impl FnMut(VertexSet) -> usize) -> Recognition {
    let mut alive = g.vertex_set();
    let mut deleted = Vec::with_capacity(g.n());
    while alive != 0 {
        let r = removable_set(g, alive, k);
        if r == 0 {
            return Recognition::NotInClass {
                witness: g.induced(alive),
                vertices: alive,
            };
        }
        let v = pick(r);
        assert!(r >> v & 1 == 1, "picked vertex is not removable");
        alive &= !(1 << v);
        deleted.push(v);
    }
    deleted.reverse();
    Recognition::InClass(MTOrder::from_permutation(g, &deleted, k).expect("greedy order is valid"))
}

/// True iff every position of `cert` satisfies the back-degree condition and carries an accurate tag.
pub fn verify_order(g: &Graph, cert: &MTOrder) -> bool {
    if check_permutation(g, &cert.order).is_err() || cert.classes.len() != cert.order.len() {
        return false;
    }
    let mut seen: VertexSet = 0;
    for (idx, (&v, &c)) in cert.order.iter().zip(&cert.classes).enumerate() {
        let i = idx + 1;
        let d = (g.neighbors(v) & seen).count_ones() as usize;
        if VertexClass::for_back_degree(d, i, cert.k).is_none() || !c.matches(d, i, cert.k) {
            return false;
        }
        seen |= 1 << v;
    }
    true
}

/// Clique number from a k = 1 certificate.
///
/// Works from the last remaining vertex backwards, re-deriving its tag against the vertices still
/// present: a dominating vertex adds one; a near-dominating vertex is removed with its unique
/// earlier non-neighbour and adds one; pendant and isolated vertices only guarantee a clique of
/// size two or one.
pub fn clique_number(g: &Graph, cert: &MTOrder) -> Result<usize> {
    if cert.k != 1 || !verify_order(g, cert) {
        return Err(GraphError::InvalidCertificate("not a valid k = 1 ordering".into()));
    }
    let mut pos = [usize::MAX; MAX_VERTICES];
    for (i, &v) in cert.order.iter().enumerate() {
        pos[v] = i;
    }
    let mut alive = g.vertex_set();
    // (add, floor) steps; ω(G) = max(ω(rest) + add, floor)
    let mut steps = Vec::new();
    let mut idx = cert.order.len();
    while idx > 0 {
        idx -= 1;
        let v = cert.order[idx];
        if alive >> v & 1 == 0 {
            continue;
        }
        let earlier = alive & !(1 << v);
        let i = earlier.count_ones() as usize + 1;
        let nb = g.neighbors(v) & earlier;
        let d = nb.count_ones() as usize;
        match VertexClass::for_back_degree(d, i, 1).expect("induced orderings stay valid") {
            VertexClass::Dominating => steps.push((1, 0)),
            VertexClass::NearDominating => {
                let u = (earlier & !nb).trailing_zeros() as usize;
                debug_assert!(pos[u] < idx);
                alive &= !(1 << u);
                steps.push((1, 0));
            }
            VertexClass::Pendant => steps.push((0, 2)),
            VertexClass::Isolated => steps.push((0, 1)),
        }
        alive &= !(1 << v);
    }
    Ok(steps.iter().rev().fold(0, |w, &(add, floor)| (w + add).max(floor)))
}

/// Equal to the clique number, since mock threshold graphs are perfect.
pub fn chromatic_number(g: &Graph, cert: &MTOrder) -> Result<usize> {
    clique_number(g, cert)
}

/// Not mock threshold, while every vertex-deleted subgraph is.
pub fn is_minimal_non_mt(g: &Graph) -> bool {
    is_minimal_non_mt_rows(g.rows())
}

pub(crate) fn is_minimal_non_mt_rows(rows: &[u64]) -> bool {
    if stuck_set(rows, 1) == 0 {
        return false;
    }
    let n = rows.len();
    let mut sub = [0u64; MAX_VERTICES];
    (0..n).all(|v| {
        let keep = full_set(n) & !(1 << v);
        for (k, w) in bits(keep).enumerate() {
            sub[k] = crate::graph::compress(rows[w], keep);
        }
        stuck_set(&sub[..n - 1], 1) == 0
    })
}

/// Every single-edge contraction of a minimal non-MT graph is mock threshold.
pub fn is_contraction_minimal_forb(g: &Graph) -> Result<bool> {
    if !is_minimal_non_mt(g) {
        return Err(GraphError::Precondition("graph is not a minimal non-mock-threshold graph".into()));
    }
    Ok(g.edges().into_iter().all(|(u, v)| is_mt(&g.contract_edge(u, v).expect("edge"))))
}

/// How the added vertices of an even embedding are joined to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingVariant {
    /// Each new vertex sees every other vertex except its partner, new vertices included.
    Mutual,
    /// Each new vertex sees the original vertices except its partner, and no new vertex.
    Independent,
}

/// Adds one vertex per odd-degree vertex `w`, adjacent to everything except `w` per `variant`.
pub fn even_embedding(g: &Graph, variant: EmbeddingVariant) -> Result<Graph> {
    let odd: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) % 2 == 1).collect();
    if g.n() + odd.len() > MAX_VERTICES {
        return Err(GraphError::Capacity(g.n() + odd.len()));
    }
    let mut h = *g;
    let original = g.vertex_set();
    let first_new = g.n();
    for (j, &w) in odd.iter().enumerate() {
        let mut nbrs = original & !(1 << w);
        if variant == EmbeddingVariant::Mutual {
            nbrs |= full_set(first_new + j) & !original;
        }
        h.add_vertex(nbrs);
    }
    Ok(h)
}

pub fn is_even(g: &Graph) -> bool {
    (0..g.n()).all(|v| g.degree(v) % 2 == 0)
}

/// Searches for an even mock threshold graph on at most `max_order` vertices containing `g` as the
/// induced subgraph on its first `g.n()` vertices. New vertices are added one at a time; every
/// intermediate graph must stay mock threshold since the class is hereditary, and the last added
/// vertex is forced to be adjacent to exactly the odd-degree vertices.
pub fn find_even_mt_supergraph(g: &Graph, max_order: usize) -> Option<Graph> {
    if !is_mt(g) || max_order > MAX_VERTICES {
        return None;
    }
    (0..=max_order.saturating_sub(g.n())).find_map(|extra| extend_even(g, extra))
}

fn extend_even(h: &Graph, extra: usize) -> Option<Graph> {
    let odd: VertexSet = (0..h.n()).filter(|&v| h.degree(v) % 2 == 1).fold(0, |s, v| s | 1 << v);
    match extra {
        0 => (odd == 0).then_some(*h),
        1 => {
            let mut next = *h;
            next.add_vertex(odd);
            (is_mt(&next) && is_even(&next)).then_some(next)
        }
        _ => (0..1u64 << h.n()).find_map(|mask| {
            let mut next = *h;
            next.add_vertex(mask);
            if is_mt(&next) {
                extend_even(&next, extra - 1)
            } else {
                None
            }
        }),
    }
}
