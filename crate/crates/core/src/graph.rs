//! Simple undirected graphs on at most 64 vertices, one neighbour bitmask per vertex.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{GraphError, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices, bit `i` standing for vertex `i`.
pub type VertexSet = u64;

/// Iterates over the members of a vertex set in increasing order.
#[inline]
pub fn bits(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

/// The set `{0, .., n-1}`.
#[inline]
pub fn full_set(n: usize) -> VertexSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A finite simple graph. Rows beyond `n` are always zero, as are diagonal bits.
#[derive(Clone, Copy)]
pub struct Graph {
    n: usize,
    rows: [u64; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics if `n > 64`; use [`Graph::try_new`] for input data.
    pub fn new(n: usize) -> Self {
        Self::try_new(n).expect("vertex capacity exceeded")
    }

    pub fn try_new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        Ok(Graph {
            n,
            rows: [0; MAX_VERTICES],
        })
    }

    /// Builds a graph from neighbour masks. Masks must be symmetric, loop-free and within range.
    pub fn from_rows(rows: &[u64]) -> Result<Self> {
        let mut g = Self::try_new(rows.len())?;
        let all = full_set(rows.len());
        for (i, &r) in rows.iter().enumerate() {
            if r & !all != 0 || r >> i & 1 == 1 {
                return Err(GraphError::Precondition(format!("row {i} has bits outside the graph")));
            }
            g.rows[i] = r;
        }
        for i in 0..rows.len() {
            for j in bits(rows[i]) {
                if rows[j] >> i & 1 == 0 {
                    return Err(GraphError::Precondition(format!("asymmetric pair ({i}, {j})")));
                }
            }
        }
        Ok(g)
    }

    /// Trusted constructor used by hot loops that already maintain the invariants.
    #[inline]
    pub(crate) fn from_rows_unchecked(rows: &[u64]) -> Self {
        let mut g = Graph {
            n: rows.len(),
            rows: [0; MAX_VERTICES],
        };
        g.rows[..rows.len()].copy_from_slice(rows);
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        let all = full_set(n);
        for v in 0..n {
            g.rows[v] = all & !(1 << v);
        }
        g
    }

    /// The path on `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// The cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut g = Self::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// The star `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Self {
        let mut g = Self::new(k + 1);
        for v in 1..=k {
            g.add_edge(0, v);
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let mut g = Self::new(self.n + other.n);
        g.rows[..self.n].copy_from_slice(&self.rows[..self.n]);
        for v in 0..other.n {
            g.rows[self.n + v] = other.rows[v] << self.n;
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows[..self.n]
    }

    #[inline]
    pub fn vertex_set(&self) -> VertexSet {
        full_set(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    /// Degree in the complement.
    #[inline]
    pub fn codegree(&self, v: usize) -> usize {
        self.n - 1 - self.degree(v)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u}, {v}) for n = {}", self.n);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n);
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    /// Appends a vertex adjacent to `nbrs` and returns its index.
    pub fn add_vertex(&mut self, nbrs: VertexSet) -> usize {
        assert!(self.n < MAX_VERTICES, "vertex capacity exceeded");
        assert_eq!(nbrs & !self.vertex_set(), 0);
        let v = self.n;
        self.n += 1;
        self.rows[v] = nbrs;
        for u in bits(nbrs) {
            self.rows[u] |= 1 << v;
        }
        v
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in bits(self.rows[i] >> i >> 1) {
                out.push((i, i + 1 + j));
            }
        }
        out
    }

    /// All pairs `(i, j, adjacent)` with `i < j`.
    pub fn edges_and_non_edges(&self) -> impl Iterator<Item = (usize, usize, bool)> + '_ {
        (0..self.n).flat_map(move |j| (0..j).map(move |i| (i, j, self.has_edge(i, j))))
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = *self;
        g.remove_edge(u, v);
        g
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn complement(&self) -> Graph {
        let mut g = *self;
        let all = self.vertex_set();
        for v in 0..self.n {
            g.rows[v] = !self.rows[v] & all & !(1 << v);
        }
        g
    }

    /// Subgraph induced on `set`, relabelled `0..|set|` in increasing vertex order.
    pub fn induced_subgraph(&self, set: VertexSet) -> Result<Graph> {
        if set & !self.vertex_set() != 0 {
            let bad = bits(set & !self.vertex_set()).next().unwrap_or(0);
            return Err(GraphError::VertexOutOfRange { vertex: bad, n: self.n });
        }
        Ok(self.induced(set))
    }

    /// Unchecked variant of [`Graph::induced_subgraph`].
    pub fn induced(&self, set: VertexSet) -> Graph {
        let mut g = Graph::new(set.count_ones() as usize);
        for (i, v) in bits(set).enumerate() {
            g.rows[i] = compress(self.rows[v] & set, set);
        }
        g
    }

    pub fn delete_vertex(&self, v: usize) -> Graph {
        self.induced(self.vertex_set() & !(1 << v))
    }

    /// Contracts the edge `uv`. The merged vertex takes the smaller index; the other endpoint
    /// is removed and later vertices shift down by one.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(format!("({u}, {v})")));
        }
        let (keep, drop) = if u < v { (u, v) } else { (v, u) };
        let mut g = *self;
        let merged = (g.rows[keep] | g.rows[drop]) & !(1 << keep) & !(1 << drop);
        for w in bits(g.rows[drop]) {
            g.rows[w] &= !(1 << drop);
        }
        g.rows[drop] = 0;
        for w in bits(g.rows[keep]) {
            g.rows[w] &= !(1 << keep);
        }
        g.rows[keep] = merged;
        for w in bits(merged) {
            g.rows[w] |= 1 << keep;
        }
        Ok(g.induced(self.vertex_set() & !(1 << drop)))
    }

    /// Vertices surviving repeated deletion of vertices of degree `< k`.
    pub fn k_core_set(&self, k: usize) -> VertexSet {
        let mut alive = self.vertex_set();
        loop {
            let low = bits(alive)
                .filter(|&v| ((self.rows[v] & alive).count_ones() as usize) < k)
                .fold(0u64, |acc, v| acc | 1 << v);
            if low == 0 {
                return alive;
            }
            alive &= !low;
        }
    }

    /// The `k`-core together with the set of original vertices it keeps.
    pub fn k_core(&self, k: usize) -> (Graph, VertexSet) {
        let set = self.k_core_set(k);
        (self.induced(set), set)
    }

    /// Connected components as vertex sets, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen >> v & 1 == 1 {
                continue;
            }
            let comp = self.reach(v, self.vertex_set());
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= self.rows[u];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertex_set()) == self.vertex_set()
    }

    /// Whether `set` induces a clique.
    pub fn is_clique(&self, set: VertexSet) -> bool {
        bits(set).all(|v| self.rows[v] & set == set & !(1 << v))
    }

    /// Whether `set` is independent.
    pub fn is_independent(&self, set: VertexSet) -> bool {
        bits(set).all(|v| self.rows[v] & set == 0)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for v in 0..self.n {
            let mut row = 0u64;
            for u in bits(self.rows[v]) {
                row |= 1 << perm[u];
            }
            g.rows[perm[v]] = row;
        }
        g
    }

    /// Two-colouring of the vertices, if one exists.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let mut side = 0u64;
        let mut seen = 0u64;
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut frontier = 1u64 << s;
            seen |= frontier;
            let mut parity = false;
            while frontier != 0 {
                if parity {
                    side |= frontier;
                }
                let mut next = 0;
                for u in bits(frontier) {
                    next |= self.rows[u];
                }
                next &= !seen;
                seen |= next;
                frontier = next;
                parity = !parity;
            }
        }
        (0..self.n)
            .all(|v| {
                let same = if side >> v & 1 == 1 { side } else { !side };
                self.rows[v] & same == 0
            })
            .then_some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Acyclic: every component has one fewer edge than vertices.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }
}

/// Packs the bits of `x` selected by `mask` into the low bits (a software `pext`).
#[inline]
pub(crate) fn compress(x: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    for (i, v) in bits(mask).enumerate() {
        out |= (x >> v & 1) << i;
    }
    out
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows() == other.rows()
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows().hash(state);
    }
}

impl Ord for Graph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.rows().cmp(other.rows()))
    }
}

impl PartialOrd for Graph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
