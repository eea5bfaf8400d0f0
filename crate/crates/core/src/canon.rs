//! Canonical labelling by partition refinement and an individualisation search tree.
//!
//! The root partition is refined to an equitable ordered partition; non-discrete partitions are
//! split by individualising each vertex of the first non-singleton cell in turn. Every discrete
//! leaf induces a relabelled adjacency matrix and the lexicographically least one is kept.
//! Automorphisms discovered along the way (two leaves with equal matrices) prune the search:
//! children in the same orbit of the automorphisms fixing the current prefix are skipped, and the
//! search jumps back to the common ancestor of two equivalent leaves.

use crate::graph::{bits, Graph, MAX_VERTICES};

/// Canonical representative of a graph together with the relabelling that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub canon: Graph,
    /// `perm[v]` is the label vertex `v` receives in `canon`.
    pub perm: Vec<usize>,
}

pub fn canonicalize(g: &Graph) -> CanonicalForm {
    let mut s = Search::new(g.rows());
    s.run();
    let n = g.n();
    CanonicalForm {
        canon: Graph::from_rows_unchecked(&s.best_rows[..n]),
        perm: s.best_lab[..n].iter().map(|&l| l as usize).collect(),
    }
}

/// Canonical representative only.
pub fn canonical_graph(g: &Graph) -> Graph {
    let mut s = Search::new(g.rows());
    s.run();
    Graph::from_rows_unchecked(&s.best_rows[..g.n()])
}

/// Canonical adjacency rows of a raw row slice. Used by the enumerator's hot loop.
pub(crate) fn canonical_rows(rows: &[u64]) -> [u64; MAX_VERTICES] {
    let mut s = Search::new(rows);
    s.run();
    s.best_rows
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence() {
        return false;
    }
    canonical_graph(g) == canonical_graph(h)
}

#[derive(Clone, Copy)]
struct Partition {
    cells: [u64; MAX_VERTICES],
    len: usize,
}

impl Partition {
    fn is_discrete(&self, n: usize) -> bool {
        self.len == n
    }
}

const MAX_AUTOS: usize = 48;

struct Search {
    n: usize,
    adj: [u64; MAX_VERTICES],
    path: [u8; MAX_VERTICES],
    first_path: [u8; MAX_VERTICES],
    first_rows: [u64; MAX_VERTICES],
    first_inv: [u8; MAX_VERTICES],
    best_path: [u8; MAX_VERTICES],
    best_rows: [u64; MAX_VERTICES],
    best_lab: [u8; MAX_VERTICES],
    best_inv: [u8; MAX_VERTICES],
    have_leaf: bool,
    autos: Vec<[u8; MAX_VERTICES]>,
}

/// Marker for "no jump requested".
const NO_JUMP: usize = usize::MAX;

impl Search {
    fn new(rows: &[u64]) -> Self {
        let n = rows.len();
        let mut adj = [0u64; MAX_VERTICES];
        adj[..n].copy_from_slice(rows);
        Search {
            n,
            adj,
            path: [0; MAX_VERTICES],
            first_path: [0; MAX_VERTICES],
            first_rows: [0; MAX_VERTICES],
            first_inv: [0; MAX_VERTICES],
            best_path: [0; MAX_VERTICES],
            best_rows: [0; MAX_VERTICES],
            best_lab: [0; MAX_VERTICES],
            best_inv: [0; MAX_VERTICES],
            have_leaf: false,
            autos: Vec::new(),
        }
    }

    fn run(&mut self) {
        if self.n == 0 {
            return;
        }
        let all = crate::graph::full_set(self.n);
        let mut root = Partition {
            cells: [0; MAX_VERTICES],
            len: 1,
        };
        root.cells[0] = all;
        self.refine(&mut root, all);
        self.search(&root, 0);
    }

    /// Refines `p` to the coarsest equitable refinement, starting from splitter `first`.
    fn refine(&self, p: &mut Partition, first: u64) {
        let mut queue = [0u64; 4 * MAX_VERTICES];
        let (mut head, mut tail) = (0usize, 1usize);
        queue[0] = first;
        while head < tail && p.len < self.n {
            let w = queue[head];
            head += 1;
            let mut i = 0;
            while i < p.len {
                let x = p.cells[i];
                if x & (x - 1) == 0 {
                    i += 1;
                    continue;
                }
                // group the vertices of x by their number of neighbours in w
                let mut groups: [(u32, u64); MAX_VERTICES] = [(0, 0); MAX_VERTICES];
                let mut ng = 0usize;
                for v in bits(x) {
                    let c = (self.adj[v] & w).count_ones();
                    match groups[..ng].iter_mut().find(|g| g.0 == c) {
                        Some(g) => g.1 |= 1 << v,
                        None => {
                            groups[ng] = (c, 1 << v);
                            ng += 1;
                        }
                    }
                }
                if ng == 1 {
                    i += 1;
                    continue;
                }
                groups[..ng].sort_unstable_by_key(|g| g.0);
                // make room for ng - 1 extra cells after position i
                p.cells.copy_within(i + 1..p.len, i + ng);
                for (k, g) in groups[..ng].iter().enumerate() {
                    p.cells[i + k] = g.1;
                    if tail < queue.len() {
                        queue[tail] = g.1;
                        tail += 1;
                    }
                }
                p.len += ng - 1;
                i += ng;
            }
        }
    }

    fn search(&mut self, p: &Partition, depth: usize) -> usize {
        if p.is_discrete(self.n) {
            return self.leaf(p, depth);
        }
        let t = (0..p.len).find(|&i| p.cells[i].count_ones() > 1).expect("non-discrete");
        let cell = p.cells[t];
        let mut orbit_autos = usize::MAX;
        let mut orbit_min = [0u8; MAX_VERTICES];
        for w in bits(cell) {
            if self.autos.len() != orbit_autos {
                orbit_autos = self.autos.len();
                self.orbits(depth, &mut orbit_min);
            }
            if orbit_min[w] as usize != w {
                continue;
            }
            self.path[depth] = w as u8;
            let mut child = *p;
            child.cells.copy_within(t + 1..child.len, t + 2);
            child.cells[t] = 1 << w;
            child.cells[t + 1] = cell & !(1 << w);
            child.len += 1;
            self.refine(&mut child, 1 << w);
            let r = self.search(&child, depth + 1);
            if r < depth {
                return r;
            }
        }
        NO_JUMP
    }

    /// Orbit minima of the group generated by stored automorphisms fixing `path[..depth]`.
    fn orbits(&self, depth: usize, min: &mut [u8; MAX_VERTICES]) {
        for (v, m) in min.iter_mut().enumerate().take(self.n) {
            *m = v as u8;
        }
        let prefix = &self.path[..depth];
        let mut changed = true;
        while changed {
            changed = false;
            for a in &self.autos {
                if prefix.iter().any(|&v| a[v as usize] != v) {
                    continue;
                }
                for v in 0..self.n {
                    let u = a[v] as usize;
                    let (mv, mu) = (min[v], min[u]);
                    if mv != mu {
                        let m = mv.min(mu);
                        min[v] = m;
                        min[u] = m;
                        changed = true;
                    }
                }
            }
        }
        // path compression to true minima
        for v in 0..self.n {
            let mut m = min[v] as usize;
            while min[m] as usize != m {
                m = min[m] as usize;
            }
            min[v] = m as u8;
        }
    }

    fn leaf(&mut self, p: &Partition, depth: usize) -> usize {
        let n = self.n;
        let mut lab = [0u8; MAX_VERTICES];
        let mut inv = [0u8; MAX_VERTICES];
        for i in 0..n {
            let v = p.cells[i].trailing_zeros() as usize;
            lab[v] = i as u8;
            inv[i] = v as u8;
        }
        let mut rows = [0u64; MAX_VERTICES];
        for i in 0..n {
            let v = inv[i] as usize;
            let mut r = 0u64;
            for u in bits(self.adj[v]) {
                r |= 1 << lab[u];
            }
            rows[i] = r;
        }
        if !self.have_leaf {
            self.have_leaf = true;
            self.first_path = self.path;
            self.first_rows = rows;
            self.first_inv = inv;
            self.best_path = self.path;
            self.best_rows = rows;
            self.best_lab = lab;
            self.best_inv = inv;
            return NO_JUMP;
        }
        if rows[..n] == self.first_rows[..n] {
            self.record_auto(&lab, &self.first_inv.clone());
            return common_prefix(&self.first_path[..depth], &self.path[..depth]);
        }
        match rows[..n].cmp(&self.best_rows[..n]) {
            std::cmp::Ordering::Less => {
                self.best_path = self.path;
                self.best_rows = rows;
                self.best_lab = lab;
                self.best_inv = inv;
                NO_JUMP
            }
            std::cmp::Ordering::Equal => {
                self.record_auto(&lab, &self.best_inv.clone());
                common_prefix(&self.best_path[..depth], &self.path[..depth])
            }
            std::cmp::Ordering::Greater => NO_JUMP,
        }
    }

    fn record_auto(&mut self, lab: &[u8; MAX_VERTICES], other_inv: &[u8; MAX_VERTICES]) {
        if self.autos.len() >= MAX_AUTOS {
            return;
        }
        let mut a = [0u8; MAX_VERTICES];
        for v in 0..self.n {
            a[v] = other_inv[lab[v] as usize];
        }
        self.autos.push(a);
    }
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
