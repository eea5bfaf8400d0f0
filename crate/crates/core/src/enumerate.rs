//! Isomorph-free generation of all graphs of a given order by canonical augmentation.
//!
//! Each canonical graph `P` on `m` vertices is extended by a new vertex `v` joined to every
//! subset of `V(P)`. A child `C` is kept only when `v` is a canonical choice of deleted vertex:
//! `v` maximises a cheap vertex invariant, and among the vertices tying with it `C - v` has the
//! least canonical form. That makes `P` the unique parent of `C`; duplicates from the same parent
//! are removed by sorting. Graphs are stored as packed upper triangles in graph6 bit order, so
//! sorting packed codes sorts by canonical graph6 encoding.

use std::io::BufRead;
use std::ops::Range;

use rayon::prelude::*;

use crate::canon::canonical_rows;
use crate::error::{GraphError, Result};
use crate::graph::{bits, compress, full_set, Graph, MAX_VERTICES};
use crate::graph6::decode_graph6;

/// Largest order whose graphs fit a packed 64-bit code.
pub const MAX_PACKED: usize = 11;
/// Largest order accepted by the enumerator.
pub const MAX_ENUMERATE: usize = 12;

/// Packs the upper triangle of `g` (n ≤ 11) in graph6 bit order, first bit most significant.
pub fn pack(g: &Graph) -> u64 {
    pack_rows(g.rows())
}

fn pack_rows(rows: &[u64]) -> u64 {
    let n = rows.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut code = 0u64;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if rows[j] >> i & 1 == 1 {
                code |= 1 << (total - 1 - k);
            }
            k += 1;
        }
    }
    code
}

pub fn unpack(n: usize, code: u64) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - k) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    g
}

/// All canonical graphs of one order, in generation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub n: usize,
    pub codes: Vec<u64>,
}

impl Level {
    pub fn first() -> Level {
        Level { n: 1, codes: vec![0] }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn graph(&self, i: usize) -> Graph {
        unpack(self.n, self.codes[i])
    }

    pub fn graphs(&self) -> impl Iterator<Item = Graph> + '_ {
        self.codes.iter().map(move |&c| unpack(self.n, c))
    }
}

/// Optional hereditary filter: parents failing it are not extended.
pub type ParentFilter<'a> = &'a (dyn Fn(&Graph) -> bool + Sync);

fn vertex_key(rows: &[u64], u: usize) -> u64 {
    let nu = rows[u];
    let mut nbr_deg = 0u64;
    let mut tri = 0u64;
    for w in bits(nu) {
        nbr_deg += rows[w].count_ones() as u64;
        tri += (nu & rows[w]).count_ones() as u64;
    }
    (nu.count_ones() as u64) << 40 | nbr_deg << 20 | tri
}

/// Calls `f` with the canonical rows of every accepted child of a canonical parent.
/// The same child may be reported more than once.
fn for_each_child(parent: &Graph, mut f: impl FnMut(&[u64])) {
    let m = parent.n();
    assert!(m < MAX_VERTICES, "parent too large to extend");
    let n = m + 1;
    let v = m;
    let prow = parent.rows();
    let pdeg: Vec<u32> = prow.iter().map(|r| r.count_ones()).collect();
    let mut rows = [0u64; MAX_VERTICES];
    for mask in 0..(1u64 << m) {
        let dv = mask.count_ones();
        // v must have maximum degree
        if (0..m).any(|u| pdeg[u] + (mask >> u & 1) as u32 > dv) {
            continue;
        }
        for u in 0..m {
            rows[u] = prow[u] | (mask >> u & 1) << v;
        }
        rows[v] = mask;
        let rows = &rows[..n];
        let kv = vertex_key(rows, v);
        let mut ties = 0u64;
        let mut beaten = false;
        for u in 0..m {
            if pdeg[u] + (mask >> u & 1) as u32 != dv {
                continue;
            }
            let ku = vertex_key(rows, u);
            if ku > kv {
                beaten = true;
                break;
            }
            if ku == kv {
                ties |= 1 << u;
            }
        }
        if beaten {
            continue;
        }
        if ties != 0 && !least_deletion(rows, ties, prow) {
            continue;
        }
        f(&canonical_rows(rows)[..n]);
    }
}

/// Canonical children of a canonical parent (order ≤ 10), as sorted distinct packed codes.
pub fn extend_parent(parent: &Graph) -> Vec<u64> {
    assert!(parent.n() < MAX_PACKED, "child codes exceed 64 bits");
    let mut out = Vec::new();
    for_each_child(parent, |rows| out.push(pack_rows(rows)));
    out.sort_unstable();
    out.dedup();
    out
}

/// Canonical children of a canonical parent of any order, sorted by graph6 encoding.
pub fn children(parent: &Graph) -> Vec<Graph> {
    let mut out = Vec::new();
    for_each_child(parent, |rows| out.push(Graph::from_rows_unchecked(rows)));
    out.sort_by_cached_key(crate::graph6::encode_graph6);
    out.dedup();
    out
}

/// True when no tied vertex `u` gives `canon(C - u)` below the parent.
fn least_deletion(rows: &[u64], ties: u64, parent: &[u64]) -> bool {
    let n = rows.len();
    let mut sub = [0u64; MAX_VERTICES];
    for u in bits(ties) {
        let keep = full_set(n) & !(1 << u);
        let mut k = 0;
        for w in bits(keep) {
            sub[k] = compress(rows[w], keep);
            k += 1;
        }
        let c = canonical_rows(&sub[..n - 1]);
        if c[..n - 1] < *parent {
            return false;
        }
    }
    true
}

/// Extends every parent in `range` that passes `filter`, concatenating per-parent children.
pub fn extend_range(parents: &Level, range: Range<usize>, filter: Option<ParentFilter>) -> Vec<u64> {
    range
        .into_par_iter()
        .map(|i| {
            let p = parents.graph(i);
            match filter {
                Some(f) if !f(&p) => Vec::new(),
                _ => extend_parent(&p),
            }
        })
        .collect::<Vec<_>>()
        .concat()
}

pub fn next_level(parents: &Level, filter: Option<ParentFilter>) -> Level {
    assert!(parents.n < MAX_PACKED, "level codes exceed 64 bits");
    Level {
        n: parents.n + 1,
        codes: extend_range(parents, 0..parents.len(), filter),
    }
}

/// Levels 1..=max_n; `filter` prunes which graphs are extended.
pub fn levels(max_n: usize, filter: Option<ParentFilter>) -> Vec<Level> {
    assert!((1..=MAX_PACKED).contains(&max_n), "order out of range");
    let mut out = vec![Level::first()];
    while out.len() < max_n {
        let next = next_level(out.last().expect("nonempty"), filter);
        out.push(next);
    }
    out
}

/// One representative per isomorphism class of graphs on `n` vertices, in deterministic order.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(1..=MAX_ENUMERATE).contains(&n) {
        return Err(GraphError::Precondition(format!("enumeration order {n} outside 1..=12")));
    }
    if n <= MAX_PACKED {
        return Ok(levels(n, None).pop().expect("nonempty").graphs().collect());
    }
    let parents = levels(n - 1, None).pop().expect("nonempty");
    Ok(parents.graphs().flat_map(|p| children(&p)).collect())
}

/// Contiguous parent-index ranges splitting `parent_count` parents into `shards` pieces.
pub fn shard_ranges(parent_count: usize, shards: usize) -> Vec<Range<usize>> {
    let shards = shards.clamp(1, parent_count.max(1));
    let base = parent_count / shards;
    let extra = parent_count % shards;
    let mut start = 0;
    (0..shards)
        .map(|s| {
            let len = base + usize::from(s < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

/// Reads graph6 lines, canonicalises them and returns the distinct classes sorted by
/// (order, canonical encoding). Blank lines are skipped; errors name the 1-based line number.
pub fn ingest_graph6<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut seen = std::collections::BTreeSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let g = decode_graph6(text).map_err(|e| match e {
            GraphError::Graph6(msg) => GraphError::Graph6(format!("line {}: {msg}", i + 1)),
            other => other,
        })?;
        let c = crate::canon::canonical_graph(&g);
        seen.insert((c.n(), crate::graph6::encode_graph6(&c), c));
    }
    Ok(seen.into_iter().map(|(_, _, g)| g).collect())
}
