use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::graph::{bits, Graph, VertexSet};

/// Shape of a bipartite graph with respect to mock threshold membership.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BipartiteMTShape {
    Forest,
    /// One component has 2-core `K_{2,s}`; `tree_sizes` lists, per core vertex, the number of
    /// vertices in the trees hanging from it.
    K2sWithTrees { s: usize, tree_sizes: Vec<(usize, usize)> },
    NotBipartiteMT,
}

pub fn classify_bipartite_mt(g: &Graph) -> Result<BipartiteMTShape> {
    if !g.is_bipartite() {
        return Err(GraphError::Precondition("graph is not bipartite".into()));
    }
    if g.is_forest() {
        return Ok(BipartiteMTShape::Forest);
    }
    let core = g.k_core_set(2);
    // a forest's 2-core is empty, so every vertex of the core lies in a cyclic component
    let cyclic: Vec<VertexSet> = g.components().into_iter().filter(|c| c & core != 0).collect();
    if cyclic.len() != 1 {
        return Ok(BipartiteMTShape::NotBipartiteMT);
    }
    let Some(s) = k2s_size(g, core) else {
        return Ok(BipartiteMTShape::NotBipartiteMT);
    };
    let component = cyclic[0];
    let tree_sizes = bits(core)
        .map(|c| {
            let hanging = g.reach(c, (component & !core) | 1 << c) & !(1 << c);
            (c, hanging.count_ones() as usize)
        })
        .collect();
    Ok(BipartiteMTShape::K2sWithTrees { s, tree_sizes })
}

/// `s` when `g` restricted to `set` is `K_{2,s}` with `s ≥ 2`.
pub(crate) fn k2s_size(g: &Graph, set: VertexSet) -> Option<usize> {
    let h = g.induced(set);
    let side = h.bipartition()?;
    let other = h.vertex_set() & !side;
    let (a, b) = (side.count_ones() as usize, other.count_ones() as usize);
    let complete = h.edge_count() == a * b;
    let s = if a == 2 { b } else if b == 2 { a } else { return None };
    (complete && s >= 2 && h.is_connected()).then_some(s)
}
