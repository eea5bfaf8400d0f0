//! Line graphs and the graphs whose line graphs are mock threshold.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_graph;
use crate::classes::TypeReading;
use crate::enumerate::{levels, MAX_PACKED};
use crate::error::{GraphError, Result};
use crate::graph::{bits, Graph, VertexSet, MAX_VERTICES};
use crate::graph6::encode_graph6;
use crate::mt::{is_minimal_non_mt, is_mt};
use crate::subgraph::{contains, ContainmentMode};

/// Vertices are the edges of `g` in `(i, j)`-sorted order, adjacent when they share an endpoint.
pub fn line_graph(g: &Graph) -> Result<Graph> {
    let edges = g.edges();
    if edges.len() > MAX_VERTICES {
        return Err(GraphError::Capacity(edges.len()));
    }
    let mut l = Graph::new(edges.len());
    for (a, &(u, v)) in edges.iter().enumerate() {
        for (b, &(x, y)) in edges.iter().enumerate().skip(a + 1) {
            if u == x || u == y || v == x || v == y {
                l.add_edge(a, b);
            }
        }
    }
    Ok(l)
}

fn line_is_mt(g: &Graph) -> bool {
    line_graph(g).map(|l| is_mt(&l)).unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineMethod {
    /// Build the line graph and recognise it.
    Construct,
    /// Long cycles and the forbidden catalog as subgraphs.
    Forbidden,
    /// Decompose the root into paths and one typed component.
    Structure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootType {
    LinearForest,
    /// `pendants` lists `(core vertex, pendant count)` of the reduced component; `extended` counts
    /// vertices removed while shortening hanging paths.
    Typed {
        number: u8,
        core: Vec<usize>,
        pendants: Vec<(usize, usize)>,
        extended: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineVerdict {
    pub member: bool,
    pub root_type: Option<RootType>,
}

/// Minimal graphs (under subgraphs) whose line graph is not mock threshold, apart from cycles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LineForbiddenCatalog {
    pub max_n: usize,
    pub sporadic: Vec<Graph>,
}

impl LineForbiddenCatalog {
    pub fn to_graph6_text(&self) -> String {
        self.sporadic.iter().map(|g| format!("{}\n", encode_graph6(g))).collect()
    }
}

pub fn mt_line_check(g: &Graph, method: LineMethod, catalog: Option<&LineForbiddenCatalog>) -> Result<LineVerdict> {
    let plain = |member| LineVerdict { member, root_type: None };
    match method {
        LineMethod::Construct => Ok(plain(is_mt(&line_graph(g)?))),
        LineMethod::Forbidden => {
            let catalog = catalog.ok_or_else(|| GraphError::Precondition("forbidden method needs a catalog".into()))?;
            let hit = has_cycle_at_least(g, 5)
                || catalog.sporadic.iter().any(|f| contains(g, f, ContainmentMode::Subgraph));
            Ok(plain(!hit))
        }
        LineMethod::Structure => {
            let root_type = root_structure(g);
            Ok(LineVerdict { member: root_type.is_some(), root_type })
        }
    }
}

/// Whether `g` has a cycle (not necessarily induced) of length at least `len`.
pub fn has_cycle_at_least(g: &Graph, len: usize) -> bool {
    fn walk(g: &Graph, start: usize, at: usize, used: VertexSet, depth: usize, len: usize) -> bool {
        if depth + 1 >= len && g.has_edge(at, start) {
            return true;
        }
        bits(g.neighbors(at) & !used).any(|w| w > start && walk(g, start, w, used | 1 << w, depth + 1, len))
    }
    let core = g.k_core_set(2);
    bits(core).any(|s| walk(g, s, s, 1 << s | !core, 0, len))
}

fn is_path_component(g: &Graph, c: VertexSet) -> bool {
    let h = g.induced(c);
    h.max_degree() <= 2 && h.edge_count() + 1 == h.n()
}

/// Repeatedly deletes leaves whose neighbour has degree 2. Returns the surviving vertex set.
fn reduce_hanging_paths(g: &Graph, within: VertexSet) -> VertexSet {
    let mut alive = within;
    loop {
        let deg = |v: usize| (g.neighbors(v) & alive).count_ones();
        let leaf = bits(alive).find(|&v| {
            deg(v) == 1 && deg((g.neighbors(v) & alive).trailing_zeros() as usize) == 2
        });
        match leaf {
            Some(v) => alive &= !(1 << v),
            None => return alive,
        }
    }
}

/// The single non-path component, or `Ok(None)` for a linear forest; `Err` when several.
fn non_path_component(g: &Graph) -> std::result::Result<Option<VertexSet>, ()> {
    let others: Vec<VertexSet> = g.components().into_iter().filter(|&c| !is_path_component(g, c)).collect();
    match others.as_slice() {
        [] => Ok(None),
        [c] => Ok(Some(*c)),
        _ => Err(()),
    }
}

pub fn root_structure(g: &Graph) -> Option<RootType> {
    root_structure_with(g, TypeReading::Corrected)
}

/// Type numbers 1 to 8 follow the published list; under [`TypeReading::Corrected`] type 3 allows a
/// pendant on each of the two other triangle vertices, type 8 allows one pendant on one vertex
/// other than the centre, and type 9 is a triangle whose pendant vertex at one corner carries
/// exactly two leaves.
pub fn root_structure_with(g: &Graph, reading: TypeReading) -> Option<RootType> {
    let comp = match non_path_component(g) {
        Ok(None) => return Some(RootType::LinearForest),
        Ok(Some(c)) => c,
        Err(()) => return None,
    };
    let reduced = reduce_hanging_paths(g, comp);
    let r = g.induced(reduced);
    let labels: Vec<usize> = bits(reduced).collect();
    let leaves: VertexSet = (0..r.n()).filter(|&v| r.degree(v) == 1).fold(0, |s, v| s | 1 << v);
    let core = r.vertex_set() & !leaves;
    let pend = |v: usize| (r.neighbors(v) & leaves).count_ones() as usize;
    let c = r.induced(core);
    let cv: Vec<usize> = bits(core).collect();
    let number = core_type_number(&r, &c, &cv, &pend, reading)?;
    Some(RootType::Typed {
        number,
        core: cv.iter().map(|&v| labels[v]).collect(),
        pendants: cv.iter().filter(|&&v| pend(v) > 0).map(|&v| (labels[v], pend(v))).collect(),
        extended: (comp & !reduced).count_ones() as usize,
    })
}

fn core_type_number(
    r: &Graph,
    c: &Graph,
    cv: &[usize],
    pend: &dyn Fn(usize) -> usize,
    reading: TypeReading,
) -> Option<u8> {
    let corrected = reading == TypeReading::Corrected;
    // pendant counts indexed like the vertices of `c`
    let p: Vec<usize> = cv.iter().map(|&v| pend(v)).collect();
    let with: Vec<usize> = (0..c.n()).filter(|&i| p[i] > 0).collect();
    let degs = c.degree_sequence();
    if r.is_forest() {
        return match c.n() {
            1 => Some(1),
            2 if p.contains(&2) => Some(2),
            _ => None,
        };
    }
    match (c.n(), c.edge_count(), degs.as_slice()) {
        (3, 3, _) => {
            let mut s = p.clone();
            s.sort_unstable_by(|a, b| b.cmp(a));
            (s[1] <= 1 && (s[2] == 0 || corrected)).then_some(3)
        }
        (4, 4, [3, 2, 2, 1]) if corrected => {
            let tip = (0..4).find(|&i| c.degree(i) == 1)?;
            let hub = (0..4).find(|&i| c.degree(i) == 3)?;
            (p[tip] == 2 && with.iter().all(|&i| i == tip || i == hub)).then_some(9)
        }
        (4, 4, [2, 2, 2, 2]) => match with.as_slice() {
            [] | [_] => Some(4),
            [a, b] if c.has_edge(*a, *b) && (p[*a] <= 1 || p[*b] <= 1) => Some(4),
            _ => None,
        },
        (4, 5, _) => {
            let tri: Vec<usize> = (0..4).filter(|&i| c.degree(i) == 3).collect();
            let di: Vec<usize> = (0..4).filter(|&i| c.degree(i) == 2).collect();
            let on_tri: Vec<usize> = tri.iter().copied().filter(|&i| p[i] > 0).collect();
            let on_di: Vec<usize> = di.iter().copied().filter(|&i| p[i] > 0).collect();
            if on_tri.len() <= 1 && on_di.len() <= 1 && on_di.iter().all(|&i| p[i] <= 1) {
                Some(5)
            } else if on_tri.is_empty() && on_di.len() == 1 && p[on_di[0]] == 2 {
                Some(6)
            } else {
                None
            }
        }
        (4, 6, _) => (with.len() <= 1 && with.iter().all(|&i| p[i] <= 2)).then_some(7),
        (5, 6, [4, 2, 2, 2, 2]) => {
            let centre = (0..5).find(|&i| c.degree(i) == 4)?;
            let bowtie = (0..5).filter(|&i| i != centre).all(|i| c.degree(i) == 2)
                && c.delete_vertex(centre).edge_count() == 2;
            let off: Vec<usize> = with.iter().copied().filter(|&i| i != centre).collect();
            let ok = match off.as_slice() {
                [] => true,
                [i] => corrected && p[*i] == 1,
                _ => false,
            };
            (bowtie && ok).then_some(8)
        }
        _ => None,
    }
}

/// Graphs on at most `max_n` vertices, without isolated vertices and not a cycle, whose line
/// graph is not mock threshold while the line graph of every proper subgraph is. Only graphs
/// whose line graph is mock threshold are extended during enumeration.
pub fn search_line_forbidden(max_n: usize) -> Result<LineForbiddenCatalog> {
    if !(2..=MAX_PACKED).contains(&max_n) {
        return Err(GraphError::Precondition(format!("line search order {max_n} outside 2..=11")));
    }
    let filter = |g: &Graph| line_is_mt(g);
    let lv = levels(max_n, Some(&filter));
    let mut sporadic: Vec<Graph> = lv
        .par_iter()
        .flat_map_iter(|level| level.graphs())
        .filter(|g| {
            g.min_degree() >= 1
                && !(g.n() >= 5 && g.is_connected() && (0..g.n()).all(|v| g.degree(v) == 2))
                && line_graph(g).map(|l| is_minimal_non_mt(&l)).unwrap_or(false)
        })
        .collect();
    sporadic.sort_by_cached_key(|g| (g.n(), encode_graph6(g)));
    Ok(LineForbiddenCatalog { max_n, sporadic })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdSide {
    /// `g` is the root: decide whether `L(g)` is threshold.
    Root,
    /// `g` itself: decide whether it is a threshold line graph.
    Line,
}

pub fn threshold_line_checks(g: &Graph, side: ThresholdSide) -> bool {
    match side {
        ThresholdSide::Root => {
            let big: Vec<VertexSet> = g.components().into_iter().filter(|&c| g.induced(c).edge_count() >= 2).collect();
            match big.as_slice() {
                [] => true,
                [c] => {
                    let h = g.induced(*c);
                    (0..h.n()).any(|a| h.delete_vertex(a).edge_count() <= 1)
                }
                _ => false,
            }
        }
        ThresholdSide::Line => {
            let h = g.induced(bits(g.vertex_set()).filter(|&v| g.degree(v) > 0).fold(0, |s, v| s | 1 << v));
            let all = h.vertex_set();
            h.is_clique(all) || (0..h.n()).any(|v| (1..=2).contains(&h.degree(v)) && h.is_clique(all & !(1 << v)))
        }
    }
}

/// Canonical line graphs of connected roots with at most `max_edges` edges.
pub fn small_line_graphs(max_edges: usize) -> BTreeSet<Graph> {
    let max_n = (max_edges + 1).min(MAX_PACKED);
    let filter = move |g: &Graph| g.edge_count() <= max_edges;
    levels(max_n, Some(&filter))
        .iter()
        .flat_map(|level| level.graphs())
        .filter(|h| h.edge_count() <= max_edges && h.is_connected() && h.edge_count() > 0)
        .map(|h| canonical_graph(&line_graph(&h).expect("few edges")))
        .collect()
}

/// Whether every component of `g` is the line graph of a connected root, using a table from
/// [`small_line_graphs`] that covers the largest component.
pub fn is_line_graph_by_table(g: &Graph, table: &BTreeSet<Graph>) -> bool {
    g.components().into_iter().all(|c| table.contains(&canonical_graph(&g.induced(c))))
}

fn hang(root: &mut Graph, at: usize, count: usize) {
    for _ in 0..count {
        let p = root.add_vertex(1 << at);
        root.add_vertex(1 << p);
    }
}

/// Roots of the templates: every maximal root family with each pendant path of length two and
/// `k` of them at the hub vertex 0.
fn template_roots(k: usize, reading: TypeReading) -> Vec<Graph> {
    let mut out = Vec::new();
    // K4 - e with divalent 1 and 3
    let mut a = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]);
    hang(&mut a, 0, k);
    hang(&mut a, 1, 1);
    out.push(a);
    // bowtie centred at 0
    let mut b = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]);
    hang(&mut b, 0, k);
    if reading == TypeReading::Corrected {
        hang(&mut b, 1, 1);
    }
    out.push(b);
    let mut c = Graph::complete(4);
    hang(&mut c, 0, 2);
    out.push(c);
    if reading == TypeReading::Corrected {
        let mut d = Graph::complete(3);
        hang(&mut d, 0, k);
        hang(&mut d, 1, 1);
        hang(&mut d, 2, 1);
        out.push(d);
        let mut e = Graph::complete(3);
        hang(&mut e, 0, k);
        let tip = e.add_vertex(1);
        hang(&mut e, tip, 2);
        out.push(e);
    }
    out
}

/// Template graphs whose hub cliques have at least `clique_size` vertices, apart from the
/// fixed one built on a 5-clique.
pub fn line_templates(clique_size: usize, reading: TypeReading) -> Vec<Graph> {
    template_roots(clique_size, reading).iter().map(|r| line_graph(r).expect("small root")).collect()
}

/// Linear forest, or exactly one non-path component that shortens (by deleting leaves next to
/// degree-2 vertices) to a connected induced subgraph of a template.
pub fn mt_line_template_check(g: &Graph) -> bool {
    mt_line_template_check_with(g, TypeReading::Corrected)
}

pub fn mt_line_template_check_with(g: &Graph, reading: TypeReading) -> bool {
    let comp = match non_path_component(g) {
        Ok(None) => return true,
        Ok(Some(c)) => c,
        Err(()) => return false,
    };
    let core = g.induced(reduce_hanging_paths(g, comp));
    line_templates(core.n(), reading).iter().any(|t| contains(t, &core, ContainmentMode::Induced))
}
