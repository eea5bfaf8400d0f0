//! Structure of claw-free mock threshold graphs.
//!
//! Every component is a path, except possibly one component built from a 2-core with at most one
//! path hanging off each core vertex whose core neighbourhood is a clique. The complement `H` of the
//! 2-core falls into one of nine shapes, matched here by assigning roles to the vertices of `H`,
//! rebuilding the adjacency those roles imply and comparing it with `H` exactly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::bipartite::{classify_bipartite_mt, BipartiteMTShape};
use super::TypeReading;
use crate::error::{GraphError, Result};
use crate::graph::{bits, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CoreType {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
}

impl CoreType {
    pub const ALL: [CoreType; 9] = [
        CoreType::I,
        CoreType::II,
        CoreType::III,
        CoreType::IV,
        CoreType::V,
        CoreType::VI,
        CoreType::VII,
        CoreType::VIII,
        CoreType::IX,
    ];
}

impl fmt::Display for CoreType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CoreType {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<CoreType> {
        CoreType::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| GraphError::Parameters(format!("unknown type {s:?}, expected I..IX")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClawFreeMTLabel {
    LinearForest,
    /// `hanging_paths` lists `(core vertex, number of path vertices)`.
    Structured {
        core_type: CoreType,
        hanging_paths: Vec<(usize, usize)>,
    },
    NotInClass(String),
}

impl ClawFreeMTLabel {
    pub fn is_member(&self) -> bool {
        !matches!(self, ClawFreeMTLabel::NotInClass(_))
    }
}

fn is_path_component(g: &Graph, c: VertexSet) -> bool {
    let h = g.induced(c);
    h.max_degree() <= 2 && h.edge_count() + 1 == h.n()
}

pub fn classify_clawfree_mt(g: &Graph) -> ClawFreeMTLabel {
    classify_clawfree_mt_with(g, TypeReading::Corrected)
}

pub fn classify_clawfree_mt_with(g: &Graph, reading: TypeReading) -> ClawFreeMTLabel {
    let not = |why: &str| ClawFreeMTLabel::NotInClass(why.to_string());
    let others: Vec<VertexSet> = g.components().into_iter().filter(|&c| !is_path_component(g, c)).collect();
    let comp = match others.as_slice() {
        [] => return ClawFreeMTLabel::LinearForest,
        [c] => *c,
        _ => return not("more than one component is not a path"),
    };
    let core = g.k_core_set(2) & comp;
    if core == 0 {
        return not("a tree component has a vertex of degree at least 3");
    }
    let outside = comp & !core;
    if bits(outside).any(|v| g.degree(v) > 2) {
        return not("a hanging tree is not a path");
    }
    let mut hanging_paths = Vec::new();
    for x in bits(core) {
        let hang = g.neighbors(x) & outside;
        match hang.count_ones() {
            0 => {}
            1 => {
                if !g.is_clique(g.neighbors(x) & core) {
                    return not("a path hangs off a vertex whose core neighbourhood is not a clique");
                }
                let start = hang.trailing_zeros() as usize;
                hanging_paths.push((x, g.reach(start, outside).count_ones() as usize));
            }
            _ => return not("two paths hang off the same core vertex"),
        }
    }
    let h = g.induced(core).complement();
    match match_core_type_with(&h, reading) {
        Some(core_type) => ClawFreeMTLabel::Structured { core_type, hanging_paths },
        None => not("the complement of the 2-core matches no type"),
    }
}

/// First type, in order I to IX, whose description `h` meets.
pub fn match_core_type(h: &Graph) -> Option<CoreType> {
    match_core_type_with(h, TypeReading::Corrected)
}

pub fn match_core_type_with(h: &Graph, reading: TypeReading) -> Option<CoreType> {
    CoreType::ALL.into_iter().find(|&t| matches_type(h, t, reading))
}

pub fn matches_type(h: &Graph, t: CoreType, reading: TypeReading) -> bool {
    let codeg_ok = (0..h.n()).all(|v| h.codegree(v) >= 2);
    match t {
        CoreType::I => h.n() >= 3 && h.is_forest() && codeg_ok,
        CoreType::II => {
            codeg_ok
                && h.is_bipartite()
                && matches!(classify_bipartite_mt(h), Ok(BipartiteMTShape::K2sWithTrees { .. }))
        }
        CoreType::III => is_type_iii(h, reading) && codeg_ok,
        CoreType::IV => (0..h.n()).any(|w| is_type_iv_at(h, w)),
        _ => (0..h.n()).any(|v| bits(h.neighbors(v)).any(|w| is_two_apex_type(h, t, v, w, reading))),
    }
}

fn set_len(s: VertexSet) -> usize {
    s.count_ones() as usize
}

fn join(e: &mut Graph, a: VertexSet, b: VertexSet) {
    for x in bits(a) {
        for y in bits(b) {
            if x != y {
                e.add_edge(x, y);
            }
        }
    }
}

fn is_type_iii(h: &Graph, reading: TypeReading) -> bool {
    let mut triangle = None;
    for (u, v) in h.edges() {
        for w in bits(h.neighbors(u) & h.neighbors(v)) {
            if w > v {
                if triangle.is_some() {
                    return false;
                }
                triangle = Some((1u64 << u) | 1 << v | 1 << w);
            }
        }
    }
    let Some(t) = triangle else { return false };
    let rest = h.vertex_set() & !t;
    if bits(rest).any(|u| (h.neighbors(u) & t).count_ones() != 1) {
        return false;
    }
    let mut e = Graph::new(h.n());
    join(&mut e, t, t);
    let mut with_pendants = 0;
    for c in bits(t) {
        let attached = h.neighbors(c) & rest;
        join(&mut e, 1 << c, attached);
        if attached != 0 {
            with_pendants += 1;
        }
    }
    if with_pendants < 2 {
        return false;
    }
    if e == *h {
        return true;
    }
    if reading == TypeReading::AsStated {
        return false;
    }
    // the remaining edges must form one star whose leaves share a triangle vertex
    bits(rest).any(|z| {
        let leaves = h.neighbors(z) & rest;
        let Some(first) = bits(leaves).next() else { return false };
        let mut star = e;
        join(&mut star, 1 << z, leaves);
        star == *h && bits(leaves).all(|l| h.neighbors(l) & t == h.neighbors(first) & t)
    })
}

fn is_type_iv_at(h: &Graph, w: usize) -> bool {
    let nw = h.neighbors(w);
    let leaves = bits(nw).filter(|&b| h.degree(b) == 1).fold(0u64, |s, b| s | 1 << b);
    let z = h.vertex_set() & !nw & !(1 << w);
    let rest = nw & !leaves;
    let x = bits(rest).filter(|&x| h.neighbors(x) & z == z).fold(0u64, |s, x| s | 1 << x);
    if leaves == 0 || set_len(z) < 2 || set_len(x) != 2 {
        return false;
    }
    let y = rest & !x;
    if set_len(y) < 2 {
        return false;
    }
    let (a, b) = (x.trailing_zeros() as usize, 63 - x.leading_zeros() as usize);
    [(a, b), (b, a)].into_iter().any(|(x1, x2)| {
        let y2 = h.neighbors(x2) & y;
        if h.neighbors(x1) & y != y || y2 == 0 {
            return false;
        }
        let mut e = Graph::new(h.n());
        join(&mut e, 1 << w, nw);
        join(&mut e, x, z);
        join(&mut e, 1 << x1, y);
        join(&mut e, 1 << x2, y2);
        e == *h
    })
}

/// Types V to IX: `v` and `w` adjacent, `X` their common neighbours, `Y` their common
/// non-neighbours, `A` and `B` their private neighbours.
fn is_two_apex_type(h: &Graph, t: CoreType, v: usize, w: usize, reading: TypeReading) -> bool {
    let (nv, nw) = (h.neighbors(v), h.neighbors(w));
    let x = nv & nw;
    let y = h.vertex_set() & !(nv | nw | 1 << v | 1 << w);
    let a = nv & !x & !(1 << w);
    let b = nw & !x & !(1 << v);
    let (r, s) = (set_len(x), set_len(y));
    if r < 2 {
        return false;
    }
    let mut base = Graph::new(h.n());
    join(&mut base, 1 << v, x | a | 1 << w);
    join(&mut base, 1 << w, x | b);
    match t {
        CoreType::V => s == 0 && set_len(a) >= 2 && set_len(b) >= 2 && base == *h,
        CoreType::VI => {
            s == 0
                && bits(a).any(|z| {
                    let p = h.neighbors(z) & b;
                    let (pn, alpha, beta) = (set_len(p), set_len(a) - 1, set_len(b) - set_len(p));
                    let mut e = base;
                    join(&mut e, 1 << z, p);
                    pn >= 1 && alpha >= 1 && (pn != 1 || beta >= 1) && e == *h
                })
        }
        CoreType::VII => {
            let mut e = base;
            join(&mut e, y, x);
            s == 1 && set_len(a) >= 1 && set_len(b) >= 1 && e == *h
        }
        CoreType::VIII => {
            if s != 1 {
                return false;
            }
            let q = h.neighbors(y.trailing_zeros() as usize) & b;
            let mut e = base;
            join(&mut e, y, x | q);
            set_len(q) >= 1 && set_len(a) >= 1 && e == *h
        }
        CoreType::IX => {
            let mut e = base;
            join(&mut e, y, x);
            let pendants = set_len(a) + set_len(b);
            let bound = match reading {
                TypeReading::AsStated => 2,
                TypeReading::Corrected => 1,
            };
            s >= 1 && (r != 2 || pendants > 0) && (s <= bound || r == 2) && e == *h
        }
        _ => false,
    }
}

/// Parameters for [`generate_clawfree_type`]; unused fields are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TypeParams {
    pub r: usize,
    pub s: usize,
    pub p: usize,
    pub q: usize,
    pub alpha: usize,
    pub beta: usize,
    /// Type IV: how many vertices of `Y` are adjacent to `x2`.
    pub x2_links: usize,
    /// Types I and II: sizes `k` of additional star components `K_{1,k}`.
    pub stars: Vec<usize>,
    /// Types II and III: pendant edges at each vertex of the `K_{2,s}` or the triangle.
    pub pendants: Vec<usize>,
    /// Type III: when nonzero, one more vertex on the first triangle vertex joined to this many
    /// new vertices on the second.
    pub cross_star: usize,
}

struct Builder {
    g: Graph,
}

impl Builder {
    fn new() -> Self {
        Builder { g: Graph::new(0) }
    }

    fn vertex(&mut self) -> Result<usize> {
        if self.g.n() >= crate::graph::MAX_VERTICES {
            return Err(GraphError::Capacity(self.g.n() + 1));
        }
        Ok(self.g.add_vertex(0))
    }

    fn vertices(&mut self, k: usize) -> Result<VertexSet> {
        (0..k).try_fold(0u64, |s, _| Ok(s | 1 << self.vertex()?))
    }

    fn join(&mut self, a: VertexSet, b: VertexSet) {
        join(&mut self.g, a, b);
    }

    fn leaves(&mut self, at: usize, k: usize) -> Result<()> {
        let l = self.vertices(k)?;
        self.join(1 << at, l);
        Ok(())
    }

    fn star(&mut self, k: usize) -> Result<()> {
        let c = self.vertex()?;
        self.leaves(c, k)
    }
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(GraphError::Parameters(what.to_string()))
    }
}

/// Builds the 2-core complement `H` of the requested type. The claw-free mock threshold graph is
/// `complement(H)`; parameters must satisfy the type's bounds and make that complement a 2-core.
pub fn generate_clawfree_type(t: CoreType, params: &TypeParams) -> Result<Graph> {
    let TypeParams { r, s, p, q, alpha, beta, x2_links, .. } = *params;
    let mut b = Builder::new();
    match t {
        CoreType::I => {
            for &k in &params.stars {
                b.star(k)?;
            }
            require(b.g.n() >= 3, "type I needs at least 3 vertices")?;
        }
        CoreType::II => {
            require(s >= 2, "type II needs s >= 2")?;
            let two = b.vertices(2)?;
            let side = b.vertices(s)?;
            b.join(two, side);
            for (v, &k) in bits(two | side).zip(&params.pendants) {
                b.leaves(v, k)?;
            }
            for &k in &params.stars {
                b.star(k)?;
            }
        }
        CoreType::III => {
            let tri = b.vertices(3)?;
            b.join(tri, tri);
            for (v, &k) in bits(tri).zip(&params.pendants) {
                b.leaves(v, k)?;
            }
            if params.cross_star > 0 {
                let t: Vec<usize> = bits(tri).collect();
                let z = b.vertex()?;
                let leaves = b.vertices(params.cross_star)?;
                b.join(1 << t[0], 1 << z);
                b.join(1 << t[1], leaves);
                b.join(1 << z, leaves);
            }
            let with = params.pendants.iter().take(3).filter(|&&k| k > 0).count();
            require(
                with >= 2 || params.cross_star > 0,
                "type III needs pendant edges at two triangle vertices",
            )?;
        }
        CoreType::IV => {
            require(p >= 2 && s >= 2, "type IV needs p >= 2 and s >= 2")?;
            require((1..=s).contains(&x2_links), "type IV needs 1 <= x2_links <= s")?;
            require(beta >= 1, "type IV needs a pendant edge at w")?;
            let w = b.vertex()?;
            let x1 = b.vertex()?;
            let x2 = b.vertex()?;
            let z = b.vertices(p)?;
            let y = b.vertices(s)?;
            b.join(1 << x1 | 1 << x2, z);
            b.join(1 << x1, y);
            b.join(1 << x2, bits(y).take(x2_links).fold(0, |acc, v| acc | 1 << v));
            b.join(1 << w, 1 << x1 | 1 << x2 | y);
            b.leaves(w, beta)?;
        }
        _ => {
            require(r >= 2, "types V to IX need r >= 2")?;
            match t {
                CoreType::V => require(alpha >= 2 && beta >= 2, "type V needs alpha, beta >= 2")?,
                CoreType::VI => {
                    require(p >= 1 && alpha >= 1, "type VI needs p >= 1 and alpha >= 1")?;
                    require(p != 1 || beta >= 1, "type VI needs beta >= 1 when p = 1")?;
                }
                CoreType::VII => require(alpha >= 1 && beta >= 1, "type VII needs alpha, beta >= 1")?,
                CoreType::VIII => require(q >= 1 && alpha >= 1, "type VIII needs q >= 1 and alpha >= 1")?,
                _ => {
                    require(s >= 1, "type IX needs s >= 1")?;
                    require(r != 2 || alpha + beta > 0, "type IX needs alpha + beta > 0 when r = 2")?;
                    require(s <= 1 || r == 2, "type IX needs r = 2 when s >= 2")?;
                }
            }
            let v = b.vertex()?;
            let w = b.vertex()?;
            let x = b.vertices(r)?;
            b.join(1 << v, 1 << w | x);
            b.join(1 << w, x);
            b.leaves(v, alpha)?;
            b.leaves(w, beta)?;
            match t {
                CoreType::VI => {
                    let z = b.vertex()?;
                    let pp = b.vertices(p)?;
                    b.join(1 << v, 1 << z);
                    b.join(1 << z | 1 << w, pp);
                }
                CoreType::VII => {
                    let y = b.vertex()?;
                    b.join(1 << y, x);
                }
                CoreType::VIII => {
                    let y = b.vertex()?;
                    let qq = b.vertices(q)?;
                    b.join(1 << y, x);
                    b.join(1 << y | 1 << w, qq);
                }
                CoreType::IX => {
                    let y = b.vertices(s)?;
                    b.join(y, x);
                }
                _ => {}
            }
        }
    }
    let h = b.g;
    require(
        (0..h.n()).all(|v| h.codegree(v) >= 2),
        "parameters leave a vertex with fewer than 2 non-neighbours, so the complement is not a 2-core",
    )?;
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_is_type_i() {
        match classify_clawfree_mt(&Graph::cycle(4)) {
            ClawFreeMTLabel::Structured { core_type, hanging_paths } => {
                assert_eq!(core_type, CoreType::I);
                assert!(hanging_paths.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn forests_and_claws() {
        let g = Graph::path(3).disjoint_union(&Graph::path(5));
        assert_eq!(classify_clawfree_mt(&g), ClawFreeMTLabel::LinearForest);
        assert!(!classify_clawfree_mt(&Graph::star(3)).is_member());
    }

    #[test]
    fn type_v_round_trip() {
        let params = TypeParams { r: 2, alpha: 2, beta: 2, ..Default::default() };
        let h = generate_clawfree_type(CoreType::V, &params).unwrap();
        assert_eq!(match_core_type(&h), Some(CoreType::V));
        match classify_clawfree_mt(&h.complement()) {
            ClawFreeMTLabel::Structured { core_type, .. } => assert_eq!(core_type, CoreType::V),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let bad = TypeParams { r: 2, alpha: 1, beta: 2, ..Default::default() };
        assert!(generate_clawfree_type(CoreType::V, &bad).is_err());
        assert!("x".parse::<CoreType>().is_err());
        assert_eq!("viii".parse::<CoreType>().unwrap(), CoreType::VIII);
    }
}
