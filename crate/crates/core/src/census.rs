//! Exhaustive search for minimal non-mock-threshold graphs, sharded over enumeration parents
//! with optional per-shard checkpoint files.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::{canonical_graph, is_isomorphic};
use crate::enumerate::{extend_range, next_level, shard_ranges, unpack, Level, MAX_PACKED};
use crate::error::{GraphError, Result};
use crate::graph::Graph;
use crate::graph6::{decode_graph6, encode_graph6};
use crate::mt::{is_contraction_minimal_forb, is_minimal_non_mt, is_minimal_non_mt_rows, is_mt};

pub const DEFAULT_SHARDS: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusMode {
    /// Every isomorphism class is generated and tested.
    #[default]
    Exhaustive,
    /// Only mock threshold graphs are extended. Every minimal non-MT graph still appears, since
    /// its canonical parent is one of its vertex-deleted subgraphs.
    MtParents,
}

impl CensusMode {
    fn tag(self) -> &'static str {
        match self {
            CensusMode::Exhaustive => "exhaustive",
            CensusMode::MtParents => "mt-parents",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub enum CensusSource {
    #[default]
    Enumerate,
    /// Canonical graphs supplied from outside, e.g. by [`crate::enumerate::ingest_graph6`].
    Ingest(Vec<Graph>),
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub max_n: usize,
    pub workers: usize,
    pub mode: CensusMode,
    pub source: CensusSource,
    pub shards_per_order: usize,
    pub checkpoint_dir: Option<PathBuf>,
    /// Stop with [`GraphError::Interrupted`] once this many shards have been computed in this run.
    pub stop_after_shards: Option<usize>,
}

impl CensusOptions {
    pub fn new(max_n: usize) -> Self {
        CensusOptions {
            max_n,
            workers: 1,
            mode: CensusMode::default(),
            source: CensusSource::default(),
            shards_per_order: DEFAULT_SHARDS,
            checkpoint_dir: None,
            stop_after_shards: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CensusKind {
    Cycle,
    CycleComplement,
    Sporadic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusRecord {
    pub graph6: String,
    pub order: usize,
    pub kind: CensusKind,
    pub self_complementary: bool,
    pub contraction_minimal: bool,
}

impl CensusRecord {
    pub fn from_graph(g: &Graph) -> Result<CensusRecord> {
        let kind = if is_long_cycle(g) {
            CensusKind::Cycle
        } else if is_long_cycle(&g.complement()) {
            CensusKind::CycleComplement
        } else {
            CensusKind::Sporadic
        };
        Ok(CensusRecord {
            graph6: encode_graph6(&canonical_graph(g)),
            order: g.n(),
            kind,
            self_complementary: is_isomorphic(g, &g.complement()),
            contraction_minimal: is_contraction_minimal_forb(g)?,
        })
    }

    pub fn graph(&self) -> Graph {
        decode_graph6(&self.graph6).expect("census records hold valid graph6")
    }
}

fn is_long_cycle(g: &Graph) -> bool {
    g.n() >= 5 && g.is_connected() && (0..g.n()).all(|v| g.degree(v) == 2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusSummary {
    pub max_n: usize,
    pub mode: CensusMode,
    pub per_order_sporadic: BTreeMap<usize, usize>,
    pub total_sporadic: usize,
    pub contraction_minimal_sporadic: usize,
    pub self_complementary_total: usize,
    pub cycles: usize,
    pub cycle_complements: usize,
    pub shard_count: usize,
    pub elapsed_seconds: f64,
}

/// Census output: records sorted by (order, canonical graph6).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub records: Vec<CensusRecord>,
}

impl Catalog {
    pub fn from_graphs(graphs: &[Graph]) -> Result<Catalog> {
        let mut records = graphs.iter().map(CensusRecord::from_graph).collect::<Result<Vec<_>>>()?;
        records.sort_by(|a, b| (a.order, &a.graph6).cmp(&(b.order, &b.graph6)));
        records.dedup_by(|a, b| a.graph6 == b.graph6);
        Ok(Catalog { records })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn graphs(&self) -> Vec<Graph> {
        self.records.iter().map(CensusRecord::graph).collect()
    }

    pub fn of_order(&self, n: usize) -> impl Iterator<Item = &CensusRecord> {
        self.records.iter().filter(move |r| r.order == n)
    }

    pub fn sporadic(&self) -> impl Iterator<Item = &CensusRecord> {
        self.records.iter().filter(|r| r.kind == CensusKind::Sporadic)
    }

    /// Newline-delimited canonical graph6.
    pub fn to_graph6_text(&self) -> String {
        self.records.iter().map(|r| format!("{}\n", r.graph6)).collect()
    }

    pub fn summary(&self, max_n: usize, mode: CensusMode, shard_count: usize, elapsed_seconds: f64) -> CensusSummary {
        let mut per_order_sporadic: BTreeMap<usize, usize> = (5..=max_n).map(|n| (n, 0)).collect();
        for r in self.sporadic() {
            *per_order_sporadic.entry(r.order).or_default() += 1;
        }
        let count = |kind| self.records.iter().filter(|r| r.kind == kind).count();
        CensusSummary {
            max_n,
            mode,
            total_sporadic: per_order_sporadic.values().sum(),
            per_order_sporadic,
            contraction_minimal_sporadic: self.sporadic().filter(|r| r.contraction_minimal).count(),
            self_complementary_total: self.records.iter().filter(|r| r.self_complementary).count(),
            cycles: count(CensusKind::Cycle),
            cycle_complements: count(CensusKind::CycleComplement),
            shard_count,
            elapsed_seconds,
        }
    }
}

/// Every vertex has degree and codegree at least 2; holds for all minimal non-MT graphs.
fn in_degree_window(g: &Graph) -> bool {
    let n = g.n();
    n >= 5 && g.min_degree() >= 2 && g.max_degree() + 3 <= n
}

fn keep_candidate(g: &Graph) -> bool {
    in_degree_window(g) && is_minimal_non_mt_rows(g.rows())
}

pub fn run_census(opts: &CensusOptions) -> Result<(CensusSummary, Catalog)> {
    let max_allowed = match opts.source {
        CensusSource::Enumerate => MAX_PACKED,
        CensusSource::Ingest(_) => crate::graph::MAX_VERTICES,
    };
    if !(5..=max_allowed).contains(&opts.max_n) {
        return Err(GraphError::Precondition(format!("census order {} outside 5..={max_allowed}", opts.max_n)));
    }
    if opts.workers == 0 || opts.shards_per_order == 0 {
        return Err(GraphError::Precondition("workers and shards must be positive".into()));
    }
    if let Some(dir) = &opts.checkpoint_dir {
        fs::create_dir_all(dir)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| GraphError::Precondition(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let (found, shard_count) = pool.install(|| match &opts.source {
        CensusSource::Enumerate => census_enumerated(opts),
        CensusSource::Ingest(graphs) => census_ingested(opts, graphs),
    })?;
    let catalog = Catalog::from_graphs(&found)?;
    let summary = catalog.summary(opts.max_n, opts.mode, shard_count, start.elapsed().as_secs_f64());
    Ok((summary, catalog))
}

struct ShardRunner<'a> {
    opts: &'a CensusOptions,
    source_tag: &'static str,
    computed: AtomicUsize,
}

impl ShardRunner<'_> {
    /// Runs the shards of one order, loading finished ones from checkpoint files.
    fn run(&self, order: usize, count: usize, work: impl Fn(usize) -> Vec<Graph> + Sync) -> Result<Vec<Graph>> {
        let results: Vec<Option<Vec<Graph>>> = (0..count)
            .into_par_iter()
            .map(|s| self.shard(order, s, count, &work))
            .collect::<Result<_>>()?;
        if results.iter().any(Option::is_none) {
            return Err(GraphError::Interrupted(self.computed.load(Ordering::SeqCst)));
        }
        Ok(results.into_iter().flatten().flatten().collect())
    }

    fn shard(&self, order: usize, s: usize, count: usize, work: &impl Fn(usize) -> Vec<Graph>) -> Result<Option<Vec<Graph>>> {
        let header = format!(
            "mtgraph-shard v1 source={} mode={} order={order} shard={s}/{count}",
            self.source_tag,
            self.opts.mode.tag()
        );
        let path = self.opts.checkpoint_dir.as_ref().map(|d| d.join(format!("order{order:02}-shard{s:04}-of{count:04}.g6")));
        if let Some(p) = &path {
            if p.exists() {
                return read_shard(p, &header).map(Some);
            }
        }
        if let Some(limit) = self.opts.stop_after_shards {
            if self.computed.fetch_add(1, Ordering::SeqCst) >= limit {
                self.computed.fetch_sub(1, Ordering::SeqCst);
                return Ok(None);
            }
        } else {
            self.computed.fetch_add(1, Ordering::SeqCst);
        }
        let mut found = work(s);
        found.sort_by_cached_key(encode_graph6);
        if let Some(p) = &path {
            write_shard(p, &header, &found)?;
        }
        Ok(Some(found))
    }
}

fn census_enumerated(opts: &CensusOptions) -> Result<(Vec<Graph>, usize)> {
    let runner = ShardRunner { opts, source_tag: "enumerate", computed: AtomicUsize::new(0) };
    let mt_filter = |g: &Graph| is_mt(g);
    let filter: Option<crate::enumerate::ParentFilter> = match opts.mode {
        CensusMode::Exhaustive => None,
        CensusMode::MtParents => Some(&mt_filter),
    };
    let mut parents = Level::first();
    let mut found = Vec::new();
    let mut shard_count = 0;
    for order in 2..=opts.max_n {
        if order < 5 {
            parents = next_level(&parents, filter);
            continue;
        }
        let ranges = shard_ranges(parents.len(), opts.shards_per_order);
        shard_count += ranges.len();
        let work = |s: usize| {
            let range: Range<usize> = ranges[s].clone();
            extend_range(&parents, range, filter)
                .into_iter()
                .map(|code| unpack(order, code))
                .filter(keep_candidate)
                .collect()
        };
        found.extend(runner.run(order, ranges.len(), work)?);
        if order < opts.max_n {
            parents = next_level(&parents, filter);
        }
    }
    Ok((found, shard_count))
}

fn census_ingested(opts: &CensusOptions, graphs: &[Graph]) -> Result<(Vec<Graph>, usize)> {
    let runner = ShardRunner { opts, source_tag: "ingest", computed: AtomicUsize::new(0) };
    let mut found = Vec::new();
    let mut shard_count = 0;
    for order in 5..=opts.max_n {
        let of_order: Vec<&Graph> = graphs.iter().filter(|g| g.n() == order).collect();
        if of_order.is_empty() {
            continue;
        }
        let ranges = shard_ranges(of_order.len(), opts.shards_per_order);
        shard_count += ranges.len();
        let work = |s: usize| of_order[ranges[s].clone()].iter().filter(|g| keep_candidate(g)).map(|&g| *g).collect();
        found.extend(runner.run(order, ranges.len(), work)?);
    }
    Ok((found, shard_count))
}

fn checksum(body: &str) -> String {
    Sha256::digest(body.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn write_shard(path: &Path, header: &str, found: &[Graph]) -> Result<()> {
    let mut body = format!("{header}\n");
    for g in found {
        body.push_str(&encode_graph6(g));
        body.push('\n');
    }
    let trailer = format!("end {} {}\n", found.len(), checksum(&body));
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, body + &trailer)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn read_shard(path: &Path, header: &str) -> Result<Vec<Graph>> {
    let bad = |why: &str| GraphError::Checkpoint(format!("{}: {why}", path.display()));
    let text = fs::read_to_string(path)?;
    let body_end = text.trim_end_matches('\n').rfind('\n').ok_or_else(|| bad("truncated"))? + 1;
    let (body, trailer) = text.split_at(body_end);
    let mut fields = trailer.split_whitespace();
    let (Some("end"), Some(count), Some(sum), None) = (fields.next(), fields.next(), fields.next(), fields.next()) else {
        return Err(bad("missing trailer"));
    };
    if sum != checksum(body) {
        return Err(bad("checksum mismatch"));
    }
    let mut lines = body.lines();
    if lines.next() != Some(header) {
        return Err(bad("written by a run with different parameters"));
    }
    let graphs = lines.map(decode_graph6).collect::<Result<Vec<_>>>().map_err(|e| bad(&e.to_string()))?;
    if count.parse::<usize>().ok() != Some(graphs.len()) {
        return Err(bad("record count mismatch"));
    }
    Ok(graphs)
}

/// The ten-vertex butterfly skeleton: `x1..x4` (0..4), `y1..y4` (4..8), `z12` (8), `z34` (9).
pub fn butterfly_skeleton() -> Graph {
    let z = |i: usize| if i % 4 < 2 { 8 } else { 9 };
    let mut g = Graph::new(10);
    for i in 0..4 {
        let (x, y) = (i, 4 + i);
        g.add_edge(x, y);
        g.add_edge(x, z(i));
        g.add_edge(y, z(i));
        g.add_edge(y, z(i + 2));
    }
    g.add_edge(8, 9);
    g
}

/// The skeleton with every subset of the six optional `y_i y_j` edges, one graph per
/// isomorphism class, canonical and sorted by graph6.
pub fn butterfly_family() -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (4..8).flat_map(|a| (a + 1..8).map(move |b| (a, b))).collect();
    let skeleton = butterfly_skeleton();
    let mut seen = BTreeMap::new();
    for mask in 0u32..1 << pairs.len() {
        let mut g = skeleton;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(a, b);
            }
        }
        let c = canonical_graph(&g);
        seen.insert(encode_graph6(&c), c);
    }
    seen.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub graph6: String,
    pub check: String,
}

/// Structural checks every complete catalog of minimal non-MT graphs must pass.
pub fn verify_catalog(graphs: &[Graph]) -> Vec<Violation> {
    let keys: BTreeSet<String> = graphs.iter().map(|g| encode_graph6(&canonical_graph(g))).collect();
    let mut out = Vec::new();
    for g in graphs {
        let mut fail = |check: &str| {
            out.push(Violation { graph6: encode_graph6(&canonical_graph(g)), check: check.to_string() })
        };
        let n = g.n();
        if !is_minimal_non_mt(g) {
            fail("not a minimal non-mock-threshold graph");
        }
        if !keys.contains(&encode_graph6(&canonical_graph(&g.complement()))) {
            fail("complement missing from catalog");
        }
        if !is_long_cycle(g) && !is_long_cycle(&g.complement()) && !in_degree_window(g) {
            fail("degrees outside [2, n-3]");
        }
        let mut divalent_nbhds = BTreeMap::new();
        for v in (0..n).filter(|&v| g.degree(v) == 2) {
            *divalent_nbhds.entry(g.neighbors(v)).or_insert(0) += 1;
        }
        if divalent_nbhds.values().any(|&c| c >= 3) {
            fail("three divalent vertices share a neighbourhood");
        }
        let special = (0..n).filter(|&v| g.degree(v) == 2 || g.codegree(v) == 2).count();
        if 2 * special < n {
            fail("fewer than n/2 divalent or co-divalent vertices");
        }
    }
    out
}

/// Graphs on at most `max_n` vertices that are not split mock threshold while every
/// vertex-deleted subgraph is. Canonical, sorted by (order, graph6).
pub fn split_mt_census(max_n: usize) -> Result<Vec<Graph>> {
    if !(1..=9).contains(&max_n) {
        return Err(GraphError::Precondition(format!("split census order {max_n} outside 1..=9")));
    }
    let in_class = |g: &Graph| crate::classes::is_split(g) && is_mt(g);
    let levels = crate::enumerate::levels(max_n, Some(&in_class));
    let out = levels
        .iter()
        .flat_map(|level| level.graphs())
        .filter(|g| !in_class(g) && (0..g.n()).all(|v| in_class(&g.delete_vertex(v))))
        .collect();
    Ok(out)
}
