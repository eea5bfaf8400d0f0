//! Mock threshold graph recognition and the surrounding graph-class toolkit.

pub mod canon;
pub mod census;
pub mod classes;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod line;
pub mod mt;
pub mod subgraph;

pub use census::{run_census, Catalog, CensusOptions, CensusRecord, CensusSummary};
pub use canon::{canonical_graph, canonicalize, is_isomorphic, CanonicalForm};
pub use enumerate::{enumerate_graphs, Level};
pub use error::{GraphError, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use graph6::{decode_graph6, encode_graph6};
pub use mt::{is_mt, recognize, verify_order, MTOrder, Recognition, VertexClass};
pub use subgraph::{contains, ContainmentMode};
