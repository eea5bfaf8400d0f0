//! JSON-in, JSON-out entry points for the browser demo. Each export takes a graph6 string and
//! returns a JSON object; malformed input yields `{"error": ...}`.

use mtgraph::classes::{classify as class_labels, classify_clawfree_mt};
use mtgraph::line::{line_graph, mt_line_check, LineMethod};
use mtgraph::{decode_graph6, encode_graph6, is_mt, recognize as recognize_graph, Graph, GraphError, Recognition};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest graph the page accepts; keeps the drawing and line graph readable.
pub const MAX_ORDER: usize = 24;

fn parse(graph6: &str) -> Result<Graph, GraphError> {
    let g = decode_graph6(graph6.trim())?;
    if g.n() > MAX_ORDER {
        return Err(GraphError::Capacity(g.n()));
    }
    Ok(g)
}

fn drawing(g: &Graph) -> Value {
    json!({"n": g.n(), "edges": g.edges()})
}

fn respond(result: Result<Value, GraphError>) -> String {
    result.unwrap_or_else(|e| json!({"error": e.to_string()})).to_string()
}

pub fn recognize_json(graph6: &str, k: usize) -> Result<Value, GraphError> {
    let g = parse(graph6)?;
    let k = k.max(1);
    Ok(match recognize_graph(&g, k) {
        Recognition::InClass(cert) => json!({
            "graph": drawing(&g),
            "k": k,
            "mock_threshold": true,
            "order": cert.order,
            "classes": cert.classes,
        }),
        Recognition::NotInClass { vertices, .. } => json!({
            "graph": drawing(&g),
            "k": k,
            "mock_threshold": false,
            "witness": (0..g.n()).filter(|v| vertices >> v & 1 == 1).collect::<Vec<_>>(),
        }),
    })
}

pub fn classify_json(graph6: &str) -> Result<Value, GraphError> {
    let g = parse(graph6)?;
    let labels = class_labels(&g);
    let clawfree = mtgraph::classes::is_claw_free(&g).then(|| classify_clawfree_mt(&g));
    Ok(json!({
        "graph": drawing(&g),
        "mock_threshold": is_mt(&g),
        "classes": labels,
        "clawfree": clawfree,
    }))
}

pub fn line_json(graph6: &str) -> Result<Value, GraphError> {
    let g = parse(graph6)?;
    let verdict = mt_line_check(&g, LineMethod::Structure, None)?;
    let line = line_graph(&g)?;
    Ok(json!({
        "graph": drawing(&line),
        "root": drawing(&g),
        "line_graph6": encode_graph6(&line),
        "line_labels": g.edges(),
        "mock_threshold_line": verdict.member,
        "root_type": verdict.root_type,
    }))
}

/// Membership with certificate ordering or stuck vertex set.
#[wasm_bindgen]
pub fn recognize(graph6: &str, k: u32) -> String {
    respond(recognize_json(graph6, k as usize))
}

/// Class labels and claw-free structure.
#[wasm_bindgen]
pub fn classify(graph6: &str) -> String {
    respond(classify_json(graph6))
}

/// Line graph and whether it is mock threshold, decided from the root's structure.
#[wasm_bindgen]
pub fn line(graph6: &str) -> String {
    respond(line_json(graph6))
}

/// graph6 for a graph given as `n` and edge pairs like "0-1 1-2".
#[wasm_bindgen]
pub fn from_edge_list(n: u32, edges: &str) -> String {
    let n = n as usize;
    if n > MAX_ORDER {
        return json!({"error": format!("at most {MAX_ORDER} vertices")}).to_string();
    }
    let mut g = Graph::new(n);
    for token in edges.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
        let pair = token.split_once('-').and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)));
        match pair {
            Some((a, b)) if a < n && b < n && a != b => g.add_edge(a, b),
            _ => return json!({"error": format!("bad edge {token:?}")}).to_string(),
        }
    }
    json!({"graph6": encode_graph6(&g)}).to_string()
}
