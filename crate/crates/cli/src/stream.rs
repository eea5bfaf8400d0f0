use std::io::{BufRead, Write};

use mtgraph::{decode_graph6, Graph, GraphError};
use rayon::prelude::*;
use serde_json::Value;

use crate::CliError;

const CHUNK: usize = 2048;

/// Reads one graph6 per line, maps each through `f` on the pool and writes one JSON object per
/// input line in input order, tagged with the input under `graph6`. Blank lines and
/// `>>graph6<<` headers are skipped.
pub fn json_lines<R, W, F>(input: R, out: &mut W, f: F) -> Result<(), CliError>
where
    R: BufRead,
    W: Write,
    F: Fn(&Graph) -> Result<Value, GraphError> + Sync,
{
    let mut lines = input.lines().enumerate();
    loop {
        let mut chunk: Vec<(usize, String, Graph)> = Vec::with_capacity(CHUNK);
        let mut pending = None;
        for (idx, line) in lines.by_ref() {
            let line = match line {
                Ok(line) => line,
                Err(e) => {
                    pending = Some(CliError::from(e));
                    break;
                }
            };
            let text = line.trim();
            let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
            if text.is_empty() {
                continue;
            }
            match decode_graph6(text) {
                Ok(g) => chunk.push((idx + 1, text.to_string(), g)),
                Err(e) => {
                    pending = Some(CliError::at_line(idx + 1, e));
                    break;
                }
            }
            if chunk.len() == CHUNK {
                break;
            }
        }
        let results: Vec<Result<Value, GraphError>> = chunk.par_iter().map(|(_, _, g)| f(g)).collect();
        for ((line, text, _), result) in chunk.iter().zip(results) {
            let mut value = result.map_err(|e| CliError::at_line(*line, e))?;
            if let Value::Object(map) = &mut value {
                map.insert("graph6".into(), Value::String(text.clone()));
            }
            writeln!(out, "{value}")?;
        }
        if let Some(e) = pending {
            return Err(e);
        }
        if chunk.len() < CHUNK {
            return Ok(());
        }
    }
}

/// All graphs from a graph6 stream, with the same line rules as [`json_lines`].
pub fn read_graphs<R: BufRead>(input: R) -> Result<Vec<Graph>, CliError> {
    let mut out = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
        if !text.is_empty() {
            out.push(decode_graph6(text).map_err(|e| CliError::at_line(idx + 1, e))?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mtgraph::encode_graph6;
    use serde_json::json;

    fn run(input: &str) -> (Result<(), CliError>, Vec<Value>) {
        let mut out = Vec::new();
        let r = json_lines(input.as_bytes(), &mut out, |g| Ok(json!({"n": g.n()})));
        let lines = String::from_utf8(out).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        (r, lines)
    }

    #[test]
    fn order_is_kept_across_chunks() {
        let input: String = (0..CHUNK * 2 + 5).map(|i| format!("{}\n", encode_graph6(&Graph::new(i % 9)))).collect();
        let (r, lines) = run(&input);
        assert!(r.is_ok());
        assert_eq!(lines.len(), CHUNK * 2 + 5);
        assert!(lines.iter().enumerate().all(|(i, v)| v["n"] == i % 9));
    }

    #[test]
    fn headers_and_blank_lines_are_skipped() {
        let (r, lines) = run(">>graph6<<Dhc\n\n  C~  \n");
        assert!(r.is_ok());
        assert_eq!(lines, vec![json!({"graph6": "Dhc", "n": 5}), json!({"graph6": "C~", "n": 4})]);
    }

    #[test]
    fn errors_name_the_line() {
        let (r, lines) = run("Dhc\nC~\n\n!!\nC~\n");
        assert_eq!(lines.len(), 2);
        let err = r.unwrap_err();
        assert!(matches!(err, CliError::Input { line: 4, .. }), "{err}");
        assert_eq!(err.exit_code(), 2);
        assert!(matches!(read_graphs("~?@@\n".as_bytes()), Err(CliError::Input { line: 1, source: GraphError::Capacity(65) })));
    }
}
