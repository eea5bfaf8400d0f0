use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::Path;

use mtgraph::census::{butterfly_family, split_mt_census, verify_catalog, CensusMode, CensusSource};
use mtgraph::classes::{classify, classify_bipartite_mt, classify_clawfree_mt, generate_clawfree_type, CoreType, TypeParams};
use mtgraph::enumerate::levels;
use mtgraph::line::{line_graph, mt_line_check, search_line_forbidden, LineForbiddenCatalog, LineMethod};
use mtgraph::mt::{chromatic_number, clique_number, is_k_mt};
use mtgraph::{encode_graph6, recognize, run_census, verify_order, CensusOptions, Graph, GraphError, MTOrder, Recognition};
use serde_json::{json, Value};

use crate::stream::{json_lines, read_graphs};
use crate::{Cli, CliError, Command, Family, Format, Method, Mode, Only};

const MAX_ENUMERATE: usize = 10;

pub fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(usize::from(cli.jobs))
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let format = cli.format;
    let stdin = io::stdin().lock();
    match cli.command {
        Command::Recognize { k } => {
            let k = usize::from(k);
            json_lines(stdin, out, |g| recognize_report(g, k))
        }
        Command::Classify => json_lines(stdin, out, |g| Ok(classify_report(g))),
        Command::Clique => json_lines(stdin, out, |g| clique_report(g)),
        Command::Linegraph { method } => {
            let method = match method {
                Method::Construct => LineMethod::Construct,
                Method::Forbidden => LineMethod::Forbidden,
                Method::Structure => LineMethod::Structure,
            };
            let catalog = match method {
                LineMethod::Forbidden => Some(search_line_forbidden(10)?),
                _ => None,
            };
            json_lines(stdin, out, |g| line_report(g, method, catalog.as_ref()))
        }
        Command::Census { max_n, mode, shards, checkpoint_dir, ingest, out: path, stop_after_shards } => {
            let mut opts = CensusOptions::new(max_n);
            opts.workers = usize::from(cli.jobs);
            opts.mode = match mode {
                Mode::Exhaustive => CensusMode::Exhaustive,
                Mode::MtParents => CensusMode::MtParents,
            };
            opts.shards_per_order = shards;
            opts.checkpoint_dir = checkpoint_dir;
            opts.stop_after_shards = stop_after_shards;
            if let Some(source) = ingest {
                let graphs = if source == Path::new("-") {
                    read_graphs(stdin)?
                } else {
                    read_graphs(BufReader::new(File::open(&source)?))?
                };
                opts.source = CensusSource::Ingest(graphs);
            }
            census(&opts, format.unwrap_or(Format::Json), path.as_deref(), out)
        }
        Command::Family { name, core_type, params, max_n } => {
            let graphs = family(name, core_type.as_deref(), params.as_deref(), max_n)?;
            write_graphs(&graphs, format.unwrap_or(Format::G6), out)
        }
        Command::Enumerate { max_n, min_n, only, k } => {
            if !(1..=MAX_ENUMERATE).contains(&max_n) || !(1..=max_n).contains(&min_n) {
                return Err(CliError::Usage(format!("need 1 <= min-n <= max-n <= {MAX_ENUMERATE}")));
            }
            let k = usize::from(k);
            for level in levels(max_n, None).iter().filter(|l| l.n >= min_n) {
                let graphs: Vec<Graph> = level
                    .graphs()
                    .filter(|g| match only {
                        None => true,
                        Some(Only::Mt) => is_k_mt(g, k),
                        Some(Only::NonMt) => !is_k_mt(g, k),
                    })
                    .collect();
                write_graphs(&graphs, format.unwrap_or(Format::G6), out)?;
            }
            Ok(())
        }
        Command::Verify => {
            let graphs = read_graphs(stdin)?;
            let violations = verify_catalog(&graphs);
            match format.unwrap_or(Format::Json) {
                Format::Json => {
                    let report = json!({
                        "checked": graphs.len(),
                        "ok": violations.is_empty(),
                        "violations": violations,
                    });
                    writeln!(out, "{report}")?;
                }
                Format::G6 => {
                    let mut bad: Vec<&str> = violations.iter().map(|v| v.graph6.as_str()).collect();
                    bad.dedup();
                    for g6 in bad {
                        writeln!(out, "{g6}")?;
                    }
                }
            }
            Ok(())
        }
    }
}

fn recognize_report(g: &Graph, k: usize) -> Result<Value, GraphError> {
    Ok(match recognize(g, k) {
        Recognition::InClass(cert) => {
            if !verify_order(g, &cert) {
                return Err(GraphError::InvalidCertificate("emitted ordering failed verification".into()));
            }
            json!({"n": g.n(), "k": k, "mock_threshold": true, "certificate": cert, "witness": null})
        }
        Recognition::NotInClass { witness, vertices } => {
            let vertices: Vec<usize> = (0..g.n()).filter(|v| vertices >> v & 1 == 1).collect();
            json!({
                "n": g.n(),
                "k": k,
                "mock_threshold": false,
                "certificate": null,
                "witness": {"graph6": encode_graph6(&witness), "vertices": vertices},
            })
        }
    })
}

fn classify_report(g: &Graph) -> Value {
    let labels = classify(g);
    let clawfree = labels.contains(&mtgraph::classes::ClassLabel::ClawFree).then(|| classify_clawfree_mt(g));
    let bipartite = classify_bipartite_mt(g).ok();
    json!({
        "n": g.n(),
        "mock_threshold": mtgraph::is_mt(g),
        "classes": labels,
        "clawfree": clawfree,
        "bipartite": bipartite,
    })
}

fn clique_report(g: &Graph) -> Result<Value, GraphError> {
    let Some(cert) = recognize(g, 1).certificate().cloned() else {
        return Ok(json!({"n": g.n(), "mock_threshold": false, "omega": null, "alpha": null, "chi": null}));
    };
    let co = g.complement();
    let co_cert = MTOrder::from_permutation(&co, &cert.order, 1)?;
    Ok(json!({
        "n": g.n(),
        "mock_threshold": true,
        "omega": clique_number(g, &cert)?,
        "alpha": clique_number(&co, &co_cert)?,
        "chi": chromatic_number(g, &cert)?,
    }))
}

fn line_report(g: &Graph, method: LineMethod, catalog: Option<&LineForbiddenCatalog>) -> Result<Value, GraphError> {
    let verdict = mt_line_check(g, method, catalog)?;
    let line = match line_graph(g) {
        Ok(l) => Some(encode_graph6(&l)),
        Err(GraphError::Capacity(_)) if method != LineMethod::Construct => None,
        Err(e) => return Err(e),
    };
    Ok(json!({
        "method": method,
        "line_graph": line,
        "mock_threshold_line": verdict.member,
        "root_type": verdict.root_type,
    }))
}

fn census(opts: &CensusOptions, format: Format, path: Option<&Path>, out: &mut impl Write) -> Result<(), CliError> {
    let (summary, catalog) = run_census(opts).map_err(|e| match e {
        GraphError::Interrupted(n) => CliError::Usage(format!(
            "interrupted after computing {n} shards; rerun with the same --checkpoint-dir to resume"
        )),
        other => other.into(),
    })?;
    eprintln!("census finished in {:.1}s", summary.elapsed_seconds);
    let body = match format {
        Format::G6 => catalog.to_graph6_text(),
        Format::Json => catalog
            .records
            .iter()
            .map(|r| format!("{}\n", serde_json::to_string(r).expect("record serialises")))
            .collect(),
    };
    if let Some(path) = path {
        fs::write(path, &body)?;
    }
    match format {
        Format::G6 if path.is_none() => out.write_all(body.as_bytes())?,
        Format::G6 => {}
        Format::Json => {
            let mut value = serde_json::to_value(&summary).expect("summary serialises");
            if let Some(map) = value.as_object_mut() {
                map.remove("elapsedSeconds");
            }
            writeln!(out, "{value}")?;
        }
    }
    Ok(())
}

fn family(name: Family, core_type: Option<&str>, params: Option<&str>, max_n: Option<usize>) -> Result<Vec<Graph>, CliError> {
    let bounded = |default: usize, range: std::ops::RangeInclusive<usize>| {
        let n = max_n.unwrap_or(default);
        if range.contains(&n) {
            Ok(n)
        } else {
            Err(CliError::Usage(format!("--max-n {n} outside {}..={}", range.start(), range.end())))
        }
    };
    Ok(match name {
        Family::Butterfly => butterfly_family(),
        Family::Clawfree => {
            let t = core_type.ok_or_else(|| CliError::Usage("the clawfree family needs --type".into()))?;
            let t: CoreType = serde_json::from_value(Value::String(t.to_ascii_uppercase()))
                .map_err(|_| CliError::Usage(format!("unknown core type {t}, expected I to IX")))?;
            let params: TypeParams = match params {
                Some(text) => serde_json::from_str(text).map_err(|e| CliError::Usage(format!("--params: {e}")))?,
                None => TypeParams::default(),
            };
            vec![generate_clawfree_type(t, &params)?.complement()]
        }
        Family::LineForbidden => search_line_forbidden(bounded(10, 5..=10)?)?.sporadic,
        Family::SplitForbidden => split_mt_census(bounded(9, 1..=9)?)?,
    })
}

fn write_graphs(graphs: &[Graph], format: Format, out: &mut impl Write) -> Result<(), CliError> {
    for g in graphs {
        match format {
            Format::G6 => writeln!(out, "{}", encode_graph6(g))?,
            Format::Json => writeln!(out, "{}", json!({"graph6": encode_graph6(g), "n": g.n(), "edges": g.edge_count()}))?,
        }
    }
    Ok(())
}
