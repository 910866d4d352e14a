//! Subcommand implementations; each returns its artifact as a string.

use std::path::Path;

use anyhow::{Context, Result};
use num_bigint::BigInt;
use serde_json::json;

use surfenum::asymptotics::{fit_growth, singular_point_pq, singular_point_rs, transfer, AsymptoticsError, SingularExpansion};
use surfenum::census::{
    labelled_graph_census, map_table, quad_counts, quadrangulations, rooted_general_counts, rooted_map_counts,
    CensusError, Family, GraphCensusOptions, GraphPredicate, MapCounts, QuadClass,
};
use surfenum::genuschain::verify_chain;
use surfenum::graphkernel::{
    block_decomposition, euler_genus_graph, face_width_graph, genus_whole, nonorientable_genus, Bound,
    LabelledGraph, SearchBudget,
};
use surfenum::structure::{self, GraphClass, StructureError};

use crate::{CensusCmd, ChainCmd, Command, Outcome, UsageError, VerifyCmd};

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Out-of-range requests are usage errors; everything else is a run error.
fn census_err(e: CensusError) -> anyhow::Error {
    match e {
        CensusError::BoundExceeded { .. } | CensusError::Parse(_) => usage(e.to_string()),
        e => e.into(),
    }
}

fn structure_err(e: StructureError) -> anyhow::Error {
    match e {
        StructureError::Range { .. } => usage(e.to_string()),
        StructureError::Census(c) => census_err(c),
        e => e.into(),
    }
}

fn ok(artifact: String) -> Result<Outcome> {
    Ok(Outcome { artifact, passed: true, inputs: Vec::new(), extra_outputs: Vec::new() })
}

fn json_line(v: serde_json::Value) -> String {
    format!("{}\n", v)
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Census(c) => census(c),
        Command::Chain(ChainCmd::Build { order, genus, census_order, report }) => {
            let census_order = census_order.unwrap_or((*order).min(5));
            let r = verify_chain(*order, *genus, census_order)?;
            let artifact = r.to_json() + "\n";
            let mut extra = Vec::new();
            if let Some(path) = report {
                std::fs::write(path, &artifact).with_context(|| format!("writing {}", path.display()))?;
                extra.push(path.clone());
            }
            Ok(Outcome { artifact, passed: r.passed(), inputs: Vec::new(), extra_outputs: extra })
        }
        Command::Graphs(a) => graphs(&a.oracle, &a.input, a.budget),
        Command::Quads(a) => quads(a.faces, a.genus, &a.class),
        Command::Singular(a) => singular(&a.system, a.x),
        Command::Transfer(a) => transfer_cmd(a.rho, &a.kind, &a.coeffs, &a.n),
        Command::Fit(a) => fit(&a.input),
        Command::Verify(v) => verify(v),
        Command::Stats(a) => {
            let class: GraphClass = a.class.parse().map_err(usage)?;
            let r = structure::stats(a.n, class).map_err(structure_err)?;
            match a.format.as_str() {
                "csv" => ok(r.to_csv()),
                "json" => ok(r.to_json() + "\n"),
                f => Err(usage(format!("unknown format `{}`", f))),
            }
        }
    }
}

fn summary(header: &str, size: usize, by: impl IntoIterator<Item = (usize, u64)>) -> String {
    let mut out = format!("{}\n", header);
    for (k, c) in by {
        out.push_str(&format!("{},{},{}\n", size, k, c));
    }
    out
}

fn census(c: &CensusCmd) -> Result<Outcome> {
    match c {
        CensusCmd::Maps { edges, genus, signed, full } => {
            let (family, counts, key) = if *signed {
                let all = rooted_general_counts(*edges).map_err(census_err)?;
                let kept = MapCounts {
                    edges: *edges,
                    by_vertices_genus: all
                        .by_vertices_genus
                        .into_iter()
                        .filter(|((_, g), _)| genus.is_none_or(|h| h == *g))
                        .collect(),
                };
                (Family::GeneralMaps, kept, "euler_genus")
            } else {
                let counts = rooted_map_counts(*edges, *genus).map_err(census_err)?;
                (Family::RootedMaps, counts, "genus")
            };
            if *full {
                return ok(map_table(family, &[counts], &[]).to_csv());
            }
            ok(summary(&format!("edges,{},count", key), *edges, counts.by_genus()))
        }
        CensusCmd::Graphs { vertices, predicate, full } => {
            let pred: GraphPredicate = predicate.parse().map_err(census_err)?;
            let c = labelled_graph_census(*vertices, &pred, &GraphCensusOptions::default()).map_err(census_err)?;
            if *full {
                return ok(c.to_table().to_csv());
            }
            ok(summary("vertices,edges,count", *vertices, c.by_edges()))
        }
        CensusCmd::Quads { faces, class, genus, full } => {
            let class: QuadClass = class.parse().map_err(census_err)?;
            let counts = quad_counts(*faces, *genus, class).map_err(census_err)?;
            if *full {
                return ok(map_table(Family::Quadrangulations, &[counts], &[("class", class.name())]).to_csv());
            }
            ok(summary("faces,genus,count", *faces, counts.by_genus()))
        }
    }
}

fn read_graphs(path: &Path) -> Result<Vec<(String, LabelledGraph)>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            LabelledGraph::parse(l)
                .map(|g| (l.to_string(), g))
                .map_err(|e| usage(format!("bad graph `{}`: {}", l, e)))
        })
        .collect()
}

fn graphs(oracle: &str, input: &Path, budget: Option<u64>) -> Result<Outcome> {
    let budget = budget.map_or_else(SearchBudget::default, SearchBudget::nodes);
    let mut out = String::new();
    let mut exact = true;
    for (line, g) in read_graphs(input)? {
        let value = match oracle {
            "genus" => bound_json(genus_whole(&g, budget), &mut exact),
            "euler-genus" => bound_json(euler_genus_graph(&g, budget), &mut exact),
            "nonorientable-genus" => bound_json(nonorientable_genus(&g, budget), &mut exact),
            "face-width" => {
                let b = face_width_graph(&g, None, budget);
                exact &= b.exact().is_some();
                serde_json::to_value(b)?
            }
            "blocks" => {
                let t = block_decomposition(&g);
                let one = |v: &usize| v + 1;
                json!({
                    "blocks": t.blocks.iter().map(|b| json!({
                        "vertices": b.vertices.iter().map(one).collect::<Vec<_>>(),
                        "edges": b.edges.iter().map(|(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "cut_vertices": t.cut_vertices.iter().map(one).collect::<Vec<_>>(),
                })
            }
            o => return Err(usage(format!("unknown oracle `{}`", o))),
        };
        out.push_str(&json_line(json!({ "graph": line, oracle: value })));
    }
    Ok(Outcome { artifact: out, passed: exact, inputs: vec![input.to_path_buf()], extra_outputs: Vec::new() })
}

fn bound_json(b: Bound, exact: &mut bool) -> serde_json::Value {
    match b {
        Bound::Exact(v) => json!(v),
        Bound::Interval { lo, hi } => {
            *exact = false;
            json!({ "lo": lo, "hi": hi })
        }
    }
}

fn quads(faces: usize, genus: Option<usize>, class: &str) -> Result<Outcome> {
    let class: QuadClass = class.parse().map_err(census_err)?;
    let mut out = String::new();
    for r in quadrangulations(faces, genus).map_err(census_err)? {
        if !class.admits(&r.tags) {
            continue;
        }
        let map: serde_json::Value = serde_json::from_str(&r.quad.to_json())?;
        out.push_str(&json_line(json!({
            "faces": r.faces,
            "black": r.black,
            "genus": r.genus,
            "tags": r.tags,
            "map": map,
        })));
    }
    ok(out)
}

fn singular(system: &str, x: f64) -> Result<Outcome> {
    let v = match system {
        "pq" => {
            let s = singular_point_pq::<f64>(x)?;
            json!({ "system": "pq", "x": s.x, "u0": s.point, "p": s.y[0], "q": s.y[1],
                    "bracket": s.bracket, "residual": s.residual })
        }
        "rs" => {
            let s = singular_point_rs::<f64>(x)?;
            json!({ "system": "rs", "x": s.x, "w0": s.point, "r": s.y[0], "s": s.y[1],
                    "bracket": s.bracket, "residual": s.residual })
        }
        s => return Err(usage(format!("unknown system `{}` (pq or rs)", s))),
    };
    ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn transfer_cmd(rho: f64, kind: &str, coeffs: &str, ns: &[u64]) -> Result<Outcome> {
    let (a, b) = kind
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse::<i32>().ok()?, b.trim().parse::<u32>().ok()?)))
        .ok_or_else(|| usage(format!("bad type `{}` (expected a,b)", kind)))?;
    let coeffs = coeffs
        .split(',')
        .map(|c| c.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("bad coefficients: {}", e)))?;
    let asym = |e: AsymptoticsError| match e {
        AsymptoticsError::NotInD { .. } | AsymptoticsError::Unsupported(_) => usage(e.to_string()),
        e => e.into(),
    };
    let e = SingularExpansion::new(rho, (a, b), coeffs).map_err(asym)?;
    let t = transfer(&e).map_err(asym)?;
    let predictions: Vec<_> = ns
        .iter()
        .map(|&n| json!({ "n": n, "value": t.predict(n), "ln_value": t.ln_predict(n) }))
        .collect();
    let v = json!({ "expansion": e, "c": t.c, "rho": t.rho, "alpha": t.alpha, "predictions": predictions });
    ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn read_sequence(path: &Path) -> Result<Vec<BigInt>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let Some(field) = rec.iter().next_back() else { continue };
        match field.parse::<BigInt>() {
            Ok(v) => out.push(v),
            Err(_) if i == 0 => {}
            Err(_) => return Err(usage(format!("bad count `{}` on line {}", field, i + 1))),
        }
    }
    Ok(out)
}

fn fit(input: &Path) -> Result<Outcome> {
    let seq = read_sequence(input)?;
    let r = fit_growth::<f64>(&seq).map_err(|e| usage(e.to_string()))?;
    Ok(Outcome {
        artifact: serde_json::to_string_pretty(&r)? + "\n",
        passed: true,
        inputs: vec![input.to_path_buf()],
        extra_outputs: Vec::new(),
    })
}

fn verify(v: &VerifyCmd) -> Result<Outcome> {
    match v {
        VerifyCmd::Identities { nmax } => {
            let graph = structure::verify_identities(*nmax).map_err(structure_err)?;
            let chain = verify_chain((*nmax as u32).max(2), None, 0)?;
            let passed = graph.passed() && chain.passed();
            let v = json!({ "passed": passed, "graph": graph, "chain": chain });
            Ok(Outcome {
                artifact: serde_json::to_string_pretty(&v)? + "\n",
                passed,
                inputs: Vec::new(),
                extra_outputs: Vec::new(),
            })
        }
        VerifyCmd::RobertsonVitray { nmax, budget } => {
            let budget = budget.map_or_else(SearchBudget::default, SearchBudget::nodes);
            let r = structure::robertson_vitray_check(*nmax, budget).map_err(structure_err)?;
            let passed = r.passed() && r.face_width_partial.is_empty();
            Ok(Outcome { artifact: r.to_json() + "\n", passed, inputs: Vec::new(), extra_outputs: Vec::new() })
        }
    }
}
