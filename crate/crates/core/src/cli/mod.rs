//! Command implementations. Each returns an [`Outcome`]: a JSON result, a text
//! summary and whether the run fully succeeded.

pub mod args;

use args::{CheckpointArgs, Command, DesignKind, Global, MatrixFormat};
use bentkit::classify::{
    census, emit_hasse, layer1::CensusProgress, records_jsonl, run_algorithm1, CensusOptions,
    ClassId, Classification, ClassifyOptions, HasseFormat, Layer1Input,
};
use bentkit::constructions::{catalog, CatalogEntry, CATALOG};
use bentkit::designs::{
    addition_design, addition_parameters, dev_graph, dev_graph_parameters, dev_support,
    dev_support_parameters, validate_parameters, DesignParameters, IncidenceStructure,
};
use bentkit::gf2::BitMatrix;
use bentkit::invariants::canon::search;
use bentkit::invariants::{
    are_isomorphic, ea_equivalent, fingerprint, function_fingerprint, gamma_rank,
};
use bentkit::suites::{counts_n6, run_suite, SuiteOptions, SuiteReport};
use bentkit::walsh::{degree_bound_check, dual, is_bent, nonlinearity, walsh_transform};
use bentkit::{Anf, Error, Result, VectorialFunction};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Outcome {
        Outcome {
            json,
            text,
            ok: true,
        }
    }
}

pub fn run(command: Command, g: &Global) -> Result<Outcome> {
    match command {
        Command::Analyze { input } => analyze(&input, g),
        Command::Design {
            input,
            kind,
            format,
            output,
        } => design(&input, kind, format, output.as_deref(), g),
        Command::Invariants { input, kind, aut } => invariants(&input, kind, aut, g),
        Command::Equivalent { first, second } => equivalent(&first, &second, g),
        Command::Isomorphic {
            first,
            second,
            kind,
            witness,
        } => isomorphic(&first, &second, kind, witness.as_deref(), g),
        Command::Classify {
            top,
            out_dir,
            checkpoint,
        } => classify(top, &out_dir, &checkpoint, g),
        Command::Enumerate {
            output,
            max_batches,
            checkpoint,
        } => enumerate(output.as_deref(), max_batches, &checkpoint, g),
        Command::Verify {
            suite,
            out_dir,
            checkpoint,
        } => verify(&suite, out_dir.as_deref(), &checkpoint, g),
        Command::Catalog { id } => show_catalog(id.as_deref(), g),
    }
}

fn progress_line(v: &Value) {
    eprintln!("{v}");
}

fn read_source(spec: &str) -> Result<String> {
    if spec == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    let p = Path::new(spec);
    if p.is_file() {
        return Ok(std::fs::read_to_string(p)?);
    }
    Ok(spec.to_string())
}

fn catalog_entry(spec: &str) -> Result<Option<&'static CatalogEntry>> {
    match spec.strip_prefix("catalog:") {
        Some(id) => {
            let id: ClassId = id.parse()?;
            Ok(Some(catalog(id.m, id.index)?))
        }
        None => Ok(None),
    }
}

/// A function given as "catalog:<id>", "-", a file path or inline text.
pub fn load_function(spec: &str, g: &Global) -> Result<VectorialFunction> {
    if let Some(e) = catalog_entry(spec)? {
        return Ok(e.function());
    }
    VectorialFunction::parse_input(&read_source(spec)?, g.vars, g.paper_anf)
}

/// A header line "rows cols" followed by at least one row marks a matrix file.
fn looks_like_matrix(text: &str) -> bool {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header_ok = lines.next().is_some_and(|h| {
        let t: Vec<&str> = h.split_whitespace().collect();
        t.len() == 2 && t.iter().all(|x| x.parse::<usize>().is_ok())
    });
    header_ok && lines.next().is_some()
}

enum DesignSource {
    Matrix(IncidenceStructure),
    Function(VectorialFunction),
}

fn load_design_source(spec: &str, g: &Global) -> Result<DesignSource> {
    if let Some(e) = catalog_entry(spec)? {
        return Ok(DesignSource::Function(e.function()));
    }
    let text = read_source(spec)?;
    if looks_like_matrix(&text) {
        return Ok(DesignSource::Matrix(IncidenceStructure::from_matrix(
            BitMatrix::parse(&text)?,
        )));
    }
    Ok(DesignSource::Function(VectorialFunction::parse_input(
        &text,
        g.vars,
        g.paper_anf,
    )?))
}

fn load_design(spec: &str, kind: DesignKind, g: &Global) -> Result<IncidenceStructure> {
    match load_design_source(spec, g)? {
        DesignSource::Matrix(d) => Ok(d),
        DesignSource::Function(f) => build_design(&f, kind).map(|(d, _)| d),
    }
}

fn build_design(
    f: &VectorialFunction,
    kind: DesignKind,
) -> Result<(IncidenceStructure, DesignParameters)> {
    let (n, m) = (f.num_vars(), f.num_outputs());
    match kind {
        DesignKind::Support => {
            if m != 1 {
                return Err(Error::InvalidInput(format!(
                    "support designs need a Boolean function, got m = {m}"
                )));
            }
            let params = dev_support_parameters(f.coord(0))?;
            Ok((dev_support(f.coord(0)), params))
        }
        DesignKind::Graph => {
            if !is_bent(f) {
                return Err(Error::NotBent(Some(
                    "the graph design is a divisible design only for bent functions".into(),
                )));
            }
            Ok((dev_graph(f), dev_graph_parameters(n, m)))
        }
        DesignKind::Addition => Ok((addition_design(f)?, addition_parameters(n, m))),
    }
}

fn anf_text(a: &Anf, g: &Global) -> String {
    if g.paper_anf && a.num_vars() <= 9 {
        a.to_digit_string()
    } else {
        a.to_string()
    }
}

fn coords_text(f: &VectorialFunction, g: &Global) -> Vec<String> {
    f.anfs().iter().map(|a| anf_text(a, g)).collect()
}

fn analyze(input: &str, g: &Global) -> Result<Outcome> {
    let f = load_function(input, g)?;
    let (n, m) = (f.num_vars(), f.num_outputs());
    let bent = is_bent(&f);
    let nl = nonlinearity(&f);
    let mut components = Vec::new();
    for b in 1..1u32 << m {
        let c = f.component(b)?;
        let w = walsh_transform(&c);
        let mut hist: BTreeMap<i32, usize> = BTreeMap::new();
        for &v in &w.values {
            *hist.entry(v).or_default() += 1;
        }
        let dual_anf = if w.is_flat() {
            Some(anf_text(&Anf::from_table(&dual(&c)?), g))
        } else {
            None
        };
        components.push(json!({
            "b": b,
            "anf": anf_text(&Anf::from_table(&c), g),
            "weight": c.weight(),
            "max_abs_walsh": w.max_abs(),
            "spectrum": hist.iter().map(|(v, k)| json!([v, k])).collect::<Vec<_>>(),
            "dual": dual_anf,
        }));
    }
    let json = json!({
        "n": n,
        "m": m,
        "coords": coords_text(&f, g),
        "degree": f.degree(),
        "bent": bent,
        "nonlinearity": nl,
        "degree_bound": degree_bound_check(&f),
        "components": components,
    });
    let mut text = format!(
        "({n},{m})-function of degree {}\nbent: {bent}\nnonlinearity: {nl}\n",
        f.degree()
    );
    if !bent {
        text.push_str("note: not bent; duals are only defined for flat spectra\n");
    }
    for c in &components {
        let spec: Vec<String> = c["spectrum"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|p| format!("{}^{}", p[0], p[1]))
            .collect();
        let _ = writeln!(
            text,
            "component {}: {}  spectrum {}",
            c["b"],
            c["anf"].as_str().unwrap_or(""),
            spec.join(" ")
        );
        if let Some(d) = c["dual"].as_str() {
            let _ = writeln!(text, "  dual: {d}");
        }
    }
    Ok(Outcome::ok(json, text))
}

fn kind_name(kind: DesignKind) -> &'static str {
    match kind {
        DesignKind::Support => "support",
        DesignKind::Graph => "graph",
        DesignKind::Addition => "addition",
    }
}

fn design(
    input: &str,
    kind: DesignKind,
    format: MatrixFormat,
    output: Option<&Path>,
    g: &Global,
) -> Result<Outcome> {
    let f = load_function(input, g)?;
    let (d, params) = build_design(&f, kind)?;
    let report = validate_parameters(&d, params);
    let matrix = match format {
        MatrixFormat::Text => d.matrix().to_text(),
        MatrixFormat::Hex => d.matrix().to_hex(),
    };
    match output {
        Some(p) => std::fs::write(p, &matrix)?,
        None => print!("{matrix}"),
    }
    let json = json!({
        "kind": kind_name(kind),
        "points": d.points(),
        "blocks": d.num_blocks(),
        "parameters": params.to_string(),
        "valid": report.passed,
        "failure": report.failure,
        "output": output.map(|p| p.display().to_string()),
    });
    let mut text = format!(
        "{} design: {} points, {} blocks\nparameters {}: {}\n",
        kind_name(kind),
        d.points(),
        d.num_blocks(),
        params,
        if report.passed { "valid" } else { "INVALID" }
    );
    if let Some(msg) = &report.failure {
        let _ = writeln!(text, "  {msg}");
    }
    Ok(Outcome {
        json,
        text,
        ok: report.passed,
    })
}

fn invariants(input: &str, kind: DesignKind, aut: bool, g: &Global) -> Result<Outcome> {
    let (d, function) = match load_design_source(input, g)? {
        DesignSource::Matrix(d) => (d, None),
        DesignSource::Function(f) => (build_design(&f, kind)?.0, Some(f)),
    };
    let fp = fingerprint(&d);
    let mut json = json!({
        "points": fp.points,
        "blocks": fp.blocks,
        "gf2_rank": fp.gf2_rank,
        "snf": fp.snf.to_string(),
        "fingerprint": fp.hash(),
        "parameters": d.infer_parameters().map(|p| p.to_string()),
    });
    let mut text = format!(
        "{} points, {} blocks\nparameters: {}\n2-rank: {}\nSNF: {}\nfingerprint: {}\n",
        fp.points,
        fp.blocks,
        json["parameters"].as_str().unwrap_or("none"),
        fp.gf2_rank,
        fp.snf,
        fp.hash()
    );
    if let Some(f) = &function {
        if is_bent(f) {
            let r = gamma_rank(f)?;
            let ff = function_fingerprint(f);
            json["gamma_rank"] = json!(r);
            json["function_fingerprint"] = json!(ff.hash());
            let _ = writeln!(text, "gamma rank: {r}\nfunction fingerprint: {}", ff.hash());
        }
    }
    if aut {
        let s = search(&d, g.budget)?;
        json["aut_order"] = json!(s.group_order.to_string());
        json["canonical_hash"] = json!(s.form.hash());
        json["search_nodes"] = json!(s.nodes);
        let _ = writeln!(
            text,
            "|Aut|: {}\ncanonical hash: {}",
            s.group_order,
            s.form.hash()
        );
    }
    Ok(Outcome::ok(json, text))
}

fn equivalent(first: &str, second: &str, g: &Global) -> Result<Outcome> {
    let a = load_function(first, g)?;
    let b = load_function(second, g)?;
    let eq = ea_equivalent(&a, &b, g.budget)?;
    Ok(Outcome::ok(
        json!({ "equivalent": eq }),
        format!(
            "{}\n",
            if eq {
                "EA-equivalent"
            } else {
                "not EA-equivalent"
            }
        ),
    ))
}

fn isomorphic(
    first: &str,
    second: &str,
    kind: DesignKind,
    witness: Option<&Path>,
    g: &Global,
) -> Result<Outcome> {
    let a = load_design(first, kind, g)?;
    let b = load_design(second, kind, g)?;
    let w = are_isomorphic(&a, &b, g.budget)?;
    if let (Some(path), Some(w)) = (witness, &w) {
        let doc = json!({ "point_map": w.point_map, "block_map": w.block_map });
        std::fs::write(path, serde_json::to_string(&doc)? + "\n")?;
    }
    Ok(Outcome::ok(
        json!({ "isomorphic": w.is_some() }),
        format!(
            "{}\n",
            if w.is_some() {
                "isomorphic (witness verified)"
            } else {
                "not isomorphic"
            }
        ),
    ))
}

fn require_vars(g: &Global) -> Result<usize> {
    g.vars
        .ok_or_else(|| Error::InvalidInput("pass the number of variables with -n".into()))
}

fn checkpoint_file(c: &CheckpointArgs, n: usize) -> Result<Option<PathBuf>> {
    match &c.checkpoint_dir {
        Some(d) => {
            std::fs::create_dir_all(d)?;
            Ok(Some(d.join(format!("census-n{n}.json"))))
        }
        None => Ok(None),
    }
}

fn census_progress(p: &CensusProgress) {
    progress_line(&serde_json::to_value(p).expect("progress serializes"));
}

fn classification_json(c: &Classification) -> Value {
    let top = c.records.iter().map(|r| r.id.m).max().unwrap_or(0);
    let layers: Vec<Value> = (1..=top)
        .map(|m| {
            json!({
                "m": m,
                "classes": c.layer(m).count(),
                "total": c.total(m).to_string(),
                "affine_free": c.affine_free_total(m).to_string(),
            })
        })
        .collect();
    json!({
        "n": c.n,
        "layers": layers,
        "lonely": c.lonely,
        "relations_passed": c.report.passed(),
        "relations": c.report.checks,
        "canonical_forms": c.canonical_forms,
    })
}

fn write_artifacts(c: &Classification, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("classes.jsonl"), records_jsonl(&c.records))?;
    std::fs::write(
        dir.join("hasse.dot"),
        emit_hasse(&c.records, &c.edges, HasseFormat::Dot),
    )?;
    std::fs::write(
        dir.join("hasse.json"),
        emit_hasse(&c.records, &c.edges, HasseFormat::Json),
    )?;
    std::fs::write(
        dir.join("report.json"),
        serde_json::to_string_pretty(&classification_json(c))? + "\n",
    )?;
    Ok(())
}

fn classification_text(c: &Classification, g: &Global) -> String {
    let mut s = String::new();
    let top = c.records.iter().map(|r| r.id.m).max().unwrap_or(0);
    for m in 1..=top {
        let _ = writeln!(
            s,
            "m = {m}: {} classes, {} functions ({} affine-free)",
            c.layer(m).count(),
            c.total(m),
            c.affine_free_total(m)
        );
        for r in c.layer(m) {
            let _ = writeln!(
                s,
                "  {}  {}  [{}]",
                r.id,
                r.cardinality,
                coords_text(&r.representative, g).join("; ")
            );
        }
    }
    for e in &c.edges {
        let _ = writeln!(
            s,
            "edge {} -> {}: {} friends, {} spaces",
            e.lower, e.upper, e.friends, e.spaces
        );
    }
    let failures: Vec<_> = c.report.failures().collect();
    let _ = writeln!(
        s,
        "relations: {}/{} passed",
        c.report.checks.len() - failures.len(),
        c.report.checks.len()
    );
    for f in failures {
        let _ = writeln!(s, "  FAIL {} {}: {}", f.relation, f.subject, f.detail);
    }
    s
}

fn classify(
    top: Option<usize>,
    out_dir: &Path,
    checkpoint: &CheckpointArgs,
    g: &Global,
) -> Result<Outcome> {
    let n = require_vars(g)?;
    let mut cb = census_progress;
    let cen = census(
        n,
        CensusOptions {
            checkpoint: checkpoint_file(checkpoint, n)?,
            collect: true,
            progress: Some(&mut cb),
            ..Default::default()
        },
    )?;
    let input = Layer1Input::from_census(&cen)?;
    drop(cen);
    let mut pl = progress_line;
    let c = run_algorithm1(
        &input,
        ClassifyOptions {
            budget: g.budget,
            top,
            align_to_catalog: true,
            progress: Some(&mut pl),
        },
    )?;
    write_artifacts(&c, out_dir)?;
    let mut json = classification_json(&c);
    json["out_dir"] = json!(out_dir.display().to_string());
    Ok(Outcome {
        json,
        text: classification_text(&c, g),
        ok: c.report.passed(),
    })
}

fn enumerate(
    output: Option<&Path>,
    max_batches: Option<u64>,
    checkpoint: &CheckpointArgs,
    g: &Global,
) -> Result<Outcome> {
    let n = require_vars(g)?;
    let file = checkpoint_file(checkpoint, n)?;
    // Checkpoints always keep the tables so that classify can resume from them.
    let collect = output.is_some() || file.is_some();
    let mut cb = census_progress;
    let cen = census(
        n,
        CensusOptions {
            checkpoint: file,
            collect,
            max_batches,
            progress: Some(&mut cb),
            ..Default::default()
        },
    )?;
    if let (Some(p), Some(t)) = (output, &cen.tables) {
        let mut s = String::with_capacity(t.len() * 17);
        let digits = (1usize << n).div_ceil(4);
        for w in t {
            let _ = writeln!(s, "{w:0digits$x}");
        }
        std::fs::write(p, s)?;
    }
    let classes: Vec<Value> = cen
        .state
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "degree": c.key.degree,
                "rank": c.key.rank,
                "count": c.count,
                "representative": anf_text(&Anf::from_table(&cen.representative(i)), g),
            })
        })
        .collect();
    let json = json!({
        "n": n,
        "complete": cen.is_complete(),
        "cursor": cen.state.cursor,
        "units": cen.state.units,
        "affine_free_bent": cen.state.total,
        "classes": classes,
    });
    let mut text = format!(
        "{} affine-free bent functions of {n} variables{}\n",
        cen.state.total,
        if cen.is_complete() {
            String::new()
        } else {
            format!(
                " so far ({}/{} work units)",
                cen.state.cursor, cen.state.units
            )
        }
    );
    for c in &classes {
        let _ = writeln!(
            text,
            "  degree {} 2-rank {}: {}  e.g. {}",
            c["degree"],
            c["rank"],
            c["count"],
            c["representative"].as_str().unwrap_or("")
        );
    }
    Ok(Outcome::ok(json, text))
}

fn suite_outcome(report: SuiteReport, extra: Option<Value>) -> Result<Outcome> {
    let mut json = serde_json::to_value(&report)?;
    json["passed"] = json!(report.passed());
    if let Some(x) = extra {
        json["classification"] = x;
    }
    Ok(Outcome {
        text: report.summary(),
        ok: report.passed(),
        json,
    })
}

fn verify(
    suite: &str,
    out_dir: Option<&Path>,
    checkpoint: &CheckpointArgs,
    g: &Global,
) -> Result<Outcome> {
    let mut pl = progress_line;
    let opts = SuiteOptions {
        budget: g.budget,
        checkpoint_dir: checkpoint.checkpoint_dir.clone(),
        progress: Some(&mut pl),
    };
    if let Some(d) = &opts.checkpoint_dir {
        std::fs::create_dir_all(d)?;
    }
    if suite == "counts-n6" {
        let start = std::time::Instant::now();
        let (checks, cls) = counts_n6(opts)?;
        let extra = match (&cls, out_dir) {
            (Some(c), Some(dir)) => {
                write_artifacts(c, dir)?;
                Some(classification_json(c))
            }
            (Some(c), None) => Some(classification_json(c)),
            _ => None,
        };
        let report = SuiteReport {
            suite: suite.into(),
            checks,
            seconds: start.elapsed().as_secs_f64(),
        };
        return suite_outcome(report, extra);
    }
    suite_outcome(run_suite(suite, opts)?, None)
}

fn entry_json(e: &CatalogEntry, g: &Global) -> Value {
    let f = e.function();
    json!({
        "id": e.id(),
        "n": 6,
        "m": e.m,
        "coords": coords_text(&f, g),
        "snf": e.snf,
        "code_aut_order": e.code_aut_order().to_string(),
        "dev_aut_order": e.dev_aut_order().to_string(),
    })
}

fn show_catalog(id: Option<&str>, g: &Global) -> Result<Outcome> {
    let entries: Vec<&CatalogEntry> = match id {
        Some(s) => {
            let id: ClassId = s.trim_start_matches("catalog:").parse()?;
            vec![catalog(id.m, id.index)?]
        }
        None => CATALOG.iter().collect(),
    };
    let list: Vec<Value> = entries.iter().map(|e| entry_json(e, g)).collect();
    let mut text = String::new();
    for e in &list {
        let coords: Vec<&str> = e["coords"]
            .as_array()
            .into_iter()
            .flatten()
            .filter_map(Value::as_str)
            .collect();
        let _ = writeln!(
            text,
            "{}  {}",
            e["id"].as_str().unwrap_or(""),
            coords.join("; ")
        );
        if id.is_some() {
            let _ = writeln!(
                text,
                "  SNF {}\n  |Aut(C(F))| = {}\n  |Aut(dev(G_F))| = {}",
                e["snf"].as_str().unwrap_or(""),
                e["code_aut_order"].as_str().unwrap_or(""),
                e["dev_aut_order"].as_str().unwrap_or("")
            );
        }
    }
    let json = if id.is_some() {
        list.into_iter().next().unwrap_or(Value::Null)
    } else {
        Value::Array(list)
    };
    Ok(Outcome::ok(json, text))
}
