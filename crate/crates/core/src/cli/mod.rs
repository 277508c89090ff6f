//! Command-line front end: loads input documents, runs one pipeline per
//! input and renders a deterministic report.
//!
//! Input documents are JSON objects with a `kind`:
//!
//! | kind      | fields |
//! |-----------|--------|
//! | `complex` | `simplices`, optional `cocycles`, optional `random_cocycles` |
//! | `action`  | `complex`, `group` (`{"cyclic": n}` or `{"table": ...}`), `perms` |
//! | `cover`   | `complex`, `cover` (`"star"`, `"facet"`, `"two_set"` or `{"members": ...}`) |
//! | `descent` | `complex`, `cover`, and `cocycle` or `components` |
//! | `gerbe`   | `complex`, `cover`, `flavor`, `layers` (`"zero"` or `{"B", "A", "f", "n"}`) |
//! | `cochain` | `complex`, `cochain` |
//!
//! A `complex` field may name a fixture file instead of holding the
//! simplices. Cochain values follow the canonical simplex order: by
//! dimension, then lexicographically.

mod input;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use input::{diff_cochain_json, fixtures_dir, mixed_json, resolve};

use crate::descent::{DescentComplex, DescentDatum};
use crate::diffcocycle::{char_class, is_cocycle, random_cocycle, random_vector, DiffComplex};
use crate::equivariant::{equivariant_cohomology, ActionGroupoid, CechGroupoid};
use crate::error::{Error, Result};
use crate::gerbe::{curvature_periods, gerbe_curvature, gerbe_to_dc, validate_gerbe, GerbeCocycle, GerbeFlavor};
use input::{parse_action, parse_complex, parse_cover, parse_diff_cochain, parse_flavor, parse_gerbe, parse_mixed, read, Node};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Classify,
    EquivariantClassify,
    Glue,
    Gerbe,
    Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "cocycle-forge", version, about = "Exact differential cocycle computations on simplicial complexes")]
pub struct RunConfig {
    #[arg(long, value_enum)]
    pub command: Command,
    /// Input document; `fixture:NAME` loads NAME.json from the fixture directory.
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub height: usize,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include wall-clock timing (reports are then no longer reproducible byte for byte).
    #[arg(long)]
    pub timing: bool,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<String>) -> Self {
        Self { command, input: vec![input.into()], height: 1, degree: 3, format: Format::Json, seed: 0, out: None, timing: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Command,
    pub height: usize,
    pub degree: usize,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub results: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    /// Exit status implied by the results (verdicts of `check`).
    #[serde(skip)]
    pub status: i32,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Flat `key,value` projection of the JSON report.
    pub fn to_csv(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut rows = Vec::new();
        flatten("", &value, &mut rows);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["key", "value"]).expect("in-memory write");
        for (k, v) in rows {
            w.write_record([k, v]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&format!("{prefix}/{k}"), v, out)),
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            a.iter().enumerate().for_each(|(i, v)| flatten(&format!("{prefix}/{i}"), v, out))
        }
        Value::Array(a) => out.push((prefix.into(), a.iter().map(scalar).collect::<Vec<_>>().join(";"))),
        other => out.push((prefix.into(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// The machine-readable error object printed on failure.
pub fn error_json(e: &Error) -> Value {
    let mut obj = json!({ "kind": e.kind(), "message": e.to_string() });
    match e {
        Error::Schema { pointer, .. } => obj["pointer"] = json!(pointer),
        Error::Io { path, .. } => obj["path"] = json!(path),
        Error::LocalTrivialization { level, index, indices } => {
            obj["level"] = json!(level);
            obj["index"] = json!(index);
            obj["indices"] = json!(indices);
        }
        _ => {}
    }
    json!({ "error": obj })
}

/// 2 for schema violations, 1 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Schema { .. } => 2,
        _ => 1,
    }
}

fn kind<'a>(root: &Node<'a>) -> Result<&'a str> {
    root.field("kind")?.str()
}

fn doc_complex(root: &Node<'_>) -> Result<crate::simplicial::SimplicialComplex> {
    if kind(root)? == "complex" {
        parse_complex(root)
    } else {
        parse_complex(&root.field("complex")?)
    }
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn classify(cfg: &RunConfig, root: &Node<'_>, rng: &mut ChaCha8Rng) -> Result<Value> {
    let x = Arc::new(doc_complex(root)?);
    let cx = DiffComplex::new(x.clone(), cfg.height);
    let k = cfg.degree;
    let group = if k <= x.dim().map_or(0, |d| d + 1) { cx.integer_cohomology(k)?.group().to_string() } else { "0".into() };
    let mut out = json!({
        "group": group,
        "euler_characteristic": x.euler_characteristic(),
        "dc_h0_vanishes": cx.differential(0).is_injective(),
    });
    if let Some(list) = root.get("cocycles") {
        let mut classes = Vec::new();
        for node in list.items()? {
            let c = parse_diff_cochain(&node, &cx)?;
            classes.push(json!({ "degree": c.degree(), "class": strings(&char_class(&cx, &c)?) }));
        }
        out["cocycles"] = Value::Array(classes);
    }
    if let Some(n) = root.get("random_cocycles") {
        let mut classes = Vec::new();
        for _ in 0..n.usize()? {
            let (c, coords) = random_cocycle(&cx, k, rng)?;
            let class = char_class(&cx, &c)?;
            debug_assert_eq!(class, coords);
            classes.push(json!(strings(&class)));
        }
        out["random_classes"] = Value::Array(classes);
    }
    Ok(out)
}

fn equivariant(cfg: &RunConfig, root: &Node<'_>) -> Result<Value> {
    let group = match kind(root)? {
        "action" => equivariant_cohomology(&ActionGroupoid::new(parse_action(root)?), cfg.degree)?,
        "cover" => {
            let x = Arc::new(doc_complex(root)?);
            equivariant_cohomology(&CechGroupoid::new(parse_cover(&root.field("cover")?, x)?), cfg.degree)?
        }
        other => return Err(root.error(format!("equivariant-classify needs an action or cover document, not \"{other}\""))),
    };
    Ok(json!({ "group": group.to_string() }))
}

fn descent_complex(root: &Node<'_>, height: usize) -> Result<DescentComplex> {
    let x = Arc::new(doc_complex(root)?);
    let cover = parse_cover(&root.field("cover")?, x)?;
    DescentComplex::new(&cover, height)
}

fn descent_datum(dc: &DescentComplex, root: &Node<'_>, rng: &mut ChaCha8Rng) -> Result<DescentDatum> {
    if let Some(node) = root.get("components") {
        let items = node.items()?;
        let shapes = dc.total().shapes(3);
        let want = shapes.len().min(3);
        if items.len() != want {
            return Err(node.error(format!("expected {want} components, found {}", items.len())));
        }
        let mut components = Vec::new();
        for (item, shape) in items.iter().zip(&shapes) {
            let v = parse_mixed(item)?;
            if v.module() != *shape {
                return Err(item.error(format!("expected {} integers and {} rationals", shape.int_rank, shape.rat_dim)));
            }
            components.push(v);
        }
        return Ok(DescentDatum { components });
    }
    let node = root.field("cocycle")?;
    let x = parse_diff_cochain(&node, dc.global())?;
    if x.degree() != 3 {
        return Err(node.error("descent data start from a degree-3 cocycle"));
    }
    let restricted = dc.pullback_global(&x)?;
    if !is_cocycle(dc.global(), &x)? {
        return Err(Error::NotACocycle("the supplied cocycle is not closed".into()));
    }
    // a seeded exact perturbation, so the datum has nontrivial overlap parts
    let e = dc.total().unflatten(2, &random_vector(dc.total().module(2), rng, 2));
    Ok(DescentDatum::from_total(&restricted.add(&dc.total().delta(&e)?)))
}

fn glue(cfg: &RunConfig, root: &Node<'_>, rng: &mut ChaCha8Rng) -> Result<Value> {
    let dc = descent_complex(root, cfg.height)?;
    let d = descent_datum(&dc, root, rng)?;
    let glued = dc.glue(&d)?;
    Ok(json!({
        "levels": dc.levels().top() + 1,
        "global": diff_cochain_json(&glued.global),
        "class": strings(&char_class(dc.global(), &glued.global)?),
        "witness": glued.witness.parts.iter().map(mixed_json).collect::<Vec<_>>(),
        "witness_valid": dc.check_witness(&d, &glued)?,
    }))
}

fn gerbe(root: &Node<'_>) -> Result<Value> {
    let flavor = parse_flavor(&root.field("flavor")?)?;
    let dc = descent_complex(root, flavor.height())?;
    let g = parse_gerbe(&root.field("layers")?, &GerbeCocycle::zero(dc.levels()))?;
    let violations = validate_gerbe(dc.levels(), &g, flavor);
    if let Some(v) = violations.first() {
        return Err(Error::InvalidDatum(format!("gerbe condition {v} fails")));
    }
    let x = gerbe_to_dc(&dc, &g, flavor)?;
    let mut out = json!({
        "flavor": flavor.name(),
        "height": flavor.height(),
        "dc": diff_cochain_json(&x),
        "class": strings(&char_class(dc.global(), &x)?),
    });
    if flavor == GerbeFlavor::WithConnectionAndCurving {
        let omega = gerbe_curvature(dc.levels(), &g)?;
        out["periods"] = json!(strings(&curvature_periods(dc.global().base(), &omega)?));
        out["curvature"] = json!(strings(&omega));
    }
    Ok(out)
}

/// Outcome of validating one input document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointer: Option<String>,
    pub violations: Vec<String>,
}

impl Verdict {
    fn from_error(kind: Option<String>, e: &Error) -> Self {
        let pointer = match e {
            Error::Schema { pointer, .. } => Some(pointer.clone()),
            _ => None,
        };
        Self { valid: false, kind, error: Some(e.to_string()), pointer, violations: Vec::new() }
    }

    fn is_schema_failure(&self) -> bool {
        self.pointer.is_some()
    }
}

fn check_document(root: &Node<'_>, height: usize) -> Result<Vec<String>> {
    match kind(root)? {
        "complex" => doc_complex(root).map(|_| Vec::new()),
        "action" => parse_action(root).map(|_| Vec::new()),
        "cover" => {
            let x = Arc::new(doc_complex(root)?);
            parse_cover(&root.field("cover")?, x).map(|_| Vec::new())
        }
        "cochain" => {
            let cx = DiffComplex::new(Arc::new(doc_complex(root)?), height);
            let x = parse_diff_cochain(&root.field("cochain")?, &cx)?;
            Ok(if is_cocycle(&cx, &x)? { Vec::new() } else { vec!["d x = 0".into()] })
        }
        "descent" => {
            let dc = descent_complex(root, height)?;
            let d = descent_datum(&dc, root, &mut ChaCha8Rng::seed_from_u64(0))?;
            Ok(match dc.validate(&d) {
                Ok(_) => Vec::new(),
                Err(Error::InvalidDatum(m)) => vec![m],
                Err(e) => return Err(e),
            })
        }
        "gerbe" => {
            let flavor = parse_flavor(&root.field("flavor")?)?;
            let dc = descent_complex(root, flavor.height())?;
            let g = parse_gerbe(&root.field("layers")?, &GerbeCocycle::zero(dc.levels()))?;
            Ok(validate_gerbe(dc.levels(), &g, flavor))
        }
        other => Err(root.field("kind")?.error(format!("unknown kind \"{other}\""))),
    }
}

/// Schema and invariant validation of one file. Only I/O failures are
/// errors; everything else becomes a verdict.
pub fn validate_input(path: &Path, height: usize) -> Result<Verdict> {
    let (_, value) = match read(path) {
        Ok(v) => v,
        Err(e @ Error::Io { .. }) => return Err(e),
        Err(e) => return Ok(Verdict::from_error(None, &e)),
    };
    let root = Node::root(&value);
    let kind = kind(&root).ok().map(str::to_string);
    Ok(match check_document(&root, height) {
        Ok(violations) => Verdict { valid: violations.is_empty(), kind, error: None, pointer: None, violations },
        Err(e) => Verdict::from_error(kind, &e),
    })
}

/// Runs one command over all inputs.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut inputs = Vec::new();
    let mut results = Vec::new();
    let mut status = 0;
    for name in &cfg.input {
        let path = resolve(name);
        let (bytes, value) = read(&path)?;
        inputs.push(InputDigest { path: name.clone(), sha256: hex::encode(Sha256::digest(&bytes)) });
        let root = Node::root(&value);
        let result = match cfg.command {
            Command::Classify => classify(cfg, &root, &mut rng)?,
            Command::EquivariantClassify => equivariant(cfg, &root)?,
            Command::Glue => glue(cfg, &root, &mut rng)?,
            Command::Gerbe => gerbe(&root)?,
            Command::Check => {
                let v = validate_input(&path, cfg.height)?;
                if !v.valid {
                    status = status.max(if v.is_schema_failure() { 2 } else { 1 });
                }
                serde_json::to_value(v).expect("verdict serializes")
            }
        };
        results.push(result);
    }
    Ok(Report {
        tool: "cocycle-forge",
        version: env!("CARGO_PKG_VERSION"),
        command: cfg.command,
        height: cfg.height,
        degree: cfg.degree,
        seed: cfg.seed,
        inputs,
        results,
        timing_ms: cfg.timing.then(|| start.elapsed().as_millis()),
        status,
    })
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::Io { path: "<stdout>".into(), message: e.to_string() })
        }
    }
}

/// Parses the process arguments, runs, writes the report and returns the
/// exit status.
pub fn main() -> i32 {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cfg).and_then(|r| emit(&cfg, &r.render(cfg.format)).map(|_| r.status)) {
        Ok(status) => status,
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&error_json(&e)).expect("error serializes"));
            exit_code(&e)
        }
    }
}
