//! Input documents. Parsing works on `serde_json::Value` directly so every
//! schema violation carries a JSON pointer.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::algebra::MixedVector;
use crate::diffcocycle::{DiffCochain, DiffComplex};
use crate::equivariant::{FiniteGroup, GroupAction};
use crate::error::{Error, Result};
use crate::gerbe::{GerbeCocycle, GerbeFlavor};
use crate::simplicial::{Cover, SimplicialComplex};

/// A JSON value together with its location.
#[derive(Clone)]
pub(crate) struct Node<'a> {
    pub value: &'a Value,
    pointer: String,
}

fn schema(pointer: &str, message: impl Into<String>) -> Error {
    Error::Schema { pointer: if pointer.is_empty() { "/".into() } else { pointer.into() }, message: message.into() }
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Node { value, pointer: String::new() }
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        schema(&self.pointer, message)
    }

    pub fn get(&self, key: &str) -> Option<Node<'a>> {
        let v = self.value.get(key)?;
        Some(Node { value: v, pointer: format!("{}/{key}", self.pointer) })
    }

    pub fn field(&self, key: &str) -> Result<Node<'a>> {
        if !self.value.is_object() {
            return Err(self.error("expected an object"));
        }
        self.get(key).ok_or_else(|| self.error(format!("missing field \"{key}\"")))
    }

    pub fn items(&self) -> Result<Vec<Node<'a>>> {
        let arr = self.value.as_array().ok_or_else(|| self.error("expected an array"))?;
        Ok(arr.iter().enumerate().map(|(i, v)| Node { value: v, pointer: format!("{}/{i}", self.pointer) }).collect())
    }

    pub fn str(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.error("expected a string"))
    }

    pub fn usize(&self) -> Result<usize> {
        self.value.as_u64().map(|v| v as usize).ok_or_else(|| self.error("expected a non-negative integer"))
    }

    pub fn int(&self) -> Result<BigInt> {
        match self.value {
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integral number")),
            Value::String(s) => s.trim().parse().map_err(|_| self.error(format!("\"{s}\" is not an integer"))),
            _ => Err(self.error("expected an integer")),
        }
    }

    /// An integer or a string `"p/q"`.
    pub fn rat(&self) -> Result<BigRational> {
        match self.value {
            Value::Number(_) => self.int().map(BigRational::from_integer),
            Value::String(s) => {
                let bad = || self.error(format!("\"{s}\" is not a rational number"));
                match s.split_once('/') {
                    Some((p, q)) => {
                        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                        if q == BigInt::from(0) {
                            return Err(self.error("zero denominator"));
                        }
                        Ok(BigRational::new(p, q))
                    }
                    None => s.trim().parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
                }
            }
            _ => Err(self.error("expected an integer or a \"p/q\" string")),
        }
    }

    pub fn ints(&self) -> Result<Vec<BigInt>> {
        self.items()?.iter().map(|n| n.int()).collect()
    }

    pub fn rats(&self) -> Result<Vec<BigRational>> {
        self.items()?.iter().map(|n| n.rat()).collect()
    }

    fn expect_len(&self, have: usize, want: usize, what: &str) -> Result<()> {
        if have != want {
            return Err(self.error(format!("{what}: expected {want} values, found {have}")));
        }
        Ok(())
    }
}

/// Where bundled fixtures live: `COCYCLE_FORGE_FIXTURES` or the crate's
/// `fixtures/` directory.
pub fn fixtures_dir() -> PathBuf {
    match std::env::var_os("COCYCLE_FORGE_FIXTURES") {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"),
    }
}

/// Resolves `fixture:NAME` to `NAME.json` in the fixture directory.
pub fn resolve(input: &str) -> PathBuf {
    match input.strip_prefix("fixture:") {
        Some(name) => fixtures_dir().join(format!("{name}.json")),
        None => PathBuf::from(input),
    }
}

pub fn read(path: &Path) -> Result<(Vec<u8>, Value)> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    let value = serde_json::from_slice(&bytes).map_err(|e| schema("", format!("not valid JSON: {e}")))?;
    Ok((bytes, value))
}

pub(crate) fn parse_complex(node: &Node<'_>) -> Result<SimplicialComplex> {
    if let Value::String(name) = node.value {
        // reference to a fixture file holding a complex document
        let (_, value) = read(&fixtures_dir().join(format!("{name}.json"))).map_err(|e| {
            if let Error::Io { .. } = e {
                node.error(format!("unknown fixture \"{name}\""))
            } else {
                e
            }
        })?;
        let root = Node::root(&value);
        return parse_complex(&root.field("complex").unwrap_or_else(|_| root.clone()))
            .map_err(|e| node.error(format!("fixture \"{name}\": {e}")));
    }
    let simplices = node.field("simplices")?;
    let mut gens = Vec::new();
    for s in simplices.items()? {
        let vs: Vec<usize> = s.items()?.iter().map(|n| n.usize()).collect::<Result<_>>()?;
        if vs.is_empty() {
            return Err(s.error("empty simplex"));
        }
        let mut sorted = vs.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(s.error(format!("simplex repeats vertex {}", w[0])));
        }
        gens.push(vs);
    }
    if gens.is_empty() {
        return Err(simplices.error("a complex needs at least one simplex"));
    }
    SimplicialComplex::from_simplices(&gens).map_err(|e| simplices.error(e.to_string()))
}

pub(crate) fn parse_cover(node: &Node<'_>, base: Arc<SimplicialComplex>) -> Result<Cover> {
    let built = match node.value {
        Value::String(s) => match s.as_str() {
            "star" => Cover::star_cover(base),
            "facet" => Cover::facet_cover(base),
            "two_set" => Cover::two_set_cover(base),
            other => return Err(node.error(format!("unknown cover \"{other}\" (star, facet, two_set or members)"))),
        },
        _ => {
            let members = node.field("members")?;
            let mut out = Vec::new();
            for m in members.items()? {
                let simplices: Vec<Vec<usize>> =
                    m.items()?.iter().map(|s| s.items()?.iter().map(|n| n.usize()).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
                out.push(SimplicialComplex::from_simplices(&simplices).map_err(|e| m.error(e.to_string()))?);
            }
            Cover::new(base, out)
        }
    };
    built.map_err(|e| node.error(e.to_string()))
}

pub(crate) fn parse_action(node: &Node<'_>) -> Result<GroupAction> {
    let complex = parse_complex(&node.field("complex")?)?;
    let gnode = node.field("group")?;
    let group = if let Some(n) = gnode.get("cyclic") {
        let n = n.usize()?;
        if n == 0 {
            return Err(gnode.error("cyclic group of order 0"));
        }
        FiniteGroup::cyclic(n)
    } else if let Some(t) = gnode.get("table") {
        let table = t.items()?.iter().map(|r| r.items()?.iter().map(|n| n.usize()).collect()).collect::<Result<_>>()?;
        FiniteGroup::from_table(table).map_err(|e| t.error(e.to_string()))?
    } else {
        return Err(gnode.error("expected {\"cyclic\": n} or {\"table\": [[...]]}"));
    };
    let pnode = node.field("perms")?;
    let perms = pnode.items()?.iter().map(|r| r.items()?.iter().map(|n| n.usize()).collect()).collect::<Result<_>>()?;
    GroupAction::new(group, complex, perms).map_err(|e| pnode.error(e.to_string()))
}

/// `{"s", "k", "c", "h", "omega"}` with values in canonical simplex order.
pub(crate) fn parse_diff_cochain(node: &Node<'_>, cx: &DiffComplex) -> Result<DiffCochain> {
    let s = node.field("s")?.usize()?;
    if s != cx.height() {
        return Err(node.error(format!("height {s} does not match the requested height {}", cx.height())));
    }
    let k = node.field("k")?.usize()?;
    let x = cx.base();
    let c_node = node.field("c")?;
    let c = c_node.ints()?;
    c_node.expect_len(c.len(), x.count(k), "c")?;
    let h_node = node.field("h")?;
    let h = h_node.rats()?;
    h_node.expect_len(h.len(), if k == 0 { 0 } else { x.count(k - 1) }, "h")?;
    let omega = match node.get("omega") {
        None => None,
        Some(w) if w.value.is_null() => None,
        Some(w) => {
            let v = w.rats()?;
            w.expect_len(v.len(), x.count(k), "omega")?;
            Some(v)
        }
    };
    match (&omega, k >= s) {
        (None, true) => return Err(node.error(format!("omega is required in degree {k} at height {s}"))),
        (Some(_), false) => return Err(node.error(format!("omega must be null in degree {k} below height {s}"))),
        _ => {}
    }
    DiffCochain::new(cx, k, c, h, omega).map_err(|e| node.error(e.to_string()))
}

pub(crate) fn parse_mixed(node: &Node<'_>) -> Result<MixedVector> {
    Ok(MixedVector::new(node.field("ints")?.ints()?, node.field("rats")?.rats()?))
}

pub(crate) fn parse_flavor(node: &Node<'_>) -> Result<GerbeFlavor> {
    let s = node.str()?;
    GerbeFlavor::parse(s).ok_or_else(|| node.error(format!("unknown flavor \"{s}\" (bare, with_connection, with_connection_and_curving)")))
}

pub(crate) fn parse_gerbe(node: &Node<'_>, zero: &GerbeCocycle) -> Result<GerbeCocycle> {
    if node.value.as_str() == Some("zero") {
        return Ok(zero.clone());
    }
    let layer = |key: &str, want: usize| -> Result<Vec<BigRational>> {
        match node.get(key) {
            None => Ok(vec![BigRational::from_integer(0.into()); want]),
            Some(n) => {
                let v = n.rats()?;
                n.expect_len(v.len(), want, key)?;
                Ok(v)
            }
        }
    };
    let b = layer("B", zero.b.len())?;
    let a = layer("A", zero.a.len())?;
    let f = layer("f", zero.f.len())?;
    let n = match node.get("n") {
        None => zero.n.clone(),
        Some(nn) => {
            let v = nn.ints()?;
            nn.expect_len(v.len(), zero.n.len(), "n")?;
            v
        }
    };
    Ok(GerbeCocycle { b, a, f, n })
}

/// JSON form of a differential cochain.
pub fn diff_cochain_json(x: &DiffCochain) -> Value {
    let rats = |v: &[BigRational]| Value::Array(v.iter().map(|q| Value::String(q.to_string())).collect());
    serde_json::json!({
        "s": x.height(),
        "k": x.degree(),
        "c": x.c().iter().map(|v| Value::String(v.to_string())).collect::<Vec<_>>(),
        "h": rats(x.h()),
        "omega": x.omega().map_or(Value::Null, rats),
    })
}

pub fn mixed_json(v: &MixedVector) -> Value {
    serde_json::json!({
        "ints": v.ints.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
        "rats": v.rats.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
    })
}
