//! JSON model files and coefficient files.

use std::collections::{BTreeMap, HashMap};

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use cubhom::asts::AsyncTransitionSystem;
use cubhom::cubical::EuclideanCubicalSet;
use cubhom::intlinalg::IntegerMatrix;
use cubhom::msets::{MSetSystem, RightMSet};
use cubhom::precubical::{HomologicalSystem, PrecubicalSet};
use cubhom::schema::SimplicialSchema;
use cubhom::trace::{Bimodule, CliqueSystem, IndependenceAlphabet, RightModule};

/// A parsed input file.
pub enum Model {
    Precubical(PrecubicalSet),
    Cubical(EuclideanCubicalSet),
    Alphabet(IndependenceAlphabet),
    MSet(IndependenceAlphabet, RightMSet),
    Ast(AsyncTransitionSystem),
    Schema(SimplicialSchema),
    /// A single matrix or a stream of boundary matrices in the text format.
    Matrix(String),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Precubical(_) => "precubical",
            Model::Cubical(_) => "cubical",
            Model::Alphabet(_) => "alphabet",
            Model::MSet(..) => "mset",
            Model::Ast(_) => "ast",
            Model::Schema(_) => "schema",
            Model::Matrix(_) => "matrix",
        }
    }
}

/// Error for inputs that are well-formed but of a kind the command cannot handle.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Unsupported(pub String);

pub fn parse_model(text: &str) -> Result<Model> {
    if !text.trim_start().starts_with('{') {
        return Ok(Model::Matrix(text.to_string()));
    }
    let value: Value = serde_json::from_str(text)?;
    let kind = match value.get("kind") {
        Some(Value::String(k)) => k.clone(),
        Some(other) => bail!("`kind` must be a string, found {other}"),
        None => infer_kind(&value)?.to_string(),
    };
    match kind.as_str() {
        "precubical" => Ok(Model::Precubical(precubical(value)?)),
        "cubical" => Ok(Model::Cubical(cubical(value)?)),
        "alphabet" => Ok(Model::Alphabet(alphabet(serde_json::from_value(value)?)?)),
        "mset" => {
            let (a, x) = mset(value)?;
            Ok(Model::MSet(a, x))
        }
        "ast" => Ok(Model::Ast(ast(value)?)),
        "schema" => Ok(Model::Schema(schema(value)?)),
        "matrix" => match value.get("text") {
            Some(Value::String(t)) => Ok(Model::Matrix(t.clone())),
            _ => bail!("a JSON matrix file needs a `text` field holding the matrix text format"),
        },
        other => Err(Unsupported(format!("unsupported kind `{other}`")).into()),
    }
}

fn infer_kind(value: &Value) -> Result<&'static str> {
    let has = |k: &str| value.get(k).is_some();
    Ok(if has("cells") && has("faces") {
        "precubical"
    } else if has("boxes") {
        "cubical"
    } else if has("transitions") {
        "ast"
    } else if has("carrier") {
        "mset"
    } else if has("maximal_faces") {
        "schema"
    } else if has("events") {
        "alphabet"
    } else {
        return Err(Unsupported("cannot tell the kind of model; add a `kind` field".into()).into());
    })
}

#[derive(Deserialize)]
struct PrecubicalFile {
    cells: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    faces: HashMap<String, HashMap<String, String>>,
}

fn precubical(value: Value) -> Result<PrecubicalSet> {
    let file: PrecubicalFile = serde_json::from_value(value)?;
    let mut by_degree: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (deg, cells) in file.cells {
        let n: usize = deg
            .parse()
            .with_context(|| format!("cell degree `{deg}` is not a number"))?;
        by_degree.insert(n, cells);
    }
    let top = by_degree.keys().next_back().copied();
    let cells: Vec<Vec<String>> = match top {
        Some(t) => (0..=t)
            .map(|n| by_degree.remove(&n).unwrap_or_default())
            .collect(),
        None => Vec::new(),
    };
    let mut faces = HashMap::new();
    for (cell, fs) in file.faces {
        let mut keyed = HashMap::new();
        for (key, target) in fs {
            keyed.insert(face_key(&key)?, target);
        }
        faces.insert(cell, keyed);
    }
    Ok(PrecubicalSet::from_named(cells, &faces)?)
}

fn face_key(key: &str) -> Result<(usize, u8)> {
    let (i, eps) = key
        .split_once(',')
        .ok_or_else(|| anyhow!("face key `{key}` must look like `i,eps`"))?;
    let i = i
        .trim()
        .parse()
        .with_context(|| format!("bad face index in `{key}`"))?;
    let eps: u8 = eps
        .trim()
        .parse()
        .with_context(|| format!("bad face side in `{key}`"))?;
    if eps > 1 {
        bail!("face side in `{key}` must be 0 or 1");
    }
    Ok((i, eps))
}

#[derive(Deserialize)]
struct CubicalFile {
    dim: usize,
    boxes: Vec<Vec<(i64, i64)>>,
}

fn cubical(value: Value) -> Result<EuclideanCubicalSet> {
    let file: CubicalFile = serde_json::from_value(value)?;
    Ok(EuclideanCubicalSet::from_generators(file.dim, &file.boxes)?)
}

#[derive(Deserialize)]
struct AlphabetFile {
    events: Vec<String>,
    #[serde(default)]
    independence: Vec<(String, String)>,
}

fn alphabet(file: AlphabetFile) -> Result<IndependenceAlphabet> {
    Ok(IndependenceAlphabet::new(&file.events, &file.independence)?)
}

#[derive(Deserialize)]
struct MSetFile {
    alphabet: AlphabetFile,
    carrier: Vec<String>,
    #[serde(default)]
    point: Option<String>,
    #[serde(default)]
    action: HashMap<String, HashMap<String, String>>,
}

/// Missing action entries go to the base point when there is one.
fn mset(value: Value) -> Result<(IndependenceAlphabet, RightMSet)> {
    let file: MSetFile = serde_json::from_value(value)?;
    let a = alphabet(file.alphabet)?;
    let position = |name: &str| {
        file.carrier
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| cubhom::Error::UnknownElement(name.to_string()))
    };
    let point = file.point.as_deref().map(position).transpose()?;
    for (x, row) in &file.action {
        position(x)?;
        for e in row.keys() {
            a.lookup(e)?;
        }
    }
    let mut action = Vec::with_capacity(file.carrier.len());
    for x in &file.carrier {
        let row = file.action.get(x);
        let mut targets = Vec::with_capacity(a.len());
        for e in a.events() {
            match (row.and_then(|r| r.get(e)), point) {
                (Some(t), _) => targets.push(position(t)?),
                (None, Some(p)) => targets.push(p),
                (None, None) => {
                    return Err(cubhom::Error::ActionNotCompatible(format!(
                        "no action of `{e}` on `{x}` and no base point"
                    ))
                    .into())
                }
            }
        }
        action.push(targets);
    }
    let x = RightMSet::new(&a, file.carrier.clone(), point, action)?;
    Ok((a, x))
}

#[derive(Deserialize)]
struct AstFile {
    states: Vec<String>,
    initial: String,
    events: Vec<String>,
    #[serde(default)]
    independence: Vec<(String, String)>,
    transitions: Vec<(String, String, String)>,
}

fn ast(value: Value) -> Result<AsyncTransitionSystem> {
    let file: AstFile = serde_json::from_value(value)?;
    let a = IndependenceAlphabet::new(&file.events, &file.independence)?;
    Ok(AsyncTransitionSystem::new(
        &file.states,
        &file.initial,
        a,
        &file.transitions,
    )?)
}

#[derive(Deserialize)]
struct SchemaFile {
    vertices: Vec<String>,
    maximal_faces: Vec<Vec<String>>,
}

fn schema(value: Value) -> Result<SimplicialSchema> {
    let file: SchemaFile = serde_json::from_value(value)?;
    let faces = file
        .maximal_faces
        .iter()
        .map(|f| {
            f.iter()
                .map(|v| {
                    file.vertices
                        .iter()
                        .position(|w| w == v)
                        .ok_or_else(|| cubhom::Error::UnknownElement(v.clone()))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimplicialSchema::from_maximal_faces(file.vertices, &faces)?)
}

/// JSON matrix: a list of rows whose entries are integers or decimal strings.
/// An empty list stands for the zero-row matrix of the expected shape.
pub fn json_matrix(value: &Value, expected: (usize, usize), what: &str) -> Result<IntegerMatrix> {
    let rows = value
        .as_array()
        .ok_or_else(|| anyhow!("{what}: matrix must be a list of rows"))?;
    if rows.is_empty() && expected.0 == 0 {
        return Ok(IntegerMatrix::zeros(0, expected.1));
    }
    let mut parsed: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| anyhow!("{what}: each row must be a list"))?;
        let mut out = Vec::with_capacity(row.len());
        for v in row {
            out.push(json_integer(v).with_context(|| what.to_string())?);
        }
        parsed.push(out);
    }
    let m = IntegerMatrix::from_rows(&parsed)?;
    if m.shape() != expected {
        return Err(cubhom::Error::RankMismatch(format!(
            "{what}: matrix is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            expected.0,
            expected.1
        ))
        .into());
    }
    Ok(m)
}

fn json_integer(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                bail!("`{n}` is not an integer")
            }
        }
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| anyhow!("`{s}` is not an integer")),
        other => bail!("`{other}` is not an integer"),
    }
}

fn read_coeff(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

fn field<'a>(value: &'a Value, key: &str) -> Option<&'a Value> {
    value.get(key).filter(|v| !v.is_null())
}

fn rank_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|r| r as usize)
        .ok_or_else(|| anyhow!("{what}: rank must be a non-negative integer"))
}

/// `{"ranks": {"cell": r}, "maps": {"cell": {"i,eps": [[...]]}}}`; cells
/// without a rank get rank 1.
pub fn precubical_system(x: &PrecubicalSet, text: &str) -> Result<HomologicalSystem> {
    let v = read_coeff(text)?;
    let empty = serde_json::Map::new();
    let ranks_in = field(&v, "ranks")
        .and_then(Value::as_object)
        .unwrap_or(&empty);
    let maps_in = field(&v, "maps")
        .and_then(Value::as_object)
        .unwrap_or(&empty);
    for name in ranks_in.keys().chain(maps_in.keys()) {
        if x.position(name).is_none() {
            return Err(cubhom::Error::UnknownElement(name.clone()).into());
        }
    }
    let top = x.len();
    let mut ranks = Vec::with_capacity(top);
    for n in 0..top {
        let mut row = Vec::new();
        for name in x.cells(n) {
            row.push(match ranks_in.get(name) {
                Some(r) => rank_of(r, name)?,
                None => 1,
            });
        }
        ranks.push(row);
    }
    let mut maps = Vec::with_capacity(top);
    for n in 0..top {
        let mut per_cell = Vec::new();
        for (k, name) in x.cells(n).iter().enumerate() {
            let given = maps_in.get(name);
            let mut pairs = Vec::with_capacity(n);
            for i in 1..=n {
                let mut pair = Vec::with_capacity(2);
                for eps in 0..2u8 {
                    let target = x.face(n, k, i, eps);
                    let shape = (ranks[n - 1][target], ranks[n][k]);
                    let key = format!("{i},{eps}");
                    let what = format!("map ({key}) of `{name}`");
                    let m = match given.and_then(|g| g.get(&key)) {
                        Some(m) => json_matrix(m, shape, &what)?,
                        None if shape.0 == shape.1 => IntegerMatrix::identity(shape.0),
                        None if shape.0 == 0 || shape.1 == 0 => {
                            IntegerMatrix::zeros(shape.0, shape.1)
                        }
                        None => bail!("{what} is missing"),
                    };
                    pair.push(m);
                }
                let back = pair.pop().expect("two sides");
                let front = pair.pop().expect("two sides");
                pairs.push([front, back]);
            }
            per_cell.push(pairs);
        }
        maps.push(per_cell);
    }
    Ok(HomologicalSystem::new(x, ranks, maps)?)
}

/// Coefficients over an alphabet, told apart by their keys.
pub enum AlphabetCoefficients {
    Right(RightModule),
    Bi(Bimodule),
    Cliques(CliqueSystem),
}

pub fn alphabet_coefficients(a: &IndependenceAlphabet, text: &str) -> Result<AlphabetCoefficients> {
    let v = read_coeff(text)?;
    if field(&v, "ranks").is_some() {
        return clique_system(a, &v).map(AlphabetCoefficients::Cliques);
    }
    let rank = rank_of(
        field(&v, "rank").ok_or_else(|| anyhow!("coefficient file needs `rank` or `ranks`"))?,
        "module",
    )?;
    let right = actions(a, field(&v, "action"), rank, "action")?;
    match field(&v, "left_action") {
        Some(left) => {
            let left = actions(a, Some(left), rank, "left_action")?;
            Ok(AlphabetCoefficients::Bi(Bimodule::new(
                a, rank, left, right,
            )?))
        }
        None => Ok(AlphabetCoefficients::Right(RightModule::new(
            a, rank, right,
        )?)),
    }
}

/// Generators without an entry act as the identity.
fn actions(
    a: &IndependenceAlphabet,
    v: Option<&Value>,
    rank: usize,
    what: &str,
) -> Result<Vec<IntegerMatrix>> {
    let empty = serde_json::Map::new();
    let given = match v {
        Some(Value::Object(m)) => m,
        Some(_) => bail!("`{what}` must map events to matrices"),
        None => &empty,
    };
    for e in given.keys() {
        a.lookup(e)?;
    }
    a.events()
        .iter()
        .map(|e| match given.get(e) {
            Some(m) => json_matrix(m, (rank, rank), &format!("{what} of `{e}`")),
            None => Ok(IntegerMatrix::identity(rank)),
        })
        .collect()
}

/// `{"ranks": {"": 1, "a": 1, "a,b": 1}, "maps": [{"clique": "", "generator": "a",
/// "left": [[..]], "right": [[..]]}]}`. Missing ranks are 1; missing maps are identities,
/// or zero maps when a side has rank 0.
fn clique_system(a: &IndependenceAlphabet, v: &Value) -> Result<CliqueSystem> {
    let mut ranks = HashMap::new();
    let given = field(v, "ranks")
        .and_then(Value::as_object)
        .ok_or_else(|| anyhow!("`ranks` must map cliques to ranks"))?;
    for (key, r) in given {
        let mut c = a.parse_word(key)?;
        c.sort_unstable();
        ranks.insert(c, rank_of(r, key)?);
    }
    for cs in a.all_cliques() {
        for c in cs {
            ranks.entry(c).or_insert(1);
        }
    }
    let mut maps = HashMap::new();
    if let Some(list) = field(v, "maps") {
        let list = list
            .as_array()
            .ok_or_else(|| anyhow!("`maps` must be a list"))?;
        for entry in list {
            let clique = entry.get("clique").and_then(Value::as_str).unwrap_or("");
            let generator = entry
                .get("generator")
                .and_then(Value::as_str)
                .ok_or_else(|| anyhow!("map entry needs a `generator`"))?;
            let mut c = a.parse_word(clique)?;
            c.sort_unstable();
            let g = a.lookup(generator)?;
            let mut full = c.clone();
            full.push(g);
            full.sort_unstable();
            let shape = (
                ranks.get(&c).copied().unwrap_or(0),
                ranks.get(&full).copied().unwrap_or(0),
            );
            let what = format!("map of `{clique}` by `{generator}`");
            let side = |k: &str| match entry.get(k) {
                Some(m) => json_matrix(m, shape, &format!("{what} ({k})")),
                None if shape.0 == shape.1 => Ok(IntegerMatrix::identity(shape.0)),
                None if shape.0 == 0 || shape.1 == 0 => Ok(IntegerMatrix::zeros(shape.0, shape.1)),
                None => bail!("{what} needs `{k}`"),
            };
            maps.insert((c, g), [side("left")?, side("right")?]);
        }
    }
    for cs in a.all_cliques() {
        for c in cs {
            for s in 0..c.len() {
                let mut d = c.clone();
                d.remove(s);
                let shape = (ranks[&d], ranks[&c]);
                if !maps.contains_key(&(d.clone(), c[s])) {
                    let m = if shape.0 == shape.1 {
                        IntegerMatrix::identity(shape.0)
                    } else if shape.0 == 0 || shape.1 == 0 {
                        IntegerMatrix::zeros(shape.0, shape.1)
                    } else {
                        bail!(
                            "map of `{}` by `{}` is missing",
                            a.word_name(&d),
                            a.event(c[s])
                        );
                    };
                    maps.insert((d, c[s]), [m.clone(), m]);
                }
            }
        }
    }
    Ok(CliqueSystem::new(a, ranks, maps)?)
}

/// `{"ranks": {"x": r}, "maps": {"x": {"a": [[..]]}}}`; missing ranks are 1
/// and missing maps are identities (or zero maps when a side has rank 0).
pub fn mset_system(a: &IndependenceAlphabet, x: &RightMSet, text: &str) -> Result<MSetSystem> {
    let v = read_coeff(text)?;
    let empty = serde_json::Map::new();
    let ranks_in = field(&v, "ranks")
        .and_then(Value::as_object)
        .unwrap_or(&empty);
    let maps_in = field(&v, "maps")
        .and_then(Value::as_object)
        .unwrap_or(&empty);
    for name in ranks_in.keys().chain(maps_in.keys()) {
        x.lookup(name)?;
    }
    let ranks = x
        .carrier()
        .iter()
        .map(|s| ranks_in.get(s).map_or(Ok(1), |r| rank_of(r, s)))
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::with_capacity(x.len());
    for (s, name) in x.carrier().iter().enumerate() {
        let given = maps_in.get(name);
        let mut row = Vec::with_capacity(a.len());
        for (e, event) in a.events().iter().enumerate() {
            let shape = (ranks[x.act(s, e)], ranks[s]);
            let what = format!("map of `{name}` by `{event}`");
            row.push(match given.and_then(|g| g.get(event)) {
                Some(m) => json_matrix(m, shape, &what)?,
                None if shape.0 == shape.1 => IntegerMatrix::identity(shape.0),
                None if shape.0 == 0 || shape.1 == 0 => IntegerMatrix::zeros(shape.0, shape.1),
                None => bail!("{what} is missing"),
            });
        }
        maps.push(row);
    }
    Ok(MSetSystem::new(a, x, ranks, maps)?)
}
