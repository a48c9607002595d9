//! TOML input documents (`format = "lcsc/1"`).
//!
//! Four kinds are accepted: an explicit `category` table, a directed
//! `graph`, a `kgraph` skeleton with factorization squares, and a `monoid`
//! multiplication table. See the README for the schema.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{CategoryError, Lcsc, LcscBuilder};
use crate::paths::{BoundedPaths, PathError, PathPresentation};

pub const FORMAT: &str = "lcsc/1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported format `{0}` (expected `{FORMAT}`)")]
    Format(String),
    #[error("{0}")]
    Schema(String),
    #[error("graph has cycles; set options.depth to query it with a path-length bound")]
    MissingDepth,
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Options {
    fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub name: String,
    pub range: String,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub name: String,
    pub range: String,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vec<u32>>,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryBody {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismSpec>,
    /// `[left, right, product]` name triples.
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    /// Fill in `r(α)·α = α` and `α·s(α) = α`.
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub implicit_units: bool,
    /// Length of the degree vectors. Needed only to give a degree map to a
    /// category with no morphisms besides its objects.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphBody {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KgraphBody {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
    /// Pairs of two-edge paths `[[e, f], [g, h]]` meaning `ef = gh`.
    #[serde(default)]
    pub squares: Vec<[[String; 2]; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidBody {
    pub elements: Vec<String>,
    pub identity: String,
    /// `table[i][j]` is `elements[i] · elements[j]`.
    pub table: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Category(CategoryBody),
    Graph(GraphBody),
    Kgraph(KgraphBody),
    Monoid(MonoidBody),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSpec {
    pub format: String,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
    #[serde(flatten)]
    pub body: Body,
}

/// What a document describes: a finite category, or the depth-bounded
/// path classes of a graph with cycles.
#[derive(Debug, Clone)]
pub enum Resolved {
    Finite(Lcsc),
    Bounded(BoundedPaths),
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

pub fn parse_str(text: &str) -> Result<InputSpec, InputError> {
    let spec: InputSpec = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((0, 0), |s| line_column(text, s.start));
        InputError::Syntax { line, column, message: e.message().to_string() }
    })?;
    if spec.format != FORMAT {
        return Err(InputError::Format(spec.format));
    }
    Ok(spec)
}

pub fn parse_file(path: &Path) -> Result<InputSpec, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_str(&text)
}

fn lookup(names: &BTreeMap<&str, usize>, name: &str) -> Result<usize, InputError> {
    names.get(name).copied().ok_or_else(|| InputError::Category(CategoryError::UnknownName(name.to_string())))
}

impl InputSpec {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("input specs serialize")
    }

    /// An explicit category document with the full composition table.
    pub fn from_category(cat: &Lcsc) -> Self {
        let objects: Vec<String> = cat.objects().iter().map(|&x| cat.name(x).to_string()).collect();
        let morphisms = cat
            .morphisms()
            .filter(|&a| !cat.is_object(a))
            .map(|a| MorphismSpec {
                name: cat.name(a).to_string(),
                range: cat.name(cat.range(a)).to_string(),
                source: cat.name(cat.source(a)).to_string(),
                degree: cat.degree(a).map(<[u32]>::to_vec),
            })
            .collect();
        let mut compose = Vec::new();
        for a in cat.morphisms() {
            for b in cat.morphisms() {
                if let Some(c) = cat.compose(a, b) {
                    compose.push([cat.name(a), cat.name(b), cat.name(c)].map(str::to_string));
                }
            }
        }
        InputSpec {
            format: FORMAT.into(),
            options: Options::default(),
            body: Body::Category(CategoryBody { objects, morphisms, compose, implicit_units: false, rank: cat.rank() }),
        }
    }

    pub fn resolve(&self) -> Result<Resolved, InputError> {
        match &self.body {
            Body::Category(c) => Ok(Resolved::Finite(category(c)?)),
            Body::Monoid(m) => Ok(Resolved::Finite(monoid(m)?)),
            Body::Graph(g) => paths(&self.options, presentation(&g.vertices, &g.edges, &[])?),
            Body::Kgraph(k) => {
                if k.edges.iter().any(|e| e.degree.is_none()) {
                    return Err(InputError::Schema("every k-graph edge needs a degree".into()));
                }
                paths(&self.options, presentation(&k.vertices, &k.edges, &k.squares)?)
            }
        }
    }

    /// The finite category, or an error for depth-bounded inputs.
    pub fn finite(&self) -> Result<Lcsc, crate::error::Error> {
        match self.resolve()? {
            Resolved::Finite(c) => Ok(c),
            Resolved::Bounded(_) => Err(crate::error::Error::Unbounded("this command")),
        }
    }
}

fn paths(options: &Options, p: PathPresentation) -> Result<Resolved, InputError> {
    if p.find_cycle().is_some() {
        let depth = options.depth.ok_or(InputError::MissingDepth)?;
        return Ok(Resolved::Bounded(p.bounded(depth)?));
    }
    Ok(Resolved::Finite(p.to_category()?))
}

fn presentation(vertices: &[String], edges: &[EdgeSpec], squares: &[[[String; 2]; 2]]) -> Result<PathPresentation, InputError> {
    let mut p = PathPresentation::new();
    for v in vertices {
        p.vertex(v)?;
    }
    for e in edges {
        p.edge(&e.name, &e.range, &e.source, e.degree.clone().unwrap_or_default())?;
    }
    for [l, r] in squares {
        p.relation(&[&l[0], &l[1]], &[&r[0], &r[1]])?;
    }
    Ok(p)
}

fn category(c: &CategoryBody) -> Result<Lcsc, InputError> {
    let mut b = LcscBuilder::new();
    let mut names: BTreeMap<&str, usize> = BTreeMap::new();
    for o in &c.objects {
        if names.insert(o, b.object(o.clone())).is_some() {
            return Err(InputError::Schema(format!("duplicate name `{o}`")));
        }
    }
    for m in &c.morphisms {
        let (r, s) = (lookup(&names, &m.range)?, lookup(&names, &m.source)?);
        if names.insert(&m.name, b.morphism(m.name.clone(), r, s)).is_some() {
            return Err(InputError::Schema(format!("duplicate name `{}`", m.name)));
        }
    }
    let degrees: Vec<&Vec<u32>> = c.morphisms.iter().filter_map(|m| m.degree.as_ref()).collect();
    if !degrees.is_empty() && degrees.len() != c.morphisms.len() {
        return Err(InputError::Schema("either every morphism has a degree or none does".into()));
    }
    if let (Some(k), Some(d)) = (c.rank, degrees.first()) {
        if d.len() != k {
            return Err(InputError::Schema(format!("rank is {k} but `{}` has a degree of length {}", c.morphisms[0].name, d.len())));
        }
    }
    if let Some(k) = c.rank.or(degrees.first().map(|d| d.len())) {
        for o in &c.objects {
            b.degree(names[o.as_str()], vec![0; k]);
        }
        for m in &c.morphisms {
            b.degree(names[m.name.as_str()], m.degree.clone().unwrap());
        }
    }
    for [l, r, p] in &c.compose {
        let (l, r, p) = (lookup(&names, l)?, lookup(&names, r)?, lookup(&names, p)?);
        b.compose(l, r, p);
    }
    if c.implicit_units {
        b.fill_units();
    }
    Ok(b.build()?)
}

fn monoid(m: &MonoidBody) -> Result<Lcsc, InputError> {
    let n = m.elements.len();
    if m.table.len() != n || m.table.iter().any(|row| row.len() != n) {
        return Err(InputError::Schema(format!("table must be {n}×{n}")));
    }
    let pos = m
        .elements
        .iter()
        .position(|e| *e == m.identity)
        .ok_or_else(|| InputError::Schema(format!("identity `{}` is not an element", m.identity)))?;
    let mut b = LcscBuilder::new();
    let mut names: BTreeMap<&str, usize> = BTreeMap::new();
    let x = b.object(m.identity.clone());
    names.insert(&m.identity, x);
    for (i, e) in m.elements.iter().enumerate() {
        if i != pos && names.insert(e, b.morphism(e.clone(), x, x)).is_some() {
            return Err(InputError::Schema(format!("duplicate element `{e}`")));
        }
    }
    for (i, row) in m.table.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            let (l, r, p) = (names[m.elements[i].as_str()], names[m.elements[j].as_str()], lookup(&names, p)?);
            b.compose(l, r, p);
        }
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rank_gives_a_degree_to_a_bare_object() {
        let doc = "format = \"lcsc/1\"\nkind = \"category\"\nobjects = [\"v\"]\nrank = 2\n";
        let cat = parse_str(doc).unwrap().finite().unwrap();
        assert_eq!(cat.degree(0), Some(&[0, 0][..]));

        let bad = "format = \"lcsc/1\"\nkind = \"category\"\nobjects = [\"v\"]\nrank = 2\n\
                   [[morphisms]]\nname = \"e\"\nrange = \"v\"\nsource = \"v\"\ndegree = [1]\n";
        assert!(matches!(parse_str(bad).unwrap().resolve(), Err(InputError::Schema(_))));
    }

    const GRAPH_A: &str = r#"
format = "lcsc/1"
kind = "graph"
vertices = ["v", "w"]

[[edges]]
name = "e"
range = "v"
source = "w"
"#;

    const MONOID_B: &str = r#"
format = "lcsc/1"
kind = "monoid"
elements = ["1", "g"]
identity = "1"
table = [["1", "g"], ["g", "1"]]
"#;

    const KGRAPH_C: &str = r#"
format = "lcsc/1"
kind = "kgraph"
vertices = ["A", "B", "C", "D"]
squares = [[["a", "c"], ["b", "d'"]]]

[[edges]]
name = "a"
range = "A"
source = "B"
degree = [1, 0]

[[edges]]
name = "b"
range = "A"
source = "C"
degree = [0, 1]

[[edges]]
name = "c"
range = "B"
source = "D"
degree = [0, 1]

[[edges]]
name = "d'"
range = "C"
source = "D"
degree = [1, 0]
"#;

    #[test]
    fn graph_document_gives_fixture_a() {
        let cat = parse_str(GRAPH_A).unwrap().finite().unwrap();
        assert_eq!(cat.len(), 3);
        assert_eq!(cat, fixtures::fixture_a().with_degree(vec![vec![0], vec![0], vec![1]]).unwrap());
    }

    #[test]
    fn monoid_document_gives_fixture_b() {
        let cat = parse_str(MONOID_B).unwrap().finite().unwrap();
        assert_eq!(cat, fixtures::fixture_b());
    }

    #[test]
    fn kgraph_document_gives_the_square() {
        let cat = parse_str(KGRAPH_C).unwrap().finite().unwrap();
        assert_eq!(cat.len(), 9);
        assert!(cat.validate_degree().unwrap().passed);
        assert_eq!(cat.compose(cat.id_of("a").unwrap(), cat.id_of("c").unwrap()), cat.compose(cat.id_of("b").unwrap(), cat.id_of("d'").unwrap()));
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_str("format = \"lcsc/1\"\nkind = = 3\n").unwrap_err();
        match err {
            InputError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_format_tag() {
        let text = GRAPH_A.replace("lcsc/1", "lcsc/9");
        assert_eq!(parse_str(&text).unwrap_err(), InputError::Format("lcsc/9".into()));
    }

    #[test]
    fn cycles_need_depth() {
        let text = GRAPH_A.replace("source = \"w\"", "source = \"v\"");
        assert_eq!(parse_str(&text).unwrap().resolve().unwrap_err(), InputError::MissingDepth);
        let bounded = format!("{text}\n[options]\ndepth = 3\n");
        let spec = parse_str(&bounded).unwrap();
        assert!(matches!(spec.resolve().unwrap(), Resolved::Bounded(_)));
        assert!(matches!(spec.finite(), Err(crate::error::Error::Unbounded(_))));
    }

    #[test]
    fn explicit_category_round_trip() {
        for (_, cat) in fixtures::all() {
            let spec = InputSpec::from_category(&cat);
            let again = parse_str(&spec.to_toml()).unwrap();
            assert_eq!(again, spec);
            assert_eq!(again.finite().unwrap(), cat);
        }
    }

    #[test]
    fn documents_round_trip() {
        for text in [GRAPH_A, MONOID_B, KGRAPH_C] {
            let spec = parse_str(text).unwrap();
            assert_eq!(parse_str(&spec.to_toml()).unwrap(), spec);
        }
    }
}
