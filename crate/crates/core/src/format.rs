//! The shared text format: canonical JSON with `"p/q"` rationals.
//!
//! Every value is written with sorted object keys, rationals in lowest terms
//! and no insignificant whitespace, so equal values serialize to identical
//! bytes. Reading reports two kinds of failure: a [`ParseError`] when the
//! text is not JSON or does not have the expected shape (annotated with the
//! line and column, or the JSON path of the offending node), and a domain
//! [`Error`] when the shape is right but the value violates an invariant.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use serde_json::{Map, Value};

use crate::boolalg::{BoolHom, FinBool};
use crate::canmodel::ConcreteModel;
use crate::disint::{ErgodicDecomposition, Kernel, RelProduct};
use crate::error::Error;
use crate::funcalg::{FiniteState, Func, FuncAlg, Norm};
use crate::kolmo::{self, ConsistentFamily, Cylinder, IndexUniverse};
use crate::lawcheck::LawReport;
use crate::proba::{InvariantFactor, MeasuredBool, MeasuredMorphism, Mes, ProbAlgebra, ProbMorphism, Tensor};
use crate::scalar::Scalar;
use crate::stoned::{DeleteMap, DeleteSpace, PointMap, StoneSpace};

/// Malformed input, with where it went wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// File name (or `<argument>`) the text came from.
    pub source: String,
    /// 1-based line and column, known for syntax errors.
    pub line_col: Option<(usize, usize)>,
    /// JSON path of the offending node, e.g. `$.measure.a`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line_col {
            Some((line, col)) => write!(f, "{}:{line}:{col}: {}", self.source, self.message),
            None => write!(f, "{}: at {}: {}", self.source, self.path, self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// Why a document could not be read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormatError {
    Parse(ParseError),
    Domain(Error),
}

impl From<Error> for FormatError {
    fn from(e: Error) -> Self {
        FormatError::Domain(e)
    }
}

impl From<ParseError> for FormatError {
    fn from(e: ParseError) -> Self {
        FormatError::Parse(e)
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Parse(e) => e.fmt(f),
            FormatError::Domain(e) => write!(f, "{}: {e}", e.name()),
        }
    }
}

impl std::error::Error for FormatError {}

pub type Result<T> = std::result::Result<T, FormatError>;

/// A position inside a parsed document.
#[derive(Clone, Copy)]
pub struct Node<'a> {
    value: &'a Value,
    source: &'a str,
    path: &'a Path<'a>,
}

/// Linked JSON path, built on the stack while descending.
pub enum Path<'a> {
    Root,
    Key(&'a Path<'a>, &'a str),
    Index(&'a Path<'a>, usize),
}

impl fmt::Display for Path<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Path::Root => f.write_str("$"),
            Path::Key(parent, key) => write!(f, "{parent}.{key}"),
            Path::Index(parent, i) => write!(f, "{parent}[{i}]"),
        }
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

impl<'a> Node<'a> {
    pub fn value(&self) -> &'a Value {
        self.value
    }

    pub fn error(&self, message: impl Into<String>) -> FormatError {
        FormatError::Parse(ParseError {
            source: self.source.to_string(),
            line_col: None,
            path: self.path.to_string(),
            message: message.into(),
        })
    }

    fn expected(&self, what: &str) -> FormatError {
        self.error(format!("expected {what}, found {}", kind(self.value)))
    }

    /// Descends into `key`; `f` receives the child node.
    pub fn field<T>(&self, key: &str, f: impl FnOnce(Node<'_>) -> Result<T>) -> Result<T> {
        let map = self.object()?;
        let value = map.get(key).ok_or_else(|| self.error(format!("missing key `{key}`")))?;
        let path = Path::Key(self.path, key);
        f(Node {
            value,
            source: self.source,
            path: &path,
        })
    }

    pub fn optional<T>(&self, key: &str, f: impl FnOnce(Node<'_>) -> Result<T>) -> Result<Option<T>> {
        match self.object()?.get(key) {
            None => Ok(None),
            Some(_) => self.field(key, f).map(Some),
        }
    }

    pub fn object(&self) -> Result<&'a Map<String, Value>> {
        self.value.as_object().ok_or_else(|| self.expected("an object"))
    }

    /// Rejects keys outside `allowed` (catches typos in hand-written files).
    pub fn only_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.object()?.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(self.error(format!("unexpected key `{k}`; expected {}", allowed.join(", ")))),
            None => Ok(()),
        }
    }

    pub fn str(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.expected("a string"))
    }

    pub fn bool(&self) -> Result<bool> {
        self.value.as_bool().ok_or_else(|| self.expected("a boolean"))
    }

    pub fn u64(&self) -> Result<u64> {
        self.value.as_u64().ok_or_else(|| self.expected("a non-negative integer"))
    }

    /// A rational as `"p/q"`, `"p"` or a JSON integer.
    pub fn scalar<S: Scalar>(&self) -> Result<S> {
        let text = match self.value {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            _ => return Err(self.expected("a rational like \"1/3\"")),
        };
        S::from_text(&text).ok_or_else(|| self.error(format!("`{text}` is not a rational p/q")))
    }

    pub fn array<T>(&self, mut f: impl FnMut(Node<'_>) -> Result<T>) -> Result<Vec<T>> {
        let items = self.value.as_array().ok_or_else(|| self.expected("an array"))?;
        items
            .iter()
            .enumerate()
            .map(|(i, value)| {
                let path = Path::Index(self.path, i);
                f(Node {
                    value,
                    source: self.source,
                    path: &path,
                })
            })
            .collect()
    }

    /// Object entries in key order.
    pub fn entries<T>(&self, mut f: impl FnMut(&str, Node<'_>) -> Result<T>) -> Result<Vec<T>> {
        self.object()?
            .iter()
            .map(|(key, value)| {
                let path = Path::Key(self.path, key);
                f(
                    key,
                    Node {
                        value,
                        source: self.source,
                        path: &path,
                    },
                )
            })
            .collect()
    }

    pub fn strings(&self) -> Result<Vec<String>> {
        self.array(|n| n.str().map(str::to_string))
    }

    pub fn string_map(&self) -> Result<BTreeMap<String, String>> {
        Ok(self.entries(|k, n| Ok((k.to_string(), n.str()?.to_string())))?.into_iter().collect())
    }

    pub fn scalar_map<S: Scalar>(&self) -> Result<BTreeMap<String, S>> {
        Ok(self.entries(|k, n| Ok((k.to_string(), n.scalar()?)))?.into_iter().collect())
    }
}

/// Parses `text` as JSON and hands the root node to `f`.
pub fn read<T>(text: &str, source: &str, f: impl FnOnce(Node<'_>) -> Result<T>) -> Result<T> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        FormatError::Parse(ParseError {
            source: source.to_string(),
            line_col: Some((e.line(), e.column())),
            path: "$".into(),
            message: strip_position(&e.to_string()),
        })
    })?;
    let root = Path::Root;
    f(Node {
        value: &value,
        source,
        path: &root,
    })
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

/// Canonical text: sorted keys, compact.
pub fn canonical(value: &Value) -> String {
    // serde_json's default map is ordered by key
    serde_json::to_string(value).expect("JSON values always serialize")
}

/// Values with a self-contained text form.
pub trait Codec: Sized {
    fn encode(&self) -> Value;
    fn decode(node: Node<'_>) -> Result<Self>;
}

pub fn to_text<T: Codec>(value: &T) -> String {
    canonical(&value.encode())
}

pub fn from_text<T: Codec>(text: &str, source: &str) -> Result<T> {
    read(text, source, T::decode)
}

pub fn scalar<S: Scalar>(value: &S) -> Value {
    Value::String(value.to_text())
}

pub fn gaussian<S: Scalar>(z: &Complex<S>) -> Value {
    object([("re", scalar(&z.re)), ("im", scalar(&z.im))])
}

pub fn object<'k>(entries: impl IntoIterator<Item = (&'k str, Value)>) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn strings<'s>(items: impl IntoIterator<Item = &'s String>) -> Value {
    Value::Array(items.into_iter().map(|s| Value::String(s.clone())).collect())
}

fn string_map(map: BTreeMap<String, String>) -> Value {
    Value::Object(map.into_iter().map(|(k, v)| (k, Value::String(v))).collect())
}

fn scalar_map<S: Scalar>(names: &[String], values: &[S]) -> Value {
    Value::Object(names.iter().cloned().zip(values.iter().map(scalar)).collect())
}

fn index_map(source: &[String], target: &[String], map: &[usize]) -> Value {
    Value::Object(
        source
            .iter()
            .zip(map)
            .map(|(a, &b)| (a.clone(), Value::String(target[b].clone())))
            .collect(),
    )
}

/// Reads `{name: target name}` into indices, requiring every source name.
fn decode_index_map(node: Node<'_>, source: &[String], target: &[String]) -> Result<Vec<usize>> {
    let named = node.string_map()?;
    let position = |names: &[String], n: &str| names.binary_search_by(|x| x.as_str().cmp(n)).ok();
    if let Some(k) = named.keys().find(|k| position(source, k).is_none()) {
        return Err(Error::UnknownAtom { atom: k.clone() }.into());
    }
    source
        .iter()
        .map(|a| {
            let b = named.get(a).ok_or_else(|| node.error(format!("no image given for `{a}`")))?;
            position(target, b).ok_or_else(|| Error::UnknownAtom { atom: b.clone() }.into())
        })
        .collect()
}

impl<T: Codec> Codec for Vec<T> {
    fn encode(&self) -> Value {
        Value::Array(self.iter().map(Codec::encode).collect())
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.array(T::decode)
    }
}

// ---------------------------------------------------------------- algebras and spaces

impl Codec for FinBool {
    fn encode(&self) -> Value {
        object([("atoms", strings(self.atoms()))])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["atoms"])?;
        Ok(FinBool::new(node.field("atoms", |n| n.strings())?)?)
    }
}

/// `{"source", "target", "dual_map": {target atom: source atom}}`.
impl Codec for BoolHom {
    fn encode(&self) -> Value {
        object([
            ("source", self.source().encode()),
            ("target", self.target().encode()),
            ("dual_map", string_map(self.dual_named())),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["source", "target", "dual_map"])?;
        let source: FinBool = node.field("source", FinBool::decode)?;
        let target: FinBool = node.field("target", FinBool::decode)?;
        let dual = node.field("dual_map", |n| decode_index_map(n, target.atoms(), source.atoms()))?;
        Ok(BoolHom::from_dual(source, target, dual)?)
    }
}

impl Codec for StoneSpace {
    fn encode(&self) -> Value {
        object([("points", strings(self.points()))])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["points"])?;
        Ok(StoneSpace::new(node.field("points", |n| n.strings())?)?)
    }
}

impl Codec for PointMap {
    fn encode(&self) -> Value {
        object([
            ("source", self.source().encode()),
            ("target", self.target().encode()),
            ("map", index_map(self.source().points(), self.target().points(), self.map())),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["source", "target", "map"])?;
        let source: StoneSpace = node.field("source", StoneSpace::decode)?;
        let target: StoneSpace = node.field("target", StoneSpace::decode)?;
        let map = node.field("map", |n| decode_index_map(n, source.points(), target.points()))?;
        Ok(PointMap::new(source, target, map)?)
    }
}

impl Codec for DeleteSpace {
    fn encode(&self) -> Value {
        object([("points", strings(self.space().points())), ("null", strings(&self.null_names()))])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["points", "null"])?;
        let space = StoneSpace::new(node.field("points", |n| n.strings())?)?;
        let null = node.field("null", |n| n.strings())?;
        Ok(DeleteSpace::from_names(space, &null)?)
    }
}

impl Codec for DeleteMap {
    fn encode(&self) -> Value {
        object([
            ("source", self.source().encode()),
            ("target", self.target().encode()),
            (
                "map",
                index_map(self.source().space().points(), self.target().space().points(), self.map()),
            ),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["source", "target", "map"])?;
        let source: DeleteSpace = node.field("source", DeleteSpace::decode)?;
        let target: DeleteSpace = node.field("target", DeleteSpace::decode)?;
        let map = node.field("map", |n| decode_index_map(n, source.space().points(), target.space().points()))?;
        Ok(DeleteMap::new(source, target, map)?)
    }
}

// ---------------------------------------------------------------- measures

/// Reads `{"atoms", "measure"}`; every atom needs a mass.
fn decode_measure<S: Scalar>(node: Node<'_>) -> Result<(FinBool, Vec<S>)> {
    node.only_keys(&["atoms", "measure"])?;
    let algebra = FinBool::new(node.field("atoms", |n| n.strings())?)?;
    let masses: BTreeMap<String, S> = node.field("measure", |n| n.scalar_map())?;
    if let Some(k) = masses.keys().find(|k| algebra.index_of(k).is_none()) {
        return Err(Error::UnknownAtom { atom: k.clone() }.into());
    }
    let measure = algebra
        .atoms()
        .iter()
        .map(|a| {
            masses
                .get(a)
                .cloned()
                .ok_or_else(|| node.error(format!("missing key `measure.{a}`")))
        })
        .collect::<Result<Vec<S>>>()?;
    Ok((algebra, measure))
}

impl<S: Scalar> Codec for MeasuredBool<S> {
    fn encode(&self) -> Value {
        object([
            ("atoms", strings(self.algebra().atoms())),
            ("measure", scalar_map(self.algebra().atoms(), self.measure())),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        let (algebra, measure) = decode_measure(node)?;
        Ok(MeasuredBool::new(algebra, measure)?)
    }
}

impl<S: Scalar> Codec for ProbAlgebra<S> {
    fn encode(&self) -> Value {
        self.inc().encode()
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        let (algebra, measure) = decode_measure(node)?;
        Ok(ProbAlgebra::new(algebra, measure)?)
    }
}

impl<S: Scalar> Codec for ProbMorphism<S> {
    fn encode(&self) -> Value {
        object([
            ("source", self.source().encode()),
            ("target", self.target().encode()),
            ("map", string_map(self.map_named())),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["source", "target", "map"])?;
        let source: ProbAlgebra<S> = node.field("source", ProbAlgebra::decode)?;
        let target: ProbAlgebra<S> = node.field("target", ProbAlgebra::decode)?;
        let map = node.field("map", |n| decode_index_map(n, source.atoms(), target.atoms()))?;
        Ok(ProbMorphism::new(source, target, map)?)
    }
}

impl<S: Scalar> Codec for MeasuredMorphism<S> {
    fn encode(&self) -> Value {
        object([
            ("source", self.source().encode()),
            ("target", self.target().encode()),
            (
                "map",
                index_map(self.source().algebra().atoms(), self.target().algebra().atoms(), self.map()),
            ),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["source", "target", "map"])?;
        let source: MeasuredBool<S> = node.field("source", MeasuredBool::decode)?;
        let target: MeasuredBool<S> = node.field("target", MeasuredBool::decode)?;
        let map = node.field("map", |n| decode_index_map(n, source.algebra().atoms(), target.algebra().atoms()))?;
        Ok(MeasuredMorphism::new(source, target, map)?)
    }
}

/// `{"algebra", "quotient", "inclusion"}`.
impl<S: Scalar> Codec for Mes<S> {
    fn encode(&self) -> Value {
        object([
            ("algebra", self.algebra.encode()),
            ("quotient", self.quotient.encode()),
            ("inclusion", self.inclusion.encode()),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["algebra", "quotient", "inclusion"])?;
        Ok(Mes {
            algebra: node.field("algebra", ProbAlgebra::decode)?,
            quotient: node.field("quotient", BoolHom::decode)?,
            inclusion: node.field("inclusion", MeasuredMorphism::decode)?,
        })
    }
}

/// `{"algebra", "marginals"}`; coordinates are recovered from the marginals.
impl<S: Scalar> Codec for Tensor<S> {
    fn encode(&self) -> Value {
        object([("algebra", self.algebra.encode()), ("marginals", self.marginals.encode())])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["algebra", "marginals"])?;
        let algebra: ProbAlgebra<S> = node.field("algebra", ProbAlgebra::decode)?;
        let marginals: Vec<ProbMorphism<S>> = node.field("marginals", Vec::decode)?;
        if let Some(m) = marginals.iter().find(|m| *m.source() != algebra) {
            return Err(node.error(format!("marginal {:?} does not start at the algebra", m.map_named())));
        }
        let coords = (0..algebra.atom_count())
            .map(|a| marginals.iter().map(|m| m.map()[a]).collect())
            .collect();
        Ok(Tensor {
            algebra,
            marginals,
            coords,
        })
    }
}

/// `{"algebra", "factor"}`; orbits are the fibers of the factor map.
impl<S: Scalar> Codec for InvariantFactor<S> {
    fn encode(&self) -> Value {
        object([("algebra", self.algebra.encode()), ("factor", self.factor.encode())])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["algebra", "factor"])?;
        let algebra: ProbAlgebra<S> = node.field("algebra", ProbAlgebra::decode)?;
        let factor: ProbMorphism<S> = node.field("factor", ProbMorphism::decode)?;
        if *factor.target() != algebra {
            return Err(node.error("the factor map must end at the invariant algebra"));
        }
        let orbits = (0..algebra.atom_count())
            .map(|y| (0..factor.source().atom_count()).filter(|&a| factor.map()[a] == y).collect())
            .collect();
        Ok(InvariantFactor { algebra, factor, orbits })
    }
}

// ---------------------------------------------------------------- functions

/// `{"re": {atom: value}, "im": {atom: value}}`; a missing `im` is zero.
pub fn encode_func<S: Scalar>(a: &FuncAlg<S>, f: &Func<S>) -> Value {
    let re: Vec<S> = f.0.iter().map(|z| z.re.clone()).collect();
    let im: Vec<S> = f.0.iter().map(|z| z.im.clone()).collect();
    object([("re", scalar_map(a.base().atoms(), &re)), ("im", scalar_map(a.base().atoms(), &im))])
}

pub fn decode_func<S: Scalar>(a: &FuncAlg<S>, node: Node<'_>) -> Result<Func<S>> {
    node.only_keys(&["re", "im"])?;
    let atoms = a.base().atoms();
    let part = |n: Node<'_>, required: bool| -> Result<Vec<S>> {
        let named: BTreeMap<String, S> = n.scalar_map()?;
        if let Some(k) = named.keys().find(|k| a.base().algebra().index_of(k).is_none()) {
            return Err(Error::UnknownAtom { atom: k.clone() }.into());
        }
        atoms
            .iter()
            .map(|x| match named.get(x) {
                Some(v) => Ok(v.clone()),
                None if required => Err(n.error(format!("no value given for `{x}`"))),
                None => Ok(S::zero()),
            })
            .collect()
    };
    let re = node.field("re", |n| part(n, true))?;
    let im = node.optional("im", |n| part(n, false))?.unwrap_or_else(|| vec![S::zero(); atoms.len()]);
    Ok(Func(re.into_iter().zip(im).map(|(r, i)| Complex::new(r, i)).collect()))
}

impl<S: Scalar> Codec for Norm<S> {
    fn encode(&self) -> Value {
        object([
            ("p", Value::String(self.p.to_string())),
            ("value", scalar(&self.value)),
            ("squared", Value::Bool(self.squared)),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["p", "value", "squared"])?;
        Ok(Norm {
            p: node.field("p", |n| Ok(n.str()?.parse()?))?,
            value: node.field("value", |n| n.scalar())?,
            squared: node.field("squared", |n| n.bool())?,
        })
    }
}

/// `{"points": [...], "values": {point: λ(1_point)}}`.
impl<S: Scalar> Codec for FiniteState<S> {
    fn encode(&self) -> Value {
        object([
            ("points", strings(self.points().atoms())),
            ("values", scalar_map(self.points().atoms(), self.values())),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["points", "values"])?;
        let points = FinBool::new(node.field("points", |n| n.strings())?)?;
        let named: BTreeMap<String, S> = node.field("values", |n| n.scalar_map())?;
        if let Some(k) = named.keys().find(|k| points.index_of(k).is_none()) {
            return Err(Error::UnknownAtom { atom: k.clone() }.into());
        }
        let values = points
            .atoms()
            .iter()
            .map(|p| named.get(p).cloned().ok_or_else(|| node.error(format!("missing key `values.{p}`"))))
            .collect::<Result<Vec<S>>>()?;
        Ok(FiniteState::new(points, values)?)
    }
}

// ---------------------------------------------------------------- models and kernels

/// `{"modeled", "points", "measure", "inclusion": {atom: point}}`.
impl<S: Scalar> Codec for ConcreteModel<S> {
    fn encode(&self) -> Value {
        object([
            ("modeled", self.modeled().encode()),
            ("points", strings(self.space().points())),
            ("measure", scalar_map(self.space().points(), self.measure())),
            ("inclusion", index_map(self.modeled().atoms(), self.space().points(), self.inclusion())),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["modeled", "points", "measure", "inclusion"])?;
        let modeled: ProbAlgebra<S> = node.field("modeled", ProbAlgebra::decode)?;
        let space = StoneSpace::new(node.field("points", |n| n.strings())?)?;
        let named: BTreeMap<String, S> = node.field("measure", |n| n.scalar_map())?;
        if let Some(k) = named.keys().find(|k| space.index_of(k).is_none()) {
            return Err(Error::UnknownAtom { atom: k.clone() }.into());
        }
        let measure = space
            .points()
            .iter()
            .map(|p| named.get(p).cloned().ok_or_else(|| node.error(format!("missing key `measure.{p}`"))))
            .collect::<Result<Vec<S>>>()?;
        let inclusion = node.field("inclusion", |n| decode_index_map(n, modeled.atoms(), space.points()))?;
        Ok(ConcreteModel::new(modeled, space, measure, inclusion)?)
    }
}

/// `{y: {x: μ_y(x)}}` with every entry written out.
pub fn encode_kernel<S: Scalar>(k: &Kernel<S>) -> Value {
    let x = k.base().source().atoms();
    Value::Object(
        k.base()
            .target()
            .atoms()
            .iter()
            .zip(k.fibers())
            .map(|(y, fiber)| (y.clone(), scalar_map(x, fiber)))
            .collect(),
    )
}

/// The inverse of [`encode_kernel`] over a known base; missing entries are 0.
pub fn decode_kernel<S: Scalar>(base: &ProbMorphism<S>, node: Node<'_>) -> Result<Kernel<S>> {
    let named: BTreeMap<String, BTreeMap<String, S>> =
        node.entries(|y, n| Ok((y.to_string(), n.scalar_map()?)))?.into_iter().collect();
    Ok(Kernel::from_named(base.clone(), &named)?)
}

/// A kernel together with its base: `{"base", "fibers"}`.
impl<S: Scalar> Codec for Kernel<S> {
    fn encode(&self) -> Value {
        object([("base", self.base().encode()), ("fibers", encode_kernel(self))])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["base", "fibers"])?;
        let base: ProbMorphism<S> = node.field("base", ProbMorphism::decode)?;
        node.field("fibers", |n| decode_kernel(&base, n))
    }
}

/// `{"algebra", "left", "right"}`.
impl<S: Scalar> Codec for RelProduct<S> {
    fn encode(&self) -> Value {
        object([
            ("algebra", self.algebra.encode()),
            ("left", self.left.encode()),
            ("right", self.right.encode()),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["algebra", "left", "right"])?;
        let r = RelProduct {
            algebra: node.field("algebra", ProbAlgebra::decode)?,
            left: node.field("left", ProbMorphism::decode)?,
            right: node.field("right", ProbMorphism::decode)?,
        };
        if *r.left.source() != r.algebra || *r.right.source() != r.algebra {
            return Err(node.error("both projections must start at the product algebra"));
        }
        Ok(r)
    }
}

/// `{"invariant": {"algebra", "factor"}, "components": {y: {x: mass}},
/// "ergodic": {y: bool}}`. The ergodicity flags are derived data and are
/// recomputed, not trusted, when reading.
pub fn encode_ergodic<S: Scalar>(d: &ErgodicDecomposition<S>, ergodic: &[bool]) -> Value {
    let flags = d
        .invariant
        .algebra
        .atoms()
        .iter()
        .zip(ergodic)
        .map(|(y, &e)| (y.clone(), Value::Bool(e)))
        .collect();
    object([
        ("invariant", d.invariant.encode()),
        ("components", encode_kernel(&d.components)),
        ("ergodic", Value::Object(flags)),
    ])
}

impl<S: Scalar> Codec for ErgodicDecomposition<S> {
    fn encode(&self) -> Value {
        let flags: Vec<bool> = self.components.fibers().iter().map(|_| true).collect();
        encode_ergodic(self, &flags)
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["invariant", "components", "ergodic"])?;
        let invariant: InvariantFactor<S> = node.field("invariant", InvariantFactor::decode)?;
        let components = node.field("components", |n| decode_kernel(&invariant.factor, n))?;
        Ok(ErgodicDecomposition { invariant, components })
    }
}

// ---------------------------------------------------------------- actions

/// A probability algebra with automorphism generators given as atom maps:
/// `{"algebra", "generators": [{atom: atom}, ...]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Action<S = crate::scalar::Rational> {
    pub algebra: ProbAlgebra<S>,
    pub generators: Vec<ProbMorphism<S>>,
}

impl<S: Scalar> Codec for Action<S> {
    fn encode(&self) -> Value {
        object([
            ("algebra", self.algebra.encode()),
            (
                "generators",
                Value::Array(self.generators.iter().map(|g| string_map(g.map_named())).collect()),
            ),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["algebra", "generators"])?;
        let algebra: ProbAlgebra<S> = node.field("algebra", ProbAlgebra::decode)?;
        let generators = node.field("generators", |n| {
            n.array(|g| {
                let map = decode_index_map(g, algebra.atoms(), algebra.atoms())?;
                Ok(ProbMorphism::new(algebra.clone(), algebra.clone(), map)?)
            })
        })?;
        Ok(Action { algebra, generators })
    }
}

// ---------------------------------------------------------------- kolmogorov

/// `{"F": [indices], "E": [[atom per index], ...]}`.
impl Codec for Cylinder {
    fn encode(&self) -> Value {
        object([
            ("F", Value::Array(self.indices.iter().map(|&i| Value::from(i)).collect())),
            ("E", Value::Array(self.event.iter().map(strings).collect())),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["F", "E"])?;
        Ok(Cylinder {
            indices: node.field("F", |n| n.array(|i| i.u64()))?,
            event: node.field("E", |n| n.array(|t| t.strings()))?,
        })
    }
}

/// A family file: the constructor name and its parameters.
///
/// - `{"family": "iid", "factor": ProbAlgebra, "indices": [..]?}` (the
///   natural numbers when `indices` is absent);
/// - `{"family": "markov", "states": [..], "initial": {s: p},
///   "transition": {s: {t: p}}}` (missing entries are 0);
/// - `{"family": "table", "factors": {"1": {"atoms": [..]}, ..},
///   "marginals": [{"indices": [..], "masses": {tuple: p}}, ..]}`.
#[derive(Clone, Debug)]
pub enum Family<S = crate::scalar::Rational> {
    Iid(kolmo::IidFamily<S>),
    Markov(kolmo::MarkovFamily<S>),
    Table(kolmo::TableFamily<S>),
}

impl<S: Scalar> Family<S> {
    pub fn into_shared(self) -> Arc<dyn ConsistentFamily<S>> {
        match self {
            Family::Iid(f) => Arc::new(f),
            Family::Markov(f) => Arc::new(f),
            Family::Table(f) => Arc::new(f),
        }
    }

    pub fn as_family(&self) -> &dyn ConsistentFamily<S> {
        match self {
            Family::Iid(f) => f,
            Family::Markov(f) => f,
            Family::Table(f) => f,
        }
    }
}

fn indices(list: &[u64]) -> Value {
    Value::Array(list.iter().map(|&i| Value::from(i)).collect())
}

fn zero_filled<S: Scalar>(node: Node<'_>, names: &FinBool) -> Result<Vec<S>> {
    let named: BTreeMap<String, S> = node.scalar_map()?;
    if let Some(k) = named.keys().find(|k| names.index_of(k).is_none()) {
        return Err(Error::UnknownAtom { atom: k.clone() }.into());
    }
    Ok(names.atoms().iter().map(|a| named.get(a).cloned().unwrap_or_else(S::zero)).collect())
}

impl<S: Scalar> Codec for Family<S> {
    fn encode(&self) -> Value {
        match self {
            Family::Iid(f) => {
                let mut entries = vec![("family", Value::from("iid")), ("factor", f.base().encode())];
                if let IndexUniverse::Finite(list) = f.universe() {
                    entries.push(("indices", indices(list)));
                }
                object(entries)
            }
            Family::Markov(f) => {
                let states = f.states().atoms();
                let rows = states
                    .iter()
                    .zip(f.transition())
                    .map(|(s, row)| (s.clone(), scalar_map(states, row)))
                    .collect();
                object([
                    ("family", Value::from("markov")),
                    ("states", strings(states)),
                    ("initial", scalar_map(states, f.initial())),
                    ("transition", Value::Object(rows)),
                ])
            }
            Family::Table(f) => {
                let factors = f
                    .factors()
                    .iter()
                    .map(|(i, b)| (i.to_string(), b.encode()))
                    .collect();
                let marginals = f
                    .stated()
                    .iter()
                    .map(|(idx, m)| {
                        let masses = m.named().into_iter().map(|(k, v)| (k, scalar(&v))).collect();
                        object([("indices", indices(idx)), ("masses", Value::Object(masses))])
                    })
                    .collect();
                object([
                    ("family", Value::from("table")),
                    ("factors", Value::Object(factors)),
                    ("marginals", Value::Array(marginals)),
                ])
            }
        }
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        let name = node.field("family", |n| n.str().map(str::to_string))?;
        match name.as_str() {
            "iid" => {
                node.only_keys(&["family", "factor", "indices"])?;
                let factor: ProbAlgebra<S> = node.field("factor", ProbAlgebra::decode)?;
                Ok(Family::Iid(match node.optional("indices", |n| n.array(|i| i.u64()))? {
                    Some(list) => kolmo::IidFamily::over(factor, IndexUniverse::finite(list)),
                    None => kolmo::iid_family(factor),
                }))
            }
            "markov" => {
                node.only_keys(&["family", "states", "initial", "transition"])?;
                let states = FinBool::new(node.field("states", |n| n.strings())?)?;
                let initial = node.field("initial", |n| zero_filled(n, &states))?;
                let transition = node.field("transition", |n| {
                    let rows: BTreeMap<String, Vec<S>> = n
                        .entries(|s, row| Ok((s.to_string(), zero_filled(row, &states)?)))?
                        .into_iter()
                        .collect();
                    states
                        .atoms()
                        .iter()
                        .map(|s| rows.get(s).cloned().ok_or_else(|| n.error(format!("no transition row for `{s}`"))))
                        .collect::<Result<Vec<_>>>()
                })?;
                Ok(Family::Markov(kolmo::markov_family(states, initial, transition)?))
            }
            "table" => {
                node.only_keys(&["family", "factors", "marginals"])?;
                let factors = node.field("factors", |n| {
                    n.entries(|k, b| {
                        let i = k.parse::<u64>().map_err(|_| b.error(format!("`{k}` is not an index")))?;
                        Ok((i, FinBool::decode(b)?))
                    })
                })?;
                let marginals = node.field("marginals", |n| {
                    n.array(|m| {
                        m.only_keys(&["indices", "masses"])?;
                        Ok((m.field("indices", |i| i.array(|x| x.u64()))?, m.field("masses", |x| x.scalar_map())?))
                    })
                })?;
                Ok(Family::Table(kolmo::TableFamily::new(factors.into_iter().collect(), marginals)?))
            }
            other => Err(node.error(format!("unknown family `{other}`; expected iid, markov or table"))),
        }
    }
}

// ---------------------------------------------------------------- law reports

/// `{"law", "checked", "violations", "witnesses"}`.
impl Codec for LawReport {
    fn encode(&self) -> Value {
        object([
            ("law", Value::String(self.law.clone())),
            ("checked", Value::from(self.checked)),
            ("violations", Value::from(self.violation_count)),
            ("witnesses", strings(&self.violations)),
        ])
    }

    fn decode(node: Node<'_>) -> Result<Self> {
        node.only_keys(&["law", "checked", "violations", "witnesses"])?;
        Ok(LawReport {
            law: node.field("law", |n| n.str().map(str::to_string))?,
            checked: node.field("checked", |n| n.u64())? as usize,
            violation_count: node.field("violations", |n| n.u64())? as usize,
            violations: node.field("witnesses", |n| n.strings())?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn roundtrip<T: Codec + PartialEq + fmt::Debug>(value: &T) {
        let text = to_text(value);
        let back: T = from_text(&text, "test").unwrap_or_else(|e| panic!("{e}\n{text}"));
        assert_eq!(&back, value);
        assert_eq!(to_text(&back), text);
    }

    #[test]
    fn algebra_text_is_canonical() {
        let b = FinBool::new(["c", "a", "b"]).unwrap();
        assert_eq!(to_text(&b), r#"{"atoms":["a","b","c"]}"#);
        let x = ProbAlgebra::from_pairs([("b", q(2, 6)), ("a", q(2, 3))]).unwrap();
        assert_eq!(to_text(&x), r#"{"atoms":["a","b"],"measure":{"a":"2/3","b":"1/3"}}"#);
        roundtrip(&b);
        roundtrip(&x);
    }

    #[test]
    fn spec_shapes() {
        let text = r#"{"source":{"atoms":["a","b"]},"target":{"atoms":["x","y","z"]},"dual_map":{"x":"a","y":"a","z":"b"}}"#;
        let h: BoolHom = from_text(text, "hom").unwrap();
        assert_eq!(h.dual(), &[0, 0, 1]);
        assert_eq!(
            to_text(&h),
            r#"{"dual_map":{"x":"a","y":"a","z":"b"},"source":{"atoms":["a","b"]},"target":{"atoms":["x","y","z"]}}"#
        );
        let d: DeleteSpace = from_text(r#"{"points":["p","q"],"null":["q"]}"#, "d").unwrap();
        assert_eq!(d.null_names(), ["q"]);
        roundtrip(&d);
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = from_text::<FinBool>("{\n  \"atoms\": [\"a\",,]\n}", "alg.json").unwrap_err();
        match err {
            FormatError::Parse(p) => {
                assert_eq!(p.line_col.map(|(l, _)| l), Some(2));
                assert!(p.to_string().starts_with("alg.json:2:"), "{p}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shape_errors_carry_the_path() {
        let err = from_text::<ProbAlgebra>(r#"{"atoms":["a"],"measure":{"a":"one"}}"#, "x.json").unwrap_err();
        assert_eq!(err.to_string(), "x.json: at $.measure.a: `one` is not a rational p/q");
        let err = from_text::<ProbAlgebra>(r#"{"atoms":["a","b"],"measure":{"a":"1"}}"#, "x.json").unwrap_err();
        assert!(matches!(err, FormatError::Parse(_)), "{err:?}");
        let err = from_text::<ProbAlgebra>(r#"{"atoms":["a"],"mesure":{}}"#, "x.json").unwrap_err();
        assert!(err.to_string().contains("unexpected key `mesure`"), "{err}");
    }

    #[test]
    fn invariants_are_domain_errors() {
        let err = from_text::<ProbAlgebra>(r#"{"atoms":["a","b"],"measure":{"a":"1/2","b":"1/3"}}"#, "x").unwrap_err();
        assert!(matches!(err, FormatError::Domain(Error::NotADistribution { .. })), "{err:?}");
        let err = from_text::<FinBool>(r#"{"atoms":["a|"]}"#, "x").unwrap_err();
        assert!(matches!(err, FormatError::Domain(Error::InvalidIdentifier { .. })), "{err:?}");
        let text = r#"{"source":{"atoms":["a","b"],"measure":{"a":"1/3","b":"2/3"}},"target":{"atoms":["x","y"],"measure":{"x":"1/2","y":"1/2"}},"map":{"a":"x","b":"y"}}"#;
        let err = from_text::<ProbMorphism>(text, "x").unwrap_err();
        assert_eq!(err.to_string().split(':').next(), Some("NotMeasurePreserving"));
    }

    #[test]
    fn functions_and_kernels() {
        let x = ProbAlgebra::from_pairs([("a", q(1, 6)), ("b", q(1, 3)), ("c", q(1, 2))]).unwrap();
        let y = ProbAlgebra::from_pairs([("y1", q(1, 2)), ("y2", q(1, 2))]).unwrap();
        let pi = ProbMorphism::new(x.clone(), y, vec![0, 0, 1]).unwrap();
        let k = crate::disint::disintegrate(&pi);
        assert_eq!(
            canonical(&encode_kernel(&k)),
            r#"{"y1":{"a":"1/3","b":"2/3","c":"0"},"y2":{"a":"0","b":"0","c":"1"}}"#
        );
        roundtrip(&k);
        let a = crate::funcalg::linfty(&x);
        let f = read(r#"{"re":{"a":"1","b":"4","c":"7"}}"#, "f", |n| decode_func(&a, n)).unwrap();
        let text = canonical(&encode_func(&a, &f));
        assert_eq!(read(&text, "f", |n| decode_func(&a, n)).unwrap(), f);
    }

    #[test]
    fn families_and_cylinders() {
        let text = r#"{"factor":{"atoms":["h","t"],"measure":{"h":"1/2","t":"1/2"}},"family":"iid"}"#;
        let family: Family = from_text(text, "iid.json").unwrap();
        assert_eq!(to_text(&family), text);
        let cyl: Cylinder = from_text(r#"{"F":[1,3],"E":[["h","h"]]}"#, "cyl").unwrap();
        let mu = kolmo::extend(family.into_shared());
        assert_eq!(mu.query(&cyl).unwrap(), q(1, 4));
        roundtrip(&cyl);
        let markov = r#"{"family":"markov","initial":{"0":"1"},"states":["0","1"],"transition":{"0":{"0":"1/2","1":"1/2"},"1":{"0":"1"}}}"#;
        let family: Family = from_text(markov, "m").unwrap();
        let back: Family = from_text(&to_text(&family), "m").unwrap();
        assert_eq!(to_text(&back), to_text(&family));
        let table = Family::Table(crate::lawcheck::suites::planted_inconsistent_family());
        let back: Family = from_text(&to_text(&table), "t").unwrap();
        assert_eq!(to_text(&back), to_text(&table));
    }
}
