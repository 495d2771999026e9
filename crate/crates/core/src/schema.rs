//! JSON input documents.
//!
//! Every document is an object with a `"schema"` tag and a `"version"`.
//! Parsing is strict by default: unknown fields are errors carrying the
//! line and column of the offending value. In lenient mode they become
//! warnings. Shape errors found after parsing (ragged rows, wrong row
//! counts) are located the same way.

use crate::graph::{EdgeSpec, Graph, GraphCoeData, GraphError};
use crate::invsemi::{InverseSemigroup, ValidationError};
use crate::paction::{ActionError, OrbitEquivalence, PartialAction};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

pub const VERSION: u32 = 1;

pub const SEMIGROUP: &str = "germkit/semigroup";
pub const ACTION: &str = "germkit/action";
pub const GRAPH: &str = "germkit/graph";
pub const COE: &str = "germkit/coe";
pub const GRAPH_COE: &str = "germkit/graph-coe";
pub const LEAVITT: &str = "germkit/leavitt";

pub const SCHEMAS: &[&str] = &[SEMIGROUP, ACTION, GRAPH, COE, GRAPH_COE, LEAVITT];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: expected {expected}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
}

/// A document that parsed but does not describe a valid structure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    /// Dangling names and similar reference errors.
    #[error("{0}")]
    Input(String),
    /// The structure violates an axiom; the message names a witness.
    #[error("{0}")]
    Math(String),
}

impl From<ValidationError> for BuildError {
    fn from(e: ValidationError) -> Self {
        match e {
            ValidationError::DuplicateName(_) | ValidationError::Empty => BuildError::Input(e.to_string()),
            _ => BuildError::Math(e.to_string()),
        }
    }
}

impl From<ActionError> for BuildError {
    fn from(e: ActionError) -> Self {
        match e {
            ActionError::Shape { .. } => BuildError::Input(e.to_string()),
            _ => BuildError::Math(e.to_string()),
        }
    }
}

impl From<GraphError> for BuildError {
    fn from(e: GraphError) -> Self {
        BuildError::Input(e.to_string())
    }
}

fn tag(schema: &str) -> String {
    schema.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupDoc {
    pub schema: String,
    pub version: u32,
    pub elements: Vec<String>,
    /// `table[a][b]` is the name of `ab`.
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupTable {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    pub schema: String,
    pub version: u32,
    pub semigroup: SemigroupTable,
    pub carrier: Vec<String>,
    /// `maps[s][x]` is `θ_s(x)`, or `null` off the domain.
    pub maps: Vec<Vec<Option<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub schema: String,
    pub version: u32,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

/// Orbit equivalence between two actions on carriers of equal size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeDoc {
    pub schema: String,
    pub version: u32,
    /// Image under `φ` of each point of the first carrier, in order.
    pub phi: Vec<String>,
    /// `a[s][x]`, defined where `θ_s(x)` is.
    pub a: Vec<Vec<Option<String>>>,
    /// `b[t][y]`, defined where `γ_t(y)` is.
    pub b: Vec<Vec<Option<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCoeDoc {
    pub schema: String,
    pub version: u32,
    pub data: GraphCoeData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeavittDoc {
    pub schema: String,
    pub version: u32,
    pub expr: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equals: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Semigroup(SemigroupDoc),
    Action(ActionDoc),
    Graph(GraphDoc),
    Coe(CoeDoc),
    GraphCoe(GraphCoeDoc),
    Leavitt(LeavittDoc),
}

impl Document {
    pub fn schema(&self) -> &str {
        match self {
            Document::Semigroup(d) => &d.schema,
            Document::Action(d) => &d.schema,
            Document::Graph(d) => &d.schema,
            Document::Coe(d) => &d.schema,
            Document::GraphCoe(d) => &d.schema,
            Document::Leavitt(d) => &d.schema,
        }
    }

    pub fn to_json(&self) -> String {
        let v = match self {
            Document::Semigroup(d) => serde_json::to_value(d),
            Document::Action(d) => serde_json::to_value(d),
            Document::Graph(d) => serde_json::to_value(d),
            Document::Coe(d) => serde_json::to_value(d),
            Document::GraphCoe(d) => serde_json::to_value(d),
            Document::Leavitt(d) => serde_json::to_value(d),
        };
        serde_json::to_string_pretty(&v.expect("documents serialize")).expect("documents serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub doc: Document,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Seg {
    Key(String),
    Index(usize),
}

fn segments(p: &serde_ignored::Path<'_>, out: &mut Vec<Seg>) {
    use serde_ignored::Path;
    match p {
        Path::Root => {}
        Path::Seq { parent, index } => {
            segments(parent, out);
            out.push(Seg::Index(*index));
        }
        Path::Map { parent, key } => {
            segments(parent, out);
            out.push(Seg::Key(key.clone()));
        }
        Path::Some { parent } | Path::NewtypeStruct { parent } | Path::NewtypeVariant { parent } => segments(parent, out),
    }
}

/// Byte offset of the value at `path` in already-valid JSON.
fn locate(src: &str, path: &[Seg]) -> Option<usize> {
    let b = src.as_bytes();
    let ws = |mut i: usize| {
        while i < b.len() && b[i].is_ascii_whitespace() {
            i += 1;
        }
        i
    };
    // End of the string starting at `i` (on the opening quote).
    let string_end = |mut i: usize| {
        i += 1;
        while b[i] != b'"' {
            i += if b[i] == b'\\' { 2 } else { 1 };
        }
        i + 1
    };
    let skip = |i: usize| {
        let mut i = i;
        let mut depth = 0usize;
        loop {
            match b[i] {
                b'"' => i = string_end(i),
                b'[' | b'{' => {
                    depth += 1;
                    i += 1;
                }
                b']' | b'}' => {
                    depth -= 1;
                    i += 1;
                }
                _ => i += 1,
            }
            if depth == 0 && (i >= b.len() || matches!(b[i], b',' | b']' | b'}') || b[i].is_ascii_whitespace()) {
                return i;
            }
        }
    };
    let mut i = ws(0);
    for seg in path {
        match (seg, b.get(i)?) {
            (Seg::Key(k), b'{') => {
                i = ws(i + 1);
                loop {
                    if b[i] != b'"' {
                        return None;
                    }
                    let end = string_end(i);
                    let key = &src[i + 1..end - 1];
                    i = ws(ws(end) + 1);
                    if key == k {
                        break;
                    }
                    i = ws(skip(i));
                    if b[i] != b',' {
                        return None;
                    }
                    i = ws(i + 1);
                }
            }
            (Seg::Index(n), b'[') => {
                i = ws(i + 1);
                for _ in 0..*n {
                    i = ws(skip(i));
                    if b[i] != b',' {
                        return None;
                    }
                    i = ws(i + 1);
                }
                if b[i] == b']' {
                    return None;
                }
            }
            _ => return None,
        }
    }
    Some(i)
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn error_at(src: &str, path: &[Seg], expected: impl Into<String>) -> ParseError {
    let (line, col) = locate(src, path).map_or((1, 1), |o| line_col(src, o));
    ParseError { line, col, expected: expected.into() }
}

fn key(k: &str) -> Seg {
    Seg::Key(k.into())
}

fn typed<T: DeserializeOwned>(src: &str, lenient: bool, warnings: &mut Vec<String>) -> Result<T, ParseError> {
    let mut ignored: Vec<(String, Vec<Seg>)> = Vec::new();
    let mut de = serde_json::Deserializer::from_str(src);
    let value: T = serde_ignored::deserialize(&mut de, |p| {
        let mut segs = Vec::new();
        segments(&p, &mut segs);
        ignored.push((p.to_string(), segs));
    })
    .map_err(|e| ParseError { line: e.line(), col: e.column(), expected: e.to_string() })?;
    for (name, segs) in ignored {
        if lenient {
            warnings.push(format!("ignored unknown field {name}"));
        } else {
            return Err(error_at(src, &segs, format!("no field {name}")));
        }
    }
    Ok(value)
}

fn check_rows<T>(src: &str, at: &[Seg], rows: &[Vec<T>], count: usize, width: usize, what: &str) -> Result<(), ParseError> {
    if rows.len() != count {
        return Err(error_at(src, at, format!("{count} rows in {what}, found {}", rows.len())));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            let mut p = at.to_vec();
            p.push(Seg::Index(i));
            return Err(error_at(src, &p, format!("row {i} of {what} with {width} entries, found {}", row.len())));
        }
    }
    Ok(())
}

pub fn parse_input(src: &str, lenient: bool) -> Result<Parsed, ParseError> {
    let value: Value =
        serde_json::from_str(src).map_err(|e| ParseError { line: e.line(), col: e.column(), expected: e.to_string() })?;
    let Some(obj) = value.as_object() else {
        return Err(ParseError { line: 1, col: 1, expected: "a JSON object".into() });
    };
    let schema = match obj.get("schema") {
        Some(Value::String(s)) if SCHEMAS.contains(&s.as_str()) => s.clone(),
        Some(_) => return Err(error_at(src, &[key("schema")], format!("one of {}", SCHEMAS.join(", ")))),
        None => return Err(ParseError { line: 1, col: 1, expected: "a \"schema\" field".into() }),
    };
    match obj.get("version") {
        Some(v) if v.as_u64() == Some(VERSION as u64) => {}
        Some(_) => return Err(error_at(src, &[key("version")], format!("version {VERSION}"))),
        None => return Err(ParseError { line: 1, col: 1, expected: "a \"version\" field".into() }),
    }
    let mut warnings = Vec::new();
    let doc = match schema.as_str() {
        SEMIGROUP => {
            let d: SemigroupDoc = typed(src, lenient, &mut warnings)?;
            check_rows(src, &[key("table")], &d.table, d.elements.len(), d.elements.len(), "table")?;
            Document::Semigroup(d)
        }
        ACTION => {
            let d: ActionDoc = typed(src, lenient, &mut warnings)?;
            let n = d.semigroup.elements.len();
            check_rows(src, &[key("semigroup"), key("table")], &d.semigroup.table, n, n, "table")?;
            check_rows(src, &[key("maps")], &d.maps, n, d.carrier.len(), "maps")?;
            Document::Action(d)
        }
        GRAPH => Document::Graph(typed(src, lenient, &mut warnings)?),
        COE => Document::Coe(typed(src, lenient, &mut warnings)?),
        GRAPH_COE => Document::GraphCoe(typed(src, lenient, &mut warnings)?),
        _ => Document::Leavitt(typed(src, lenient, &mut warnings)?),
    };
    Ok(Parsed { doc, warnings })
}

fn index_names(names: &[String], what: &str) -> Result<std::collections::HashMap<String, usize>, BuildError> {
    let mut m = std::collections::HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if m.insert(n.clone(), i).is_some() {
            return Err(BuildError::Input(format!("duplicate {what} name '{n}'")));
        }
    }
    Ok(m)
}

fn resolve(m: &std::collections::HashMap<String, usize>, name: &str, what: &str) -> Result<usize, BuildError> {
    m.get(name).copied().ok_or_else(|| BuildError::Input(format!("unknown {what} '{name}'")))
}

fn build_semigroup(elements: &[String], table: &[Vec<String>]) -> Result<InverseSemigroup, BuildError> {
    let idx = index_names(elements, "element")?;
    let rows = table
        .iter()
        .map(|row| row.iter().map(|e| resolve(&idx, e, "element")).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(InverseSemigroup::validate(elements.to_vec(), rows)?)
}

fn table_of(s: &InverseSemigroup) -> Vec<Vec<String>> {
    (0..s.len()).map(|a| (0..s.len()).map(|b| s.name(s.mul(a, b)).to_string()).collect()).collect()
}

impl SemigroupDoc {
    pub fn build(&self) -> Result<InverseSemigroup, BuildError> {
        build_semigroup(&self.elements, &self.table)
    }

    pub fn from_semigroup(s: &InverseSemigroup) -> Self {
        SemigroupDoc { schema: tag(SEMIGROUP), version: VERSION, elements: s.names().to_vec(), table: table_of(s) }
    }
}

impl ActionDoc {
    pub fn build(&self) -> Result<PartialAction, BuildError> {
        let s = build_semigroup(&self.semigroup.elements, &self.semigroup.table)?;
        let pts = index_names(&self.carrier, "point")?;
        let maps = self
            .maps
            .iter()
            .map(|row| row.iter().map(|x| x.as_deref().map(|x| resolve(&pts, x, "point")).transpose()).collect())
            .collect::<Result<Vec<Vec<Option<usize>>>, _>>()?;
        Ok(PartialAction::validate(s, self.carrier.clone(), maps)?)
    }

    pub fn from_action(theta: &PartialAction) -> Self {
        let s = theta.semigroup();
        let carrier = theta.carrier().to_vec();
        let maps = theta.maps().iter().map(|row| row.iter().map(|y| y.map(|y| carrier[y].clone())).collect()).collect();
        ActionDoc {
            schema: tag(ACTION),
            version: VERSION,
            semigroup: SemigroupTable { elements: s.names().to_vec(), table: table_of(s) },
            carrier,
            maps,
        }
    }
}

impl GraphDoc {
    pub fn build(&self) -> Result<Graph, BuildError> {
        Ok(Graph::new(self.vertices.clone(), self.edges.clone())?)
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphDoc { schema: tag(GRAPH), version: VERSION, vertices: g.vertices().to_vec(), edges: g.edge_specs().to_vec() }
    }
}

impl CoeDoc {
    pub fn build(&self, theta: &PartialAction, gamma: &PartialAction) -> Result<OrbitEquivalence, BuildError> {
        let ys = index_names(gamma.carrier(), "point")?;
        let t = index_names(gamma.semigroup().names(), "element")?;
        let s = index_names(theta.semigroup().names(), "element")?;
        let phi = self.phi.iter().map(|y| resolve(&ys, y, "point")).collect::<Result<Vec<_>, _>>()?;
        let cocycle = |rows: &[Vec<Option<String>>], m: &std::collections::HashMap<String, usize>| {
            rows.iter()
                .map(|row| row.iter().map(|e| e.as_deref().map(|e| resolve(m, e, "element")).transpose()).collect())
                .collect::<Result<Vec<Vec<Option<usize>>>, _>>()
        };
        Ok(OrbitEquivalence { phi, a: cocycle(&self.a, &t)?, b: cocycle(&self.b, &s)? })
    }

    pub fn from_coe(theta: &PartialAction, gamma: &PartialAction, coe: &OrbitEquivalence) -> Self {
        let names = |rows: &[Vec<Option<usize>>], sg: &InverseSemigroup| {
            rows.iter().map(|row| row.iter().map(|e| e.map(|e| sg.name(e).to_string())).collect()).collect()
        };
        CoeDoc {
            schema: tag(COE),
            version: VERSION,
            phi: coe.phi.iter().map(|&y| gamma.carrier()[y].clone()).collect(),
            a: names(&coe.a, gamma.semigroup()),
            b: names(&coe.b, theta.semigroup()),
        }
    }
}

impl GraphCoeDoc {
    pub fn new(data: GraphCoeData) -> Self {
        GraphCoeDoc { schema: tag(GRAPH_COE), version: VERSION, data }
    }
}

impl LeavittDoc {
    pub fn new(expr: &str, equals: Option<&str>) -> Self {
        LeavittDoc { schema: tag(LEAVITT), version: VERSION, expr: expr.into(), equals: equals.map(Into::into) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = r#"{
  "schema": "germkit/semigroup",
  "version": 1,
  "elements": ["1", "g"],
  "table": [["1", "g"], ["g", "1"]]
}"#;

    #[test]
    fn well_formed_table_parses_and_builds() {
        let p = parse_input(Z2, false).unwrap();
        let Document::Semigroup(d) = &p.doc else { panic!("{:?}", p.doc) };
        assert!(d.build().unwrap().is_group());
        assert_eq!(parse_input(&p.doc.to_json(), false).unwrap().doc, p.doc);
    }

    #[test]
    fn ragged_row_is_located() {
        let src = Z2.replace(r#"["g", "1"]"#, r#"["g"]"#);
        let e = parse_input(&src, false).unwrap_err();
        assert_eq!((e.line, e.col), (5, 25));
        assert!(e.expected.contains("row 1"), "{e}");
    }

    #[test]
    fn unknown_schema_and_version_are_rejected() {
        let e = parse_input(&Z2.replace("germkit/semigroup", "germkit/monoid"), false).unwrap_err();
        assert_eq!((e.line, e.col), (2, 13));
        let e = parse_input(&Z2.replace("\"version\": 1", "\"version\": 2"), false).unwrap_err();
        assert_eq!((e.line, e.col), (3, 14));
        assert!(parse_input("[1]", false).is_err());
        let e = parse_input("{\"schema\": ", false).unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn unknown_fields_are_errors_unless_lenient() {
        let src = Z2.replace("\"version\": 1,", "\"version\": 1,\n  \"comment\": \"x\",");
        let e = parse_input(&src, false).unwrap_err();
        assert_eq!((e.line, e.col), (4, 14));
        let p = parse_input(&src, true).unwrap();
        assert_eq!(p.warnings, vec!["ignored unknown field comment".to_string()]);
    }

    #[test]
    fn type_errors_carry_positions() {
        let e = parse_input(&Z2.replace(r#"["1", "g"], ["g""#, r#"["1", 7], ["g""#), false).unwrap_err();
        assert_eq!(e.line, 5);
    }

    #[test]
    fn axiom_failures_are_math_errors() {
        let src = Z2.replace(r#"[["1", "g"], ["g", "1"]]"#, r#"[["1", "1"], ["1", "1"]]"#);
        let Document::Semigroup(d) = parse_input(&src, false).unwrap().doc else { panic!() };
        assert!(matches!(d.build(), Err(BuildError::Math(_))));
        let src = Z2.replace(r#"["g", "1"]]"#, r#"["g", "h"]]"#);
        let Document::Semigroup(d) = parse_input(&src, false).unwrap().doc else { panic!() };
        assert_eq!(d.build(), Err(BuildError::Input("unknown element 'h'".into())));
    }
}
