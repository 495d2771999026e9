//! Finite directed graphs: the graph inverse semigroup, cylinder calculus on
//! the boundary path space, the boundary path groupoid, Leavitt path algebra
//! arithmetic and orbit equivalence through prefix transducers.
//!
//! Edges run from `source(e)` to `range(e)`. A path is a start vertex and a
//! composable edge sequence; a finite graph has no infinite emitters, so
//! the singular vertices are exactly the sinks.

mod boundary;
mod coe;
mod cylinder;
mod leavitt;
mod semigroup;
mod sexpr;
mod transducer;

pub use boundary::{
    act_on_cylinder, boundary_enumerate, boundary_groupoid, canonical_graph_action, condition_l, isolated_periodic_points,
    psi_check, shift_point, ConditionL, PsiReport, PeriodicWitness,
};
pub use coe::{graph_coe_search, verify_graph_coe, CoeFailure, CoeSearchReport, GraphCoeData, GraphCoeReport};
pub use cylinder::{shift_on_cylinder, Cylinder, CylinderBisection};
pub use leavitt::{leavitt_relations_check, LeavittElement, RelationCheck};
pub use semigroup::{graph_semigroup, GraphISGElement};
pub use sexpr::{parse_leavitt, Expr, SexprError};
pub use transducer::{boundary_atoms, invertible_upto, PrefixTransducer, Rule, RuleSpec, TransducedAtom, TransducerSpec};

use crate::invsemi::TooLarge;
use serde::{Deserialize, Serialize};
use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("edge {edge} refers to unknown vertex {vertex}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("unknown vertex or edge {0}")]
    UnknownName(String),
    #[error("edges {0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("paths {0} and {1} have different ranges")]
    RangeMismatch(String, String),
    #[error("forbidden edge {0} does not leave the range of the path")]
    ForbiddenNotAtRange(String),
    #[error("graph has a cycle through {0}")]
    NotAcyclic(String),
    #[error("depth {depth} is smaller than path length {len}")]
    DepthTooSmall { depth: usize, len: usize },
    #[error("cannot shift a path of length zero")]
    LengthZero,
    #[error("elements belong to different graphs")]
    GraphMismatch,
    #[error("rules at state {state} miss boundary paths through {missing}")]
    RulesNotExhaustive { state: String, missing: String },
    #[error("rules at state {state} overlap at {prefix}")]
    RulesNotPrefixFree { state: String, prefix: String },
    #[error("rule {0} emits a path that does not continue the output")]
    NonBoundaryEmission(String),
    #[error("unknown state {0}")]
    UnknownState(String),
    #[error("rule {0} consumes nothing away from a sink")]
    EmptyConsume(String),
    #[error("no {which} value for atom {atom}")]
    MissingCocycle { which: String, atom: String },
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeSpec>,
    source: Vec<usize>,
    range: Vec<usize>,
    out: Vec<Vec<usize>>,
    fingerprint: u64,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

/// A start vertex followed by edges `e₁…eₙ` with `range(eᵢ) = source(eᵢ₊₁)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<EdgeSpec>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut seen = BTreeSet::new();
        for n in vertices.iter().chain(edges.iter().map(|e| &e.name)) {
            if !seen.insert(n.clone()) || n.ends_with('*') || n.is_empty() {
                return Err(GraphError::DuplicateName(n.clone()));
            }
        }
        let vidx = |edge: &str, v: &str| {
            vertices
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| GraphError::UnknownVertex { edge: edge.into(), vertex: v.into() })
        };
        let source = edges.iter().map(|e| vidx(&e.name, &e.src)).collect::<Result<Vec<_>, _>>()?;
        let range = edges.iter().map(|e| vidx(&e.name, &e.dst)).collect::<Result<Vec<_>, _>>()?;
        let mut out = vec![Vec::new(); vertices.len()];
        for (e, &s) in source.iter().enumerate() {
            out[s].push(e);
        }
        let mut h = DefaultHasher::new();
        (&vertices, &source, &range).hash(&mut h);
        edges.iter().map(|e| &e.name).collect::<Vec<_>>().hash(&mut h);
        Ok(Graph { vertices, edges, source, range, out, fingerprint: h.finish() })
    }

    /// `edges` as `(name, src, dst)`.
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        Self::new(
            vertices.iter().map(|v| v.to_string()).collect(),
            edges.iter().map(|&(n, s, d)| EdgeSpec { name: n.into(), src: s.into(), dst: d.into() }).collect(),
        )
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge_specs(&self) -> &[EdgeSpec] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e].name
    }

    pub fn source(&self, e: usize) -> usize {
        self.source[e]
    }

    pub fn range(&self, e: usize) -> usize {
        self.range[e]
    }

    /// `s⁻¹(v)` in edge order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out[v].is_empty()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_sink(v)).collect()
    }

    /// A vertex on a cycle, if any.
    pub fn cycle_vertex(&self) -> Option<usize> {
        // 0 unvisited, 1 on stack, 2 done
        let mut state = vec![0u8; self.vertex_count()];
        fn dfs(g: &Graph, v: usize, state: &mut [u8]) -> Option<usize> {
            state[v] = 1;
            for &e in g.out_edges(v) {
                let w = g.range(e);
                match state[w] {
                    1 => return Some(w),
                    0 => {
                        if let Some(c) = dfs(g, w, state) {
                            return Some(c);
                        }
                    }
                    _ => {}
                }
            }
            state[v] = 2;
            None
        }
        (0..self.vertex_count()).find_map(|v| if state[v] == 0 { dfs(self, v, &mut state) } else { None })
    }

    pub fn is_acyclic(&self) -> bool {
        self.cycle_vertex().is_none()
    }

    pub fn require_acyclic(&self) -> Result<(), GraphError> {
        match self.cycle_vertex() {
            Some(v) => Err(GraphError::NotAcyclic(self.vertices[v].clone())),
            None => Ok(()),
        }
    }

    pub fn vertex_path(&self, v: usize) -> Path {
        Path { start: v, edges: Vec::new() }
    }

    pub fn edge_path(&self, e: usize) -> Path {
        Path { start: self.source[e], edges: vec![e] }
    }

    /// Builds a path from names; a single vertex name gives a length-0 path.
    pub fn path(&self, names: &[&str]) -> Result<Path, GraphError> {
        if let [v] = names {
            if let Some(v) = self.vertex_index(v) {
                return Ok(self.vertex_path(v));
            }
        }
        let edges =
            names.iter().map(|n| self.edge_index(n).ok_or_else(|| GraphError::UnknownName(n.to_string()))).collect::<Result<Vec<_>, _>>()?;
        let start = *edges.first().map(|&e| &self.source[e]).ok_or(GraphError::UnknownName(String::new()))?;
        for w in edges.windows(2) {
            if self.range[w[0]] != self.source[w[1]] {
                return Err(GraphError::NotComposable(self.edges[w[0]].name.clone(), self.edges[w[1]].name.clone()));
            }
        }
        Ok(Path { start, edges })
    }

    /// Parses `"v"` or `"e.f.g"`.
    pub fn parse_path(&self, s: &str) -> Result<Path, GraphError> {
        let parts: Vec<&str> = s.split('.').collect();
        self.path(&parts)
    }

    /// All paths of length exactly `n` starting at `v`.
    pub fn paths_from(&self, v: usize, n: usize) -> Vec<Path> {
        let mut layer = vec![self.vertex_path(v)];
        for _ in 0..n {
            layer = layer.iter().flat_map(|p| self.out_edges(p.range(self)).iter().map(move |&e| p.push(e))).collect();
        }
        layer
    }

    /// Every finite path, ordered by length then start then edges; only for
    /// acyclic graphs.
    pub fn all_paths(&self) -> Result<Vec<Path>, GraphError> {
        self.require_acyclic()?;
        let mut out = Vec::new();
        let mut n = 0;
        loop {
            let layer: Vec<Path> = (0..self.vertex_count()).flat_map(|v| self.paths_from(v, n)).collect();
            if layer.is_empty() {
                break;
            }
            out.extend(layer);
            n += 1;
        }
        Ok(out)
    }
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn range(&self, g: &Graph) -> usize {
        self.edges.last().map_or(self.start, |&e| g.range(e))
    }

    pub fn push(&self, e: usize) -> Path {
        let mut edges = self.edges.clone();
        edges.push(e);
        Path { start: self.start, edges }
    }

    /// `self · other`, assuming `range(self) = start(other)`.
    pub fn concat(&self, other: &Path) -> Path {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Path { start: self.start, edges }
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }

    /// `γ` with `other = self · γ`.
    pub fn strip_prefix(&self, other: &Path, g: &Graph) -> Option<Path> {
        self.is_prefix_of(other).then(|| Path { start: self.range(g), edges: other.edges[self.len()..].to_vec() })
    }

    /// First `n` edges.
    pub fn truncate(&self, n: usize) -> Path {
        Path { start: self.start, edges: self.edges[..n.min(self.len())].to_vec() }
    }

    /// Drops the first `n` edges; `None` when `n > len`.
    pub fn shift(&self, n: usize, g: &Graph) -> Option<Path> {
        match n {
            0 => Some(self.clone()),
            n if n <= self.len() => Some(Path { start: g.range(self.edges[n - 1]), edges: self.edges[n..].to_vec() }),
            _ => None,
        }
    }

    pub fn label(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            g.vertices[self.start].clone()
        } else {
            self.edges.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>().join(".")
        }
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Path, &'a Graph);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.label(self.1))
            }
        }
        D(self, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_and_shifts() {
        let g = Graph::from_edges(&["u", "v", "w"], &[("e", "u", "v"), ("f", "v", "w")]).unwrap();
        let p = g.parse_path("e.f").unwrap();
        assert_eq!(p.range(&g), 2);
        assert_eq!(p.shift(1, &g).unwrap().label(&g), "f");
        assert_eq!(p.shift(2, &g).unwrap().label(&g), "w");
        assert!(p.shift(3, &g).is_none());
        assert!(g.parse_path("f.e").is_err());
        assert_eq!(g.all_paths().unwrap().len(), 6);
        assert!(g.is_acyclic());
    }

    #[test]
    fn loop_is_cyclic_and_names_are_checked() {
        let g = Graph::from_edges(&["v"], &[("e", "v", "v")]).unwrap();
        assert_eq!(g.require_acyclic(), Err(GraphError::NotAcyclic("v".into())));
        assert!(Graph::from_edges(&["v"], &[("v", "v", "v")]).is_err());
        assert!(Graph::from_edges(&["v"], &[("e", "v", "x")]).is_err());
    }
}
