//! `L_R(E)` realised inside the Steinberg algebra of the boundary path
//! groupoid: an element is a finite combination of indicators of atoms
//! `Z(α, β)` with `r(α) = r(β)`, where every source path `β` has length
//! equal to the element's depth or ends at a sink. Atoms of one depth are
//! pairwise disjoint and nonempty, so this normal form is unique and
//! equality is exact.

use super::{Expr, Graph, GraphError, Path};
use crate::algebra::SteinbergElement;
use crate::germs::FiniteGroupoid;
use crate::scalar::Ring;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeavittElement<R> {
    graph: u64,
    depth: usize,
    terms: BTreeMap<(Path, Path), R>,
}

/// `Z(α, β)` as the sum of `Z(αγ, βγ)` over normalised continuations `γ`.
fn expand_atom(g: &Graph, alpha: &Path, beta: &Path, depth: usize, out: &mut Vec<(Path, Path)>) {
    if beta.len() >= depth || g.is_sink(beta.range(g)) {
        out.push((alpha.clone(), beta.clone()));
        return;
    }
    for &e in g.out_edges(beta.range(g)) {
        expand_atom(g, &alpha.push(e), &beta.push(e), depth, out);
    }
}

impl<R: Ring> LeavittElement<R> {
    pub fn zero(g: &Graph) -> Self {
        LeavittElement { graph: g.fingerprint(), depth: 0, terms: BTreeMap::new() }
    }

    /// Indicator of `Z(α, β)`.
    pub fn atom(g: &Graph, alpha: Path, beta: Path) -> Result<Self, GraphError> {
        if alpha.range(g) != beta.range(g) {
            return Err(GraphError::RangeMismatch(alpha.label(g), beta.label(g)));
        }
        let depth = beta.len();
        let mut out = LeavittElement { graph: g.fingerprint(), depth, terms: BTreeMap::new() };
        let mut atoms = Vec::new();
        expand_atom(g, &alpha, &beta, depth, &mut atoms);
        for a in atoms {
            out.add_at(a, R::one());
        }
        Ok(out)
    }

    pub fn vertex(g: &Graph, v: usize) -> Self {
        Self::atom(g, g.vertex_path(v), g.vertex_path(v)).expect("same range")
    }

    pub fn edge(g: &Graph, e: usize) -> Self {
        Self::atom(g, g.edge_path(e), g.vertex_path(g.range(e))).expect("same range")
    }

    pub fn ghost(g: &Graph, e: usize) -> Self {
        Self::atom(g, g.vertex_path(g.range(e)), g.edge_path(e)).expect("same range")
    }

    /// `Σ_v v`, the unit of `L_R(E)` for a finite graph.
    pub fn one(g: &Graph) -> Self {
        (0..g.vertex_count()).fold(Self::zero(g), |acc, v| acc.add(&Self::vertex(g, v), g).expect("same graph"))
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Path, Path), &R)> {
        self.terms.iter()
    }

    fn add_at(&mut self, key: (Path, Path), r: R) {
        let entry = self.terms.entry(key.clone()).or_insert_with(R::zero);
        *entry = entry.clone() + r;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check(&self, g: &Graph) -> Result<(), GraphError> {
        if self.graph == g.fingerprint() {
            Ok(())
        } else {
            Err(GraphError::GraphMismatch)
        }
    }

    /// The same element written over atoms of a larger depth.
    pub fn at_depth(&self, g: &Graph, depth: usize) -> Result<Self, GraphError> {
        self.check(g)?;
        if depth < self.depth {
            return Err(GraphError::DepthTooSmall { depth, len: self.depth });
        }
        let mut out = LeavittElement { graph: self.graph, depth, terms: BTreeMap::new() };
        for ((alpha, beta), r) in &self.terms {
            let mut atoms = Vec::new();
            expand_atom(g, alpha, beta, depth, &mut atoms);
            for a in atoms {
                out.add_at(a, r.clone());
            }
        }
        Ok(out)
    }

    /// Exact equality after expanding both sides to a common depth.
    pub fn equals(&self, other: &Self, g: &Graph) -> Result<bool, GraphError> {
        let d = self.depth.max(other.depth);
        Ok(self.at_depth(g, d)?.terms == other.at_depth(g, d)?.terms)
    }

    pub fn add(&self, other: &Self, g: &Graph) -> Result<Self, GraphError> {
        let d = self.depth.max(other.depth);
        let mut out = self.at_depth(g, d)?;
        for (k, r) in other.at_depth(g, d)?.terms {
            out.add_at(k, r);
        }
        Ok(out)
    }

    pub fn scale(&self, r: &R) -> Self {
        let mut out = LeavittElement { graph: self.graph, depth: self.depth, terms: BTreeMap::new() };
        for (k, c) in &self.terms {
            out.add_at(k.clone(), c.clone() * r.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self, g: &Graph) -> Result<Self, GraphError> {
        self.add(&other.scale(&-R::one()), g)
    }

    /// `Z(α,β)·Z(α′,β′)` is `Z(αγ, β′)` if `α′ = βγ`, `Z(α, β′γ)` if
    /// `β = α′γ`, and `0` otherwise.
    pub fn mul(&self, other: &Self, g: &Graph) -> Result<Self, GraphError> {
        self.check(g)?;
        other.check(g)?;
        let mut raw: Vec<((Path, Path), R)> = Vec::new();
        for ((a, b), r) in &self.terms {
            for ((a2, b2), s) in &other.terms {
                let c = r.clone() * s.clone();
                if let Some(gamma) = b.strip_prefix(a2, g) {
                    raw.push(((a.concat(&gamma), b2.clone()), c));
                } else if let Some(gamma) = a2.strip_prefix(b, g) {
                    raw.push(((a.clone(), b2.concat(&gamma)), c));
                }
            }
        }
        let depth = raw.iter().map(|((_, b), _)| b.len()).max().unwrap_or(0).max(self.depth).max(other.depth);
        let mut out = LeavittElement { graph: self.graph, depth, terms: BTreeMap::new() };
        for ((a, b), c) in raw {
            let mut atoms = Vec::new();
            expand_atom(g, &a, &b, depth, &mut atoms);
            for k in atoms {
                out.add_at(k, c.clone());
            }
        }
        Ok(out)
    }

    pub fn eval(expr: &Expr, g: &Graph) -> Result<Self, GraphError> {
        let fold = |args: &[Expr], f: &dyn Fn(&Self, &Self) -> Result<Self, GraphError>| {
            let mut it = args.iter();
            let first = Self::eval(it.next().expect("nonempty argument list"), g)?;
            it.try_fold(first, |acc, a| f(&acc, &Self::eval(a, g)?))
        };
        match expr {
            Expr::Int(n) => Ok(Self::one(g).scale(&R::from_i64(*n))),
            Expr::Name(s) => match (g.vertex_index(s), g.edge_index(s)) {
                (Some(v), _) => Ok(Self::vertex(g, v)),
                (None, Some(e)) => Ok(Self::edge(g, e)),
                (None, None) => Err(GraphError::UnknownName(s.clone())),
            },
            Expr::Ghost(s) => g.edge_index(s).map(|e| Self::ghost(g, e)).ok_or_else(|| GraphError::UnknownName(format!("{s}*"))),
            Expr::Add(args) => fold(args, &|a, b| a.add(b, g)),
            Expr::Mul(args) => fold(args, &|a, b| a.mul(b, g)),
            Expr::Sub(args) if args.len() == 1 => Ok(Self::eval(&args[0], g)?.scale(&-R::one())),
            Expr::Sub(args) => fold(args, &|a, b| a.sub(b, g)),
        }
    }

    /// Coefficients on the arrows `(α x, |α| − |β|, β x)` of the boundary
    /// path groupoid of an acyclic graph, given its arrow triples.
    pub fn to_steinberg(
        &self,
        g: &Graph,
        groupoid: &FiniteGroupoid,
        triples: &[(Path, i64, Path)],
    ) -> Result<SteinbergElement<R>, GraphError> {
        let boundary_depth = g.all_paths()?.iter().map(Path::len).max().unwrap_or(0);
        let full = self.at_depth(g, boundary_depth.max(self.depth))?;
        let index: HashMap<&(Path, i64, Path), usize> = triples.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let coeffs = full.terms.iter().map(|((a, b), r)| {
            let key = (a.clone(), a.len() as i64 - b.len() as i64, b.clone());
            (index[&key], r.clone())
        });
        Ok(SteinbergElement::from_coeffs(groupoid, coeffs))
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((a, b), r)| format!("{}·Z({},{})", r, a.label(g), b.label(g))).collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    pub instances: usize,
    pub holds: bool,
    pub failure: Option<String>,
}

/// Checks the defining relations of `L_R(E)` on the generators: orthogonal
/// vertex idempotents, `s(e)e = e = er(e)`, `e*f = δ_{e,f} r(e)` and
/// `v = Σ_{s(e)=v} ee*` at every non-sink `v`.
pub fn leavitt_relations_check<R: Ring>(g: &Graph) -> Vec<RelationCheck> {
    let v = |i| LeavittElement::<R>::vertex(g, i);
    let e = |i| LeavittElement::<R>::edge(g, i);
    let es = |i| LeavittElement::<R>::ghost(g, i);
    let zero = LeavittElement::<R>::zero(g);
    let eq = |a: &LeavittElement<R>, b: &LeavittElement<R>| a.equals(b, g).expect("same graph");
    let mul = |a: &LeavittElement<R>, b: &LeavittElement<R>| a.mul(b, g).expect("same graph");
    let mut out = Vec::new();
    let mut record = |relation: &str, cases: Vec<(String, bool)>| {
        out.push(RelationCheck {
            relation: relation.into(),
            instances: cases.len(),
            holds: cases.iter().all(|c| c.1),
            failure: cases.into_iter().find(|c| !c.1).map(|c| c.0),
        });
    };
    let names = g.vertices();
    let mut cases = Vec::new();
    for a in 0..g.vertex_count() {
        for b in 0..g.vertex_count() {
            let want = if a == b { v(a) } else { zero.clone() };
            cases.push((format!("{}{}", names[a], names[b]), eq(&mul(&v(a), &v(b)), &want)));
        }
    }
    record("vertices are orthogonal idempotents", cases);
    let cases = (0..g.edge_count())
        .map(|i| {
            let ok = eq(&mul(&v(g.source(i)), &e(i)), &e(i)) && eq(&mul(&e(i), &v(g.range(i))), &e(i));
            (g.edge_name(i).to_string(), ok)
        })
        .collect();
    record("s(e)e = e = er(e)", cases);
    let mut cases = Vec::new();
    for a in 0..g.edge_count() {
        for b in 0..g.edge_count() {
            let want = if a == b { v(g.range(a)) } else { zero.clone() };
            cases.push((format!("{}*{}", g.edge_name(a), g.edge_name(b)), eq(&mul(&es(a), &e(b)), &want)));
        }
    }
    record("e*f = δ r(e)", cases);
    let cases = (0..g.vertex_count())
        .filter(|&i| !g.is_sink(i))
        .map(|i| {
            let sum = g.out_edges(i).iter().fold(zero.clone(), |acc, &k| acc.add(&mul(&e(k), &es(k)), g).expect("same graph"));
            (names[i].clone(), eq(&sum, &v(i)))
        })
        .collect();
    record("v = Σ ee* over s(e) = v", cases);
    out
}
