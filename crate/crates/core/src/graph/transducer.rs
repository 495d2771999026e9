//! Prefix transducers `∂E → ∂F`.
//!
//! A rule in state `q` consumes a path of `E` from the current vertex,
//! appends a path of `F` to the output and moves to the next state. At
//! every reachable `(state, vertex)` the consumed paths form a prefix-free
//! family covering every boundary continuation. A rule consuming the
//! length-0 path is allowed only at a sink and ends the run; its emission
//! must end at a sink of `F`.

use super::{Cylinder, Graph, GraphError, Path};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub const DEFAULT_STATE: &str = "q";

fn default_state() -> String {
    DEFAULT_STATE.into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSpec {
    #[serde(default = "default_state")]
    pub state: String,
    pub consume: String,
    pub emit: String,
    /// Defaults to `state` for rules that consume at least one edge.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub next: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransducerSpec {
    /// Start state per vertex of `E`; missing vertices start in `q`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub initial: BTreeMap<String, String>,
    pub rules: Vec<RuleSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub state: String,
    pub consume: Path,
    pub emit: Path,
    /// `None` exactly for terminating rules.
    pub next: Option<String>,
}

#[derive(Clone, Debug)]
pub struct PrefixTransducer {
    from: u64,
    to: u64,
    initial: Vec<String>,
    rules: Vec<Rule>,
}

/// Image of one input prefix. When `determined`, `output` is the full image
/// of the unique boundary point `input`; otherwise it is a common prefix of
/// the images of every point of `Z(input)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransducedAtom {
    pub input: Path,
    pub output: Option<Path>,
    pub determined: bool,
}

/// Depth-`D` atoms of `∂E`: paths of length `D`, or shorter ones ending at
/// a sink.
pub fn boundary_atoms(g: &Graph, depth: usize) -> Vec<Path> {
    (0..g.vertex_count())
        .flat_map(|v| Cylinder::basic(g.vertex_path(v)).atoms(g, depth).expect("vertex path fits any depth"))
        .collect()
}

/// Every boundary continuation from `u` has exactly one of `paths` (given
/// relative to `u`) as a prefix; returns a continuation that has none.
fn uncovered(g: &Graph, u: usize, paths: &[Path]) -> Option<Path> {
    if paths.iter().any(|p| p.is_empty()) {
        return None;
    }
    if g.is_sink(u) {
        return Some(g.vertex_path(u));
    }
    for &e in g.out_edges(u) {
        let rest: Vec<Path> = paths
            .iter()
            .filter(|p| p.edges[0] == e)
            .map(|p| p.shift(1, g).expect("nonempty"))
            .collect();
        if rest.is_empty() {
            return Some(g.edge_path(e));
        }
        if let Some(tail) = uncovered(g, g.range(e), &rest) {
            return Some(g.edge_path(e).concat(&tail));
        }
    }
    None
}

fn rule_label(e: &Graph, f: &Graph, r: &Rule) -> String {
    format!("{}: {} -> {}", r.state, r.consume.label(e), r.emit.label(f))
}

impl PrefixTransducer {
    pub fn new(e: &Graph, f: &Graph, spec: &TransducerSpec) -> Result<Self, GraphError> {
        let mut initial = vec![DEFAULT_STATE.to_string(); e.vertex_count()];
        for (v, q) in &spec.initial {
            let i = e.vertex_index(v).ok_or_else(|| GraphError::UnknownName(v.clone()))?;
            initial[i] = q.clone();
        }
        let mut rules = Vec::new();
        for r in &spec.rules {
            let consume = e.parse_path(&r.consume)?;
            let emit = f.parse_path(&r.emit)?;
            let next = match (&r.next, consume.is_empty()) {
                (_, true) => None,
                (Some(n), false) => Some(n.clone()),
                (None, false) => Some(r.state.clone()),
            };
            rules.push(Rule { state: r.state.clone(), consume, emit, next });
        }
        Self::from_rules(e, f, initial, rules)
    }

    pub fn from_rules(e: &Graph, f: &Graph, initial: Vec<String>, rules: Vec<Rule>) -> Result<Self, GraphError> {
        let states: BTreeSet<&str> = rules.iter().map(|r| r.state.as_str()).collect();
        for q in initial.iter().chain(rules.iter().filter_map(|r| r.next.as_ref())) {
            if !states.contains(q.as_str()) {
                return Err(GraphError::UnknownState(q.clone()));
            }
        }
        for r in &rules {
            if r.consume.is_empty() && !e.is_sink(r.consume.start) {
                return Err(GraphError::EmptyConsume(rule_label(e, f, r)));
            }
        }
        // Configurations: state, vertex of E, current end of the output in F.
        let mut seen: BTreeSet<(String, usize, Option<usize>)> = BTreeSet::new();
        let mut queue: VecDeque<(String, usize, Option<usize>)> =
            initial.iter().enumerate().map(|(v, q)| (q.clone(), v, None)).collect();
        while let Some(cfg) = queue.pop_front() {
            if !seen.insert(cfg.clone()) {
                continue;
            }
            let (q, u, at) = cfg;
            let here: Vec<&Rule> = rules.iter().filter(|r| r.state == q && r.consume.start == u).collect();
            for (i, a) in here.iter().enumerate() {
                for b in &here[i + 1..] {
                    if a.consume.is_prefix_of(&b.consume) || b.consume.is_prefix_of(&a.consume) {
                        let short = if a.consume.len() <= b.consume.len() { a } else { b };
                        return Err(GraphError::RulesNotPrefixFree { state: q, prefix: short.consume.label(e) });
                    }
                }
            }
            let rel: Vec<Path> = here.iter().map(|r| r.consume.clone()).collect();
            if let Some(missing) = uncovered(e, u, &rel) {
                return Err(GraphError::RulesNotExhaustive { state: q, missing: missing.label(e) });
            }
            for r in here {
                if at.is_some_and(|w| w != r.emit.start) {
                    return Err(GraphError::NonBoundaryEmission(rule_label(e, f, r)));
                }
                match &r.next {
                    None if !f.is_sink(r.emit.range(f)) => return Err(GraphError::NonBoundaryEmission(rule_label(e, f, r))),
                    None => {}
                    Some(n) => queue.push_back((n.clone(), r.consume.range(e), Some(r.emit.range(f)))),
                }
            }
        }
        Ok(PrefixTransducer { from: e.fingerprint(), to: f.fingerprint(), initial, rules })
    }

    /// Identity on `∂E`.
    pub fn identity(g: &Graph) -> Self {
        let mut rules: Vec<Rule> = (0..g.edge_count())
            .map(|e| Rule { state: DEFAULT_STATE.into(), consume: g.edge_path(e), emit: g.edge_path(e), next: Some(DEFAULT_STATE.into()) })
            .collect();
        rules.extend(g.sinks().into_iter().map(|s| Rule {
            state: DEFAULT_STATE.into(),
            consume: g.vertex_path(s),
            emit: g.vertex_path(s),
            next: None,
        }));
        Self::from_rules(g, g, vec![DEFAULT_STATE.into(); g.vertex_count()], rules).expect("identity transducer")
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn spec(&self, e: &Graph, f: &Graph) -> TransducerSpec {
        let initial = self
            .initial
            .iter()
            .enumerate()
            .filter(|(_, q)| q.as_str() != DEFAULT_STATE)
            .map(|(v, q)| (e.vertices()[v].clone(), q.clone()))
            .collect();
        let rules = self
            .rules
            .iter()
            .map(|r| RuleSpec {
                state: r.state.clone(),
                consume: r.consume.label(e),
                emit: r.emit.label(f),
                next: r.next.clone().filter(|n| *n != r.state),
            })
            .collect();
        TransducerSpec { initial, rules }
    }

    fn check(&self, e: &Graph, f: &Graph) -> Result<(), GraphError> {
        if self.from == e.fingerprint() && self.to == f.fingerprint() {
            Ok(())
        } else {
            Err(GraphError::GraphMismatch)
        }
    }

    /// Runs on a finite input prefix until it ends or the next rule is not
    /// yet determined.
    pub fn apply(&self, e: &Graph, f: &Graph, input: &Path) -> Result<TransducedAtom, GraphError> {
        self.check(e, f)?;
        let mut state = self.initial[input.start].clone();
        let mut rest = input.clone();
        let mut output: Option<Path> = None;
        loop {
            let fired = self
                .rules
                .iter()
                .find(|r| r.state == state && r.consume.is_prefix_of(&rest) && (!r.consume.is_empty() || rest.is_empty()));
            let Some(r) = fired else {
                return Ok(TransducedAtom { input: input.clone(), output, determined: false });
            };
            output = Some(match output {
                None => r.emit.clone(),
                Some(o) => o.concat(&r.emit),
            });
            match &r.next {
                None => return Ok(TransducedAtom { input: input.clone(), output, determined: true }),
                Some(n) => {
                    rest = r.consume.strip_prefix(&rest, e).expect("prefix");
                    state = n.clone();
                }
            }
        }
    }

    /// Images of the depth-`D` atoms of a cylinder.
    pub fn apply_cylinder(&self, e: &Graph, f: &Graph, c: &Cylinder, depth: usize) -> Result<Vec<TransducedAtom>, GraphError> {
        c.atoms(e, depth)?.iter().map(|p| self.apply(e, f, p)).collect()
    }
}

/// `a` and `b` agree on their common length.
pub(super) fn compatible(a: &Path, b: &Path) -> bool {
    a.is_prefix_of(b) || b.is_prefix_of(a)
}

/// `T′ ∘ T` is the identity on `∂E` and `T ∘ T′` on `∂F`, checked on
/// depth-`D` atoms: exactly where the run is determined, up to the known
/// prefix elsewhere. Returns the first failing atom with its side.
pub fn invertible_upto(
    t: &PrefixTransducer,
    back: &PrefixTransducer,
    e: &Graph,
    f: &Graph,
    depth: usize,
) -> Result<Option<(char, String)>, GraphError> {
    for (side, (fwd, bwd, g, h)) in [('E', (t, back, e, f)), ('F', (back, t, f, e))] {
        for p in boundary_atoms(g, depth) {
            let once = fwd.apply(g, h, &p)?;
            let Some(image) = &once.output else { continue };
            let twice = bwd.apply(h, g, image)?;
            let ok = match (&twice.output, once.determined) {
                (Some(q), true) => twice.determined && *q == p,
                (Some(q), false) => compatible(q, &p),
                (None, det) => !det,
            };
            if !ok {
                return Ok(Some((side, p.label(g))));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parallel() -> Graph {
        Graph::from_edges(&["v", "w"], &[("e", "v", "w"), ("f", "v", "w")]).unwrap()
    }

    fn spec(rules: &[(&str, &str)]) -> TransducerSpec {
        TransducerSpec {
            initial: BTreeMap::new(),
            rules: rules.iter().map(|(c, o)| RuleSpec { state: "q".into(), consume: c.to_string(), emit: o.to_string(), next: None }).collect(),
        }
    }

    #[test]
    fn identity_fixes_every_cylinder() {
        for g in [parallel(), Graph::from_edges(&["v", "w"], &[("e", "v", "v"), ("f", "v", "w")]).unwrap()] {
            let t = PrefixTransducer::identity(&g);
            for d in 0..4 {
                for p in boundary_atoms(&g, d) {
                    let a = t.apply(&g, &g, &p).unwrap();
                    // Nothing is emitted before the first edge is read.
                    assert!(a.output.as_ref().map_or(p.is_empty() && !g.is_sink(p.start), |o| *o == p));
                    assert_eq!(a.determined, g.is_sink(p.range(&g)));
                }
                assert_eq!(invertible_upto(&t, &t, &g, &g, d).unwrap(), None);
            }
        }
    }

    #[test]
    fn renaming_between_isomorphic_graphs_is_invertible() {
        let e = Graph::from_edges(&["v"], &[("a", "v", "v"), ("b", "v", "v")]).unwrap();
        let f = Graph::from_edges(&["u"], &[("x", "u", "u"), ("y", "u", "u")]).unwrap();
        let t = PrefixTransducer::new(&e, &f, &spec(&[("a", "y"), ("b", "x")])).unwrap();
        let back = PrefixTransducer::new(&f, &e, &spec(&[("y", "a"), ("x", "b")])).unwrap();
        for d in 0..5 {
            assert_eq!(invertible_upto(&t, &back, &e, &f, d).unwrap(), None);
        }
        let image = t.apply(&e, &f, &e.parse_path("a.b.b").unwrap()).unwrap();
        assert_eq!(image.output.unwrap().label(&f), "y.x.x");
    }

    #[test]
    fn dropping_information_is_caught_at_depth_one() {
        let g = parallel();
        let t = PrefixTransducer::new(&g, &g, &spec(&[("e", "e"), ("f", "e"), ("w", "w")])).unwrap();
        let id = PrefixTransducer::identity(&g);
        assert_eq!(invertible_upto(&t, &id, &g, &g, 1).unwrap(), Some(('E', "f".into())));
    }

    #[test]
    fn malformed_rule_sets_are_rejected() {
        let g = parallel();
        assert!(matches!(
            PrefixTransducer::new(&g, &g, &spec(&[("e", "e"), ("w", "w")])),
            Err(GraphError::RulesNotExhaustive { missing, .. }) if missing == "f"
        ));
        assert!(matches!(
            PrefixTransducer::new(&g, &g, &spec(&[("e", "e"), ("f", "f"), ("w", "w"), ("e", "f")])),
            Err(GraphError::RulesNotPrefixFree { .. })
        ));
        assert!(matches!(
            PrefixTransducer::new(&g, &g, &spec(&[("e", "e"), ("f", "f"), ("w", "v")])),
            Err(GraphError::NonBoundaryEmission(_))
        ));
        assert!(matches!(
            PrefixTransducer::new(&g, &g, &spec(&[("v", "v"), ("w", "w")])),
            Err(GraphError::EmptyConsume(_))
        ));
    }

    #[test]
    fn stateful_rules_and_round_trip_of_specs() {
        // parallel → line: w ↦ c, e ↦ h, f ↦ g.h
        let e = parallel();
        let f = Graph::from_edges(&["a", "b", "c"], &[("g", "a", "b"), ("h", "b", "c")]).unwrap();
        let s = TransducerSpec {
            initial: BTreeMap::new(),
            rules: vec![
                RuleSpec { state: "q".into(), consume: "e".into(), emit: "h".into(), next: Some("end".into()) },
                RuleSpec { state: "q".into(), consume: "f".into(), emit: "g.h".into(), next: Some("end".into()) },
                RuleSpec { state: "q".into(), consume: "w".into(), emit: "c".into(), next: None },
                RuleSpec { state: "end".into(), consume: "w".into(), emit: "c".into(), next: None },
            ],
        };
        let t = PrefixTransducer::new(&e, &f, &s).unwrap();
        assert_eq!(t.spec(&e, &f), s);
        let out = t.apply(&e, &f, &e.parse_path("f").unwrap()).unwrap();
        assert!(out.determined);
        assert_eq!(out.output.unwrap().label(&f), "g.h");
        let cyl = t.apply_cylinder(&e, &f, &Cylinder::basic(e.vertex_path(0)), 1).unwrap();
        assert_eq!(cyl.len(), 2);
    }
}
