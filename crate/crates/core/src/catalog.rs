//! Named built-in instances. Semigroups, actions and graphs are held as
//! input documents so that every run re-validates them; groupoids are held
//! as validated values.

use crate::germs::{ample_semigroup, bisection_action, FiniteGroupoid};
use crate::graph::{canonical_graph_action, graph_semigroup, Graph};
use crate::invsemi::{
    canonical_self_action, exel_semigroup, munn_representation, restricted_product_groupoid, symmetric_inverse_semigroup,
    InverseSemigroup,
};
use crate::paction::{induced_exel_action, PartialAction};
use crate::schema::{ActionDoc, Document, GraphDoc, SemigroupDoc};

#[derive(Clone, Debug)]
pub struct Catalog {
    pub semigroups: Vec<(String, SemigroupDoc)>,
    pub actions: Vec<(String, ActionDoc)>,
    pub graphs: Vec<(String, GraphDoc)>,
    pub groupoids: Vec<(String, FiniteGroupoid)>,
    /// Action pairs with isomorphic groupoids of germs, both topologically
    /// principal.
    pub coe_pairs: Vec<(String, String)>,
}

fn z2_swap() -> PartialAction {
    PartialAction::from_fn(InverseSemigroup::cyclic_group(2), vec!["x".into(), "y".into()], |s, x| Some(if s == 1 { 1 - x } else { x }))
        .expect("swap")
}

/// `g` swaps `x` and `y` and is undefined at `z`.
fn z2_partial_swap() -> PartialAction {
    PartialAction::from_fn(InverseSemigroup::cyclic_group(2), vec!["x".into(), "y".into(), "z".into()], |s, x| match (s, x) {
        (0, x) => Some(x),
        (1, 0) => Some(1),
        (1, 1) => Some(0),
        _ => None,
    })
    .expect("partial swap")
}

fn z2_trivial_point() -> PartialAction {
    PartialAction::from_fn(InverseSemigroup::cyclic_group(2), vec!["p".into()], |_, x| Some(x)).expect("trivial action")
}

/// Action of the full ample semigroup of `g` on its units.
fn bisections_of(g: &FiniteGroupoid) -> PartialAction {
    let (s, elems) = ample_semigroup(g, 10_000).expect("small groupoid");
    bisection_action(g, s, &elems)
}

pub fn loop_graph() -> Graph {
    Graph::from_edges(&["v"], &[("e", "v", "v")]).expect("graph")
}

pub fn vw_graph() -> Graph {
    Graph::from_edges(&["v", "w"], &[("e", "v", "w")]).expect("graph")
}

impl Catalog {
    pub fn builtin() -> Self {
        let z2 = InverseSemigroup::cyclic_group(2);
        let z3 = InverseSemigroup::cyclic_group(3);
        let (i2, _) = symmetric_inverse_semigroup(2, 100).expect("I(2)");
        let (exel_z2, _) = exel_semigroup(&z2, 100).expect("S(Z2)");
        let (graph_vw, _) = graph_semigroup(&vw_graph(), 100).expect("S_E");
        let semigroups: Vec<(&str, InverseSemigroup)> = vec![
            ("Z2", z2.clone()),
            ("Z3", z3),
            ("chain2", InverseSemigroup::chain(2)),
            ("chain3", InverseSemigroup::chain(3)),
            ("I2", i2.clone()),
            ("exel-Z2", exel_z2),
            ("graph-vw", graph_vw.clone()),
            ("Z2-zero", InverseSemigroup::with_zero(&z2)),
        ];

        let mut actions: Vec<(String, PartialAction)> =
            semigroups.iter().map(|(n, s)| (format!("munn-{n}"), munn_representation(s))).collect();
        for (n, s) in &semigroups {
            if ["Z2", "chain2", "I2", "Z2-zero"].contains(n) {
                actions.push((format!("self-{n}"), canonical_self_action(s)));
            }
        }
        let (exel_swap, _) = induced_exel_action(&z2_swap(), 100).expect("S(Z2) action");
        let (exel_partial, _) = induced_exel_action(&z2_partial_swap(), 100).expect("S(Z2) action");
        let (vw_action, _) = canonical_graph_action(&vw_graph(), 100).expect("acyclic");
        actions.extend([
            ("z2-swap".to_string(), z2_swap()),
            ("z2-partial-swap".into(), z2_partial_swap()),
            ("z2-trivial-point".into(), z2_trivial_point()),
            ("exel-z2-swap".into(), exel_swap),
            ("exel-z2-partial-swap".into(), exel_partial),
            ("graph-vw".into(), vw_action),
            ("pair2-bisections".into(), bisections_of(&FiniteGroupoid::pair(2))),
            ("rp-chain3".into(), bisections_of(&restricted_product_groupoid(&InverseSemigroup::chain(3)))),
            ("rp-graph-vw".into(), bisections_of(&restricted_product_groupoid(&graph_vw))),
        ]);

        let graphs: Vec<(&str, Graph)> = vec![
            ("loop", loop_graph()),
            ("loop-exit", Graph::from_edges(&["v", "w"], &[("e", "v", "v"), ("f", "v", "w")]).expect("graph")),
            ("vw", vw_graph()),
            ("fan", Graph::from_edges(&["u", "w1", "w2"], &[("e1", "u", "w1"), ("e2", "u", "w2")]).expect("graph")),
            ("cycle2", Graph::from_edges(&["a", "b"], &[("x", "a", "b"), ("y", "b", "a")]).expect("graph")),
            (
                "cycle2-exit",
                Graph::from_edges(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "a"), ("z", "b", "c")]).expect("graph"),
            ),
            ("parallel", Graph::from_edges(&["v", "w"], &[("e", "v", "w"), ("f", "v", "w")]).expect("graph")),
            ("line", Graph::from_edges(&["a", "b", "c"], &[("g", "a", "b"), ("h", "b", "c")]).expect("graph")),
            ("point", Graph::from_edges(&["v"], &[]).expect("graph")),
        ];

        let z2g = FiniteGroupoid::from_group(&z2);
        let groupoids = vec![
            ("point".to_string(), FiniteGroupoid::pair(1)),
            ("pair2".into(), FiniteGroupoid::pair(2)),
            ("pair3".into(), FiniteGroupoid::pair(3)),
            ("Z2".into(), z2g.clone()),
            ("Z3".into(), FiniteGroupoid::from_group(&InverseSemigroup::cyclic_group(3))),
            ("Z2+Z2".into(), z2g.disjoint_union(&z2g)),
            ("pair2+Z2".into(), FiniteGroupoid::pair(2).disjoint_union(&z2g)),
            ("rp-I2".into(), restricted_product_groupoid(&i2)),
        ];

        let coe_pairs = [
            ("munn-chain3", "rp-chain3"),
            ("munn-graph-vw", "rp-graph-vw"),
            ("graph-vw", "pair2-bisections"),
            ("z2-swap", "exel-z2-swap"),
            ("z2-partial-swap", "exel-z2-partial-swap"),
            ("munn-chain2", "munn-chain2"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();

        Catalog {
            semigroups: semigroups.iter().map(|(n, s)| (n.to_string(), SemigroupDoc::from_semigroup(s))).collect(),
            actions: actions.iter().map(|(n, a)| (n.clone(), ActionDoc::from_action(a))).collect(),
            graphs: graphs.iter().map(|(n, g)| (n.to_string(), GraphDoc::from_graph(g))).collect(),
            groupoids,
            coe_pairs,
        }
    }

    /// Semigroups, actions and graphs are looked up in that order, so
    /// `graph-vw` names the semigroup.
    pub fn get(&self, name: &str) -> Option<Document> {
        fn find<'a, T>(v: &'a [(String, T)], name: &str) -> Option<&'a T> {
            v.iter().find(|(n, _)| n == name).map(|(_, d)| d)
        }
        if let Some(d) = find(&self.semigroups, name) {
            return Some(Document::Semigroup(d.clone()));
        }
        if let Some(d) = find(&self.actions, name) {
            return Some(Document::Action(d.clone()));
        }
        find(&self.graphs, name).map(|d| Document::Graph(d.clone()))
    }

    pub fn action(&self, name: &str) -> Option<&ActionDoc> {
        self.actions.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    pub fn graph(&self, name: &str) -> Option<&GraphDoc> {
        self.graphs.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    pub fn names(&self) -> Vec<(&'static str, String)> {
        let mut out: Vec<(&'static str, String)> = Vec::new();
        out.extend(self.semigroups.iter().map(|(n, _)| ("semigroup", n.clone())));
        out.extend(self.actions.iter().map(|(n, _)| ("action", n.clone())));
        out.extend(self.graphs.iter().map(|(n, _)| ("graph", n.clone())));
        out.extend(self.groupoids.iter().map(|(n, _)| ("groupoid", n.clone())));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_document_validates() {
        let c = Catalog::builtin();
        for (n, d) in &c.semigroups {
            d.build().unwrap_or_else(|e| panic!("{n}: {e}"));
        }
        for (n, d) in &c.actions {
            d.build().unwrap_or_else(|e| panic!("{n}: {e}"));
        }
        for (n, d) in &c.graphs {
            d.build().unwrap_or_else(|e| panic!("{n}: {e}"));
        }
        assert!(c.actions.len() >= 8 && c.groupoids.len() >= 6);
    }

    #[test]
    fn documents_round_trip_through_text() {
        let c = Catalog::builtin();
        for (n, _) in &c.semigroups {
            let doc = c.get(n).unwrap();
            let back = crate::schema::parse_input(&doc.to_json(), false).unwrap();
            assert_eq!(back.doc, doc);
        }
        let d = c.get("munn-I2").unwrap();
        assert_eq!(crate::schema::parse_input(&d.to_json(), false).unwrap().doc, d);
        let d = c.get("cycle2-exit").unwrap();
        assert_eq!(crate::schema::parse_input(&d.to_json(), false).unwrap().doc, d);
    }

    #[test]
    fn sizes_of_named_semigroups() {
        let c = Catalog::builtin();
        let size = |n: &str| match c.get(n).unwrap() {
            Document::Semigroup(d) => d.elements.len(),
            _ => unreachable!(),
        };
        assert_eq!([size("I2"), size("exel-Z2"), size("graph-vw"), size("Z2-zero")], [7, 3, 6, 3]);
    }
}
