use super::{graph_semigroup, Cylinder, Graph, GraphError, GraphISGElement, Path};
use crate::germs::{groupoid_of_germs, FiniteGroupoid};
use crate::paction::PartialAction;
use serde::Serialize;
use std::collections::HashMap;

/// `∂E` of an acyclic graph: every path ending at a sink, ordered by length,
/// start and edges. `None` if the graph has a cycle, since then `∂E`
/// contains infinite paths.
pub fn boundary_enumerate(g: &Graph) -> Option<Vec<Path>> {
    let paths = g.all_paths().ok()?;
    Some(paths.into_iter().filter(|p| g.is_sink(p.range(g))).collect())
}

/// `σ(x)` for a finite boundary path of positive length.
pub fn shift_point(g: &Graph, x: &Path) -> Option<Path> {
    if x.is_empty() {
        None
    } else {
        x.shift(1, g)
    }
}

/// `θ_{(μ,ν)} : Z(ν) → Z(μ), νx ↦ μx` on the finite `∂E`; zero acts by
/// the empty map.
pub fn canonical_graph_action(g: &Graph, max_elements: usize) -> Result<(PartialAction, Vec<GraphISGElement>), GraphError> {
    let (s, elems) = graph_semigroup(g, max_elements)?;
    let boundary = boundary_enumerate(g).expect("acyclic");
    let index: HashMap<Path, usize> = boundary.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let carrier = boundary.iter().map(|p| p.label(g)).collect();
    let act = PartialAction::from_fn(s, carrier, |i, x| match &elems[i] {
        GraphISGElement::Pair(mu, nu) => nu.strip_prefix(&boundary[x], g).map(|gamma| index[&mu.concat(&gamma)]),
        GraphISGElement::Zero => None,
    })
    .expect("canonical action of S_E");
    Ok((act, elems))
}

/// `θ_{(μ,ν)}(Z(ρ, F) ∩ Z(ν))` as a cylinder, for graphs with or without
/// cycles; `None` when the intersection is empty.
pub fn act_on_cylinder(g: &Graph, s: &GraphISGElement, c: &Cylinder) -> Option<Cylinder> {
    let GraphISGElement::Pair(mu, nu) = s else { return None };
    if let Some(gamma) = nu.strip_prefix(&c.mu, g) {
        let image = Cylinder { mu: mu.concat(&gamma), forbidden: c.forbidden.clone() };
        return (!image.is_empty(g)).then_some(image);
    }
    let gamma = c.mu.strip_prefix(nu, g)?;
    (!c.forbidden.contains(&gamma.edges[0])).then(|| Cylinder::basic(mu.clone()))
}

/// `𝒢_E` built from triples `(x, m − n, y)` with `σᵐ(x) = σⁿ(y)`. Units are
/// `(x, 0, x)`; arrows are listed with their triples.
pub fn boundary_groupoid(g: &Graph) -> Result<(FiniteGroupoid, Vec<(Path, i64, Path)>), GraphError> {
    g.require_acyclic()?;
    let boundary = boundary_enumerate(g).expect("acyclic");
    let mut triples: Vec<(Path, i64, Path)> = Vec::new();
    for x in &boundary {
        for y in &boundary {
            let mut ks: Vec<i64> = Vec::new();
            for m in 0..=x.len() {
                for n in 0..=y.len() {
                    if x.shift(m, g) == y.shift(n, g) {
                        ks.push(m as i64 - n as i64);
                    }
                }
            }
            ks.sort_unstable();
            ks.dedup();
            triples.extend(ks.into_iter().map(|k| (x.clone(), k, y.clone())));
        }
    }
    let index: HashMap<(Path, i64, Path), usize> = triples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let unit = |p: &Path| index[&(p.clone(), 0, p.clone())];
    let names = triples.iter().map(|(x, k, y)| format!("({},{},{})", x.label(g), k, y.label(g))).collect();
    let groupoid = FiniteGroupoid::validate(
        names,
        triples.iter().map(|(_, _, y)| unit(y)).collect(),
        triples.iter().map(|(x, _, _)| unit(x)).collect(),
        triples.iter().map(|(x, k, y)| index[&(y.clone(), -k, x.clone())]).collect(),
        |a, b| {
            let (x, k, y) = &triples[a];
            let (y2, l, z) = &triples[b];
            (y == y2).then(|| index[&(x.clone(), k + l, z.clone())])
        },
    )
    .expect("boundary path groupoid");
    Ok((groupoid, triples))
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    pub germs: usize,
    pub arrows: usize,
    /// `ψ` agrees on all representatives of each germ.
    pub well_defined: bool,
    pub isomorphism: bool,
}

/// `ψ([(μ,ν), x]) = (θ_{(μ,ν)}(x), |μ| − |ν|, x)` from `S_E ⋉ ∂E` to `𝒢_E`.
pub fn psi_check(g: &Graph, max_elements: usize) -> Result<PsiReport, GraphError> {
    let (theta, elems) = canonical_graph_action(g, max_elements)?;
    let germs = groupoid_of_germs(&theta);
    let (target, triples) = boundary_groupoid(g)?;
    let boundary = boundary_enumerate(g).expect("acyclic");
    let index: HashMap<(Path, i64, Path), usize> = triples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let mut map = vec![usize::MAX; germs.len()];
    let mut well_defined = true;
    for ((s, x), a) in germs.pairs() {
        let GraphISGElement::Pair(mu, nu) = &elems[s] else { continue };
        let y = theta.apply(s, x).expect("x in the domain");
        let triple = (boundary[y].clone(), mu.len() as i64 - nu.len() as i64, boundary[x].clone());
        let Some(&t) = index.get(&triple) else {
            well_defined = false;
            continue;
        };
        if map[a] == usize::MAX {
            map[a] = t;
        } else if map[a] != t {
            well_defined = false;
        }
    }
    let isomorphism = well_defined && germs.len() == target.len() && germs.base().is_isomorphism(&target, &map);
    Ok(PsiReport { germs: germs.len(), arrows: target.len(), well_defined, isomorphism })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConditionL {
    pub holds: bool,
    pub simple_cycles: usize,
    /// A cycle without an exit, as edge names from its least vertex.
    pub witness: Option<String>,
}

/// Every simple cycle must contain a vertex emitting an edge off the cycle.
pub fn condition_l(g: &Graph) -> ConditionL {
    let mut cycles: Vec<Path> = Vec::new();
    fn extend(g: &Graph, root: usize, path: &Path, on: &mut Vec<bool>, out: &mut Vec<Path>) {
        for &e in g.out_edges(path.range(g)) {
            let w = g.range(e);
            if w == root {
                out.push(path.push(e));
            } else if w > root && !on[w] {
                on[w] = true;
                extend(g, root, &path.push(e), on, out);
                on[w] = false;
            }
        }
    }
    for v in 0..g.vertex_count() {
        let mut on = vec![false; g.vertex_count()];
        on[v] = true;
        extend(g, v, &g.vertex_path(v), &mut on, &mut cycles);
    }
    // On a simple cycle each vertex uses exactly one of its edges.
    let witness = cycles.iter().find(|c| c.edges.iter().all(|&e| g.out_edges(g.source(e)).len() == 1));
    ConditionL { holds: witness.is_none(), simple_cycles: cycles.len(), witness: witness.map(|c| c.label(g)) }
}

/// A vertex `v` whose cylinder `Z(v)` is the single eventually periodic
/// point `γα^∞`; `(γα, γ)` fixes it without being an idempotent.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PeriodicWitness {
    pub vertex: String,
    pub prefix: String,
    pub cycle: String,
    pub element: String,
}

/// Vertices from which every vertex reached emits exactly one edge and the
/// walk closes up. The action is topologically principal iff there are none.
pub fn isolated_periodic_points(g: &Graph) -> Vec<PeriodicWitness> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let mut walk = g.vertex_path(v);
        let mut seen: HashMap<usize, usize> = HashMap::new();
        loop {
            let here = walk.range(g);
            if let Some(&at) = seen.get(&here) {
                let gamma = walk.truncate(at);
                let alpha = walk.shift(at, g).expect("within the walk");
                let element = GraphISGElement::Pair(gamma.concat(&alpha), gamma.clone());
                out.push(PeriodicWitness {
                    vertex: g.vertices()[v].clone(),
                    prefix: gamma.label(g),
                    cycle: alpha.label(g),
                    element: element.label(g),
                });
                break;
            }
            if g.out_edges(here).len() != 1 {
                break;
            }
            seen.insert(here, walk.len());
            walk = walk.push(g.out_edges(here)[0]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::{groupoid_iso_search, isotropy_report};
    use crate::paction::dynamics_report;

    fn vw() -> Graph {
        Graph::from_edges(&["v", "w"], &[("e", "v", "w")]).unwrap()
    }

    #[test]
    fn boundary_of_small_graphs() {
        let g = vw();
        let b: Vec<String> = boundary_enumerate(&g).unwrap().iter().map(|p| p.label(&g)).collect();
        assert_eq!(b, ["w", "e"]);
        let point = Graph::from_edges(&["v"], &[]).unwrap();
        assert_eq!(boundary_enumerate(&point).unwrap().len(), 1);
        assert!(boundary_enumerate(&Graph::from_edges(&["v"], &[("e", "v", "v")]).unwrap()).is_none());
    }

    #[test]
    fn v_to_w_groupoid_is_the_pair_groupoid() {
        let (g, triples) = boundary_groupoid(&vw()).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(triples.len(), 4);
        assert!(groupoid_iso_search(&g, &FiniteGroupoid::pair(2), 10_000).unwrap().is_some());
        let (one, _) = boundary_groupoid(&Graph::from_edges(&["v"], &[]).unwrap()).unwrap();
        assert_eq!((one.len(), one.units().len()), (1, 1));
    }

    #[test]
    fn canonical_action_moves_w_to_e() {
        let g = vw();
        let (theta, elems) = canonical_graph_action(&g, 100).unwrap();
        let s = elems.iter().position(|e| e.label(&g) == "(e,w)").unwrap();
        assert_eq!(theta.apply(s, 0), Some(1));
        assert_eq!(theta.apply(s, 1), None);
        assert!(dynamics_report(&theta).top_principal);
    }

    #[test]
    fn cylinder_action_matches_pointwise_action() {
        let g = Graph::from_edges(&["u", "v", "w", "x"], &[("e", "u", "v"), ("f", "v", "w"), ("h", "v", "x")]).unwrap();
        let (theta, elems) = canonical_graph_action(&g, 1000).unwrap();
        let boundary = boundary_enumerate(&g).unwrap();
        let mut cylinders = Vec::new();
        for p in g.all_paths().unwrap() {
            let out = g.out_edges(p.range(&g)).to_vec();
            for mask in 0..(1usize << out.len()) {
                let f = out.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                cylinders.push(Cylinder::new(&g, p.clone(), f).unwrap());
            }
        }
        for (i, s) in elems.iter().enumerate() {
            for c in &cylinders {
                let mut pointwise: Vec<Path> =
                    c.points(&boundary).iter().filter_map(|x| theta.apply(i, index_of(&boundary, x))).map(|y| boundary[y].clone()).collect();
                pointwise.sort();
                let mut symbolic = act_on_cylinder(&g, s, c).map(|d| d.points(&boundary)).unwrap_or_default();
                symbolic.sort();
                assert_eq!(pointwise, symbolic, "{} on {}", s.label(&g), c.label(&g));
            }
        }
        // On a cycle the action is still defined symbolically.
        let lp = Graph::from_edges(&["v"], &[("e", "v", "v")]).unwrap();
        let s = GraphISGElement::Pair(lp.parse_path("e").unwrap(), lp.vertex_path(0));
        let image = act_on_cylinder(&lp, &s, &Cylinder::basic(lp.parse_path("e").unwrap())).unwrap();
        assert_eq!(image.label(&lp), "Z(e.e)");
    }

    fn index_of(boundary: &[Path], x: &Path) -> usize {
        boundary.iter().position(|y| y == x).unwrap()
    }

    #[test]
    fn psi_is_an_isomorphism_on_acyclic_graphs() {
        for g in [
            vw(),
            Graph::from_edges(&["v", "w"], &[("e", "v", "w"), ("f", "v", "w")]).unwrap(),
            Graph::from_edges(&["u", "w1", "w2"], &[("e1", "u", "w1"), ("e2", "u", "w2")]).unwrap(),
            Graph::from_edges(&["u", "v", "w"], &[("e", "u", "v"), ("f", "v", "w"), ("h", "u", "w")]).unwrap(),
        ] {
            let r = psi_check(&g, 1000).unwrap();
            assert!(r.well_defined && r.isomorphism, "{r:?}");
        }
    }

    #[test]
    fn condition_l_and_periodic_points() {
        let single = Graph::from_edges(&["v"], &[("e", "v", "v")]).unwrap();
        let c = condition_l(&single);
        assert_eq!(c, ConditionL { holds: false, simple_cycles: 1, witness: Some("e".into()) });
        let w = isolated_periodic_points(&single);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].element, "(e,v)");

        let exit = Graph::from_edges(&["v", "w"], &[("e", "v", "v"), ("f", "v", "w")]).unwrap();
        assert!(condition_l(&exit).holds);
        assert!(isolated_periodic_points(&exit).is_empty());

        // 2-cycle feeding from a tail: the tail vertex also sees the periodic point.
        let tail = Graph::from_edges(&["t", "a", "b"], &[("g", "t", "a"), ("x", "a", "b"), ("y", "b", "a")]).unwrap();
        assert!(!condition_l(&tail).holds);
        let w = isolated_periodic_points(&tail);
        assert_eq!(w.len(), 3);
        assert_eq!((w[0].prefix.as_str(), w[0].cycle.as_str()), ("g", "x.y"));
    }

    #[test]
    fn acyclic_dynamics_agree_with_isotropy() {
        let g = Graph::from_edges(&["u", "w1", "w2"], &[("e1", "u", "w1"), ("e2", "u", "w2")]).unwrap();
        let (theta, _) = canonical_graph_action(&g, 1000).unwrap();
        let d = dynamics_report(&theta);
        let (bg, _) = boundary_groupoid(&g).unwrap();
        assert_eq!(d.top_principal, isotropy_report(&bg).top_principal);
        assert_eq!(d.top_principal, condition_l(&g).holds);
    }
}
