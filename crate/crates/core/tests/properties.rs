//! Structural invariants on randomly generated instances. Semigroups are
//! inverse subsemigroups of I(n) generated by random partial bijections;
//! graphs are random on at most four vertices.

use std::collections::{BTreeSet, HashMap};

use germkit::algebra::{convolve, theorem_iso_verify, SteinbergElement};
use germkit::germs::{groupoid_iso_search, groupoid_of_germs, isotropy_report};
use germkit::graph::{
    boundary_groupoid, condition_l, graph_semigroup, isolated_periodic_points, leavitt_relations_check, psi_check, EdgeSpec,
    Graph, LeavittElement,
};
use germkit::invsemi::{munn_representation, restricted_product_groupoid, InverseSemigroup, PartialBijection};
use germkit::paction::{dual_action, dynamics_report, induced_group_action, recover_action_from_dual, PartialAction};
use germkit::schema::{parse_input, Document, SemigroupDoc};
use germkit::{Rational, Z5};
use proptest::prelude::*;

fn close(gens: Vec<PartialBijection>) -> Vec<PartialBijection> {
    let mut all: BTreeSet<PartialBijection> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    loop {
        let cur: Vec<_> = all.iter().cloned().collect();
        let before = all.len();
        for a in &cur {
            for b in &cur {
                all.insert(a.compose(b));
            }
        }
        if all.len() == before {
            return all.into_iter().collect();
        }
    }
}

fn semigroup_of(elems: &[PartialBijection]) -> InverseSemigroup {
    let idx: HashMap<&PartialBijection, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    // `s·t` applies `t` first, matching composition of partial maps.
    InverseSemigroup::from_fn(elems.iter().map(|e| e.label()).collect(), |a, b| idx[&elems[a].compose(&elems[b])])
        .expect("closed family of partial bijections")
}

fn partial_bijection(n: usize) -> impl Strategy<Value = PartialBijection> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n))
        .prop_map(|(perm, keep)| PartialBijection { map: perm.into_iter().zip(keep).map(|(y, k)| k.then_some(y)).collect() })
}

/// Subsemigroups of I(n) for n ≤ 3 with their elements.
fn family() -> impl Strategy<Value = Vec<PartialBijection>> {
    (1usize..=3).prop_flat_map(|n| prop::collection::vec(partial_bijection(n), 1..=2)).prop_map(close)
}

/// The defining action of a family on the points some element moves.
fn natural_action(elems: &[PartialBijection]) -> Option<PartialAction> {
    let pts: Vec<usize> = (0..elems[0].map.len()).filter(|&x| elems.iter().any(|e| e.map[x].is_some())).collect();
    if pts.is_empty() {
        return None;
    }
    let pos = |y: usize| pts.iter().position(|&p| p == y).expect("moved points are closed");
    let act = PartialAction::from_fn(semigroup_of(elems), pts.iter().map(|p| format!("p{p}")).collect(), |s, i| {
        elems[s].map[pts[i]].map(pos)
    });
    Some(act.expect("defining action is a partial action"))
}

/// Germs counted from the definition: `(s,x) ~ (t,x)` iff `se = te` for an
/// idempotent `e` defined at `x`.
fn germ_count_oracle(theta: &PartialAction) -> usize {
    let sg = theta.semigroup();
    let idem = sg.idempotents();
    let mut count = 0;
    for x in 0..theta.points() {
        let at_x: Vec<usize> = (0..sg.len()).filter(|&s| theta.apply(s, x).is_some()).collect();
        let mut reps: Vec<usize> = Vec::new();
        for &s in &at_x {
            let same = |t: usize| idem.iter().any(|&e| theta.apply(e, x).is_some() && sg.mul(s, e) == sg.mul(t, e));
            if !reps.iter().any(|&t| same(t)) {
                reps.push(s);
            }
        }
        count += reps.len();
    }
    count
}

/// All maps `S → Z_k` respecting products.
fn homs_to_cyclic(s: &InverseSemigroup, k: usize) -> Vec<Vec<usize>> {
    let n = s.len();
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    loop {
        if (0..n).all(|a| (0..n).all(|b| cur[s.mul(a, b)] == (cur[a] + cur[b]) % k)) {
            out.push(cur.clone());
        }
        let mut i = 0;
        while i < n && cur[i] == k - 1 {
            cur[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
        cur[i] += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn inverse_laws(f in family()) {
        let s = semigroup_of(&f);
        for a in 0..s.len() {
            prop_assert!(s.is_idempotent(s.mul(a, s.inv(a))) && s.is_idempotent(s.mul(s.inv(a), a)));
            for b in 0..s.len() {
                prop_assert_eq!(s.inv(s.mul(a, b)), s.mul(s.inv(b), s.inv(a)));
            }
        }
        let e = s.idempotents();
        for &x in &e {
            for &y in &e {
                prop_assert_eq!(s.mul(x, y), s.mul(y, x));
            }
        }
    }

    #[test]
    fn natural_order_is_compatible(f in family()) {
        let s = semigroup_of(&f);
        for a in 0..s.len() {
            for b in (0..s.len()).filter(|&b| s.leq(a, b)) {
                prop_assert!(s.leq(s.inv(a), s.inv(b)));
                for c in 0..s.len() {
                    prop_assert!(s.leq(s.mul(a, c), s.mul(b, c)) && s.leq(s.mul(c, a), s.mul(c, b)));
                }
            }
        }
    }

    #[test]
    fn natural_order_is_restriction(f in family()) {
        let s = semigroup_of(&f);
        for a in 0..s.len() {
            for b in 0..s.len() {
                let restricts = f[a].map.iter().zip(&f[b].map).all(|(x, y)| x.is_none() || x == y);
                prop_assert_eq!(s.leq(a, b), restricts);
            }
        }
    }

    #[test]
    fn homomorphisms_to_groups_factor_through_the_group_image(f in family()) {
        let s = semigroup_of(&f);
        prop_assume!(s.len() <= 8);
        let gi = s.max_group_image();
        for k in [2, 3] {
            for psi in homs_to_cyclic(&s, k) {
                for a in 0..s.len() {
                    prop_assert_eq!(psi[a], psi[gi.representative[gi.class_of[a]]]);
                }
            }
        }
    }

    #[test]
    fn e_unitary_iff_lower_bounds_have_meets(f in family()) {
        let s = semigroup_of(&f);
        let meets = (0..s.len()).all(|a| (0..s.len()).all(|b| {
            s.common_lower_bounds(a, b).is_empty() || s.compatible_meet(a, b).is_some()
        }));
        prop_assert_eq!(s.is_e_unitary(), meets);
        prop_assert_eq!(s.is_e_unitary(), s.lower_bound_compatibility().is_ok());
    }

    #[test]
    fn munn_germs_form_the_restricted_product(f in family()) {
        let s = semigroup_of(&f);
        let g = groupoid_of_germs(&munn_representation(&s));
        let found = groupoid_iso_search(g.base(), &restricted_product_groupoid(&s), 1_000_000).unwrap();
        prop_assert!(found.is_some());
    }

    #[test]
    fn germ_groupoid_matches_the_definition(f in family()) {
        let Some(theta) = natural_action(&f) else { return Ok(()) };
        prop_assert_eq!(groupoid_of_germs(&theta).len(), germ_count_oracle(&theta));
    }

    #[test]
    fn dual_action_recovers_the_action(f in family()) {
        let Some(theta) = natural_action(&f) else { return Ok(()) };
        prop_assert_eq!(recover_action_from_dual(&dual_action::<Rational>(&theta)).unwrap(), theta.clone());
        prop_assert_eq!(recover_action_from_dual(&dual_action::<Z5>(&theta)).unwrap(), theta);
    }

    #[test]
    fn lambda_is_the_trivial_isotropy(f in family()) {
        let Some(theta) = natural_action(&f) else { return Ok(()) };
        let d = dynamics_report(&theta);
        let germs = groupoid_of_germs(&theta);
        let mut trivial: Vec<usize> =
            isotropy_report(germs.base()).trivial_points.iter().filter_map(|&u| germs.point_of(u)).collect();
        trivial.sort_unstable();
        prop_assert_eq!(&d.lambda, &trivial);
        prop_assert!(d.consistent && d.free == d.effective && d.effective == d.top_principal);
    }

    #[test]
    fn free_actions_have_no_parallel_germs(f in family()) {
        let Some(theta) = natural_action(&f) else { return Ok(()) };
        prop_assume!(dynamics_report(&theta).free);
        let g = groupoid_of_germs(&theta);
        let b = g.base();
        let ends: BTreeSet<(usize, usize)> = (0..b.len()).map(|a| (b.source(a), b.range(a))).collect();
        prop_assert_eq!(ends.len(), b.len());
    }

    #[test]
    fn e_unitary_lambda_matches_the_induced_group_action(f in family()) {
        let Some(theta) = natural_action(&f) else { return Ok(()) };
        prop_assume!(theta.semigroup().is_e_unitary());
        let (group_action, _) = induced_group_action(&theta).unwrap();
        prop_assert_eq!(dynamics_report(&theta).lambda, dynamics_report(&group_action).lambda);
    }

    #[test]
    fn convolution_is_associative(f in family(), coeffs in prop::collection::vec(-3i64..=3, 3 * 40)) {
        let Some(theta) = natural_action(&f) else { return Ok(()) };
        let g = groupoid_of_germs(&theta);
        let g = g.base();
        prop_assume!(g.len() <= 40);
        let el = |k: usize| SteinbergElement::from_coeffs(g, (0..g.len()).map(|a| (a, Rational::from(num::BigInt::from(coeffs[k * 40 + a])))));
        let (x, y, z) = (el(0), el(1), el(2));
        let left = convolve(g, &convolve(g, &x, &y).unwrap(), &z).unwrap();
        let right = convolve(g, &x, &convolve(g, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let one = SteinbergElement::identity(g);
        prop_assert_eq!(convolve(g, &one, &x).unwrap(), x);
    }

    #[test]
    fn schema_round_trip(f in family()) {
        let s = semigroup_of(&f);
        let doc = Document::Semigroup(SemigroupDoc::from_semigroup(&s));
        let back = parse_input(&doc.to_json(), false).unwrap();
        let Document::Semigroup(d) = back.doc else { panic!("wrong kind") };
        prop_assert_eq!(d.build().unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn crossed_product_matches_steinberg_algebra(f in family(), seed in any::<u64>()) {
        let Some(theta) = natural_action(&f) else { return Ok(()) };
        prop_assume!(theta.semigroup().len() <= 12);
        let r = theorem_iso_verify::<Rational>(&theta, seed, 4).unwrap();
        prop_assert!(r.passed, "{:?}", r.failures);
    }
}

fn graph_from(n: usize, edges: &[(usize, usize)]) -> Graph {
    let vertices = (0..n).map(|v| format!("v{v}")).collect();
    let edges = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| EdgeSpec { name: format!("e{i}"), src: format!("v{a}"), dst: format!("v{b}") })
        .collect();
    Graph::new(vertices, edges).expect("graph")
}

fn any_graph() -> impl Strategy<Value = Graph> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=3).prop_map(move |edges| graph_from(n, &edges))
    })
}

fn acyclic_graph() -> impl Strategy<Value = Graph> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::vec((0..n - 1, 1..n), 0..=4).prop_map(move |pairs| {
            let edges: Vec<(usize, usize)> = pairs.into_iter().filter(|(a, b)| a < b).collect();
            graph_from(n, &edges)
        })
    })
}

/// Loop-without-exit, by direct search: a vertex reaching only vertices
/// that emit exactly one edge, with the walk returning to a visited vertex.
fn has_cycle_without_exit(g: &Graph) -> bool {
    (0..g.vertex_count()).any(|v| {
        let mut seen = vec![v];
        let mut cur = v;
        loop {
            let out = g.out_edges(cur);
            if out.len() != 1 {
                return false;
            }
            cur = g.range(out[0]);
            if seen.contains(&cur) {
                // Every vertex on the closed walk emits one edge, so it has no exit.
                return true;
            }
            seen.push(cur);
        }
    })
}

/// Arrows of the boundary groupoid of an acyclic graph: pairs of paths
/// ending at a common sink.
fn path_pair_oracle(g: &Graph) -> usize {
    fn paths(g: &Graph, v: usize, w: usize) -> usize {
        usize::from(v == w) + g.out_edges(v).iter().map(|&e| paths(g, g.range(e), w)).sum::<usize>()
    }
    let n = g.vertex_count();
    (0..n)
        .filter(|&w| g.out_edges(w).is_empty())
        .map(|w| (0..n).map(|v| paths(g, v, w)).sum::<usize>().pow(2))
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn condition_l_iff_no_isolated_periodic_point(g in any_graph()) {
        let l = condition_l(&g).holds;
        prop_assert_eq!(l, isolated_periodic_points(&g).is_empty());
        prop_assert_eq!(l, !has_cycle_without_exit(&g));
    }

    #[test]
    fn psi_is_an_isomorphism_on_acyclic_graphs(g in acyclic_graph()) {
        let r = psi_check(&g, 100_000).unwrap();
        prop_assert!(r.well_defined && r.isomorphism);
    }

    #[test]
    fn graph_semigroup_is_inverse_with_zero(g in acyclic_graph()) {
        let (s, _) = graph_semigroup(&g, 100_000).unwrap();
        prop_assert!(s.zero().is_some());
        for a in s.idempotents() {
            for b in s.idempotents() {
                prop_assert!(s.compatible_meet(a, b).is_some());
            }
        }
    }

    #[test]
    fn leavitt_relations_hold(g in any_graph()) {
        prop_assert!(leavitt_relations_check::<Rational>(&g).iter().all(|c| c.holds));
        prop_assert!(leavitt_relations_check::<Z5>(&g).iter().all(|c| c.holds));
    }

    #[test]
    fn boundary_groupoid_size_counts_path_pairs(g in acyclic_graph()) {
        let (bg, _) = boundary_groupoid(&g).unwrap();
        prop_assert_eq!(bg.len(), path_pair_oracle(&g));
    }

    #[test]
    fn leavitt_multiplication_is_associative(g in any_graph(), picks in prop::collection::vec((0usize..3, 0usize..8), 3)) {
        let gen = |(kind, i): (usize, usize)| -> LeavittElement<Rational> {
            match kind {
                0 => LeavittElement::vertex(&g, i % g.vertex_count()),
                1 if g.edge_count() > 0 => LeavittElement::edge(&g, i % g.edge_count()),
                2 if g.edge_count() > 0 => LeavittElement::ghost(&g, i % g.edge_count()),
                _ => LeavittElement::one(&g),
            }
        };
        let (a, b, c) = (gen(picks[0]), gen(picks[1]), gen(picks[2]));
        let left = a.mul(&b, &g).unwrap().mul(&c, &g).unwrap();
        let right = a.mul(&b.mul(&c, &g).unwrap(), &g).unwrap();
        prop_assert!(left.equals(&right, &g).unwrap());
    }
}
