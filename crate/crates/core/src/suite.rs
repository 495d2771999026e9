//! The acceptance suite over a [`Catalog`]. Every instance is rebuilt from
//! its document first; criteria run only on instances that validate.
//! Reports carry no timings, so equal catalogs and seeds give equal reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{boolean_rep_hom, theorem_iso_verify, AlgebraError, SteinbergAlgebra, SteinbergElement};
use crate::catalog::Catalog;
use crate::germs::{full_pseudogroup, groupoid_iso_search, groupoid_of_germs, isotropy_report, FiniteGroupoid};
use crate::graph::{
    boundary_groupoid, condition_l, isolated_periodic_points, leavitt_relations_check, psi_check, Graph, LeavittElement,
};
use crate::invsemi::{
    canonical_self_action, exel_semigroup, exel_size, munn_representation, restricted_product_groupoid, word_closure,
    InverseSemigroup,
};
use crate::paction::{
    coe_from_groupoid_iso, dual_action, dynamics_report, ideal_lattice_check, iso_from_coe, join_over_group_image,
    recover_action_from_dual, verify_orbit_equivalence, PartialAction, RecoverError,
};
use crate::scalar::Ring;
use crate::{Rational, Z5, Z6};

pub const CRITERIA: usize = 10;

/// Node budget for every isomorphism search in the suite.
pub const ISO_NODES: u64 = 2_000_000;

const SAMPLES: usize = 6;
const MAX_ELEMENTS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    /// `kind name: error` for each catalog document that fails to build.
    pub validation: Vec<String>,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

/// Catalog instances after validation.
pub struct Built {
    pub semigroups: Vec<(String, InverseSemigroup)>,
    pub actions: Vec<(String, PartialAction)>,
    pub graphs: Vec<(String, Graph)>,
    pub groupoids: Vec<(String, FiniteGroupoid)>,
    pub coe_pairs: Vec<(String, String)>,
    pub validation: Vec<String>,
}

pub fn build(c: &Catalog) -> Built {
    fn keep<T>(out: &mut Vec<String>, kind: &str, name: &str, r: Result<T, crate::schema::BuildError>) -> Option<(String, T)> {
        r.map_err(|e| out.push(format!("{kind} {name}: {e}"))).ok().map(|v| (name.to_string(), v))
    }
    let mut validation = Vec::new();
    let semigroups = c.semigroups.iter().filter_map(|(n, d)| keep(&mut validation, "semigroup", n, d.build())).collect();
    let actions = c.actions.iter().filter_map(|(n, d)| keep(&mut validation, "action", n, d.build())).collect();
    let graphs = c.graphs.iter().filter_map(|(n, d)| keep(&mut validation, "graph", n, d.build())).collect();
    Built { semigroups, actions, graphs, groupoids: c.groupoids.clone(), coe_pairs: c.coe_pairs.clone(), validation }
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn finish(self, id: usize) -> CriterionResult {
        CriterionResult { id, title: title(id).into(), passed: self.failures.is_empty(), checked: self.checked, failures: self.failures }
    }
}

pub fn title(id: usize) -> &'static str {
    match id {
        1 => "crossed product of the dual action is the Steinberg algebra of the germ groupoid",
        2 => "germs of the Munn representation form the restricted product groupoid",
        3 => "maximal group image of S(G) is G, with the claimed sizes of S(G)",
        4 => "E-unitary iff lower-bound pairs are compatible iff the self-action factors",
        5 => "Lambda equals the points with trivial isotropy",
        6 => "orbit equivalences and groupoid isomorphisms round-trip",
        7 => "tau is injective on bisections iff the groupoid is effective",
        8 => "graph pipeline: Condition (L), boundary groupoid, Leavitt relations, psi",
        9 => "dual actions recover the action; ideals match open sets",
        10 => "Boolean representations extend uniquely",
        _ => "unknown criterion",
    }
}

pub fn catalog_run(c: &Catalog, seed: u64) -> SuiteReport {
    let b = build(c);
    let criteria: Vec<CriterionResult> = (1..=CRITERIA).map(|id| run_criterion(&b, id, seed)).collect();
    let passed = b.validation.is_empty() && criteria.iter().all(|r| r.passed);
    SuiteReport { seed, validation: b.validation, criteria, passed }
}

pub fn run_criterion(b: &Built, id: usize, seed: u64) -> CriterionResult {
    let mut t = Tally::new();
    match id {
        1 => steinberg_crossed(b, seed, &mut t),
        2 => munn_germs(b, &mut t),
        3 => exel_group_image(&mut t),
        4 => e_unitary(b, &mut t),
        5 => dynamics(b, &mut t),
        6 => coe_round_trip(b, &mut t),
        7 => pseudogroup(b, &mut t),
        8 => graphs(b, &mut t),
        9 => recovery(b, &mut t),
        10 => boolean(b, seed, &mut t),
        _ => t.check(false, || format!("no criterion {id}")),
    }
    t.finish(id)
}

fn steinberg_crossed(b: &Built, seed: u64, t: &mut Tally) {
    t.check(b.actions.len() >= 8, || format!("only {} actions", b.actions.len()));
    for (name, theta) in &b.actions {
        one_ring::<Rational>(name, theta, seed, t);
        one_ring::<Z5>(name, theta, seed, t);
    }
}

fn one_ring<R: Ring>(name: &str, theta: &PartialAction, seed: u64, t: &mut Tally) {
    match theorem_iso_verify::<R>(theta, seed, SAMPLES) {
        Ok(r) => {
            t.check(r.passed, || format!("{name} over {}: {}", R::name(), r.failures.join("; ")));
            t.check(r.crossed_product.quotient_dim == r.arrows, || {
                format!("{name} over {}: quotient {} vs {} arrows", R::name(), r.crossed_product.quotient_dim, r.arrows)
            });
        }
        Err(e) => t.check(false, || format!("{name} over {}: {e}", R::name())),
    }
}

fn munn_germs(b: &Built, t: &mut Tally) {
    for (name, s) in &b.semigroups {
        let germs = groupoid_of_germs(&munn_representation(s));
        let target = restricted_product_groupoid(s);
        match groupoid_iso_search(germs.base(), &target, ISO_NODES) {
            Ok(found) => t.check(found.is_some(), || format!("{name}: no isomorphism")),
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
        // [s,e] ↦ se, with the Munn carrier listing E(S) in order.
        let idem = s.idempotents();
        let map: Vec<usize> = (0..germs.len())
            .map(|a| {
                let (u, x) = germs.representative(a);
                s.mul(u, idem[x])
            })
            .collect();
        t.check(germs.base().is_isomorphism(&target, &map), || format!("{name}: [s,e] -> se is not an isomorphism"));
    }
}

/// Claimed cardinality of `S(G)` for a group of order `n`.
fn claimed_exel_size(n: usize) -> usize {
    if n == 2 {
        4
    } else {
        n << (n - 1)
    }
}

fn exel_group_image(t: &mut Tally) {
    for n in [2usize, 3] {
        let g = InverseSemigroup::cyclic_group(n);
        let (s, elems) = match exel_semigroup(&g, MAX_ELEMENTS) {
            Ok(v) => v,
            Err(e) => return t.check(false, || format!("Z{n}: {e}")),
        };
        let gi = s.max_group_image();
        // [x] ~ [y] in G(S(G)) exactly when the group parts agree, and the
        // induced bijection respects products.
        let same_class = (0..s.len())
            .all(|x| (0..s.len()).all(|y| (gi.class_of[x] == gi.class_of[y]) == (elems[x].g == elems[y].g)));
        t.check(gi.group.len() == n && same_class, || format!("Z{n}: G(S(G)) has {} elements", gi.group.len()));
        let hom = (0..s.len()).all(|x| (0..s.len()).all(|y| elems[s.mul(x, y)].g == g.mul(elems[x].g, elems[y].g)));
        t.check(hom, || format!("Z{n}: group part is not multiplicative"));

        let closure = word_closure(&g, n + 2, n + 1);
        match closure {
            Ok(c) => {
                t.check(c.sound && c.complete, || format!("Z{n}: word closure does not match standard forms: {c:?}"));
                t.check(c.classes == s.len() && exel_size(n) == s.len(), || {
                    format!("Z{n}: closure {} classes, standard forms {}", c.classes, s.len())
                });
                let claimed = claimed_exel_size(n);
                t.check(c.classes == claimed, || {
                    format!("Z{n}: claimed |S(G)| = {claimed}, brute-force closure gives {}", c.classes)
                });
            }
            Err(e) => t.check(false, || format!("Z{n}: {e}")),
        }
    }
}

fn e_unitary(b: &Built, t: &mut Tally) {
    let mut outcomes = [false; 2];
    for (name, s) in &b.semigroups {
        let eu = s.is_e_unitary();
        let lb = s.lower_bound_compatibility();
        let factors = join_over_group_image(&canonical_self_action(s));
        outcomes[eu as usize] = true;
        t.check(eu == lb.is_ok() && eu == factors.is_ok(), || {
            format!("{name}: e-unitary {eu}, lower bounds {lb:?}, factors {:?}", factors.as_ref().err())
        });
    }
    t.check(outcomes == [true, true], || "catalog lacks an E-unitary or a non-E-unitary semigroup".into());
}

fn dynamics(b: &Built, t: &mut Tally) {
    for (name, theta) in &b.actions {
        let d = dynamics_report(theta);
        let germs = groupoid_of_germs(theta);
        let iso = isotropy_report(germs.base());
        let mut trivial: Vec<usize> = iso.trivial_points.iter().filter_map(|&u| germs.point_of(u)).collect();
        trivial.sort_unstable();
        t.check(d.lambda == trivial, || format!("{name}: lambda {:?}, trivial isotropy {trivial:?}", d.lambda));
        t.check(d.consistent && d.free == d.effective && d.effective == d.top_principal, || format!("{name}: {d:?}"));
        t.check(iso.effective == d.effective && iso.top_principal == d.top_principal, || {
            format!("{name}: groupoid effective {} / principal {}", iso.effective, iso.top_principal)
        });
    }
}

fn find<'a, T>(v: &'a [(String, T)], name: &str) -> Option<&'a T> {
    v.iter().find(|(n, _)| n == name).map(|(_, x)| x)
}

fn coe_round_trip(b: &Built, t: &mut Tally) {
    t.check(!b.coe_pairs.is_empty(), || "no pairs".into());
    for (l, r) in &b.coe_pairs {
        let label = format!("{l} ~ {r}");
        let (Some(theta), Some(gamma)) = (find(&b.actions, l), find(&b.actions, r)) else {
            t.check(false, || format!("{label}: missing action"));
            continue;
        };
        let principal = dynamics_report(theta).top_principal && dynamics_report(gamma).top_principal;
        t.check(principal, || format!("{label}: not topologically principal"));
        let (gt, gg) = (groupoid_of_germs(theta), groupoid_of_germs(gamma));
        let iso = match groupoid_iso_search(gt.base(), gg.base(), ISO_NODES) {
            Ok(Some(iso)) => iso,
            Ok(None) => return t.check(false, || format!("{label}: groupoids not isomorphic")),
            Err(e) => return t.check(false, || format!("{label}: {e}")),
        };
        let coe = match coe_from_groupoid_iso(theta, gamma, &gt, &gg, &iso) {
            Ok(c) => c,
            Err(e) => return t.check(false, || format!("{label}: {e}")),
        };
        match verify_orbit_equivalence(theta, gamma, &coe) {
            Ok(rep) => t.check(rep.pointwise && rep.germ_identities_checked && rep.germ_identities, || {
                format!("{label}: {rep:?}")
            }),
            Err(e) => t.check(false, || format!("{label}: {e}")),
        }
        match iso_from_coe(theta, gamma, &gt, &gg, &coe) {
            Ok(back) => t.check(back == iso, || format!("{label}: recovered isomorphism differs")),
            Err(e) => t.check(false, || format!("{label}: {e}")),
        }
    }
}

fn pseudogroup(b: &Built, t: &mut Tally) {
    t.check(b.groupoids.len() >= 6, || format!("only {} groupoids", b.groupoids.len()));
    let mut outcomes = [false; 2];
    for (name, g) in &b.groupoids {
        match full_pseudogroup(g, MAX_ELEMENTS) {
            Ok(r) => {
                outcomes[r.effective as usize] = true;
                let independent = isotropy_report(g).effective;
                t.check(r.theorem_holds && r.injective == r.effective && r.effective == independent, || {
                    format!("{name}: injective {}, effective {}, collision {:?}", r.injective, r.effective, r.collision)
                });
            }
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
    }
    t.check(outcomes == [true, true], || "catalog lacks an effective or a non-effective groupoid".into());
}

fn graph_named<'a>(b: &'a Built, name: &str, t: &mut Tally) -> Option<&'a Graph> {
    let g = find(&b.graphs, name);
    if g.is_none() {
        t.check(false, || format!("missing graph {name}"));
    }
    g
}

fn graphs(b: &Built, t: &mut Tally) {
    if let Some(g) = graph_named(b, "loop", t) {
        let l = condition_l(g);
        t.check(!l.holds && l.witness.as_deref() == Some("e"), || format!("loop: {l:?}"));
        t.check(!isolated_periodic_points(g).is_empty(), || "loop: no isolated periodic point".into());
        laurent(g, t);
    }
    if let Some(g) = graph_named(b, "loop-exit", t) {
        let l = condition_l(g);
        t.check(l.holds, || format!("loop-exit: {l:?}"));
        t.check(isolated_periodic_points(g).is_empty(), || "loop-exit: isolated periodic point".into());
    }
    for (name, g) in &b.graphs {
        let l = condition_l(g).holds;
        let principal = isolated_periodic_points(g).is_empty();
        t.check(l == principal, || format!("{name}: condition (L) {l}, topologically principal {principal}"));
    }
    if let Some(g) = graph_named(b, "vw", t) {
        match boundary_groupoid(g) {
            Ok((bg, _)) => match groupoid_iso_search(&bg, &FiniteGroupoid::pair(2), ISO_NODES) {
                Ok(found) => t.check(found.is_some(), || "vw: boundary groupoid is not the pair groupoid".into()),
                Err(e) => t.check(false, || format!("vw: {e}")),
            },
            Err(e) => t.check(false, || format!("vw: {e}")),
        }
        relations::<Rational>(g, t);
        relations::<Z5>(g, t);
    }
    let mut acyclic = 0;
    for (name, g) in b.graphs.iter().filter(|(_, g)| g.is_acyclic()) {
        acyclic += 1;
        match psi_check(g, MAX_ELEMENTS) {
            Ok(r) => t.check(r.well_defined && r.isomorphism, || format!("{name}: {r:?}")),
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
    }
    t.check(acyclic > 0, || "no acyclic graph".into());
}

fn relations<R: Ring>(g: &Graph, t: &mut Tally) {
    for r in leavitt_relations_check::<R>(g) {
        t.check(r.holds && r.instances > 0, || format!("vw over {}: {} {:?}", R::name(), r.relation, r.failure));
    }
}

/// `e^k (e*)^j` is `e^(k-j)` or `(e*)^(j-k)` on a loop without exit.
fn laurent(g: &Graph, t: &mut Tally) {
    const DEPTH: usize = 4;
    let power = |x: &LeavittElement<Rational>, n: usize| -> Result<LeavittElement<Rational>, crate::graph::GraphError> {
        let mut acc = LeavittElement::vertex(g, 0);
        for _ in 0..n {
            acc = acc.mul(x, g)?;
        }
        Ok(acc)
    };
    let e = LeavittElement::<Rational>::edge(g, 0);
    let es = LeavittElement::<Rational>::ghost(g, 0);
    for k in 0..=DEPTH {
        for j in 0..=DEPTH {
            let ok = (|| {
                let lhs = power(&e, k)?.mul(&power(&es, j)?, g)?;
                let rhs = if k >= j { power(&e, k - j)? } else { power(&es, j - k)? };
                lhs.equals(&rhs, g)
            })();
            t.check(ok == Ok(true), || format!("loop: e^{k} e*^{j}: {ok:?}"));
        }
    }
}

fn recovery(b: &Built, t: &mut Tally) {
    for (name, theta) in &b.actions {
        round_trip::<Rational>(name, theta, t);
        round_trip::<Z5>(name, theta, t);
    }
    for n in 0..=4 {
        let q = ideal_lattice_check::<Rational>(n);
        let f = ideal_lattice_check::<Z5>(n);
        t.check(q == Ok(1 << n) && f == Ok(1 << n), || format!("{n} points: {q:?} / {f:?}"));
    }
    if let Some((name, theta)) = b.actions.first() {
        let r = recover_action_from_dual(&dual_action::<Z6>(theta));
        t.check(matches!(r, Err(RecoverError::DecomposableRing(_))), || format!("{name} over Z6: {r:?}"));
    }
}

fn round_trip<R: Ring>(name: &str, theta: &PartialAction, t: &mut Tally) {
    let r = recover_action_from_dual(&dual_action::<R>(theta));
    t.check(r.as_ref() == Ok(theta), || format!("{name} over {}: {:?}", R::name(), r.err()));
}

fn boolean(b: &Built, seed: u64, t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, g) in &b.groupoids {
        let target = SteinbergAlgebra { groupoid: g };
        match boolean_rep_hom::<Rational, _>(g, &target, |u| SteinbergElement::indicator(g, u), MAX_ELEMENTS) {
            Ok(hom) => {
                t.check(hom.injective, || format!("{name}: indicator map not injective"));
                let f = SteinbergElement::from_coeffs(g, (0..g.len()).map(|a| (a, Rational::from_i64(rng.gen_range(-5..=5)))));
                t.check(hom.apply(&target, &f) == f, || format!("{name}: extension is not the identity"));
            }
            Err(e) => t.check(false, || format!("{name}: {e}")),
        }
    }
    // U ↦ 1_U only inside the unit space.
    let g = FiniteGroupoid::pair(2);
    let target = SteinbergAlgebra { groupoid: &g };
    let r = boolean_rep_hom::<Rational, _>(
        &g,
        &target,
        |u| if u.iter().all(|&a| g.is_unit(a)) { SteinbergElement::indicator(&g, u) } else { SteinbergElement::zero(&g) },
        MAX_ELEMENTS,
    );
    t.check(
        matches!(&r, Err(AlgebraError::NotBooleanRep { condition, u, v }) if condition == "multiplicative" && u != "{}" && v != "{}"),
        || format!("non-multiplicative map: {:?}", r.err()),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_table_is_reported_by_name() {
        let mut c = Catalog::builtin();
        let (_, doc) = c.semigroups.iter_mut().find(|(n, _)| n == "Z3").unwrap();
        doc.table[1][1] = doc.table[0][0].clone();
        let r = catalog_run(&c, 0);
        assert!(!r.passed);
        assert_eq!(r.validation.len(), 1);
        assert!(r.validation[0].starts_with("semigroup Z3:"), "{:?}", r.validation);
    }

    #[test]
    fn claimed_sizes_disagree_with_the_closure() {
        assert_eq!([claimed_exel_size(2), claimed_exel_size(3)], [4, 12]);
        assert_eq!([exel_size(2), exel_size(3)], [3, 8]);
    }

    #[test]
    fn small_criteria_pass() {
        let b = build(&Catalog::builtin());
        for id in [2, 4, 5, 7, 10] {
            let r = run_criterion(&b, id, 1);
            assert!(r.passed, "{r:?}");
        }
    }
}
