//! Orbit equivalence of boundary path spaces: a homeomorphism `φ: ∂E → ∂F`
//! given by a prefix transducer, its inverse, and cocycles `k, l: ∂E^{≥1} → ℕ`,
//! `k′, l′: ∂F^{≥1} → ℕ` constant on depth-`D` atoms with
//! `σ_F^{k(x)}(φ(σ_E(x))) = σ_F^{l(x)}(φ(x))` and the mirrored identity for
//! `φ⁻¹`.

use super::transducer::{compatible, DEFAULT_STATE};
use super::{boundary_atoms, boundary_enumerate, boundary_groupoid, invertible_upto, Graph, GraphError, Path};
use super::{PrefixTransducer, RuleSpec, TransducerSpec};
use crate::germs::groupoid_iso_search;
use crate::invsemi::TooLarge;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCoeData {
    pub forward: TransducerSpec,
    pub backward: TransducerSpec,
    /// Keyed by atom label.
    pub k: BTreeMap<String, usize>,
    pub l: BTreeMap<String, usize>,
    pub kprime: BTreeMap<String, usize>,
    pub lprime: BTreeMap<String, usize>,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum CoeFailure {
    NotInvertible { side: char, atom: String },
    AtomFails { side: char, atom: String },
    /// The shift in the identity reaches past the output known at this depth.
    DepthInsufficient { side: char, atom: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphCoeReport {
    pub depth: usize,
    pub atoms_checked: usize,
    /// Atoms whose points are single boundary paths, checked exactly.
    pub atoms_exact: usize,
    /// Atoms checked only on the output prefix known at this depth.
    pub atoms_prefix_only: usize,
    /// Every atom was exact, so the verdict covers all of `∂E` and `∂F`.
    pub exact: bool,
    pub failure: Option<CoeFailure>,
    pub passed: bool,
}

struct Side<'a> {
    name: char,
    g: &'a Graph,
    h: &'a Graph,
    phi: &'a PrefixTransducer,
    k: &'a BTreeMap<String, usize>,
    l: &'a BTreeMap<String, usize>,
    which: (&'static str, &'static str),
}

enum Verdict {
    Exact,
    Prefix,
    Fail(CoeFailure),
}

fn lookup(map: &BTreeMap<String, usize>, which: &str, atom: &str) -> Result<usize, GraphError> {
    map.get(atom).copied().ok_or_else(|| GraphError::MissingCocycle { which: which.into(), atom: atom.into() })
}

fn check_atom(side: &Side<'_>, p: &Path) -> Result<Verdict, GraphError> {
    let label = p.label(side.g);
    let k = lookup(side.k, side.which.0, &label)?;
    let l = lookup(side.l, side.which.1, &label)?;
    let whole = side.phi.apply(side.g, side.h, p)?;
    let shifted = side.phi.apply(side.g, side.h, &p.shift(1, side.g).expect("positive length"))?;
    let fail = |f: fn(char, String) -> CoeFailure| Ok(Verdict::Fail(f(side.name, label.clone())));
    let lhs = shifted.output.as_ref().and_then(|o| o.shift(k, side.h));
    let rhs = whole.output.as_ref().and_then(|o| o.shift(l, side.h));
    let (Some(lhs), Some(rhs)) = (lhs, rhs) else {
        let short = (shifted.output.as_ref().map_or(0, Path::len) < k && !shifted.determined)
            || (whole.output.as_ref().map_or(0, Path::len) < l && !whole.determined);
        return if short {
            fail(|side, atom| CoeFailure::DepthInsufficient { side, atom })
        } else {
            fail(|side, atom| CoeFailure::AtomFails { side, atom })
        };
    };
    if whole.determined && shifted.determined {
        if lhs == rhs {
            Ok(Verdict::Exact)
        } else {
            fail(|side, atom| CoeFailure::AtomFails { side, atom })
        }
    } else if compatible(&lhs, &rhs) {
        Ok(Verdict::Prefix)
    } else {
        fail(|side, atom| CoeFailure::AtomFails { side, atom })
    }
}

/// Checks invertibility of the transducers and both cocycle identities on
/// every depth-`D` atom of positive length.
pub fn verify_graph_coe(e: &Graph, f: &Graph, data: &GraphCoeData) -> Result<GraphCoeReport, GraphError> {
    let phi = PrefixTransducer::new(e, f, &data.forward)?;
    let psi = PrefixTransducer::new(f, e, &data.backward)?;
    let mut report = GraphCoeReport {
        depth: data.depth,
        atoms_checked: 0,
        atoms_exact: 0,
        atoms_prefix_only: 0,
        exact: false,
        failure: None,
        passed: false,
    };
    if let Some((side, atom)) = invertible_upto(&phi, &psi, e, f, data.depth)? {
        report.failure = Some(CoeFailure::NotInvertible { side, atom });
        return Ok(report);
    }
    let sides = [
        Side { name: 'E', g: e, h: f, phi: &phi, k: &data.k, l: &data.l, which: ("k", "l") },
        Side { name: 'F', g: f, h: e, phi: &psi, k: &data.kprime, l: &data.lprime, which: ("kprime", "lprime") },
    ];
    for side in &sides {
        for p in boundary_atoms(side.g, data.depth).into_iter().filter(|p| !p.is_empty()) {
            report.atoms_checked += 1;
            match check_atom(side, &p)? {
                Verdict::Exact => report.atoms_exact += 1,
                Verdict::Prefix => report.atoms_prefix_only += 1,
                Verdict::Fail(failure) => {
                    report.failure = Some(failure);
                    return Ok(report);
                }
            }
        }
    }
    report.exact = report.atoms_prefix_only == 0;
    report.passed = true;
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoeSearchReport {
    pub boundary_sizes: (usize, usize),
    pub bijections_tried: usize,
    pub data: Option<GraphCoeData>,
    /// The returned data passed `verify_graph_coe`.
    pub verified: bool,
    /// Outcome of the isomorphism search on the boundary path groupoids;
    /// `None` if it ran out of nodes.
    pub groupoid_iso: Option<bool>,
    pub consistent: bool,
}

/// Least `(k, l)` by `k + l` with `σᵏ(a) = σˡ(b)`.
fn cocycle(a: &Path, b: &Path, g: &Graph) -> Option<(usize, usize)> {
    (0..=a.len() + b.len())
        .flat_map(|total| (0..=total).map(move |k| (k, total - k)))
        .find(|&(k, l)| matches!((a.shift(k, g), b.shift(l, g)), (Some(x), Some(y)) if x == y))
}

/// Cocycle tables for `φ` on `∂E^{≥1}`, if `φ` maps shift orbits into orbits.
fn cocycles(e: &Graph, f: &Graph, de: &[Path], image: &[Path]) -> Option<(BTreeMap<String, usize>, BTreeMap<String, usize>)> {
    let at = |x: &Path| de.iter().position(|y| y == x).expect("boundary point");
    let (mut k, mut l) = (BTreeMap::new(), BTreeMap::new());
    for (i, x) in de.iter().enumerate().filter(|(_, x)| !x.is_empty()) {
        let sx = x.shift(1, e).expect("positive length");
        let (kk, ll) = cocycle(&image[at(&sx)], &image[i], f)?;
        k.insert(x.label(e), kk);
        l.insert(x.label(e), ll);
    }
    Some((k, l))
}

/// Transducer reading a whole boundary point and writing its image; after
/// a point of positive length it waits at the sink in state `end@t`, where
/// `t` is the sink its image ends at.
fn tabulating_transducer(e: &Graph, f: &Graph, de: &[Path], image: &[Path]) -> TransducerSpec {
    let end = |t: usize| format!("end@{}", f.vertices()[t]);
    let mut rules = Vec::new();
    let mut ends = std::collections::BTreeSet::new();
    for (x, y) in de.iter().zip(image) {
        let next = (!x.is_empty()).then(|| end(y.range(f)));
        if !x.is_empty() {
            ends.insert(y.range(f));
        }
        rules.push(RuleSpec { state: DEFAULT_STATE.into(), consume: x.label(e), emit: y.label(f), next });
    }
    for t in ends {
        for s in e.sinks() {
            rules.push(RuleSpec { state: end(t), consume: e.vertices()[s].clone(), emit: f.vertices()[t].clone(), next: None });
        }
    }
    TransducerSpec { initial: BTreeMap::new(), rules }
}

fn longest(g: &Graph) -> usize {
    g.all_paths().expect("acyclic").iter().map(Path::len).max().unwrap_or(0)
}

/// Brute force over bijections `∂E → ∂F` of acyclic graphs. The first
/// bijection admitting cocycles both ways is returned as verified coe data
/// and compared with an isomorphism search on the boundary groupoids.
pub fn graph_coe_search(e: &Graph, f: &Graph, max_bijections: usize, iso_nodes: u64) -> Result<CoeSearchReport, GraphError> {
    e.require_acyclic()?;
    f.require_acyclic()?;
    let de = boundary_enumerate(e).expect("acyclic");
    let df = boundary_enumerate(f).expect("acyclic");
    let n = de.len();
    let mut report = CoeSearchReport {
        boundary_sizes: (n, df.len()),
        bijections_tried: 0,
        data: None,
        verified: false,
        groupoid_iso: None,
        consistent: false,
    };
    if n == df.len() {
        let total = (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i)).unwrap_or(usize::MAX);
        if total > max_bijections {
            return Err(TooLarge { size: total, limit: max_bijections }.into());
        }
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            report.bijections_tried += 1;
            let image: Vec<Path> = perm.iter().map(|&j| df[j].clone()).collect();
            let mut inverse = vec![Path { start: 0, edges: vec![] }; n];
            for (i, &j) in perm.iter().enumerate() {
                inverse[j] = de[i].clone();
            }
            if let (Some((k, l)), Some((kprime, lprime))) = (cocycles(e, f, &de, &image), cocycles(f, e, &df, &inverse)) {
                report.data = Some(GraphCoeData {
                    forward: tabulating_transducer(e, f, &de, &image),
                    backward: tabulating_transducer(f, e, &df, &inverse),
                    k,
                    l,
                    kprime,
                    lprime,
                    depth: longest(e).max(longest(f)),
                });
                break;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    if let Some(data) = &report.data {
        report.verified = verify_graph_coe(e, f, data)?.passed;
    }
    let (ge, _) = boundary_groupoid(e)?;
    let (gf, _) = boundary_groupoid(f)?;
    report.groupoid_iso = groupoid_iso_search(&ge, &gf, iso_nodes).ok().map(|m| m.is_some());
    report.consistent = report.data.is_some() == report.verified && report.groupoid_iso.is_none_or(|iso| iso == report.data.is_some());
    Ok(report)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vw() -> Graph {
        Graph::from_edges(&["v", "w"], &[("e", "v", "w")]).unwrap()
    }

    fn parallel() -> Graph {
        Graph::from_edges(&["v", "w"], &[("e", "v", "w"), ("f", "v", "w")]).unwrap()
    }

    fn line() -> Graph {
        Graph::from_edges(&["a", "b", "c"], &[("g", "a", "b"), ("h", "b", "c")]).unwrap()
    }

    fn identity_data(g: &Graph, depth: usize) -> GraphCoeData {
        let t = PrefixTransducer::identity(g).spec(g, g);
        let atoms: Vec<String> = boundary_atoms(g, depth).iter().filter(|p| !p.is_empty()).map(|p| p.label(g)).collect();
        let zeros: BTreeMap<String, usize> = atoms.iter().map(|a| (a.clone(), 0)).collect();
        let ones: BTreeMap<String, usize> = atoms.iter().map(|a| (a.clone(), 1)).collect();
        GraphCoeData { forward: t.clone(), backward: t, k: zeros.clone(), l: ones.clone(), kprime: zeros, lprime: ones, depth }
    }

    #[test]
    fn identity_data_passes() {
        let g = vw();
        let r = verify_graph_coe(&g, &g, &identity_data(&g, 1)).unwrap();
        assert!(r.passed && r.exact, "{r:?}");
        let lp = Graph::from_edges(&["v", "w"], &[("e", "v", "v"), ("f", "v", "w")]).unwrap();
        let r = verify_graph_coe(&lp, &lp, &identity_data(&lp, 3)).unwrap();
        assert!(r.passed && !r.exact && r.atoms_prefix_only > 0, "{r:?}");
    }

    #[test]
    fn perturbed_cocycle_fails_on_its_atom() {
        let g = vw();
        let mut d = identity_data(&g, 1);
        d.l.insert("e".into(), 0);
        let r = verify_graph_coe(&g, &g, &d).unwrap();
        assert_eq!(r.failure, Some(CoeFailure::AtomFails { side: 'E', atom: "e".into() }));
        d.l.remove("e");
        assert!(matches!(verify_graph_coe(&g, &g, &d), Err(GraphError::MissingCocycle { .. })));
    }

    #[test]
    fn shallow_depth_on_a_loop_is_reported() {
        let lp = Graph::from_edges(&["v", "w"], &[("e", "v", "v"), ("f", "v", "w")]).unwrap();
        let mut d = identity_data(&lp, 1);
        d.k.insert("e".into(), 3);
        d.l.insert("e".into(), 4);
        let r = verify_graph_coe(&lp, &lp, &d).unwrap();
        assert_eq!(r.failure, Some(CoeFailure::DepthInsufficient { side: 'E', atom: "e".into() }));
    }

    #[test]
    fn parallel_and_line_are_orbit_equivalent() {
        let r = graph_coe_search(&parallel(), &line(), 1000, 100_000).unwrap();
        assert!(r.data.is_some() && r.verified && r.consistent, "{r:?}");
        assert_eq!(r.groupoid_iso, Some(true));
    }

    #[test]
    fn search_agrees_with_groupoid_isomorphism() {
        let fan = Graph::from_edges(&["u", "w1", "w2"], &[("e1", "u", "w1"), ("e2", "u", "w2")]).unwrap();
        let two = Graph::from_edges(&["v1", "w1", "v2", "w2"], &[("e1", "v1", "w1"), ("e2", "v2", "w2")]).unwrap();
        let point = Graph::from_edges(&["v"], &[]).unwrap();
        let vw_point = Graph::from_edges(&["v", "w", "p"], &[("e", "v", "w")]).unwrap();
        let r = graph_coe_search(&vw(), &vw(), 1000, 100_000).unwrap();
        assert!(r.data.is_some() && r.consistent && r.bijections_tried == 1);
        let r = graph_coe_search(&vw(), &point, 1000, 100_000).unwrap();
        assert!(r.data.is_none() && r.consistent && r.bijections_tried == 0);
        let r = graph_coe_search(&fan, &two, 1000, 100_000).unwrap();
        assert!(r.data.is_some() && r.verified && r.consistent, "{r:?}");
        // One orbit of three points against orbits of sizes two and one.
        let r = graph_coe_search(&parallel(), &vw_point, 1000, 100_000).unwrap();
        assert!(r.data.is_none() && r.consistent && r.bijections_tried == 6, "{r:?}");
        assert_eq!(r.groupoid_iso, Some(false));
    }

    #[test]
    fn factorial_bound_is_enforced() {
        let big = Graph::from_edges(&["v", "w"], &[("a", "v", "w"), ("b", "v", "w"), ("c", "v", "w"), ("d", "v", "w")]).unwrap();
        assert!(matches!(graph_coe_search(&big, &big, 10, 1000), Err(GraphError::TooLarge(_))));
    }
}
