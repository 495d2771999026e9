use super::groupoid::FiniteGroupoid;
use crate::invsemi::{InverseSemigroup, PartialBijection, TooLarge};
use crate::paction::PartialAction;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

/// Set of arrows on which source and range are injective, kept sorted.
pub type Bisection = Vec<usize>;

pub fn is_bisection(g: &FiniteGroupoid, arrows: &[usize]) -> bool {
    let s: BTreeSet<usize> = arrows.iter().map(|&a| g.source(a)).collect();
    let r: BTreeSet<usize> = arrows.iter().map(|&a| g.range(a)).collect();
    s.len() == arrows.len() && r.len() == arrows.len()
}

/// Arrow-set product `AB = { ab : a ∈ A, b ∈ B, s(a) = r(b) }`.
pub fn bisection_product(g: &FiniteGroupoid, a: &[usize], b: &[usize]) -> Bisection {
    let mut out: Vec<usize> = a.iter().flat_map(|&x| b.iter().filter_map(move |&y| g.compose(x, y))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn bisection_inverse(g: &FiniteGroupoid, a: &[usize]) -> Bisection {
    let mut out: Vec<usize> = a.iter().map(|&x| g.inverse(x)).collect();
    out.sort_unstable();
    out
}

/// All bisections, ordered by size and then lexicographically.
pub fn enumerate_bisections(g: &FiniteGroupoid, max_size: usize) -> Result<Vec<Bisection>, TooLarge> {
    let units = g.units().to_vec();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used_range = BTreeSet::new();
    fn rec(
        g: &FiniteGroupoid,
        units: &[usize],
        i: usize,
        cur: &mut Vec<usize>,
        used: &mut BTreeSet<usize>,
        out: &mut Vec<Bisection>,
        max: usize,
    ) -> Result<(), TooLarge> {
        if i == units.len() {
            if out.len() >= max {
                return Err(TooLarge { size: out.len() + 1, limit: max });
            }
            let mut b = cur.clone();
            b.sort_unstable();
            out.push(b);
            return Ok(());
        }
        rec(g, units, i + 1, cur, used, out, max)?;
        for &a in g.arrows_from(units[i]) {
            if used.insert(g.range(a)) {
                cur.push(a);
                rec(g, units, i + 1, cur, used, out, max)?;
                cur.pop();
                used.remove(&g.range(a));
            }
        }
        Ok(())
    }
    rec(g, &units, 0, &mut cur, &mut used_range, &mut out, max_size)?;
    out.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    Ok(out)
}

fn bisection_label(g: &FiniteGroupoid, b: &[usize]) -> String {
    let parts: Vec<&str> = b.iter().map(|&a| g.name(a)).collect();
    format!("{{{}}}", parts.join(","))
}

fn semigroup_of(g: &FiniteGroupoid, elems: Vec<Bisection>) -> (InverseSemigroup, Vec<Bisection>) {
    let index: HashMap<Bisection, usize> = elems.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let names = elems.iter().map(|b| bisection_label(g, b)).collect();
    let s = InverseSemigroup::from_fn(names, |a, b| index[&bisection_product(g, &elems[a], &elems[b])])
        .expect("bisections form an inverse semigroup");
    (s, elems)
}

/// The inverse semigroup of all bisections under the arrow-set product.
pub fn ample_semigroup(g: &FiniteGroupoid, max_size: usize) -> Result<(InverseSemigroup, Vec<Bisection>), TooLarge> {
    Ok(semigroup_of(g, enumerate_bisections(g, max_size)?))
}

/// Inverse subsemigroup generated by the given bisections.
pub fn ample_subsemigroup(
    g: &FiniteGroupoid,
    generators: &[Bisection],
    max_size: usize,
) -> Result<(InverseSemigroup, Vec<Bisection>), TooLarge> {
    let mut set: BTreeSet<Bisection> = BTreeSet::new();
    let mut frontier: Vec<Bisection> = Vec::new();
    for b in generators {
        let mut b = b.clone();
        b.sort_unstable();
        for x in [b.clone(), bisection_inverse(g, &b)] {
            if set.insert(x.clone()) {
                frontier.push(x);
            }
        }
    }
    while let Some(x) = frontier.pop() {
        let current: Vec<Bisection> = set.iter().cloned().collect();
        for y in current {
            for p in [bisection_product(g, &x, &y), bisection_product(g, &y, &x)] {
                if set.insert(p.clone()) {
                    if set.len() > max_size {
                        return Err(TooLarge { size: set.len(), limit: max_size });
                    }
                    frontier.push(p);
                }
            }
        }
    }
    let mut elems: Vec<Bisection> = set.into_iter().collect();
    elems.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    Ok(semigroup_of(g, elems))
}

/// `τ_U = r ∘ (s|_U)^{-1}` as a partial bijection of unit positions.
pub fn tau(g: &FiniteGroupoid, b: &[usize]) -> PartialBijection {
    let pos: HashMap<usize, usize> = g.units().iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let mut p = PartialBijection::empty(g.units().len());
    for &a in b {
        p.map[pos[&g.source(a)]] = Some(pos[&g.range(a)]);
    }
    p
}

/// The canonical action of a semigroup of bisections on the unit space:
/// `U` acts by `τ_U`. The carrier is the unit names in unit order.
pub fn bisection_action(g: &FiniteGroupoid, semigroup: InverseSemigroup, elems: &[Bisection]) -> PartialAction {
    let carrier = g.units().iter().map(|&u| g.name(u).to_string()).collect();
    let taus: Vec<PartialBijection> = elems.iter().map(|b| tau(g, b)).collect();
    PartialAction::from_fn(semigroup, carrier, |s, x| taus[s].map[x]).expect("bisections act by partial bijections")
}

#[derive(Clone, Debug, Serialize)]
pub struct PseudogroupReport {
    pub bisections: usize,
    pub injective: bool,
    /// Two distinct bisections with equal τ, if any.
    pub collision: Option<(Vec<String>, Vec<String>)>,
    pub effective: bool,
    pub theorem_holds: bool,
}

pub fn full_pseudogroup(g: &FiniteGroupoid, max_size: usize) -> Result<PseudogroupReport, TooLarge> {
    let all = enumerate_bisections(g, max_size)?;
    let mut seen: HashMap<PartialBijection, usize> = HashMap::new();
    let mut collision = None;
    for (i, b) in all.iter().enumerate() {
        if let Some(&j) = seen.get(&tau(g, b)) {
            if collision.is_none() {
                let names = |x: &Bisection| x.iter().map(|&a| g.name(a).to_string()).collect();
                collision = Some((names(&all[j]), names(b)));
            }
        } else {
            seen.insert(tau(g, b), i);
        }
    }
    let injective = collision.is_none();
    let effective = super::isotropy_report(g).effective;
    Ok(PseudogroupReport { bisections: all.len(), injective, collision, effective, theorem_holds: injective == effective })
}
