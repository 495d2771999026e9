use super::groupoid::FiniteGroupoid;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[error("isomorphism search gave up after {nodes} nodes")]
pub struct IsoSearchTimeout {
    pub nodes: u64,
}

/// Per-unit invariant: isotropy element orders, out-degree, orbit size.
fn unit_signature(g: &FiniteGroupoid, u: usize) -> (Vec<usize>, usize, usize) {
    let mut orders: Vec<usize> = g
        .isotropy(u)
        .into_iter()
        .map(|a| {
            let mut k = 1;
            let mut p = a;
            while p != u {
                p = g.compose(p, a).expect("isotropy arrow");
                k += 1;
            }
            k
        })
        .collect();
    orders.sort_unstable();
    let out = g.arrows_from(u).len();
    let orbit = g.arrows_from(u).iter().map(|&a| g.range(a)).collect::<std::collections::BTreeSet<_>>().len();
    (orders, out, orbit)
}

fn hom_count(g: &FiniteGroupoid, u: usize, v: usize) -> usize {
    g.arrows_from(u).iter().filter(|&&a| g.range(a) == v).count()
}

struct Search<'a> {
    g: &'a FiniteGroupoid,
    h: &'a FiniteGroupoid,
    nodes: u64,
    limit: u64,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> Result<(), IsoSearchTimeout> {
        self.nodes += 1;
        if self.nodes > self.limit {
            Err(IsoSearchTimeout { nodes: self.nodes })
        } else {
            Ok(())
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().expect("trail");
            let b = self.map[a].take().expect("assigned");
            self.used[b] = false;
        }
    }

    /// Assigns `a ↦ b` and everything it forces; false on conflict.
    fn assign(&mut self, a: usize, b: usize) -> bool {
        let mut work = vec![(a, b)];
        while let Some((a, b)) = work.pop() {
            match self.map[a] {
                Some(x) if x == b => continue,
                Some(_) => return false,
                None => {}
            }
            if self.used[b] {
                return false;
            }
            let (gs, gr) = (self.g.source(a), self.g.range(a));
            if let (Some(ms), Some(mr)) = (self.map[gs], self.map[gr]) {
                if self.h.source(b) != ms || self.h.range(b) != mr {
                    return false;
                }
            } else if self.g.is_unit(a) != self.h.is_unit(b) {
                return false;
            }
            self.map[a] = Some(b);
            self.used[b] = true;
            self.trail.push(a);
            work.push((self.g.inverse(a), self.h.inverse(b)));
            let assigned: Vec<usize> = self.trail.clone();
            for c in assigned {
                let mc = self.map[c].expect("assigned");
                if let Some(ac) = self.g.compose(a, c) {
                    match self.h.compose(b, mc) {
                        Some(bc) => work.push((ac, bc)),
                        None => return false,
                    }
                }
                if let Some(ca) = self.g.compose(c, a) {
                    match self.h.compose(mc, b) {
                        Some(cb) => work.push((ca, cb)),
                        None => return false,
                    }
                }
            }
        }
        true
    }

    fn arrows(&mut self) -> Result<bool, IsoSearchTimeout> {
        let next = match (0..self.g.len()).find(|&a| self.map[a].is_none()) {
            None => return Ok(true),
            Some(a) => a,
        };
        let ms = self.map[self.g.source(next)].expect("units assigned first");
        let mr = self.map[self.g.range(next)].expect("units assigned first");
        let cands: Vec<usize> =
            self.h.arrows_from(ms).iter().copied().filter(|&b| self.h.range(b) == mr && !self.used[b]).collect();
        for b in cands {
            self.tick()?;
            let mark = self.trail.len();
            if self.assign(next, b) && self.arrows()? {
                return Ok(true);
            }
            self.undo_to(mark);
        }
        Ok(false)
    }

    fn units(&mut self, i: usize, sig_g: &[(Vec<usize>, usize, usize)], sig_h: &BTreeMap<usize, (Vec<usize>, usize, usize)>) -> Result<bool, IsoSearchTimeout> {
        let gu = self.g.units();
        if i == gu.len() {
            return self.arrows();
        }
        let u = gu[i];
        for &v in self.h.units() {
            if self.used[v] || sig_h[&v] != sig_g[i] {
                continue;
            }
            let consistent = gu[..i].iter().all(|&w| {
                let mw = self.map[w].expect("assigned unit");
                hom_count(self.g, u, w) == hom_count(self.h, v, mw) && hom_count(self.g, w, u) == hom_count(self.h, mw, v)
            });
            if !consistent {
                continue;
            }
            self.tick()?;
            self.map[u] = Some(v);
            self.used[v] = true;
            self.trail.push(u);
            if self.units(i + 1, sig_g, sig_h)? {
                return Ok(true);
            }
            let mark = self.trail.len() - 1;
            self.undo_to(mark);
        }
        Ok(false)
    }
}

/// Backtracking search for a groupoid isomorphism `g → h`, returned as an
/// arrow map. Units are matched first, then arrows with forced closure
/// under composition and inversion.
pub fn groupoid_iso_search(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    timeout_nodes: u64,
) -> Result<Option<Vec<usize>>, IsoSearchTimeout> {
    if g.len() != h.len() || g.units().len() != h.units().len() {
        return Ok(None);
    }
    let sig_g: Vec<_> = g.units().iter().map(|&u| unit_signature(g, u)).collect();
    let sig_h: BTreeMap<usize, _> = h.units().iter().map(|&u| (u, unit_signature(h, u))).collect();
    let mut a = sig_g.clone();
    let mut b: Vec<_> = sig_h.values().cloned().collect();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    let mut s = Search {
        g,
        h,
        nodes: 0,
        limit: timeout_nodes,
        map: vec![None; g.len()],
        used: vec![false; h.len()],
        trail: Vec::new(),
    };
    if !s.units(0, &sig_g, &sig_h)? {
        return Ok(None);
    }
    let map: Vec<usize> = s.map.iter().map(|m| m.expect("complete")).collect();
    assert!(g.is_isomorphism(h, &map), "search returned a non-isomorphism");
    Ok(Some(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invsemi::InverseSemigroup;

    #[test]
    fn identity_found_first() {
        let g = FiniteGroupoid::pair(3);
        let m = groupoid_iso_search(&g, &g, 10_000).unwrap().unwrap();
        assert_eq!(m, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn pair_groupoid_is_not_two_copies_of_z2() {
        let z2 = FiniteGroupoid::from_group(&InverseSemigroup::cyclic_group(2));
        let two = z2.disjoint_union(&z2);
        assert_eq!(groupoid_iso_search(&FiniteGroupoid::pair(2), &two, 10_000).unwrap(), None);
    }

    #[test]
    fn timeout_is_reported() {
        let g = FiniteGroupoid::pair(3);
        assert!(groupoid_iso_search(&g, &g, 2).is_err());
    }

    #[test]
    fn cyclic_groups_of_same_order_match_non_trivially() {
        let z4 = InverseSemigroup::cyclic_group(4);
        let g = FiniteGroupoid::from_group(&z4);
        // relabelled copy: k ↦ 3k mod 4
        let names: Vec<String> = (0..4).map(|k| format!("h{k}")).collect();
        let h = FiniteGroupoid::validate(names, vec![0; 4], vec![0; 4], vec![0, 3, 2, 1], |a, b| Some((a + b) % 4)).unwrap();
        let m = groupoid_iso_search(&g, &h, 10_000).unwrap().unwrap();
        assert!(g.is_isomorphism(&h, &m));
        let z2 = FiniteGroupoid::from_group(&InverseSemigroup::cyclic_group(2));
        let klein = FiniteGroupoid::validate(
            (0..4).map(|k| format!("v{k}")).collect(),
            vec![0; 4],
            vec![0; 4],
            vec![0, 1, 2, 3],
            |a, b| Some(a ^ b),
        )
        .unwrap();
        assert_eq!(groupoid_iso_search(&g, &klein, 10_000).unwrap(), None);
        let _ = z2;
    }
}
