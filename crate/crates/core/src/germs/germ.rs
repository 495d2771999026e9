use super::groupoid::FiniteGroupoid;
use crate::paction::PartialAction;
use crate::unionfind::UnionFind;
use serde::Serialize;
use std::collections::HashMap;

/// Groupoid of germs of a partial action. Arrows are germ classes numbered
/// by their lexicographically least representative `(s, x)`.
#[derive(Clone, Debug)]
pub struct GermGroupoid {
    base: FiniteGroupoid,
    class_of: HashMap<(usize, usize), usize>,
    representative: Vec<(usize, usize)>,
    unit_of_point: Vec<usize>,
    point_of_unit: HashMap<usize, usize>,
}

pub fn groupoid_of_germs(theta: &PartialAction) -> GermGroupoid {
    let sg = theta.semigroup();
    let idem = sg.idempotents();
    let pairs: Vec<(usize, usize)> = (0..sg.len())
        .flat_map(|s| (0..theta.points()).filter(move |&x| theta.apply(s, x).is_some()).map(move |x| (s, x)))
        .collect();
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut uf = UnionFind::new(pairs.len());
    for x in 0..theta.points() {
        let sx = theta.stabilizing_set(x);
        for (i, &s) in sx.iter().enumerate() {
            for &t in &sx[i + 1..] {
                let related = idem.iter().any(|&e| theta.in_domain(e, x) && sg.mul(s, e) == sg.mul(t, e));
                if related {
                    uf.union(index[&(s, x)], index[&(t, x)]);
                }
            }
        }
    }
    let (label, k) = uf.classes();
    let mut representative = vec![(usize::MAX, usize::MAX); k];
    for (i, &p) in pairs.iter().enumerate() {
        if representative[label[i]].0 == usize::MAX {
            representative[label[i]] = p;
        }
    }
    let class_of: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, label[i])).collect();
    let unit_of_point: Vec<usize> = (0..theta.points())
        .map(|x| {
            let e = *idem.iter().find(|&&e| theta.in_domain(e, x)).expect("non-degenerate action");
            class_of[&(e, x)]
        })
        .collect();
    let point_of_unit: HashMap<usize, usize> = unit_of_point.iter().enumerate().map(|(x, &u)| (u, x)).collect();

    let names = representative
        .iter()
        .map(|&(s, x)| format!("[{},{}]", sg.name(s), theta.carrier()[x]))
        .collect();
    let source: Vec<usize> = representative.iter().map(|&(_, x)| unit_of_point[x]).collect();
    let range: Vec<usize> = representative
        .iter()
        .map(|&(s, x)| unit_of_point[theta.apply(s, x).expect("germ pair")])
        .collect();
    let inverse: Vec<usize> = representative
        .iter()
        .map(|&(s, x)| class_of[&(sg.inv(s), theta.apply(s, x).expect("germ pair"))])
        .collect();
    let base = FiniteGroupoid::validate(names, source, range, inverse, |a, b| {
        let (s, x) = representative[a];
        let (t, y) = representative[b];
        (theta.apply(t, y) == Some(x)).then(|| class_of[&(sg.mul(s, t), y)])
    })
    .expect("germ groupoid satisfies the groupoid axioms");
    GermGroupoid { base, class_of, representative, unit_of_point, point_of_unit }
}

/// Failure of the germ relation to be a congruence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceFailure {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

impl GermGroupoid {
    pub fn base(&self) -> &FiniteGroupoid {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Arrow `[s, x]`, if `x ∈ X_{s*}`.
    pub fn germ(&self, s: usize, x: usize) -> Option<usize> {
        self.class_of.get(&(s, x)).copied()
    }

    pub fn representative(&self, a: usize) -> (usize, usize) {
        self.representative[a]
    }

    pub fn unit_of(&self, x: usize) -> usize {
        self.unit_of_point[x]
    }

    pub fn point_of(&self, unit: usize) -> Option<usize> {
        self.point_of_unit.get(&unit).copied()
    }

    pub fn source_point(&self, a: usize) -> usize {
        self.point_of_unit[&self.base.source(a)]
    }

    pub fn range_point(&self, a: usize) -> usize {
        self.point_of_unit[&self.base.range(a)]
    }

    /// Every pair in `S∗X` with the germ class it belongs to.
    pub fn pairs(&self) -> Vec<((usize, usize), usize)> {
        let mut v: Vec<_> = self.class_of.iter().map(|(&p, &c)| (p, c)).collect();
        v.sort_unstable();
        v
    }

    /// Checks products and inverses against every choice of representatives.
    pub fn check_congruence(&self, theta: &PartialAction) -> Result<(), CongruenceFailure> {
        let sg = theta.semigroup();
        let pairs = self.pairs();
        for &((s, x), a) in &pairs {
            let y = theta.apply(s, x).expect("germ pair");
            if self.germ(sg.inv(s), y) != Some(self.base.inverse(a)) {
                return Err(CongruenceFailure { left: (s, x), right: (sg.inv(s), y) });
            }
            for &((t, z), b) in &pairs {
                if theta.apply(t, z) == Some(x) {
                    let expect = self.base.compose(a, b);
                    if self.germ(sg.mul(s, t), z) != expect {
                        return Err(CongruenceFailure { left: (s, x), right: (t, z) });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invsemi::{munn_representation, InverseSemigroup};

    #[test]
    fn munn_of_two_chain_has_two_unit_germs() {
        let g = groupoid_of_germs(&munn_representation(&InverseSemigroup::chain(2)));
        assert_eq!(g.len(), 2);
        assert!(g.base().units().len() == 2);
    }

    #[test]
    fn one_point_trivial_action_gives_group_image() {
        for s in [InverseSemigroup::cyclic_group(2), InverseSemigroup::with_zero(&InverseSemigroup::cyclic_group(2))] {
            let act = PartialAction::from_fn(s.clone(), vec!["p".into()], |_, _| Some(0)).unwrap();
            let g = groupoid_of_germs(&act);
            assert_eq!(g.len(), s.max_group_image().group.len());
            assert_eq!(g.base().isotropy(g.unit_of(0)).len(), g.len());
            g.check_congruence(&act).unwrap();
        }
    }
}
