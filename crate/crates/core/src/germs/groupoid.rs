use serde::Serialize;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("table sizes disagree with {0} arrows")]
    Shape(usize),
    #[error("arrow index out of range in {0}")]
    OutOfRange(&'static str),
    #[error("unit {0} is not its own source, range and inverse")]
    UnitNotFixed(String),
    #[error("composite {0}·{1} defined on a non-composable pair")]
    ComposeOutsideDomain(String, String),
    #[error("composite {0}·{1} missing on a composable pair")]
    ComposeMissing(String, String),
    #[error("composite {0}·{1} has wrong source or range")]
    ComposeEndpoints(String, String),
    #[error("not associative on ({0},{1},{2})")]
    NotAssociative(String, String, String),
    #[error("unit law fails at {0}")]
    UnitLaw(String),
    #[error("inverse law fails at {0}")]
    InverseLaw(String),
}

/// A finite groupoid. Units are arrows; `source[a]` and `range[a]` are unit
/// arrow indices.
#[derive(Clone, Debug)]
pub struct FiniteGroupoid {
    names: Vec<String>,
    units: Vec<usize>,
    source: Vec<usize>,
    range: Vec<usize>,
    inverse: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    out_of: BTreeMap<usize, Vec<usize>>,
    fingerprint: u64,
}

/// Serializable view used for reports.
#[derive(Clone, Debug, Serialize)]
pub struct GroupoidTables {
    pub arrows: Vec<String>,
    pub units: Vec<String>,
    pub source: Vec<String>,
    pub range: Vec<String>,
    pub inverse: Vec<String>,
    pub compose: Vec<[String; 3]>,
}

impl FiniteGroupoid {
    /// Checks every groupoid axiom; `compose(a, b)` must be `Some` exactly
    /// when `source[a] == range[b]`.
    pub fn validate(
        names: Vec<String>,
        source: Vec<usize>,
        range: Vec<usize>,
        inverse: Vec<usize>,
        compose: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self, GroupoidError> {
        let n = names.len();
        if source.len() != n || range.len() != n || inverse.len() != n {
            return Err(GroupoidError::Shape(n));
        }
        for (v, what) in [(&source, "source"), (&range, "range"), (&inverse, "inverse")] {
            if v.iter().any(|&a| a >= n) {
                return Err(GroupoidError::OutOfRange(what));
            }
        }
        let mut is_unit = vec![false; n];
        for a in 0..n {
            is_unit[source[a]] = true;
            is_unit[range[a]] = true;
        }
        for u in 0..n {
            if is_unit[u] && (source[u] != u || range[u] != u || inverse[u] != u) {
                return Err(GroupoidError::UnitNotFixed(names[u].clone()));
            }
        }
        let mut table = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                match (compose(a, b), source[a] == range[b]) {
                    (Some(c), true) => {
                        if c >= n {
                            return Err(GroupoidError::OutOfRange("compose"));
                        }
                        if source[c] != source[b] || range[c] != range[a] {
                            return Err(GroupoidError::ComposeEndpoints(names[a].clone(), names[b].clone()));
                        }
                        table.insert((a, b), c);
                    }
                    (Some(_), false) => {
                        return Err(GroupoidError::ComposeOutsideDomain(names[a].clone(), names[b].clone()))
                    }
                    (None, true) => return Err(GroupoidError::ComposeMissing(names[a].clone(), names[b].clone())),
                    (None, false) => {}
                }
            }
        }
        let units: Vec<usize> = (0..n).filter(|&u| is_unit[u]).collect();
        let mut out_of: BTreeMap<usize, Vec<usize>> = units.iter().map(|&u| (u, Vec::new())).collect();
        for a in 0..n {
            out_of.get_mut(&source[a]).expect("unit").push(a);
        }
        for a in 0..n {
            if table[&(range[a], a)] != a || table[&(a, source[a])] != a {
                return Err(GroupoidError::UnitLaw(names[a].clone()));
            }
            let ai = inverse[a];
            if source[ai] != range[a] || table.get(&(ai, a)) != Some(&source[a]) || table.get(&(a, ai)) != Some(&range[a]) {
                return Err(GroupoidError::InverseLaw(names[a].clone()));
            }
        }
        let mut into: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for c in 0..n {
            into.entry(range[c]).or_default().push(c);
        }
        let mut pairs: Vec<((usize, usize), usize)> = table.iter().map(|(&k, &v)| (k, v)).collect();
        pairs.sort_unstable();
        for ((a, b), ab) in pairs {
            for &c in &into[&source[b]] {
                let bc = table[&(b, c)];
                if table[&(ab, c)] != table[&(a, bc)] {
                    return Err(GroupoidError::NotAssociative(names[a].clone(), names[b].clone(), names[c].clone()));
                }
            }
        }
        let mut g = FiniteGroupoid { names, units, source, range, inverse, compose: table, out_of, fingerprint: 0 };
        g.fingerprint = g.compute_fingerprint();
        Ok(g)
    }

    fn compute_fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.names.hash(&mut h);
        self.source.hash(&mut h);
        self.range.hash(&mut h);
        self.inverse.hash(&mut h);
        let mut c: Vec<_> = self.compose.iter().map(|(&(a, b), &v)| (a, b, v)).collect();
        c.sort_unstable();
        c.hash(&mut h);
        h.finish()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.source[a] == a && self.range[a] == a
    }

    #[inline]
    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    #[inline]
    pub fn range(&self, a: usize) -> usize {
        self.range[a]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    #[inline]
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.compose.get(&(a, b)).copied()
    }

    /// Arrows with the given source unit.
    pub fn arrows_from(&self, u: usize) -> &[usize] {
        self.out_of.get(&u).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Isotropy group at a unit.
    pub fn isotropy(&self, u: usize) -> Vec<usize> {
        self.arrows_from(u).iter().copied().filter(|&a| self.range[a] == u).collect()
    }

    pub fn tables(&self) -> GroupoidTables {
        let nm = |a: usize| self.names[a].clone();
        let mut compose: Vec<[String; 3]> = Vec::new();
        let mut keys: Vec<_> = self.compose.iter().collect();
        keys.sort();
        for (&(a, b), &c) in keys {
            compose.push([nm(a), nm(b), nm(c)]);
        }
        GroupoidTables {
            arrows: self.names.clone(),
            units: self.units.iter().map(|&u| nm(u)).collect(),
            source: self.source.iter().map(|&u| nm(u)).collect(),
            range: self.range.iter().map(|&u| nm(u)).collect(),
            inverse: self.inverse.iter().map(|&u| nm(u)).collect(),
            compose,
        }
    }

    /// Pair groupoid on `n` units; arrow `(i, j)` has range `i`, source `j`.
    pub fn pair(n: usize) -> Self {
        let idx = |i: usize, j: usize| i * n + j;
        let names = (0..n * n).map(|a| format!("({},{})", a / n, a % n)).collect();
        Self::validate(
            names,
            (0..n * n).map(|a| idx(a % n, a % n)).collect(),
            (0..n * n).map(|a| idx(a / n, a / n)).collect(),
            (0..n * n).map(|a| idx(a % n, a / n)).collect(),
            |a, b| (a % n == b / n).then(|| idx(a / n, b % n)),
        )
        .expect("pair groupoid")
    }

    /// A group as a one-unit groupoid.
    pub fn from_group(g: &crate::invsemi::InverseSemigroup) -> Self {
        let e = g.identity().expect("group has an identity");
        let n = g.len();
        Self::validate(
            g.names().to_vec(),
            vec![e; n],
            vec![e; n],
            (0..n).map(|a| g.inv(a)).collect(),
            |a, b| Some(g.mul(a, b)),
        )
        .expect("group groupoid")
    }

    /// Disjoint union; arrows of `other` are renamed with a prime suffix
    /// when names collide.
    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> Self {
        let n = self.len();
        let mut names = self.names.clone();
        for nm in &other.names {
            if self.names.contains(nm) {
                names.push(format!("{nm}'"));
            } else {
                names.push(nm.clone());
            }
        }
        let lift = |a: usize| a + n;
        let source = self.source.iter().copied().chain(other.source.iter().map(|&a| lift(a))).collect();
        let range = self.range.iter().copied().chain(other.range.iter().map(|&a| lift(a))).collect();
        let inverse = self.inverse.iter().copied().chain(other.inverse.iter().map(|&a| lift(a))).collect();
        Self::validate(names, source, range, inverse, |a, b| {
            if a < n && b < n {
                self.compose(a, b)
            } else if a >= n && b >= n {
                other.compose(a - n, b - n).map(lift)
            } else {
                None
            }
        })
        .expect("disjoint union of groupoids")
    }

    /// Whether `map` (arrow of self ↦ arrow of other) is a groupoid isomorphism.
    pub fn is_isomorphism(&self, other: &FiniteGroupoid, map: &[usize]) -> bool {
        if map.len() != self.len() || other.len() != self.len() {
            return false;
        }
        let mut hit = vec![false; other.len()];
        for &b in map {
            if b >= other.len() || std::mem::replace(&mut hit[b], true) {
                return false;
            }
        }
        self.is_homomorphism(other, map)
    }

    pub fn is_homomorphism(&self, other: &FiniteGroupoid, map: &[usize]) -> bool {
        (0..self.len()).all(|a| {
            other.source(map[a]) == map[self.source(a)]
                && other.range(map[a]) == map[self.range(a)]
                && other.inverse(map[a]) == map[self.inverse(a)]
        }) && self.compose.iter().all(|(&(a, b), &c)| other.compose(map[a], map[b]) == Some(map[c]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invsemi::InverseSemigroup;

    #[test]
    fn pair_groupoid_is_valid() {
        let g = FiniteGroupoid::pair(2);
        assert_eq!(g.len(), 4);
        assert_eq!(g.units(), &[0, 3]);
        assert_eq!(g.isotropy(0), vec![0]);
        assert_eq!(g.compose(1, 2), Some(0));
    }

    #[test]
    fn broken_associativity_is_reported() {
        // one unit, three arrows, composition that is not associative
        let z3 = InverseSemigroup::cyclic_group(3);
        let r = FiniteGroupoid::validate(
            vec!["1".into(), "a".into(), "b".into()],
            vec![0; 3],
            vec![0; 3],
            vec![0, 2, 1],
            |a, b| {
                if a == 1 && b == 1 {
                    Some(1)
                } else {
                    Some(z3.mul(a, b))
                }
            },
        );
        assert!(r.is_err());
    }

    #[test]
    fn group_groupoid_has_full_isotropy() {
        let g = FiniteGroupoid::from_group(&InverseSemigroup::cyclic_group(2));
        assert_eq!(g.units(), &[0]);
        assert_eq!(g.isotropy(0), vec![0, 1]);
        let u = g.disjoint_union(&g);
        assert_eq!(u.len(), 4);
        assert_eq!(u.units(), &[0, 2]);
    }
}
