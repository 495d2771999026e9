//! Finite inverse semigroups given by Cayley tables.

mod constructions;
pub mod exel;
mod partial_bijection;

pub use constructions::{canonical_self_action, munn_representation, restricted_product_groupoid};
pub use exel::{exel_semigroup, exel_size, word_closure, ExelElement, WordClosure};
pub use partial_bijection::{symmetric_inverse_semigroup, PartialBijection};

use crate::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("table has {rows} rows for {elements} elements")]
    WrongRowCount { rows: usize, elements: usize },
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("entry ({row},{col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("duplicate element name '{0}'")]
    DuplicateName(String),
    #[error("empty semigroup")]
    Empty,
    #[error("not associative: ({0}{1}){2} != {0}({1}{2})")]
    NotAssociative(String, String, String),
    #[error("element {0} has no inverse")]
    NoInverse(String),
    #[error("element {0} has two inverses {1} and {2}")]
    NonUniqueInverse(String, String, String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("construction would have {size} elements, limit is {limit}")]
pub struct TooLarge {
    pub size: usize,
    pub limit: usize,
}

/// A validated finite inverse semigroup on elements `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSemigroup {
    names: Vec<String>,
    table: Vec<usize>,
    inverse: Vec<usize>,
    idempotent: Vec<bool>,
    zero: Option<usize>,
    identity: Option<usize>,
}

/// Witness pair `(e, s)`: `e` idempotent, `e <= s`, `s` not idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EUnitaryWitness {
    pub idempotent: usize,
    pub element: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupImage {
    pub group: InverseSemigroup,
    /// Class of each element of the source semigroup.
    pub class_of: Vec<usize>,
    /// Smallest element of each class.
    pub representative: Vec<usize>,
}

impl InverseSemigroup {
    pub fn validate(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, ValidationError> {
        let n = names.len();
        if n == 0 {
            return Err(ValidationError::Empty);
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(ValidationError::DuplicateName(name.clone()));
            }
        }
        if table.len() != n {
            return Err(ValidationError::WrongRowCount { rows: table.len(), elements: n });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(ValidationError::RaggedRow { row: i, len: row.len(), expected: n });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(ValidationError::OutOfRange { row: i, col: j, value: v });
                }
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let m = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(ValidationError::NotAssociative(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for i in 0..n {
            let cands: Vec<usize> = (0..n).filter(|&j| m(m(i, j), i) == i && m(m(j, i), j) == j).collect();
            match cands.as_slice() {
                [] => return Err(ValidationError::NoInverse(names[i].clone())),
                [j] => inverse[i] = *j,
                [j, k, ..] => {
                    return Err(ValidationError::NonUniqueInverse(
                        names[i].clone(),
                        names[*j].clone(),
                        names[*k].clone(),
                    ))
                }
            }
        }
        let idempotent: Vec<bool> = (0..n).map(|i| m(i, i) == i).collect();
        let zero = (0..n).find(|&z| (0..n).all(|a| m(z, a) == z && m(a, z) == z));
        let identity = (0..n).find(|&u| (0..n).all(|a| m(u, a) == a && m(a, u) == a));
        Ok(InverseSemigroup { names, table: flat, inverse, idempotent, zero, identity })
    }

    /// Builds a semigroup from a multiplication closure on `0..names.len()`.
    pub fn from_fn(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self, ValidationError> {
        let n = names.len();
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::validate(names, table)
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

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.len()).map(|r| r.to_vec()).collect()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    #[inline]
    pub fn is_idempotent(&self, a: usize) -> bool {
        self.idempotent[a]
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.idempotent[a]).collect()
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    /// `s*s`
    pub fn source_idempotent(&self, s: usize) -> usize {
        self.mul(self.inv(s), s)
    }

    /// `ss*`
    pub fn range_idempotent(&self, s: usize) -> usize {
        self.mul(s, self.inv(s))
    }

    pub fn is_group(&self) -> bool {
        self.idempotents().len() == 1
    }

    /// Natural partial order: `s <= t` iff `s = t s* s`.
    pub fn leq(&self, s: usize, t: usize) -> bool {
        s == self.mul(t, self.source_idempotent(s))
    }

    pub fn lower_set(&self, s: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.leq(u, s)).collect()
    }

    pub fn common_lower_bounds(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.leq(u, s) && self.leq(u, t)).collect()
    }

    /// `s*t` and `st*` both idempotent.
    pub fn compatible(&self, s: usize, t: usize) -> bool {
        self.is_idempotent(self.mul(self.inv(s), t)) && self.is_idempotent(self.mul(s, self.inv(t)))
    }

    /// Meet of a compatible pair, `st*t` (which equals `ts*s`).
    pub fn compatible_meet(&self, s: usize, t: usize) -> Option<usize> {
        if !self.compatible(s, t) {
            return None;
        }
        let m = self.mul(s, self.source_idempotent(t));
        debug_assert_eq!(m, self.mul(t, self.source_idempotent(s)));
        Some(m)
    }

    /// `Ok(())` when E-unitary, otherwise the first witness in index order.
    pub fn e_unitary_witness(&self) -> Result<(), EUnitaryWitness> {
        for e in self.idempotents() {
            for s in 0..self.len() {
                if !self.is_idempotent(s) && self.leq(e, s) {
                    return Err(EUnitaryWitness { idempotent: e, element: s });
                }
            }
        }
        Ok(())
    }

    pub fn is_e_unitary(&self) -> bool {
        self.e_unitary_witness().is_ok()
    }

    /// Checks that every pair with a common lower bound is compatible;
    /// returns the first offending pair otherwise.
    pub fn lower_bound_compatibility(&self) -> Result<(), (usize, usize)> {
        for s in 0..self.len() {
            for t in 0..self.len() {
                if !self.common_lower_bounds(s, t).is_empty() && !self.compatible(s, t) {
                    return Err((s, t));
                }
            }
        }
        Ok(())
    }

    /// Maximal common lower bounds of `s` and `t`.
    pub fn weak_semilattice_cover(&self, s: usize, t: usize) -> Vec<usize> {
        let lower = self.common_lower_bounds(s, t);
        lower
            .iter()
            .copied()
            .filter(|&u| !lower.iter().any(|&v| v != u && self.leq(u, v)))
            .collect()
    }

    /// Whether every common lower set is the down-closure of its maximal
    /// elements. Always true for finite posets; returned as a check.
    pub fn is_weak_semilattice(&self) -> bool {
        (0..self.len()).all(|s| {
            (0..self.len()).all(|t| {
                let cover = self.weak_semilattice_cover(s, t);
                self.common_lower_bounds(s, t)
                    .into_iter()
                    .all(|u| cover.iter().any(|&f| self.leq(u, f)))
            })
        })
    }

    /// Maximal group image: `s ~ t` iff they have a common lower bound.
    pub fn max_group_image(&self) -> GroupImage {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for s in 0..n {
            for u in self.lower_set(s) {
                uf.union(s, u);
            }
        }
        let (class_of, k) = uf.classes();
        let mut representative = vec![usize::MAX; k];
        for s in 0..n {
            if representative[class_of[s]] == usize::MAX {
                representative[class_of[s]] = s;
            }
        }
        let names = representative.iter().map(|&r| format!("[{}]", self.names[r])).collect();
        let group = InverseSemigroup::from_fn(names, |a, b| class_of[self.mul(representative[a], representative[b])])
            .expect("quotient by the minimum group congruence is a group");
        GroupImage { group, class_of, representative }
    }

    /// Inverse semigroup of a finite group given by its multiplication.
    pub fn group(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self, ValidationError> {
        Self::from_fn(names, mul)
    }

    pub fn cyclic_group(n: usize) -> Self {
        let names = (0..n).map(|k| if k == 0 { "1".to_string() } else { format!("g{k}") }).collect();
        Self::from_fn(names, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// Chain semilattice `0 < 1 < ... < n-1` with meet as product.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|k| format!("e{k}")).collect();
        Self::from_fn(names, |a, b| a.min(b)).expect("chain")
    }

    /// Group with an adjoined zero.
    pub fn with_zero(g: &InverseSemigroup) -> Self {
        let n = g.len();
        let mut names = g.names.clone();
        names.push("0".into());
        Self::from_fn(names, |a, b| if a == n || b == n { n } else { g.mul(a, b) }).expect("adjoined zero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn left_zero_band_has_two_inverses() {
        let r = InverseSemigroup::validate(s(&["x", "y"]), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(r, Err(ValidationError::NonUniqueInverse("x".into(), "x".into(), "y".into())));
    }

    #[test]
    fn ragged_and_nonassociative_tables() {
        let r = InverseSemigroup::validate(s(&["a", "b"]), vec![vec![0, 1], vec![0]]);
        assert!(matches!(r, Err(ValidationError::RaggedRow { row: 1, .. })));
        // a*a = b, everything else a: (aa)a = ba = a, a(aa) = ab = a; b*b = a
        let r = InverseSemigroup::validate(s(&["a", "b"]), vec![vec![1, 0], vec![0, 0]]);
        assert!(matches!(r, Err(ValidationError::NotAssociative(..))));
    }

    #[test]
    fn cyclic_group_inverses() {
        let z3 = InverseSemigroup::cyclic_group(3);
        assert_eq!(z3.inv(1), 2);
        assert!(z3.is_group());
        assert_eq!(z3.identity(), Some(0));
        assert!(z3.is_e_unitary());
    }

    #[test]
    fn chain_order_and_meets() {
        let c = InverseSemigroup::chain(3);
        assert!(c.leq(0, 2));
        assert!(!c.leq(2, 0));
        assert_eq!(c.compatible_meet(1, 2), Some(1));
        assert_eq!(c.weak_semilattice_cover(1, 2), vec![1]);
        assert!(c.is_weak_semilattice());
        assert_eq!(c.zero(), Some(0));
        assert_eq!(c.max_group_image().group.len(), 1);
    }

    #[test]
    fn zero_makes_groups_non_e_unitary() {
        let z2 = InverseSemigroup::cyclic_group(2);
        let z = InverseSemigroup::with_zero(&z2);
        assert_eq!(z.e_unitary_witness(), Err(EUnitaryWitness { idempotent: 2, element: 1 }));
        assert!(z.lower_bound_compatibility().is_err());
        assert_eq!(z.max_group_image().group.len(), 1);
    }

    #[test]
    fn group_image_of_a_group_is_itself() {
        let z3 = InverseSemigroup::cyclic_group(3);
        let gi = z3.max_group_image();
        assert_eq!(gi.group.len(), 3);
        assert_eq!(gi.class_of, vec![0, 1, 2]);
    }
}
