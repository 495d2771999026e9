//! Exel's semigroup `S(G)` of a finite group.
//!
//! Elements are standard forms `ε_R[g]` with `R ⊆ G ∖ {1, g}`. Relation
//! (ii) with `t = g⁻¹` gives `[g][g⁻¹][g] = [g]`, so `ε_g[g] = [g]` and
//! `g` never appears in `R`. The product
//! `ε_R[g] · ε_Q[h] = ε_{(R ∪ gQ ∪ {g}) ∖ {1, gh}}[gh]`
//! follows from `[g][h] = ε_g[gh]` and `[g]ε_r = ε_{gr}[g]`, and is checked
//! against [`word_closure`], which only uses the defining relations.

use super::{InverseSemigroup, TooLarge};
use crate::unionfind::UnionFind;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExelElement {
    pub eps: BTreeSet<usize>,
    pub g: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExelError {
    #[error("input semigroup is not a group")]
    NotAGroup,
    #[error(transparent)]
    TooLarge(#[from] TooLarge),
}

/// `(|G| + 1) · 2^(|G| - 2)` for `|G| >= 2`, and 1 for the trivial group.
pub fn exel_size(order: usize) -> usize {
    if order <= 1 {
        1
    } else {
        (order + 1) << (order - 2)
    }
}

impl ExelElement {
    pub fn generator(g: usize) -> Self {
        ExelElement { eps: BTreeSet::new(), g }
    }

    pub fn mul(&self, other: &ExelElement, group: &InverseSemigroup) -> ExelElement {
        let one = group.identity().expect("group");
        let gh = group.mul(self.g, other.g);
        let mut eps: BTreeSet<usize> = self.eps.clone();
        eps.extend(other.eps.iter().map(|&q| group.mul(self.g, q)));
        eps.insert(self.g);
        eps.remove(&one);
        eps.remove(&gh);
        ExelElement { eps, g: gh }
    }

    pub fn inverse(&self, group: &InverseSemigroup) -> ExelElement {
        let gi = group.inv(self.g);
        ExelElement { eps: self.eps.iter().map(|&r| group.mul(gi, r)).collect(), g: gi }
    }

    pub fn label(&self, group: &InverseSemigroup) -> String {
        if self.eps.is_empty() {
            format!("[{}]", group.name(self.g))
        } else {
            let r: Vec<&str> = self.eps.iter().map(|&r| group.name(r)).collect();
            format!("ε{{{}}}[{}]", r.join(","), group.name(self.g))
        }
    }
}

/// `S(G)` with elements ordered by `|R|`, then `g`, then `R`.
pub fn exel_semigroup(
    group: &InverseSemigroup,
    max_elements: usize,
) -> Result<(InverseSemigroup, Vec<ExelElement>), ExelError> {
    if !group.is_group() {
        return Err(ExelError::NotAGroup);
    }
    let size = exel_size(group.len());
    if size > max_elements {
        return Err(TooLarge { size, limit: max_elements }.into());
    }
    let one = group.identity().expect("group");
    let mut elems = Vec::with_capacity(size);
    for g in 0..group.len() {
        let free: Vec<usize> = (0..group.len()).filter(|&r| r != one && r != g).collect();
        for mask in 0u64..(1u64 << free.len()) {
            let eps = free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &r)| r).collect();
            elems.push(ExelElement { eps, g });
        }
    }
    elems.sort_by(|a, b| (a.eps.len(), a.g, &a.eps).cmp(&(b.eps.len(), b.g, &b.eps)));
    let index: HashMap<ExelElement, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let names = elems.iter().map(|e| e.label(group)).collect();
    let s = InverseSemigroup::from_fn(names, |a, b| index[&elems[a].mul(&elems[b], group)])
        .expect("S(G) is an inverse semigroup");
    Ok((s, elems))
}

/// Outcome of closing all words of bounded length under the defining
/// relations and comparing the classes with the standard-form model.
#[derive(Clone, Debug, Serialize)]
pub struct WordClosure {
    pub max_len: usize,
    pub counted_len: usize,
    pub words: usize,
    pub classes: usize,
    /// Distinct model elements reached by some word.
    pub model_images: usize,
    /// Every class evaluates to a single model element.
    pub sound: bool,
    /// Distinct classes evaluate to distinct elements and every element is reached.
    pub complete: bool,
}

/// Words over `G` of length `1..=max_len`, identified under relations
/// (i) `[s⁻¹][s][t] = [s⁻¹][st]`, (ii) `[s][t][t⁻¹] = [st][t⁻¹]`,
/// (iii) `[s][1] = [s]`, (iv) `[1][s] = [s]`, applied inside any context
/// where both sides stay within the length bound. Classes are counted on
/// words of length at most `counted_len`.
pub fn word_closure(group: &InverseSemigroup, max_len: usize, counted_len: usize) -> Result<WordClosure, ExelError> {
    if !group.is_group() {
        return Err(ExelError::NotAGroup);
    }
    let n = group.len();
    let one = group.identity().expect("group");
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..n {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    let index: HashMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut uf = UnionFind::new(words.len());
    let splice = |w: &[usize], at: usize, len: usize, with: &[usize]| -> Vec<usize> {
        let mut v = w[..at].to_vec();
        v.extend_from_slice(with);
        v.extend_from_slice(&w[at + len..]);
        v
    };
    // Every relation shortens the word by one, so applying each rule
    // left-to-right from every word also covers the reverse direction.
    for (i, w) in words.iter().enumerate() {
        for p in 0..w.len() {
            if p + 1 < w.len() {
                let (a, b) = (w[p], w[p + 1]);
                if b == one {
                    uf.union(i, index[&splice(w, p, 2, &[a])]);
                }
                if a == one {
                    uf.union(i, index[&splice(w, p, 2, &[b])]);
                }
            }
            if p + 2 < w.len() {
                let (a, b, c) = (w[p], w[p + 1], w[p + 2]);
                if a == group.inv(b) {
                    uf.union(i, index[&splice(w, p, 3, &[a, group.mul(b, c)])]);
                }
                if c == group.inv(b) {
                    uf.union(i, index[&splice(w, p, 3, &[group.mul(a, b), c])]);
                }
            }
        }
    }
    let (label, _) = uf.classes();
    // A word of length `max_len` with no redex cannot be rewritten inside
    // the bound, so classes are counted on words of length <= `counted_len`.
    let counted: Vec<usize> = (0..words.len()).filter(|&i| words[i].len() <= counted_len).collect();
    let class_ids: BTreeSet<usize> = counted.iter().map(|&i| label[i]).collect();
    let classes = class_ids.len();
    let eval = |w: &[usize]| {
        w.iter()
            .map(|&g| ExelElement::generator(g))
            .reduce(|x, y| x.mul(&y, group))
            .expect("non-empty word")
    };
    let mut class_image: Vec<Option<ExelElement>> = vec![None; words.len()];
    let mut sound = true;
    for (i, w) in words.iter().enumerate() {
        let e = eval(w);
        match &class_image[label[i]] {
            None => class_image[label[i]] = Some(e),
            Some(prev) if *prev != e => sound = false,
            _ => {}
        }
    }
    let images: BTreeSet<ExelElement> = class_ids.iter().filter_map(|&c| class_image[c].clone()).collect();
    let complete = images.len() == classes && images.len() == exel_size(n);
    Ok(WordClosure { max_len, counted_len, words: words.len(), classes, model_images: images.len(), sound, complete })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_of_z2_has_three_elements() {
        let z2 = InverseSemigroup::cyclic_group(2);
        let (s, elems) = exel_semigroup(&z2, 100).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.names(), &["[1]", "[g1]", "ε{g1}[1]"]);
        assert_eq!(elems[2].eps.len(), 1);
        assert!(s.is_e_unitary());
    }

    #[test]
    fn conjugation_identity() {
        let z3 = InverseSemigroup::cyclic_group(3);
        for g in 0..3 {
            for r in 1..3 {
                let eps_r = ExelElement { eps: [r].into_iter().collect(), g: 0 };
                let lhs = ExelElement::generator(g).mul(&eps_r, &z3);
                let gr = z3.mul(g, r);
                let rhs = ExelElement { eps: [gr].into_iter().filter(|&x| x != 0).collect(), g: 0 }
                    .mul(&ExelElement::generator(g), &z3);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn relation_closure_matches_model() {
        for (n, len) in [(2, 4), (3, 5), (4, 6)] {
            let g = InverseSemigroup::cyclic_group(n);
            let c = word_closure(&g, len, len - 1).unwrap();
            assert!(c.sound && c.complete, "{c:?}");
            assert_eq!(c.classes, exel_size(n));
        }
        assert_eq!(exel_size(2), 3);
        assert_eq!(exel_size(3), 8);
        assert_eq!(exel_size(4), 20);
    }

    #[test]
    fn maximal_length_powers_stay_isolated() {
        let c = word_closure(&InverseSemigroup::cyclic_group(3), 5, 5).unwrap();
        assert!(c.sound && !c.complete);
        assert_eq!(c.classes, 10);
    }

    #[test]
    fn group_image_of_s_of_g_is_g() {
        for n in 2..=4 {
            let g = InverseSemigroup::cyclic_group(n);
            let (s, _) = exel_semigroup(&g, 1000).unwrap();
            assert_eq!(s.max_group_image().group.len(), n);
        }
    }

    #[test]
    fn size_limit() {
        let z4 = InverseSemigroup::cyclic_group(4);
        assert!(matches!(exel_semigroup(&z4, 10), Err(ExelError::TooLarge(_))));
        assert!(matches!(exel_semigroup(&InverseSemigroup::chain(2), 10), Err(ExelError::NotAGroup)));
    }
}
