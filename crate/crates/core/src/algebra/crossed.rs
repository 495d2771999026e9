//! The crossed product `A ⋊ S = L / N` of an algebraic partial action on
//! `R^X`.
//!
//! `L = ⊕_s D_s δ_s` has basis `e_(s,x) = δ_x δ_s` for `x ∈ U_s`, ordered
//! `s`-major and `x`-minor. `N` is spanned by `e_(r,x) − e_(s,x)` for
//! `r < s` and `x ∈ U_r`. Classes are represented by their residue against
//! the reduced echelon basis of `N`.

use super::AlgebraError;
use crate::linalg::Echelon;
use crate::paction::AlgebraicPartialAction;
use crate::scalar::Ring;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};

#[derive(Clone, Debug)]
pub struct CrossedProduct<R: Ring> {
    action: AlgebraicPartialAction<R>,
    supports: Vec<Vec<usize>>,
    basis: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    generators: Vec<Vec<R>>,
    generator_labels: Vec<(usize, usize, usize)>,
    n_span: Echelon<R>,
    /// Same span, eliminated in reversed column order.
    n_span_reversed: Echelon<R>,
    id: u64,
}

/// A class in `A ⋊ S`, stored as its canonical residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedProductElement<R: Ring> {
    structure: u64,
    coords: Vec<R>,
}

impl<R: Ring> CrossedProductElement<R> {
    pub fn coords(&self) -> &[R] {
        &self.coords
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CrossedProductSummary {
    pub dim_l: usize,
    pub n_generators: usize,
    pub dim_n: usize,
    pub quotient_dim: usize,
}

impl<R: Ring> CrossedProduct<R> {
    pub fn build(action: &AlgebraicPartialAction<R>) -> Result<Self, AlgebraError> {
        if !R::is_field() {
            return Err(AlgebraError::NotAField(R::name()));
        }
        let supports = action.check()?;
        let sg = &action.semigroup;
        let basis: Vec<(usize, usize)> =
            (0..sg.len()).flat_map(|s| supports[s].iter().map(move |&x| (s, x))).collect();
        let index: HashMap<(usize, usize), usize> = basis.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let dim = basis.len();
        let mut generators = Vec::new();
        let mut generator_labels = Vec::new();
        for r in 0..sg.len() {
            for s in 0..sg.len() {
                if r == s || !sg.leq(r, s) {
                    continue;
                }
                for &x in &supports[r] {
                    let j = *index.get(&(s, x)).ok_or_else(|| AlgebraError::NotAnIdealWithLocalUnits(sg.name(s).into()))?;
                    let mut v = vec![R::zero(); dim];
                    v[index[&(r, x)]] = R::one();
                    v[j] = -R::one();
                    generators.push(v);
                    generator_labels.push((r, s, x));
                }
            }
        }
        let n_span = Echelon::new(dim, generators.clone())?;
        let reversed: Vec<usize> = (0..dim).rev().collect();
        let n_span_reversed = Echelon::with_column_order(dim, generators.clone(), &reversed)?;
        let mut h = std::collections::hash_map::DefaultHasher::new();
        (sg.names(), &action.carrier, &basis, format!("{:?}", action.matrices)).hash(&mut h);
        let cp = CrossedProduct {
            action: action.clone(),
            supports,
            basis,
            index,
            generators,
            generator_labels,
            n_span,
            n_span_reversed,
            id: h.finish(),
        };
        cp.check_associative()?;
        Ok(cp)
    }

    pub fn action(&self) -> &AlgebraicPartialAction<R> {
        &self.action
    }

    pub fn supports(&self) -> &[Vec<usize>] {
        &self.supports
    }

    /// `(s, x)` pairs indexing the basis of `L`.
    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn basis_index(&self, s: usize, x: usize) -> Option<usize> {
        self.index.get(&(s, x)).copied()
    }

    /// `(r, s, x)` for each generator `e_(r,x) − e_(s,x)` of `N`.
    pub fn generator_labels(&self) -> &[(usize, usize, usize)] {
        &self.generator_labels
    }

    pub fn generators(&self) -> &[Vec<R>] {
        &self.generators
    }

    pub fn dim_l(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_n(&self) -> usize {
        self.n_span.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.dim_l() - self.dim_n()
    }

    pub fn summary(&self) -> CrossedProductSummary {
        CrossedProductSummary {
            dim_l: self.dim_l(),
            n_generators: self.generators.len(),
            dim_n: self.dim_n(),
            quotient_dim: self.quotient_dim(),
        }
    }

    /// `a δ_s` as a vector of `L`; `a` must vanish off `U_s`.
    pub fn l_vector(&self, s: usize, a: &[R]) -> Result<Vec<R>, AlgebraError> {
        let mut v = vec![R::zero(); self.dim_l()];
        for (x, r) in a.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let i = self
                .basis_index(s, x)
                .ok_or_else(|| AlgebraError::OutsideIdeal { s: self.action.semigroup.name(s).into(), x })?;
            v[i] = r.clone();
        }
        Ok(v)
    }

    /// Product in `L`: `(a δ_s)(b δ_t) = α_s(α_{s*}(a) b) δ_{st}`, extended
    /// bilinearly.
    pub fn l_multiply(&self, u: &[R], v: &[R]) -> Result<Vec<R>, AlgebraError> {
        let sg = &self.action.semigroup;
        let n = self.action.dim();
        let m = &self.action.matrices;
        let mut out = vec![R::zero(); self.dim_l()];
        let support = |w: &[R]| (0..w.len()).filter(|&i| !w[i].is_zero()).collect::<Vec<_>>();
        let v_support = support(v);
        for i in support(u) {
            let (s, x) = self.basis[i];
            // α_{s*}(δ_x) is column x of the matrix of s*.
            let si = sg.inv(s);
            for &j in &v_support {
                let (t, y) = self.basis[j];
                let c = m[si][y][x].clone();
                if c.is_zero() {
                    continue;
                }
                // α_s(c δ_y) is c times column y of the matrix of s.
                let coeff = u[i].clone() * c * v[j].clone();
                let st = sg.mul(s, t);
                for z in 0..n {
                    let w = m[s][z][y].clone();
                    if w.is_zero() {
                        continue;
                    }
                    let k = self.basis_index(st, z).ok_or_else(|| AlgebraError::ProductOutsideIdeal {
                        s: sg.name(s).into(),
                        t: sg.name(t).into(),
                    })?;
                    out[k] = out[k].clone() + coeff.clone() * w;
                }
            }
        }
        Ok(out)
    }

    /// Checks `(e_i e_j) e_k = e_i (e_j e_k)` on all basis triples, expanding
    /// through a table of basis products; `l_multiply` is bilinear.
    fn check_associative(&self) -> Result<(), AlgebraError> {
        let d = self.dim_l();
        let e = |i: usize| {
            let mut v = vec![R::zero(); d];
            v[i] = R::one();
            v
        };
        let mut table: Vec<Vec<Vec<(usize, R)>>> = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                let v = self.l_multiply(&e(i), &e(j))?;
                row.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
            table.push(row);
        }
        let expand = |terms: &[(usize, R)], by: &dyn Fn(usize) -> usize, left: bool| {
            let mut acc: BTreeMap<usize, R> = BTreeMap::new();
            for (m, c) in terms {
                let row = if left { &table[*m][by(*m)] } else { &table[by(*m)][*m] };
                for (k, w) in row {
                    let slot = acc.entry(*k).or_insert_with(R::zero);
                    *slot = slot.clone() + c.clone() * w.clone();
                }
            }
            acc.retain(|_, c| !c.is_zero());
            acc
        };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = expand(&table[i][j], &|_| k, true);
                    let right = expand(&table[j][k], &|_| i, false);
                    if left != right {
                        let name = |m: usize| {
                            let (s, x) = self.basis[m];
                            format!("({},{})", self.action.semigroup.name(s), self.action.carrier[x])
                        };
                        return Err(AlgebraError::NotAssociative(name(i), name(j), name(k)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn reduce(&self, v: &[R]) -> Vec<R> {
        self.n_span.reduce(v)
    }

    pub fn element(&self, v: &[R]) -> CrossedProductElement<R> {
        CrossedProductElement { structure: self.id, coords: self.reduce(v) }
    }

    /// Class of `e_(s,x)`.
    pub fn basis_element(&self, s: usize, x: usize) -> Option<CrossedProductElement<R>> {
        let i = self.basis_index(s, x)?;
        let mut v = vec![R::zero(); self.dim_l()];
        v[i] = R::one();
        Some(self.element(&v))
    }

    fn owns(&self, x: &CrossedProductElement<R>) -> Result<(), AlgebraError> {
        if x.structure == self.id {
            Ok(())
        } else {
            Err(AlgebraError::StructureMismatch)
        }
    }

    pub fn cp_add(&self, x: &CrossedProductElement<R>, y: &CrossedProductElement<R>) -> Result<CrossedProductElement<R>, AlgebraError> {
        self.owns(x)?;
        self.owns(y)?;
        let v: Vec<R> = x.coords.iter().zip(&y.coords).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(self.element(&v))
    }

    /// Multiplies residues in `L` and reduces; well defined since `N` is an ideal.
    pub fn cp_multiply(
        &self,
        x: &CrossedProductElement<R>,
        y: &CrossedProductElement<R>,
    ) -> Result<CrossedProductElement<R>, AlgebraError> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(self.element(&self.l_multiply(&x.coords, &y.coords)?))
    }

    pub fn cp_equal(&self, x: &CrossedProductElement<R>, y: &CrossedProductElement<R>) -> Result<bool, AlgebraError> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(x.coords == y.coords)
    }

    /// Membership of `u − v` in `N` under the reversed elimination order.
    pub fn congruent_by_membership(&self, u: &[R], v: &[R]) -> bool {
        let d: Vec<R> = u.iter().zip(v).map(|(a, b)| a.clone() - b.clone()).collect();
        self.n_span_reversed.contains(&d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invsemi::{munn_representation, InverseSemigroup};
    use crate::paction::{dual_action, PartialAction};
    use crate::scalar::Zn;
    use crate::{Integer, Rational};

    fn swap() -> PartialAction {
        let z2 = InverseSemigroup::cyclic_group(2);
        PartialAction::from_fn(z2, vec!["x".into(), "y".into()], |s, x| Some(if s == 1 { 1 - x } else { x })).unwrap()
    }

    #[test]
    fn trivial_group_gives_the_algebra_itself() {
        let one = InverseSemigroup::cyclic_group(1);
        let theta = PartialAction::from_fn(one, (0..3).map(|i| i.to_string()).collect(), |_, x| Some(x)).unwrap();
        let cp = CrossedProduct::build(&dual_action::<Rational>(&theta)).unwrap();
        assert_eq!(cp.quotient_dim(), 3);
    }

    #[test]
    fn munn_chain2_dimensions() {
        let theta = munn_representation(&InverseSemigroup::chain(2));
        let cp = CrossedProduct::build(&dual_action::<Rational>(&theta)).unwrap();
        assert_eq!(cp.summary(), CrossedProductSummary { dim_l: 3, n_generators: 1, dim_n: 1, quotient_dim: 2 });
    }

    #[test]
    fn swap_dimensions_over_z5() {
        let cp = CrossedProduct::build(&dual_action::<Zn<5>>(&swap())).unwrap();
        assert_eq!(cp.summary(), CrossedProductSummary { dim_l: 4, n_generators: 0, dim_n: 0, quotient_dim: 4 });
    }

    #[test]
    fn integers_are_refused() {
        let r = CrossedProduct::build(&dual_action::<Integer>(&swap()));
        assert!(matches!(r, Err(AlgebraError::NotAField(_))));
    }

    #[test]
    fn smaller_element_has_the_same_class() {
        let theta = munn_representation(&InverseSemigroup::chain(2));
        let cp = CrossedProduct::build(&dual_action::<Rational>(&theta)).unwrap();
        let sg = theta.semigroup();
        for &(r, s, x) in cp.generator_labels() {
            assert!(sg.leq(r, s));
            let a = cp.basis_element(r, x).unwrap();
            let b = cp.basis_element(s, x).unwrap();
            assert!(cp.cp_equal(&a, &b).unwrap());
        }
    }

    #[test]
    fn local_unit_is_a_left_identity() {
        let cp = CrossedProduct::build(&dual_action::<Rational>(&swap())).unwrap();
        // δ_x δ_1 · δ_x δ_g = δ_x δ_g
        let unit = cp.basis_element(0, 0).unwrap();
        let b = cp.basis_element(1, 0).unwrap();
        assert_eq!(cp.cp_multiply(&unit, &b).unwrap(), b);
        let other = CrossedProduct::build(&dual_action::<Rational>(&munn_representation(&InverseSemigroup::chain(2))))
            .unwrap();
        assert_eq!(other.cp_multiply(&unit, &b), Err(AlgebraError::StructureMismatch));
    }
}
