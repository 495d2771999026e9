//! Dual algebraic partial actions on `R^X` and their inversion.
//!
//! `R^X` carries the pointwise product, so `δ_x f = f(x) δ_x`. An ideal with
//! local units is `I(U) = span{δ_x : x ∈ U}`; `U(I)` is the union of the
//! supports of its elements.

use super::{ActionError, PartialAction};
use crate::invsemi::InverseSemigroup;
use crate::linalg::{Echelon, LinalgError};
use crate::scalar::Ring;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecoverError {
    #[error("coefficient ring has a non-trivial idempotent {0}")]
    DecomposableRing(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("D_{0} is not an ideal")]
    NotAnIdeal(String),
    #[error("D_{0} has no local units")]
    NoLocalUnits(String),
    #[error("alpha_{0} is not an algebra isomorphism D_{0}* -> D_{0}")]
    NotAlgebraIso(String),
    #[error("alpha is not a partial homomorphism at ({0},{1})")]
    NotPartialHom(String, String),
    #[error("idempotent ideals do not span the algebra")]
    Degenerate,
    #[error(transparent)]
    Invalid(#[from] ActionError),
}

/// Partial action of `S` on `R^X` by ideals `D_s` and linear maps
/// `α_s : D_{s*} → D_s`. `matrices[s][i][j]` is the `δ_i` coefficient of
/// `α_s(δ_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicPartialAction<R: Ring> {
    pub semigroup: InverseSemigroup,
    pub carrier: Vec<String>,
    pub ideals: Vec<Vec<Vec<R>>>,
    pub matrices: Vec<Vec<Vec<R>>>,
}

pub fn indicator<R: Ring>(n: usize, x: usize) -> Vec<R> {
    let mut v = vec![R::zero(); n];
    v[x] = R::one();
    v
}

/// Spanning set of `I(U)`.
pub fn ideal_of<R: Ring>(n: usize, u: &[usize]) -> Vec<Vec<R>> {
    u.iter().map(|&x| indicator(n, x)).collect()
}

/// `U(I)`, sorted.
pub fn support_union<R: Ring>(spanning: &[Vec<R>]) -> Vec<usize> {
    let n = spanning.first().map_or(0, Vec::len);
    (0..n).filter(|&x| spanning.iter().any(|v| !v[x].is_zero())).collect()
}

pub fn dual_action<R: Ring>(theta: &PartialAction) -> AlgebraicPartialAction<R> {
    let sg = theta.semigroup();
    let n = theta.points();
    let ideals = (0..sg.len()).map(|s| ideal_of(n, &theta.domain(s))).collect();
    // α_s(f) = f ∘ θ_{s*}, so α_s(δ_x) = δ_{θ_s(x)} for x ∈ X_{s*}.
    let matrices = (0..sg.len())
        .map(|s| {
            let mut m = vec![vec![R::zero(); n]; n];
            for x in 0..n {
                if let Some(y) = theta.apply(s, x) {
                    m[y][x] = R::one();
                }
            }
            m
        })
        .collect();
    AlgebraicPartialAction { semigroup: sg.clone(), carrier: theta.carrier().to_vec(), ideals, matrices }
}

impl<R: Ring> AlgebraicPartialAction<R> {
    pub fn dim(&self) -> usize {
        self.carrier.len()
    }

    pub fn apply(&self, s: usize, v: &[R]) -> Vec<R> {
        let m = &self.matrices[s];
        (0..self.dim())
            .map(|i| (0..self.dim()).fold(R::zero(), |acc, j| acc + m[i][j].clone() * v[j].clone()))
            .collect()
    }

    /// Point set `U` with `D_s = I(U)`, after checking that `D_s` is an
    /// ideal with local units.
    pub fn ideal_support(&self, s: usize) -> Result<Vec<usize>, RecoverError> {
        let n = self.dim();
        let name = || self.semigroup.name(s).to_string();
        let span = Echelon::new(n, self.ideals[s].clone())?;
        let u = support_union(&self.ideals[s]);
        if u.iter().all(|&x| span.contains(&indicator::<R>(n, x))) {
            return Ok(u);
        }
        for v in &self.ideals[s] {
            for x in 0..n {
                let mut w = vec![R::zero(); n];
                w[x] = v[x].clone();
                if !span.contains(&w) {
                    return Err(RecoverError::NotAnIdeal(name()));
                }
            }
        }
        Err(RecoverError::NoLocalUnits(name()))
    }

    /// Checks the algebraic partial-action axioms; returns the supports `U_s`.
    pub fn check(&self) -> Result<Vec<Vec<usize>>, RecoverError> {
        if let Some(e) = R::nontrivial_idempotent() {
            return Err(RecoverError::DecomposableRing(e.to_string()));
        }
        let sg = &self.semigroup;
        let n = self.dim();
        let name = |s: usize| sg.name(s).to_string();
        let supports: Vec<Vec<usize>> = (0..sg.len()).map(|s| self.ideal_support(s)).collect::<Result<_, _>>()?;
        let within = |v: &[R], u: &[usize]| (0..n).all(|x| v[x].is_zero() || u.contains(&x));
        for s in 0..sg.len() {
            let src = &supports[sg.inv(s)];
            let images: Vec<Vec<R>> = src.iter().map(|&x| self.apply(s, &indicator(n, x))).collect();
            let rank = Echelon::new(n, images.clone())?.rank();
            if rank != supports[s].len() || images.iter().any(|w| !within(w, &supports[s])) {
                return Err(RecoverError::NotAlgebraIso(name(s)));
            }
            for (i, a) in images.iter().enumerate() {
                for (j, b) in images.iter().enumerate() {
                    let prod: Vec<R> = (0..n).map(|k| a[k].clone() * b[k].clone()).collect();
                    let expect = if i == j { a.clone() } else { vec![R::zero(); n] };
                    if prod != expect {
                        return Err(RecoverError::NotAlgebraIso(name(s)));
                    }
                }
            }
        }
        for s in 0..sg.len() {
            let si = sg.inv(s);
            for &x in &supports[si] {
                let d = indicator::<R>(n, x);
                if self.apply(si, &self.apply(s, &d)) != d {
                    return Err(RecoverError::NotPartialHom(name(s), name(si)));
                }
            }
            for t in 0..sg.len() {
                let st = sg.mul(s, t);
                for &x in &supports[sg.inv(t)] {
                    let d = indicator::<R>(n, x);
                    let w = self.apply(t, &d);
                    if within(&w, &supports[si])
                        && (!supports[sg.inv(st)].contains(&x) || self.apply(st, &d) != self.apply(s, &w)) {
                            return Err(RecoverError::NotPartialHom(name(s), name(t)));
                        }
                }
                if s != t && sg.leq(s, t) {
                    for &x in &supports[si] {
                        let d = indicator::<R>(n, x);
                        if !supports[sg.inv(t)].contains(&x) || self.apply(s, &d) != self.apply(t, &d) {
                            return Err(RecoverError::NotPartialHom(name(s), name(t)));
                        }
                    }
                }
            }
        }
        let covered: Vec<usize> = sg.idempotents().iter().flat_map(|&e| supports[e].clone()).collect();
        if (0..n).any(|x| !covered.contains(&x)) {
            return Err(RecoverError::Degenerate);
        }
        Ok(supports)
    }
}

/// Recovers `θ` from `α`: `X_s = U(D_s)` and `α_s(δ_x) = δ_{θ_s(x)}`.
pub fn recover_action_from_dual<R: Ring>(alpha: &AlgebraicPartialAction<R>) -> Result<PartialAction, RecoverError> {
    let supports = alpha.check()?;
    let sg = &alpha.semigroup;
    let n = alpha.dim();
    let mut map = vec![vec![None; n]; sg.len()];
    for s in 0..sg.len() {
        for &x in &supports[sg.inv(s)] {
            let w = alpha.apply(s, &indicator(n, x));
            let y = (0..n).find(|&y| !w[y].is_zero()).expect("isomorphism sends δ_x to an indicator");
            map[s][x] = Some(y);
        }
    }
    Ok(PartialAction::validate(sg.clone(), alpha.carrier.clone(), map)?)
}

/// Checks `U(I(U)) = U` and `I(U(I)) = I` for every subset `U` of an
/// `n`-point set, with `I` given by a spanning set other than the indicators.
/// Returns the number of subsets checked or the first failing subset.
pub fn ideal_lattice_check<R: Ring>(n: usize) -> Result<usize, Vec<usize>> {
    for mask in 0u32..(1 << n) {
        let u: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        if support_union(&ideal_of::<R>(n, &u)) != u {
            return Err(u);
        }
        // I spanned by δ_{u_k} + δ_{u_{k+1}} and δ_{u_last}
        let mut gens: Vec<Vec<R>> = Vec::new();
        for w in u.windows(2) {
            let mut v = indicator::<R>(n, w[0]);
            v[w[1]] = R::one();
            gens.push(v);
        }
        if let Some(&last) = u.last() {
            gens.push(indicator(n, last));
        }
        let recovered = if gens.is_empty() { Vec::new() } else { support_union(&gens) };
        if recovered != u {
            return Err(u);
        }
        let a = Echelon::new(n, gens.clone()).map_err(|_| u.clone())?;
        let b = Echelon::new(n, ideal_of::<R>(n, &recovered)).map_err(|_| u.clone())?;
        let same = gens.iter().all(|v| b.contains(v)) && ideal_of::<R>(n, &recovered).iter().all(|v| a.contains(v));
        if !same {
            return Err(u);
        }
    }
    Ok(1 << n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Zn;
    use crate::{Integer, Rational};

    fn swap() -> PartialAction {
        let z2 = InverseSemigroup::cyclic_group(2);
        PartialAction::from_fn(z2, vec!["x".into(), "y".into()], |s, x| Some(if s == 1 { 1 - x } else { x })).unwrap()
    }

    #[test]
    fn dual_of_swap_is_a_permutation_matrix() {
        let a = dual_action::<Rational>(&swap());
        let one = Rational::from_i64(1);
        let zero = Rational::from_i64(0);
        assert_eq!(a.matrices[1], vec![vec![zero.clone(), one.clone()], vec![one, zero]]);
        assert_eq!(recover_action_from_dual(&a).unwrap(), swap());
    }

    #[test]
    fn round_trip_over_integers_and_z5() {
        assert_eq!(recover_action_from_dual(&dual_action::<Integer>(&swap())).unwrap(), swap());
        assert_eq!(recover_action_from_dual(&dual_action::<Zn<5>>(&swap())).unwrap(), swap());
    }

    #[test]
    fn z6_is_decomposable() {
        let r = recover_action_from_dual(&dual_action::<Zn<6>>(&swap()));
        assert_eq!(r, Err(RecoverError::DecomposableRing("3".into())));
    }

    #[test]
    fn non_ideals_and_missing_local_units() {
        let mut a = dual_action::<Integer>(&swap());
        let z = Integer::from;
        a.ideals[0] = vec![vec![z(1), z(1)]];
        assert_eq!(a.ideal_support(0), Err(RecoverError::NotAnIdeal("1".into())));
        a.ideals[0] = vec![vec![z(2), z(0)], vec![z(0), z(1)]];
        assert_eq!(a.ideal_support(0), Err(RecoverError::NoLocalUnits("1".into())));
    }

    #[test]
    fn lattice_bijection_on_four_points() {
        assert_eq!(ideal_lattice_check::<Rational>(4), Ok(16));
        assert_eq!(ideal_lattice_check::<Integer>(4), Ok(16));
    }
}
