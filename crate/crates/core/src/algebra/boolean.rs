//! Boolean representations of the bisection semigroup and the algebra
//! homomorphisms they induce on `A_R(G)`.

use super::steinberg::{convolve, SteinbergElement};
use super::AlgebraError;
use crate::germs::{bisection_product, enumerate_bisections, is_bisection, tau, Bisection, FiniteGroupoid};
use crate::linalg::Echelon;
use crate::scalar::Ring;
use std::fmt;

/// An associative `R`-algebra with a fixed finite basis.
pub trait TargetAlgebra<R: Ring> {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, r: &R, a: &Self::Elem) -> Self::Elem;
    fn coordinates(&self, a: &Self::Elem) -> Vec<R>;
}

/// `n × n` matrices over `R`.
#[derive(Clone, Copy, Debug)]
pub struct MatrixAlgebra {
    pub n: usize,
}

impl<R: Ring> TargetAlgebra<R> for MatrixAlgebra {
    type Elem = Vec<Vec<R>>;

    fn zero(&self) -> Self::Elem {
        vec![vec![R::zero(); self.n]; self.n]
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p.clone() + q.clone()).collect()).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| (0..self.n).fold(R::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone()))
                    .collect()
            })
            .collect()
    }

    fn scale(&self, r: &R, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|row| row.iter().map(|x| r.clone() * x.clone()).collect()).collect()
    }

    fn coordinates(&self, a: &Self::Elem) -> Vec<R> {
        a.iter().flatten().cloned().collect()
    }
}

/// `A_R(G)` itself, as a target.
#[derive(Clone, Copy, Debug)]
pub struct SteinbergAlgebra<'g> {
    pub groupoid: &'g FiniteGroupoid,
}

impl<R: Ring> TargetAlgebra<R> for SteinbergAlgebra<'_> {
    type Elem = SteinbergElement<R>;

    fn zero(&self) -> Self::Elem {
        SteinbergElement::zero(self.groupoid)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        convolve(self.groupoid, a, b).expect("elements of this groupoid")
    }

    fn scale(&self, r: &R, a: &Self::Elem) -> Self::Elem {
        a.scale(r)
    }

    fn coordinates(&self, a: &Self::Elem) -> Vec<R> {
        a.to_dense(self.groupoid.len())
    }
}

/// `Φ(1_{a}) = π({a})` for every arrow `a`; `Φ` is the linear extension.
#[derive(Clone, Debug)]
pub struct BooleanHom<E> {
    pub images: Vec<E>,
    pub injective: bool,
}

impl<E: Clone> BooleanHom<E> {
    pub fn apply<R: Ring, T: TargetAlgebra<R, Elem = E>>(&self, target: &T, f: &SteinbergElement<R>) -> E {
        f.terms().fold(target.zero(), |acc, (a, r)| target.add(&acc, &target.scale(r, &self.images[a])))
    }
}

fn label(g: &FiniteGroupoid, b: &[usize]) -> String {
    let parts: Vec<&str> = b.iter().map(|&a| g.name(a)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Checks that `π` is multiplicative and additive on disjoint unions, then
/// builds its linear extension. On a discrete groupoid every function is a
/// sum of singleton indicators, which are already bisections.
pub fn boolean_rep_hom<R: Ring, T: TargetAlgebra<R>>(
    g: &FiniteGroupoid,
    target: &T,
    pi: impl Fn(&Bisection) -> T::Elem,
    max_bisections: usize,
) -> Result<BooleanHom<T::Elem>, AlgebraError> {
    let bis = enumerate_bisections(g, max_bisections)?;
    let images: Vec<T::Elem> = bis.iter().map(&pi).collect();
    let not_rep = |condition: &str, u: &[usize], v: &[usize]| AlgebraError::NotBooleanRep {
        condition: condition.into(),
        u: label(g, u),
        v: label(g, v),
    };
    if images[0] != target.zero() {
        return Err(not_rep("empty set maps to zero", &[], &[]));
    }
    for (i, u) in bis.iter().enumerate() {
        for (j, v) in bis.iter().enumerate() {
            let uv = bisection_product(g, u, v);
            if pi(&uv) != target.mul(&images[i], &images[j]) {
                return Err(not_rep("multiplicative", u, v));
            }
            if u.iter().any(|a| v.contains(a)) {
                continue;
            }
            let mut w: Vec<usize> = u.iter().chain(v).copied().collect();
            w.sort_unstable();
            if is_bisection(g, &w) && pi(&w) != target.add(&images[i], &images[j]) {
                return Err(not_rep("additive", u, v));
            }
        }
    }
    let singles: Vec<T::Elem> = (0..g.len()).map(|a| pi(&vec![a])).collect();
    let hom = BooleanHom { images: singles, injective: false };
    for a in 0..g.len() {
        for b in 0..g.len() {
            let lhs = match g.compose(a, b) {
                Some(ab) => hom.images[ab].clone(),
                None => target.zero(),
            };
            if lhs != target.mul(&hom.images[a], &hom.images[b]) {
                return Err(AlgebraError::NotHomomorphism { a: g.name(a).into(), b: g.name(b).into() });
            }
        }
    }
    let coords: Vec<Vec<R>> = hom.images.iter().map(|e| target.coordinates(e)).collect();
    let width = coords.first().map_or(0, Vec::len);
    let rank = Echelon::new(width, coords)?.rank();
    Ok(BooleanHom { injective: rank == g.len(), ..hom })
}

/// `π(U)` is the matrix of `τ_U` on functions of the unit space:
/// entry `(r, s)` is 1 when `τ_U` sends unit position `s` to `r`.
pub fn tau_representation<R: Ring>(g: &FiniteGroupoid) -> (MatrixAlgebra, impl Fn(&Bisection) -> Vec<Vec<R>> + '_) {
    let n = g.units().len();
    let pi = move |b: &Bisection| {
        let mut m = vec![vec![R::zero(); n]; n];
        for (s, r) in tau(g, b).map.iter().enumerate() {
            if let Some(r) = *r {
                m[r][s] = R::one();
            }
        }
        m
    };
    (MatrixAlgebra { n }, pi)
}
